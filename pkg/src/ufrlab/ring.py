"""Finite commutative rings with dense integer encodings.

Every ring element is an integer in ``range(size)``.  Small rings carry full
addition and multiplication tables; larger ones compute on the fly.
"""

from __future__ import annotations

import re

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import prod
from typing import Callable, Iterable

from .dsl import (
    Idealization,
    Modular,
    PolyQuotient,
    Product,
    RingSpec,
    monomial_order_key,
    parse_int_poly,
    parse_ring_spec,
    render_int_poly,
    render_monomial,
    render_ring_spec,
)
from .zgroebner import strong_groebner

TABLE_LIMIT = 4096
DEFAULT_CAP = 1 << 16


class RingBuildError(ValueError):
    pass


class NotFiniteError(RingBuildError):
    pass


class RingMismatchError(ValueError):
    pass


class NotAnIdealError(ValueError):
    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


class FiniteRing:
    """A finite commutative ring on the carrier ``0..size-1``."""

    def __init__(
        self,
        size: int,
        add: Callable[[int, int], int],
        mul: Callable[[int, int], int],
        neg: Callable[[int], int],
        zero: int,
        one: int,
        label: Callable[[int], str],
        parse: Callable[[str], int] | None = None,
        *,
        spec: RingSpec | None = None,
        name: str | None = None,
    ):
        if zero != 0:
            raise ValueError("the zero element must be encoded as 0")
        self.size = size
        self.zero = zero
        self.one = one
        self.spec = spec
        self.name = name or (render_ring_spec(spec) if spec is not None else f"ring#{id(self):x}")
        self._label = label
        self._parse = parse
        if size <= TABLE_LIMIT:
            rng = range(size)
            self.add_table = [[add(a, b) for b in rng] for a in rng]
            self.mul_table = [[mul(a, b) for b in rng] for a in rng]
            self.neg_table = [neg(a) for a in rng]
            self.add = lambda a, b: self.add_table[a][b]
            self.mul = lambda a, b: self.mul_table[a][b]
            self.neg = lambda a: self.neg_table[a]
        else:
            self.add_table = self.mul_table = self.neg_table = None
            self.add, self.mul, self.neg = add, mul, neg

    def __repr__(self) -> str:
        return f"<FiniteRing {self.name} size={self.size}>"

    def __call__(self, index: int) -> "RingElement":
        if not 0 <= index < self.size:
            raise IndexError(f"element index {index} outside 0..{self.size - 1}")
        return RingElement(self, index)

    # ---------------------------------------------------------- arithmetic

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def pow(self, a: int, k: int) -> int:
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def times(self, k: int, a: int) -> int:
        """k-fold sum of a."""
        out = self.zero
        for _ in range(k):
            out = self.add(out, a)
        return out

    def elements(self) -> range:
        return range(self.size)

    # ---------------------------------------------------------- labels

    def label(self, a: int) -> str:
        return self.labels[a]

    @cached_property
    def labels(self) -> list[str]:
        return [self._label(a) for a in range(self.size)]

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.labels)}

    def parse_element(self, text: str) -> int:
        t = text.strip()
        hit = self._label_index.get(t)
        if hit is None:
            hit = self._label_index.get(t.replace(" ", ""))
        if hit is not None:
            return hit
        if self._parse is not None:
            return self._parse(t)
        raise ValueError(f"unknown element {text!r} of {self.name}")

    def element(self, text: str) -> "RingElement":
        return RingElement(self, self.parse_element(text))

    # ---------------------------------------------------------- ideals

    def principal_ideal(self, a: int) -> frozenset:
        return self._principal[a]

    @cached_property
    def _principal(self) -> list[frozenset]:
        return [frozenset(self.mul(a, r) for r in range(self.size)) for a in range(self.size)]

    def divides(self, a: int, b: int) -> bool:
        return b in self._principal[a]

    def annihilator(self, a: int) -> frozenset:
        return frozenset(c for c in range(self.size) if self.mul(c, a) == self.zero)

    def ideal_generated(self, gens: Iterable[int]) -> frozenset:
        """Smallest ideal containing gens."""
        ideal = {self.zero}
        for g in gens:
            ideal |= self._principal[g]
        frontier = list(ideal)
        while frontier:
            new = []
            for a in frontier:
                for b in list(ideal):
                    s = self.add(a, b)
                    if s not in ideal:
                        ideal.add(s)
                        new.append(s)
            frontier = new
        return frozenset(ideal)

    def ideal_product(self, I: Iterable[int], J: Iterable[int]) -> frozenset:
        return self.ideal_generated({self.mul(a, b) for a in I for b in J})

    # ---------------------------------------------------------- structure

    @cached_property
    def units(self) -> frozenset:
        return frozenset(a for a in range(self.size) if self.one in self._principal[a])

    @cached_property
    def inverse(self) -> dict[int, int]:
        inv = {}
        for a in self.units:
            for b in range(self.size):
                if self.mul(a, b) == self.one:
                    inv[a] = b
                    break
        return inv

    @cached_property
    def zero_divisors(self) -> frozenset:
        """Elements a with ca = 0 for some c != 0 (includes 0)."""
        nz = [c for c in range(self.size) if c != self.zero]
        return frozenset(a for a in range(self.size) if any(self.mul(c, a) == self.zero for c in nz))

    @cached_property
    def nilpotency_order(self) -> dict[int, int]:
        """For each nilpotent a, the least k >= 1 with a^k = 0."""
        out = {}
        for a in range(self.size):
            p, k = a, 1
            seen = set()
            while p != self.zero and p not in seen:
                seen.add(p)
                p = self.mul(p, a)
                k += 1
            if p == self.zero:
                out[a] = k
        return out

    @cached_property
    def nilradical(self) -> frozenset:
        return frozenset(self.nilpotency_order)

    @cached_property
    def nilpotency_index(self) -> int:
        return max(self.nilpotency_order.values())

    @cached_property
    def jacobson_radical(self) -> frozenset:
        # a is in J(R) iff 1 - ra is a unit for every r
        U = self.units
        return frozenset(
            a
            for a in range(self.size)
            if all(self.sub(self.one, self.mul(r, a)) in U for r in range(self.size))
        )

    @cached_property
    def idempotents(self) -> frozenset:
        return frozenset(a for a in range(self.size) if self.mul(a, a) == a)

    @cached_property
    def characteristic(self) -> int:
        k, a = 1, self.one
        while a != self.zero:
            a = self.add(a, self.one)
            k += 1
        return k

    @cached_property
    def primitive_idempotents(self) -> tuple:
        nz = [e for e in sorted(self.idempotents) if e != self.zero]
        prim = [
            e for e in nz if not any(f != e and self.mul(f, e) == f for f in nz)
        ]
        return tuple(prim)

    @property
    def is_local(self) -> bool:
        return len(self.primitive_idempotents) == 1

    @property
    def is_indecomposable(self) -> bool:
        return len(self.idempotents) == 2

    @property
    def is_reduced(self) -> bool:
        return len(self.nilradical) == 1

    @property
    def is_field(self) -> bool:
        return len(self.units) == self.size - 1

    @property
    def is_domain(self) -> bool:
        # finite domains are fields
        return len(self.zero_divisors) == 1

    @cached_property
    def maximal_ideal(self) -> frozenset:
        """The unique maximal ideal of a local ring (its nonunits)."""
        if not self.is_local:
            raise ValueError(f"{self.name} is not local")
        return frozenset(a for a in range(self.size) if a not in self.units)

    @cached_property
    def is_spir(self) -> bool:
        if not self.is_local:
            return False
        M = self.maximal_ideal
        return any(self._principal[a] == M for a in M)

    @cached_property
    def is_local_m2_zero(self) -> bool:
        if not self.is_local:
            return False
        M = self.maximal_ideal
        return all(self.mul(a, b) == self.zero for a in M for b in M)

    @cached_property
    def local_components(self) -> tuple:
        if self.is_local:
            ident = tuple(range(self.size))
            return (LocalComponent(self, self.one, ident, ident),)
        comps = []
        for e in self.primitive_idempotents:
            comps.append(_component(self, e))
        return tuple(comps)

    @cached_property
    def maximal_ideals(self) -> tuple:
        """One maximal ideal per local component: all r whose projection is a nonunit."""
        out = []
        for c in self.local_components:
            U = c.ring.units
            out.append(frozenset(r for r in range(self.size) if c.project[r] not in U))
        return tuple(out)


@dataclass(frozen=True, eq=False)
class LocalComponent:
    ring: FiniteRing
    idempotent: int
    embed: tuple  # component index -> parent index
    project: tuple  # parent index -> component index of e*r

    def lift(self, parent: FiniteRing, s: int) -> int:
        """Parent element that is s in this component and 1 in every other one."""
        return parent.add(self.embed[s], parent.sub(parent.one, self.idempotent))


def _component(R: FiniteRing, e: int) -> LocalComponent:
    members = sorted({R.mul(e, r) for r in range(R.size)})
    pos = {m: i for i, m in enumerate(members)}
    sub = FiniteRing(
        len(members),
        lambda a, b: pos[R.add(members[a], members[b])],
        lambda a, b: pos[R.mul(members[a], members[b])],
        lambda a: pos[R.neg(members[a])],
        pos[R.zero],
        pos[e],
        lambda a: R.label(members[a]),
        lambda t: pos[R.mul(e, R.parse_element(t))],
        name=f"{R.name}*{R.label(e)}",
    )
    project = tuple(pos[R.mul(e, r)] for r in range(R.size))
    return LocalComponent(sub, e, tuple(members), project)


@dataclass(frozen=True, eq=False)
class RingElement:
    ring: FiniteRing
    index: int

    def _other(self, other) -> int:
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise RingMismatchError(f"{other.ring.name} vs {self.ring.name}")
            return other.index
        if isinstance(other, int):
            return self.ring.times(other % self.ring.characteristic, self.ring.one)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, RingElement) and other.ring is self.ring and other.index == self.index

    def __hash__(self):
        return hash((id(self.ring), self.index))

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.index, self._other(other)))

    __radd__ = __add__

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.index, self._other(other)))

    __rmul__ = __mul__

    def __sub__(self, other):
        return RingElement(self.ring, self.ring.sub(self.index, self._other(other)))

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.index))

    def __pow__(self, k: int):
        return RingElement(self.ring, self.ring.pow(self.index, k))

    def __repr__(self):
        return f"{self.ring.label(self.index)}"


def same_ring(*elems: RingElement) -> FiniteRing:
    R = elems[0].ring
    for x in elems[1:]:
        if x.ring is not R:
            raise RingMismatchError(f"elements from {R.name} and {x.ring.name}")
    return R


def principal_ideal(a: RingElement) -> frozenset:
    return frozenset(RingElement(a.ring, i) for i in a.ring.principal_ideal(a.index))


def divides(a: RingElement, b: RingElement) -> bool:
    R = same_ring(a, b)
    return R.divides(a.index, b.index)


def annihilator(a: RingElement) -> frozenset:
    return frozenset(RingElement(a.ring, i) for i in a.ring.annihilator(a.index))


# ------------------------------------------------------------------ quotients


class QuotientRing(FiniteRing):
    parent: FiniteRing
    projection: tuple  # parent index -> coset index
    representatives: tuple  # coset index -> least parent index in the coset


def quotient_ring(R: FiniteRing, ideal: Iterable[int]) -> QuotientRing:
    I = frozenset(ideal)
    if R.zero not in I:
        raise NotAnIdealError("not an ideal: 0 is missing", (R.zero,))
    for a in sorted(I):
        for b in sorted(I):
            if R.add(a, b) not in I:
                raise NotAnIdealError(
                    f"not an ideal: {R.label(a)} + {R.label(b)} leaves the set", (a, b)
                )
        for r in range(R.size):
            if R.mul(r, a) not in I:
                raise NotAnIdealError(
                    f"not an ideal: {R.label(r)} * {R.label(a)} leaves the set", (r, a)
                )
    proj = [-1] * R.size
    reps: list[int] = []
    for r in range(R.size):
        if proj[r] < 0:
            k = len(reps)
            reps.append(r)
            for i in I:
                proj[R.add(r, i)] = k
    proj_t, reps_t = tuple(proj), tuple(reps)
    Q = QuotientRing.__new__(QuotientRing)
    FiniteRing.__init__(
        Q,
        len(reps),
        lambda a, b: proj_t[R.add(reps_t[a], reps_t[b])],
        lambda a, b: proj_t[R.mul(reps_t[a], reps_t[b])],
        lambda a: proj_t[R.neg(reps_t[a])],
        proj_t[R.zero],
        proj_t[R.one],
        lambda a: R.label(reps_t[a]),
        lambda t: proj_t[R.parse_element(t)],
        name=f"{R.name}/<{len(I)}>",
    )
    Q.parent = R
    Q.projection = proj_t
    Q.representatives = reps_t
    return Q


def reduction_mod_nil(R: FiniteRing) -> QuotientRing:
    cache = R.__dict__.setdefault("_extra_cache", {})
    if "mod_nil" not in cache:
        cache["mod_nil"] = quotient_ring(R, R.nilradical)
    return cache["mod_nil"]


# ------------------------------------------------------------------ builders


def _split_top(text: str) -> list[str]:
    """Split 'a,b,(c,d)' at commas not nested in brackets."""
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")):
        raise ValueError(f"expected a parenthesised tuple, got {text!r}")
    body = t[1:-1]
    parts, depth, cur = [], 0, ""
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def build_modular(n: int, spec: RingSpec | None = None) -> FiniteRing:
    def parse(t: str) -> int:
        try:
            return int(t) % n
        except ValueError:
            raise ValueError(f"not an element of Z({n}): {t!r}") from None

    return FiniteRing(
        n,
        lambda a, b: (a + b) % n,
        lambda a, b: (a * b) % n,
        lambda a: (-a) % n,
        0,
        1 % n,
        str,
        parse,
        spec=spec or Modular(n),
    )


def build_product(rings: list[FiniteRing], spec: RingSpec | None = None, cap: int = DEFAULT_CAP) -> FiniteRing:
    sizes = [r.size for r in rings]
    total = prod(sizes)
    if total > cap:
        raise NotFiniteError(f"product has {total} elements, above the cap {cap}")
    strides = []
    s = 1
    for n in reversed(sizes):
        strides.append(s)
        s *= n
    strides.reverse()

    def dec(i: int) -> list[int]:
        return [(i // st) % n for st, n in zip(strides, sizes)]

    def enc(parts) -> int:
        return sum(p * st for p, st in zip(parts, strides))

    def parse(t: str) -> int:
        if re.fullmatch(r"-?\d+", t.strip()):
            k = int(t)
            return enc(r.times(k % r.characteristic, r.one) for r in rings)
        parts = _split_top(t)
        if len(parts) != len(rings):
            raise ValueError(f"expected {len(rings)} coordinates in {t!r}")
        return enc(r.parse_element(p) for r, p in zip(rings, parts))

    R = FiniteRing(
        total,
        lambda a, b: enc(r.add(x, y) for r, x, y in zip(rings, dec(a), dec(b))),
        lambda a, b: enc(r.mul(x, y) for r, x, y in zip(rings, dec(a), dec(b))),
        lambda a: enc(r.neg(x) for r, x in zip(rings, dec(a))),
        enc(r.zero for r in rings),
        enc(r.one for r in rings),
        lambda a: "(" + ",".join(r.label(x) for r, x in zip(rings, dec(a))) + ")",
        parse,
        spec=spec,
    )
    R.factors = tuple(rings)
    R.coordinates = dec
    R.from_coordinates = enc
    return R


def build_polyquotient(spec: PolyQuotient, cap: int = DEFAULT_CAP) -> FiniteRing:
    if not isinstance(spec.base, Modular):
        raise RingBuildError("polynomial quotients are supported over Z(n) bases only")
    n = spec.base.n
    nv = len(spec.vars)
    gens = [{(0,) * nv: n}] + [dict(r) for r in spec.relations]
    basis = strong_groebner(gens)
    if basis.modulus((0,) * nv) == 1:
        raise RingBuildError("the relations generate the whole ring (the quotient is trivial)")
    for k, v in enumerate(spec.vars):
        ok = False
        for lm, lc in basis.heads:
            if lc == 1 and lm[k] > 0 and sum(lm) == lm[k]:
                ok = True
                break
        if not ok:
            raise NotFiniteError(
                f"not finite: variable {v!r} is not integral with a monic relation modulo the "
                f"relations, so its powers never close up"
            )
    # standard monomials with their coefficient moduli
    start = (0,) * nv
    mods = {start: basis.modulus(start)}
    frontier = [start]
    while frontier:
        nxt = []
        for e in frontier:
            for k in range(nv):
                e2 = tuple(x + (1 if i == k else 0) for i, x in enumerate(e))
                if e2 in mods:
                    continue
                d = basis.modulus(e2)
                if d != 1:
                    mods[e2] = d
                    nxt.append(e2)
                    if prod(mods.values()) > cap:
                        raise NotFiniteError(f"quotient exceeds the cap of {cap} elements")
        frontier = nxt
    monos = sorted(mods, key=lambda e: (sum(e), tuple(-x for x in e)))
    radices = [mods[e] for e in monos]
    size = prod(radices)
    if size > cap:
        raise NotFiniteError(f"quotient has {size} elements, above the cap {cap}")
    strides = []
    s = 1
    for r in radices:
        strides.append(s)
        s *= r

    def dec(i: int) -> dict:
        out = {}
        for e, st, r in zip(monos, strides, radices):
            c = (i // st) % r
            if c:
                out[e] = c
        return out

    def enc(poly: dict) -> int:
        nf = basis.normal_form(poly)
        return sum(nf.get(e, 0) * st for e, st in zip(monos, strides))

    def add(a, b):
        f = dec(a)
        for e, c in dec(b).items():
            f[e] = f.get(e, 0) + c
        return enc(f)

    def mul(a, b):
        f: dict = {}
        for e1, c1 in dec(a).items():
            for e2, c2 in dec(b).items():
                e = tuple(x + y for x, y in zip(e1, e2))
                f[e] = f.get(e, 0) + c1 * c2
        return enc(f)

    def label(a):
        terms = [(e, c) for e, c in sorted(dec(a).items(), key=lambda t: monos.index(t[0]))]
        return render_int_poly(terms, spec.vars)

    if size <= TABLE_LIMIT:
        add, mul = _tabulate_from_basis(size, strides, add, mul)
    R = FiniteRing(
        size,
        add,
        mul,
        lambda a: enc({e: -c for e, c in dec(a).items()}),
        0,
        enc({start: 1}),
        label,
        lambda t: enc(parse_int_poly(t, spec.vars)),
        spec=spec,
    )
    R.monomial_basis = tuple((render_monomial(e, spec.vars) or "1", mods[e]) for e in monos)
    return R


def _tabulate_from_basis(size: int, strides: list[int], add, mul):
    """Addition and multiplication tables from the rows of the basis elements.

    The basis monomial with stride m is the element with index m.  If m is the
    lowest nonzero digit position of a, then a - m has the same digits with one
    lowered by one, so a + b = (a - m) + (m + b) and ab = (a - m)b + mb.  Only
    the basis rows need the generic operations.
    """
    basis_add = {m: [add(m, b) for b in range(size)] for m in strides}
    basis_mul = {m: [mul(m, b) for b in range(size)] for m in strides}
    lowest = [0] * size
    for m in strides:
        for a in range(m, size, m):
            lowest[a] = m
    add_rows = [list(range(size))]
    for a in range(1, size):
        m = lowest[a]
        rest = add_rows[a - m]
        add_rows.append([rest[x] for x in basis_add[m]])
    mul_rows = [[0] * size]
    for a in range(1, size):
        m = lowest[a]
        rest = mul_rows[a - m]
        mb = basis_mul[m]
        mul_rows.append([add_rows[rest[b]][mb[b]] for b in range(size)])
    return (lambda a, b: add_rows[a][b]), (lambda a, b: mul_rows[a][b])


def build_idealization(spec: Idealization, cap: int = DEFAULT_CAP) -> FiniteRing:
    B = build_ring(spec.base, cap)
    m = spec.module_modulus
    if B.characteristic % m:
        raise RingBuildError(
            f"module modulus {m} must divide the characteristic {B.characteristic} of the base"
        )
    m_elem = B.times(m, B.one)
    Q = quotient_ring(B, B.principal_ideal(m_elem))
    q = Q.size
    if B.size * q > cap:
        raise NotFiniteError(f"idealization has {B.size * q} elements, above the cap {cap}")

    def act(r: int, x: int) -> int:
        return Q.projection[B.mul(r, Q.representatives[x])]

    def add(a, b):
        (r, x), (s, y) = divmod(a, q), divmod(b, q)
        return B.add(r, s) * q + Q.add(x, y)

    def mul(a, b):
        (r, x), (s, y) = divmod(a, q), divmod(b, q)
        return B.mul(r, s) * q + Q.add(act(r, y), act(s, x))

    def neg(a):
        r, x = divmod(a, q)
        return B.neg(r) * q + Q.neg(x)

    def parse(t: str) -> int:
        parts = _split_top(t)
        if len(parts) != 2:
            raise ValueError(f"expected (ring part, module part), got {t!r}")
        return B.parse_element(parts[0]) * q + Q.parse_element(parts[1])

    R = FiniteRing(
        B.size * q,
        add,
        mul,
        neg,
        B.zero * q + Q.zero,
        B.one * q + Q.zero,
        lambda a: f"({B.label(a // q)},{Q.label(a % q)})",
        parse,
        spec=spec,
    )
    return R


@lru_cache(maxsize=256)
def build_ring(spec: RingSpec | str, cap: int = DEFAULT_CAP) -> FiniteRing:
    if isinstance(spec, str):
        spec = parse_ring_spec(spec)
    if isinstance(spec, Modular):
        if spec.n > cap:
            raise NotFiniteError(f"Z({spec.n}) is above the cap {cap}")
        return build_modular(spec.n, spec)
    if isinstance(spec, Product):
        parts = [build_ring(f, cap) for f in spec.factors]
        return build_product(parts, spec, cap)
    if isinstance(spec, PolyQuotient):
        return build_polyquotient(spec, cap)
    if isinstance(spec, Idealization):
        return build_idealization(spec, cap)
    raise TypeError(f"not a ring spec: {spec!r}")


# ------------------------------------------------------------------ reports


@dataclass(frozen=True)
class StructureReport:
    units: frozenset
    zero_divisors: frozenset
    nilradical: frozenset
    jacobson_radical: frozenset
    idempotents: frozenset
    is_field: bool
    is_domain: bool
    is_local: bool
    is_reduced: bool
    is_indecomposable: bool
    is_spir: bool
    local_components: tuple  # (component ring, idempotent) pairs

    def as_dict(self, R: FiniteRing) -> dict:
        lab = lambda s: [R.label(a) for a in sorted(s)]  # noqa: E731
        return {
            "size": R.size,
            "units": lab(self.units),
            "zero_divisors": lab(self.zero_divisors),
            "nilradical": lab(self.nilradical),
            "idempotents": lab(self.idempotents),
            "is_field": self.is_field,
            "is_domain": self.is_domain,
            "is_local": self.is_local,
            "is_reduced": self.is_reduced,
            "is_indecomposable": self.is_indecomposable,
            "is_spir": self.is_spir,
            "local_components": [
                {"idempotent": R.label(e), "size": c.size} for c, e in self.local_components
            ],
        }


def compute_structure(R: FiniteRing) -> StructureReport:
    return StructureReport(
        units=R.units,
        zero_divisors=R.zero_divisors,
        nilradical=R.nilradical,
        jacobson_radical=R.jacobson_radical,
        idempotents=R.idempotents,
        is_field=R.is_field,
        is_domain=R.is_domain,
        is_local=R.is_local,
        is_reduced=R.is_reduced,
        is_indecomposable=R.is_indecomposable,
        is_spir=R.is_spir,
        local_components=tuple((c.ring, c.idempotent) for c in R.local_components),
    )


def ring_from_components(R: FiniteRing) -> FiniteRing:
    """The product of R's local components, rebuilt as a standalone ring."""
    return build_product([c.ring for c in R.local_components], cap=max(DEFAULT_CAP, R.size))


def component_isomorphism(R: FiniteRing) -> list[int] | None:
    """Map r -> (e_i r)_i into ring_from_components(R) if it is a ring isomorphism."""
    P = ring_from_components(R)
    comps = R.local_components
    phi = [P.from_coordinates(c.project[r] for c in comps) if len(comps) > 1 else r for r in range(R.size)]
    if len(comps) == 1:
        return phi
    if len(set(phi)) != R.size or P.size != R.size:
        return None
    for a in range(R.size):
        for b in range(R.size):
            if phi[R.add(a, b)] != P.add(phi[a], phi[b]) or phi[R.mul(a, b)] != P.mul(phi[a], phi[b]):
                return None
    if phi[R.one] != P.one:
        return None
    return phi


def find_isomorphism(A: FiniteRing, B: FiniteRing) -> list[int] | None:
    """Backtracking search for a ring isomorphism A -> B (small rings)."""
    if A.size != B.size:
        return None
    # additive generators of A, greedily chosen
    gens: list[int] = []
    span = {A.zero}
    for a in range(A.size):
        if a not in span:
            gens.append(a)
            span = _additive_span(A, gens)
    order = [_additive_order(A, g) for g in gens]

    def extend(images: list[int]):
        k = len(images)
        if k == len(gens):
            phi = _extend_additive(A, B, gens, images)
            if phi is None:
                return None
            for a in range(A.size):
                for b in range(A.size):
                    if phi[A.mul(a, b)] != B.mul(phi[a], phi[b]):
                        return None
            return phi if phi[A.one] == B.one else None
        for img in range(B.size):
            if _additive_order(B, img) != order[k]:
                continue
            got = extend(images + [img])
            if got is not None:
                return got
        return None

    return extend([])


def _additive_order(R: FiniteRing, a: int) -> int:
    k, s = 1, a
    while s != R.zero:
        s = R.add(s, a)
        k += 1
    return k


def _additive_span(R: FiniteRing, gens: list[int]) -> set:
    span = {R.zero}
    for g in gens:
        new = set(span)
        for s in span:
            x = s
            for _ in range(R.size):
                x = R.add(x, g)
                if x in new:
                    break
                new.add(x)
        span = new
        # closure under the new generator's multiples added to everything
        changed = True
        while changed:
            changed = False
            for a in list(span):
                b = R.add(a, g)
                if b not in span:
                    span.add(b)
                    changed = True
    return span


def _extend_additive(A: FiniteRing, B: FiniteRing, gens, images):
    phi = {A.zero: B.zero}
    frontier = [A.zero]
    while frontier:
        nxt = []
        for a in frontier:
            for g, h in zip(gens, images):
                x, y = A.add(a, g), B.add(phi[a], h)
                if x in phi:
                    if phi[x] != y:
                        return None
                else:
                    phi[x] = y
                    nxt.append(x)
        frontier = nxt
    if len(phi) != A.size or len(set(phi.values())) != A.size:
        return None
    return [phi[a] for a in range(A.size)]
