"""Associate relations, irreducibility notions and factorizations of ring elements.

Every predicate here is decided by exhaustive quantification over the carrier.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .ring import FiniteRing, RingElement, same_ring

KINDS = ("irreducible", "strongly_irreducible", "very_strongly_irreducible", "m_irreducible")


@dataclass(frozen=True)
class AssocVector:
    assoc: bool
    strong_assoc: bool
    very_strong_assoc: bool
    strong_regular_assoc: bool
    very_strong_regular_assoc: bool
    tier: str = "exact"
    bound: int | None = None

    def as_dict(self) -> dict:
        return {
            "assoc": self.assoc,
            "strong_assoc": self.strong_assoc,
            "very_strong_assoc": self.very_strong_assoc,
            "strong_regular_assoc": self.strong_regular_assoc,
            "very_strong_regular_assoc": self.very_strong_regular_assoc,
            "tier": self.tier,
            "bound": self.bound,
        }


@dataclass(frozen=True)
class ElementClass:
    unit: bool
    regular: bool
    zero_divisor: bool
    nilpotent: bool
    idempotent: bool
    presimplifiable_element: bool
    irreducible: bool
    strongly_irreducible: bool
    very_strongly_irreducible: bool
    m_irreducible: bool
    prime: bool
    weakly_prime: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class Factorization:
    """subject = unit * prod(factors); factors are nonunits."""

    subject: Any
    factors: tuple
    unit: Any = None
    classes: tuple = ()
    atomic: bool = True
    reduced: bool | None = None
    mu_reduced: bool | None = None
    strongly_reduced: bool | None = None
    strongly_mu_reduced: bool | None = None
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def length(self) -> int:
        return len(self.factors)


class ElementTheory:
    """Precomputed relations for one ring; obtain through ``theory(R)``."""

    def __init__(self, R: FiniteRing):
        self.R = R
        n = R.size
        self.n = n
        self.units = R.units
        self.zd = R.zero_divisors
        self.regular = frozenset(a for a in range(n) if a not in self.zd)
        self.ideal = [R.principal_ideal(a) for a in range(n)]
        self.orbit = [frozenset(R.mul(u, a) for u in self.units) for a in range(n)]
        # quotients[b][a] = {r : a = r b}
        self.pairs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        self.quot: list[dict[int, list[int]]] = [dict() for _ in range(n)]
        for b in range(n):
            for r in range(n):
                a = R.mul(r, b)
                self.quot[b].setdefault(a, []).append(r)
                if r <= b:
                    self.pairs[a].append((r, b))
        ids: dict[frozenset, int] = {}
        self.class_id = [ids.setdefault(self.ideal[a], len(ids)) for a in range(n)]
        self._flags: dict[int, ElementClass] = {}

    # ------------------------------------------------------------- relations

    def assoc(self, a: int, b: int) -> bool:
        return self.ideal[a] == self.ideal[b]

    def strong(self, a: int, b: int) -> bool:
        return a in self.orbit[b]

    def very_strong(self, a: int, b: int) -> bool:
        if not self.assoc(a, b):
            return False
        if a == self.R.zero and b == self.R.zero:
            return True
        if a == self.R.zero:
            return False
        return all(r in self.units for r in self.quot[b].get(a, ()))

    def strong_regular(self, a: int, b: int) -> bool:
        ra = any(r in self.regular for r in self.quot[b].get(a, ()))
        rb = any(r in self.regular for r in self.quot[a].get(b, ()))
        return ra and rb

    def very_strong_regular(self, a: int, b: int) -> bool:
        if not self.assoc(a, b):
            return False
        if a == self.R.zero and b == self.R.zero:
            return True
        if a == self.R.zero:
            return False
        return all(r in self.regular for r in self.quot[b].get(a, ()))

    def vector(self, a: int, b: int) -> AssocVector:
        return AssocVector(
            self.assoc(a, b),
            self.strong(a, b),
            self.very_strong(a, b),
            self.strong_regular(a, b),
            self.very_strong_regular(a, b),
        )

    # ------------------------------------------------------------- element flags

    def _irr_by(self, a: int, rel) -> bool:
        if a in self.units:
            return False
        return all(rel(a, b) or rel(a, c) for b, c in self.pairs[a])

    def is_m_irreducible(self, a: int) -> bool:
        if a in self.units:
            return False
        Ia = self.ideal[a]
        return not any(
            Ia < self.ideal[b] and self.R.one not in self.ideal[b] for b in range(self.n)
        )

    def is_prime(self, a: int, weakly: bool = False) -> bool:
        R = self.R
        if a in self.units or (weakly and a == R.zero):
            return False
        Ia = self.ideal[a]
        for x in range(self.n):
            if x in Ia:
                continue
            for y in range(self.n):
                xy = R.mul(x, y)
                if xy in Ia and y not in Ia and not (weakly and xy == R.zero):
                    return False
        return True

    def is_presimplifiable_element(self, a: int, weakly: bool = False) -> bool:
        if a == self.R.zero:
            return True
        good = self.regular if weakly else self.units
        return all(y in good for y in self.quot[a].get(a, ()))

    def classify(self, a: int) -> ElementClass:
        if a not in self._flags:
            R = self.R
            self._flags[a] = ElementClass(
                unit=a in self.units,
                regular=a in self.regular,
                zero_divisor=a in self.zd,
                nilpotent=a in R.nilradical,
                idempotent=R.mul(a, a) == a,
                presimplifiable_element=self.is_presimplifiable_element(a),
                irreducible=self._irr_by(a, self.assoc),
                strongly_irreducible=self._irr_by(a, self.strong),
                very_strongly_irreducible=self._irr_by(a, self.very_strong),
                m_irreducible=self.is_m_irreducible(a),
                prime=self.is_prime(a),
                weakly_prime=self.is_prime(a, weakly=True),
            )
        return self._flags[a]

    def of_kind(self, kind: str) -> list[int]:
        return [a for a in range(self.n) if getattr(self.classify(a), kind)]

    # ------------------------------------------------------------- U(r)

    def U(self, r: int) -> frozenset:
        """{s : s(r) = (r)}"""
        R = self.R
        return frozenset(s for s in range(self.n) if self.ideal[R.mul(s, r)] == self.ideal[r])

    # ------------------------------------------------------------- products

    def product(self, elems) -> int:
        out = self.R.one
        for e in elems:
            out = self.R.mul(out, e)
        return out

    def tuples_by_product(self, atoms: list[int], max_len: int) -> dict[int, list[tuple]]:
        """All nondecreasing tuples of atoms of length 1..max_len, grouped by product."""
        R = self.R
        out: dict[int, list[tuple]] = {}
        level = [((a,), a) for a in atoms]
        pos = {a: i for i, a in enumerate(atoms)}
        for _ in range(max_len):
            for t, p in level:
                out.setdefault(p, []).append(t)
            nxt = []
            for t, p in level:
                for a in atoms[pos[t[-1]]:]:
                    nxt.append((t + (a,), R.mul(p, a)))
            level = nxt
        return out

    def factorization_flags(self, a: int, factors: tuple) -> dict:
        """Reduced / strongly reduced / mu-reduced flags of a = prod(factors)."""
        n = len(factors)
        drop_one = [self.product(factors[:i] + factors[i + 1 :]) for i in range(n)]
        proper = [
            self.product(sub)
            for k in range(n)
            for sub in combinations(factors, k)
        ]
        return {
            "reduced": all(p != a for p in drop_one),
            "strongly_reduced": all(p != a for p in proper),
            "mu_reduced": all(a not in self.orbit[p] for p in drop_one),
            "strongly_mu_reduced": all(a not in self.orbit[p] for p in proper),
        }


def theory(R: FiniteRing) -> ElementTheory:
    cache = R.__dict__.setdefault("_extra_cache", {})
    if "theory" not in cache:
        cache["theory"] = ElementTheory(R)
    return cache["theory"]


# ------------------------------------------------------------------ public API


def associate_vector(a: RingElement, b: RingElement) -> AssocVector:
    R = same_ring(a, b)
    return theory(R).vector(a.index, b.index)


def classify_element(a: RingElement) -> ElementClass:
    return theory(a.ring).classify(a.index)


def is_presimplifiable_ring(R: FiniteRing) -> bool:
    T = theory(R)
    return all(T.is_presimplifiable_element(a) for a in range(R.size))


def is_weakly_presimplifiable_ring(R: FiniteRing) -> bool:
    T = theory(R)
    return all(T.is_presimplifiable_element(a, weakly=True) for a in range(R.size))


def default_len_cap(R: FiniteRing) -> int:
    return R.nilpotency_index + len(R.local_components) + 2


@dataclass(frozen=True)
class ElementFactorizations:
    subject: int
    factorizations: tuple  # of Factorization
    len_cap: int
    truncated: bool

    @property
    def lengths(self) -> set:
        return {f.length for f in self.factorizations}


def atomic_factorizations_elem(
    a: RingElement, len_cap: int | None = None, kind: str = "irreducible"
) -> ElementFactorizations:
    """Factorizations of a into irreducibles of the given kind, up to order and associates."""
    R = a.ring
    T = theory(R)
    if a.index in T.units:
        raise ValueError(f"{R.label(a.index)} is a unit")
    cap = default_len_cap(R) if len_cap is None else len_cap
    if cap < 1:
        raise ValueError("len_cap must be at least 1")
    found = enumerate_class_factorizations(T, a.index, cap + 1, kind)
    facs = []
    truncated = False
    for classes, realizer in sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0])):
        if len(classes) > cap:
            truncated = True
            continue
        flags = T.factorization_flags(a.index, realizer)
        facs.append(Factorization(a.index, realizer, None, classes, True, **flags))
    return ElementFactorizations(a.index, tuple(facs), cap, truncated)


def enumerate_class_factorizations(T: ElementTheory, a: int, max_len: int, kind: str = "irreducible") -> dict:
    """Map class multiset -> a realizing tuple with exact product a, lengths <= max_len."""
    R = T.R
    atoms = T.of_kind(kind)
    cls = T.class_id
    states: dict[tuple, tuple] = {}
    for x in atoms:
        key = ((cls[x],), x)
        if key not in states or (x,) < states[key]:
            states[key] = (x,)
    result: dict[tuple, tuple] = {}
    for length in range(1, max_len + 1):
        for (ms, p), real in states.items():
            if p == a and (ms not in result or real < result[ms]):
                result[ms] = real
        if length == max_len:
            break
        nxt: dict[tuple, tuple] = {}
        for (ms, p), real in states.items():
            for x in atoms:
                ms2 = tuple(sorted(ms + (cls[x],)))
                key = (ms2, R.mul(p, x))
                real2 = tuple(sorted(real + (x,)))
                if key not in nxt or real2 < nxt[key]:
                    nxt[key] = real2
        states = nxt
    return result


def atomic_closure(R: FiniteRing, atoms: list[int]) -> frozenset:
    """All finite products of the given elements (length >= 1)."""
    reach = set(atoms)
    frontier = list(atoms)
    while frontier:
        nxt = []
        for p in frontier:
            for x in atoms:
                q = R.mul(p, x)
                if q not in reach:
                    reach.add(q)
                    nxt.append(q)
        frontier = nxt
    return frozenset(reach)


def is_atomic_of_kind(R: FiniteRing, kind: str = "irreducible") -> tuple[bool, int | None]:
    """Every nonzero nonunit is a product of elements of the given kind; returns (ok, witness)."""
    T = theory(R)
    reach = atomic_closure(R, T.of_kind(kind))
    for a in range(R.size):
        if a != R.zero and a not in T.units and a not in reach:
            return False, a
    return True, None
