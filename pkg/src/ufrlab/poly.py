"""Polynomials in one indeterminate X over a finite ring.

Internally a polynomial is a tuple of element indices, lowest degree first,
with no trailing zeros.  ``Polynomial`` wraps such a tuple with its ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterator

from .elements import AssocVector, theory
from .ring import FiniteRing, RingMismatchError, reduction_mod_nil

Coeffs = tuple

# ------------------------------------------------------------------ raw tuples


def trim(cs) -> Coeffs:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def degree(f: Coeffs) -> int:
    """Degree; the zero polynomial has degree -1."""
    return len(f) - 1


def padd(R: FiniteRing, f: Coeffs, g: Coeffs) -> Coeffs:
    if len(f) < len(g):
        f, g = g, f
    add = R.add
    out = list(f)
    for i, c in enumerate(g):
        out[i] = add(out[i], c)
    return trim(out)


def pneg(R: FiniteRing, f: Coeffs) -> Coeffs:
    return tuple(R.neg(c) for c in f)


def psub(R: FiniteRing, f: Coeffs, g: Coeffs) -> Coeffs:
    return padd(R, f, pneg(R, g))


def pmul(R: FiniteRing, f: Coeffs, g: Coeffs) -> Coeffs:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    mt, at = R.mul_table, R.add_table
    if mt is not None:
        for i, a in enumerate(f):
            if a == 0:
                continue
            row = mt[a]
            for j, b in enumerate(g):
                if b:
                    k = i + j
                    out[k] = at[out[k]][row[b]]
    else:
        for i, a in enumerate(f):
            for j, b in enumerate(g):
                out[i + j] = R.add(out[i + j], R.mul(a, b))
    return trim(out)


def pscale(R: FiniteRing, c: int, f: Coeffs) -> Coeffs:
    return trim(R.mul(c, a) for a in f)


def pxpow(f: Coeffs, k: int) -> Coeffs:
    return (0,) * k + f if f else ()


def ppow(R: FiniteRing, f: Coeffs, k: int) -> Coeffs:
    out: Coeffs = (R.one,)
    for _ in range(k):
        out = pmul(R, out, f)
    return out


def peval(R: FiniteRing, f: Coeffs, a: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = R.add(R.mul(acc, a), c)
    return acc


def pshift(R: FiniteRing, f: Coeffs, a: int) -> Coeffs:
    """f(X + a)"""
    acc: Coeffs = ()
    lin = trim((a, R.one))
    for c in reversed(f):
        acc = padd(R, pmul(R, acc, lin), trim((c,)))
    return acc


def pdivmod(R: FiniteRing, f: Coeffs, g: Coeffs) -> tuple[Coeffs, Coeffs]:
    """Division by g whose leading coefficient is a unit."""
    lc_inv = R.inverse.get(g[-1]) if g else None
    if lc_inv is None:
        raise ValueError("divisor must have a unit leading coefficient")
    r = list(f)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 0)
    for k in range(len(f) - 1, dg - 1, -1):
        c = r[k]
        if c == 0:
            continue
        t = R.mul(c, lc_inv)
        q[k - dg] = t
        for i, b in enumerate(g):
            r[k - dg + i] = R.sub(r[k - dg + i], R.mul(t, b))
    return trim(q), trim(r)


def is_unit(R: FiniteRing, f: Coeffs) -> bool:
    nil = R.nilradical
    return bool(f) and f[0] in R.units and all(c in nil for c in f[1:])


def is_nilpotent(R: FiniteRing, f: Coeffs) -> bool:
    nil = R.nilradical
    return all(c in nil for c in f)


def is_idempotent(R: FiniteRing, f: Coeffs) -> bool:
    return len(f) <= 1 and (not f or R.mul(f[0], f[0]) == f[0])


def annihilating_constant(R: FiniteRing, f: Coeffs) -> int | None:
    """A nonzero constant c with c*f = 0, or None."""
    for c in range(1, R.size):
        if all(R.mul(c, a) == 0 for a in f):
            return c
    return None


def is_regular(R: FiniteRing, f: Coeffs) -> bool:
    if R.is_local:
        U = R.units
        return any(c in U for c in f)
    return annihilating_constant(R, f) is None


def unit_inverse(R: FiniteRing, u: Coeffs) -> Coeffs:
    """Inverse of a unit polynomial (unit constant term, nilpotent tail)."""
    inv0 = R.inverse[u[0]]
    n = pscale(R, inv0, u)
    n = padd(R, n, (R.neg(R.one),))  # u0^{-1} u - 1, nilpotent
    minus_n = pneg(R, n)
    acc: Coeffs = (R.one,)
    term: Coeffs = (R.one,)
    for _ in range(R.size * max(len(u), 1) + 1):
        term = pmul(R, term, minus_n)
        if not term:
            break
        acc = padd(R, acc, term)
    else:
        raise ValueError("polynomial is not a unit")
    return pscale(R, inv0, acc)


def monic_normal_form(S: FiniteRing, f: Coeffs) -> tuple[Coeffs, Coeffs]:
    """For regular f over a local ring: (u, G) with f = u*G, u a unit, G monic.

    G is the unique monic polynomial associated to f; its degree is the largest
    index of a unit coefficient of f.
    """
    U = S.units
    d = max(i for i, c in enumerate(f) if c in U)
    g = f
    for _ in range(S.size + 2):
        if len(g) - 1 == d:
            break
        A = g[: d + 1]
        tail = (0,) * (d + 1) + g[d + 1 :]
        Q, rem = pdivmod(S, tail, A)
        w = unit_inverse(S, padd(S, (S.one,), Q))
        g = padd(S, A, pmul(S, w, rem))
    else:
        raise RuntimeError("monic normalization did not converge")
    lead_inv = S.inverse[g[-1]]
    G = pscale(S, lead_inv, g)
    u, r = pdivmod(S, f, G)
    assert not r
    return u, G


# ------------------------------------------------------------------ components


def split_coeffs(R: FiniteRing, f: Coeffs) -> list[Coeffs]:
    return [trim(c.project[a] for a in f) for c in R.local_components]


def assemble_coeffs(R: FiniteRing, parts: list[Coeffs]) -> Coeffs:
    comps = R.local_components
    if len(comps) == 1:
        return parts[0]
    n = max((len(p) for p in parts), default=0)
    out = [0] * n
    for c, p in zip(comps, parts):
        for k, a in enumerate(p):
            out[k] = R.add(out[k], c.embed[a])
    return trim(out)


def lift_component(R: FiniteRing, i: int, p: Coeffs) -> Coeffs:
    """Global polynomial equal to p in component i and to 1 elsewhere."""
    parts = [(c.ring.one,) for c in R.local_components]
    parts[i] = p
    return assemble_coeffs(R, parts)


def canonical_regular(R: FiniteRing, f: Coeffs) -> Coeffs:
    """Canonical associate of a regular polynomial: monic in every local component."""
    parts = []
    for c, p in zip(R.local_components, split_coeffs(R, f)):
        parts.append(monic_normal_form(c.ring, p)[1])
    return assemble_coeffs(R, parts)


# ------------------------------------------------------------------ bounded search


def preimages(R: FiniteRing, c: int) -> dict[int, list[int]]:
    cache = R.__dict__.setdefault("_extra_cache", {}).setdefault("preimages", {})
    if c not in cache:
        d: dict[int, list[int]] = {}
        for x in range(R.size):
            d.setdefault(R.mul(c, x), []).append(x)
        cache[c] = d
    return cache[c]


def cofactors(R: FiniteRing, g: Coeffs, f: Coeffs, bound: int, limit: int | None = None) -> list[Coeffs]:
    """All h with deg h <= bound and g*h = f.  g must be nonzero."""
    if not g:
        raise ValueError("cofactor search needs a nonzero divisor")
    v = next(i for i, c in enumerate(g) if c)
    if any(c for c in f[:v]):
        return []
    g2, f2 = g[v:], f[v:]
    dg = len(g2) - 1
    if len(f2) - 1 > dg + bound:
        return []
    # leading-coefficient shortcut: unique solution when g2 has a unit leading coefficient
    if g2[-1] in R.units:
        q, r = pdivmod(R, f2, g2)
        return [q] if not r and len(q) - 1 <= bound else []
    pre = preimages(R, g2[0])
    n = bound + 1
    top = dg + bound
    fpad = list(f2) + [0] * (top + 1 - len(f2))
    h = [0] * n
    out: list[Coeffs] = []
    add, mul, neg = R.add, R.mul, R.neg

    def rec(k: int) -> bool:
        if k == n:
            for t in range(n, top + 1):
                s = 0
                for i in range(t - bound, min(dg, t) + 1):
                    s = add(s, mul(g2[i], h[t - i]))
                if s != fpad[t]:
                    return False
            out.append(trim(h))
            return limit is not None and len(out) >= limit
        rhs = fpad[k]
        for i in range(1, min(dg, k) + 1):
            rhs = add(rhs, neg(mul(g2[i], h[k - i])))
        for x in pre.get(rhs, ()):
            h[k] = x
            if rec(k + 1):
                return True
        h[k] = 0
        return False

    rec(0)
    return out


def divides_bounded(R: FiniteRing, g: Coeffs, f: Coeffs, bound: int) -> bool:
    if not g:
        return not f
    return bool(cofactors(R, g, f, bound, limit=1))


def all_polys(R: FiniteRing, max_deg: int, coeff_set=None) -> Iterator[Coeffs]:
    """Every polynomial of degree <= max_deg (trimmed), coefficients from coeff_set."""
    cs = sorted(coeff_set) if coeff_set is not None else list(range(R.size))
    seen = set()
    for tup in cartesian(cs, repeat=max_deg + 1):
        t = trim(tup)
        if t not in seen:
            seen.add(t)
            yield t


# ------------------------------------------------------------------ public wrapper


@dataclass(frozen=True, eq=False)
class Polynomial:
    ring: FiniteRing
    coeffs: Coeffs

    def __post_init__(self):
        object.__setattr__(self, "coeffs", trim(self.coeffs))

    @classmethod
    def parse(cls, R: FiniteRing, text: str) -> "Polynomial":
        return cls(R, parse_poly(R, text))

    @classmethod
    def constant(cls, R: FiniteRing, a: int) -> "Polynomial":
        return cls(R, (a,))

    @classmethod
    def x(cls, R: FiniteRing, k: int = 1) -> "Polynomial":
        return cls(R, (0,) * k + (R.one,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _c(self, other) -> Coeffs:
        if isinstance(other, Polynomial):
            if other.ring is not self.ring:
                raise RingMismatchError(f"{other.ring.name} vs {self.ring.name}")
            return other.coeffs
        if isinstance(other, int):
            R = self.ring
            return trim((R.times(other % R.characteristic, R.one),))
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, Polynomial) and other.ring is self.ring and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((id(self.ring), self.coeffs))

    def __add__(self, other):
        return Polynomial(self.ring, padd(self.ring, self.coeffs, self._c(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Polynomial(self.ring, psub(self.ring, self.coeffs, self._c(other)))

    def __rsub__(self, other):
        return Polynomial(self.ring, psub(self.ring, self._c(other), self.coeffs))

    def __neg__(self):
        return Polynomial(self.ring, pneg(self.ring, self.coeffs))

    def __mul__(self, other):
        return Polynomial(self.ring, pmul(self.ring, self.coeffs, self._c(other)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return Polynomial(self.ring, ppow(self.ring, self.coeffs, k))

    def eval(self, a: int) -> int:
        return peval(self.ring, self.coeffs, a)

    def shift(self, a: int) -> "Polynomial":
        """f(X + a)"""
        return Polynomial(self.ring, pshift(self.ring, self.coeffs, a))

    def __str__(self):
        return render_poly(self.ring, self.coeffs)

    __repr__ = __str__


# ------------------------------------------------------------------ text format


def _needs_parens(label: str) -> bool:
    if label.startswith("(") and label.endswith(")"):
        depth = 0
        for i, ch in enumerate(label):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0 and i < len(label) - 1:
                return True
        return False
    return any(ch in label for ch in "+-*,^ ")


def render_poly(R: FiniteRing, f: Coeffs) -> str:
    """Text form such as '2X^3+X+1'; composite coefficient labels are parenthesised."""
    if not f:
        return "0"
    terms = []
    for k in range(len(f) - 1, -1, -1):
        c = f[k]
        if c == 0:
            continue
        lab = R.label(c)
        if _needs_parens(lab):
            lab = f"({lab})"
        mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
        if not mono:
            terms.append(lab)
        elif c == R.one:
            terms.append(mono)
        else:
            terms.append(lab + mono)
    return "+".join(terms)


def _split_terms(text: str) -> list[tuple[int, str]]:
    out, depth, cur, sign = [], 0, "", 1
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-":
            if cur.strip():
                out.append((sign, cur.strip()))
            elif ch == "-" and not out and not cur.strip():
                pass
            cur = ""
            sign = -1 if ch == "-" else 1
            continue
        cur += ch
    if cur.strip():
        out.append((sign, cur.strip()))
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    return out


def parse_poly(R: FiniteRing, text: str) -> Coeffs:
    """Parse the text form produced by render_poly (also accepts '-' between terms)."""
    acc: Coeffs = ()
    t = text.replace(" ", "")
    if t in ("", "0"):
        return ()
    for sign, term in _split_terms(t):
        k = term.find("X")
        if k < 0:
            coef_txt, mono = term, ""
        else:
            coef_txt, mono = term[:k], term[k:]
        coef_txt = coef_txt.rstrip("*")
        if not coef_txt:
            c = R.one
        else:
            try:
                c = R.parse_element(coef_txt)
            except (ValueError, KeyError):
                if coef_txt.startswith("(") and coef_txt.endswith(")"):
                    c = R.parse_element(coef_txt[1:-1])
                else:
                    raise
        if mono == "":
            e = 0
        elif mono == "X":
            e = 1
        elif mono.startswith("X^") and mono[2:].isdigit():
            e = int(mono[2:])
        else:
            raise ValueError(f"cannot read monomial {mono!r} in {text!r}")
        if sign < 0:
            c = R.neg(c)
        acc = padd(R, acc, pxpow(trim((c,)), e))
    return acc


# ------------------------------------------------------------------ classifiers


@dataclass(frozen=True)
class PolyClass:
    unit: bool
    zero_divisor: bool
    nilpotent: bool
    idempotent: bool
    regular: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def classify_poly(f: Polynomial) -> PolyClass:
    R, c = f.ring, f.coeffs
    zd = annihilating_constant(R, c) is not None
    return PolyClass(
        unit=is_unit(R, c),
        zero_divisor=zd,
        nilpotent=is_nilpotent(R, c),
        idempotent=is_idempotent(R, c),
        regular=not zd,
    )


def reduce_mod_nil(f: Polynomial) -> Polynomial:
    Q = reduction_mod_nil(f.ring)
    return Polynomial(Q, trim(Q.projection[a] for a in f.coeffs))


def split_components(f: Polynomial) -> list[Polynomial]:
    R = f.ring
    return [Polynomial(c.ring, p) for c, p in zip(R.local_components, split_coeffs(R, f.coeffs))]


def assemble_components(R: FiniteRing, parts: list[Polynomial]) -> Polynomial:
    return Polynomial(R, assemble_coeffs(R, [p.coeffs for p in parts]))


def default_bound(f: Polynomial) -> int:
    return max(f.degree, 0) + f.ring.nilpotency_index


# ------------------------------------------------------------------ associates


def _local_assoc_data(S: FiniteRing, f: Coeffs, g: Coeffs, bound: int) -> tuple:
    """(assoc, strong, every multiplier a unit, every multiplier regular, exact) in one local ring."""
    if not f and not g:
        return True, True, False, False, True
    if not f or not g:
        return False, False, False, False, True
    rf, rg = is_regular(S, f), is_regular(S, g)
    if rf and rg:
        same = monic_normal_form(S, f)[1] == monic_normal_form(S, g)[1]
        return same, same, same, same, True
    if rf != rg:
        return False, False, False, False, True
    mult = cofactors(S, g, f, bound)  # f = r g
    back = cofactors(S, f, g, bound, limit=1)
    assoc = bool(mult) and bool(back)
    strong = any(is_unit(S, r) for r in mult)
    all_units = assoc and all(is_unit(S, r) for r in mult)
    all_reg = assoc and all(is_regular(S, r) for r in mult)
    return assoc, strong, all_units, all_reg, False


def poly_associates(f: Polynomial, g: Polynomial, search_bound: int | None = None) -> AssocVector:
    """All five associate relations between f and g in R[X]."""
    R = f.ring
    if g.ring is not R:
        raise RingMismatchError(f"{f.ring.name} vs {g.ring.name}")
    bound = max(default_bound(f), default_bound(g)) if search_bound is None else search_bound
    if bound < max(f.degree, g.degree):
        raise ValueError(f"search bound {bound} is below the degrees {f.degree}, {g.degree}")
    if f.degree <= 0 and g.degree <= 0:
        return constant_associates(R, f.coeffs[0] if f.coeffs else 0, g.coeffs[0] if g.coeffs else 0)
    parts = [
        _local_assoc_data(c.ring, pf, pg, bound)
        for c, pf, pg in zip(R.local_components, split_coeffs(R, f.coeffs), split_coeffs(R, g.coeffs))
    ]
    assoc = all(p[0] for p in parts)
    strong = all(p[1] for p in parts)
    both_zero = not f.coeffs and not g.coeffs
    vs = both_zero or (bool(f.coeffs) and assoc and all(p[2] for p in parts))
    vsr = both_zero or (bool(f.coeffs) and assoc and all(p[3] for p in parts))
    exact = all(p[4] for p in parts)
    return AssocVector(
        assoc,
        strong,
        vs,
        assoc,  # strongly regular associates coincide with associates in R[X]
        vsr,
        tier="exact" if exact else "bounded",
        bound=None if exact else bound,
    )


def constant_associates(R: FiniteRing, a: int, b: int) -> AssocVector:
    """Associate relations between constants a, b viewed in R[X] (exact)."""
    T = theory(R)
    assoc = T.assoc(a, b)
    return AssocVector(
        assoc,
        T.strong(a, b),
        constant_very_strong_assoc_in_polyring(R, a, b),
        assoc,
        # for finite R, regular constants are units; the polynomial multipliers
        # r + cX with c in ann(b) stay regular exactly when r is a unit
        T.very_strong_regular(a, b),
    )


def constant_very_strong_assoc_in_polyring(R: FiniteRing, a: int, b: int) -> bool:
    T = theory(R)
    if not T.very_strong(a, b):
        return False
    return a == 0 or R.annihilator(b) <= R.nilradical
