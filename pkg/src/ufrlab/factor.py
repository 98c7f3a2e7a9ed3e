"""Divisors, irreducibility and factorizations in R[X] for a finite ring R.

R[X] splits as the product of S[X] over the local components S of R, so all
questions are answered one component at a time and recombined.

Inside a local component S with maximal ideal M:

* a regular polynomial (one with a unit coefficient) is associated to exactly
  one monic polynomial; its divisors are monic, found by lifting divisors of
  its image over the residue field.  Everything about regular polynomials is
  decided exactly.
* a nonzero polynomial in M[X] is handled by bounded search: candidate
  divisors and cofactors have degree at most the bound.  Such verdicts carry
  the tier "bounded" unless backed by an explicit witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Any

from .elements import Factorization, theory
from .poly import (
    Coeffs,
    Polynomial,
    all_polys,
    assemble_coeffs,
    cofactors,
    is_regular,
    is_unit,
    lift_component,
    monic_normal_form,
    pdivmod,
    pmul,
    ppow,
    pxpow,
    render_poly,
    split_coeffs,
    trim,
)
from .ring import FiniteRing, reduction_mod_nil

EXACT = "exact"
BOUNDED = "bounded"


@dataclass(frozen=True)
class Verdict:
    value: bool
    tier: str
    bound: int | None = None
    witness: Any = None

    def __bool__(self):
        return self.value


@dataclass(frozen=True)
class DivisorReport:
    classes: tuple  # canonical representatives (Polynomial)
    tier: str
    bound: int


@dataclass(frozen=True)
class FactorizationReport:
    subject: Polynomial
    factorizations: tuple  # of Factorization
    tier: str
    deg_bound: int
    len_cap: int
    truncated: bool

    @property
    def lengths(self) -> set:
        return {f.length for f in self.factorizations}

    @property
    def class_count(self) -> int:
        return len({f.classes for f in self.factorizations})


@dataclass(frozen=True)
class LengthSet:
    lengths: frozenset
    deg_bound: int | None
    len_cap: int | None
    saturated: bool
    tier: str

    def __str__(self):
        return "{" + ",".join(str(x) for x in sorted(self.lengths)) + "}"


# ====================================================================== local


@dataclass
class RegularData:
    """Divisor lattice of a monic polynomial over a local ring."""

    top: Coeffs
    divisors: list
    splits: dict  # d -> list of (e, q) with e*q = d, both of positive degree
    atoms: frozenset
    _lengths: dict = field(default_factory=dict)
    _facs: dict = field(default_factory=dict)

    def lengths(self, d: Coeffs) -> frozenset:
        if d not in self._lengths:
            if len(d) == 1:
                out = frozenset({0})
            elif d in self.atoms:
                out = frozenset({1})
            else:
                acc = set()
                for e, q in self.splits[d]:
                    if e in self.atoms:
                        acc |= {1 + k for k in self.lengths(q)}
                out = frozenset(acc)
            self._lengths[d] = out
        return self._lengths[d]

    def factorizations(self, d: Coeffs, cap: int) -> frozenset:
        """Multisets (sorted tuples) of monic atoms with product d, length <= cap."""
        key = (d, cap)
        if key not in self._facs:
            if len(d) == 1:
                out = frozenset({()})
            elif cap <= 0:
                out = frozenset()
            else:
                acc = set()
                if d in self.atoms:
                    acc.add((d,))
                for e, q in self.splits[d]:
                    if e in self.atoms:
                        for rest in self.factorizations(q, cap - 1):
                            acc.add(tuple(sorted((e,) + rest, key=_poly_key)))
                out = frozenset(acc)
            self._facs[key] = out
        return self._facs[key]


def _poly_key(p: Coeffs):
    return (len(p), p)


class LocalEngine:
    """Factorization machinery over one local ring S."""

    def __init__(self, S: FiniteRing):
        if not S.is_local:
            raise ValueError(f"{S.name} is not local")
        self.S = S
        self.K = reduction_mod_nil(S)
        self.M = sorted(S.nilradical)
        self.lifts: dict[int, list[int]] = {}
        for s in range(S.size):
            self.lifts.setdefault(self.K.projection[s], []).append(s)
        self._monic: dict = {}
        self._regular: dict = {}
        self._universe: dict = {}
        self._rel: dict = {}
        self._nonreg_pairs: dict = {}
        self._types: dict = {}
        self._class_rep: dict = {}
        self._is_atom: dict = {}
        self._facs: dict = {}

    # ------------------------------------------------------------ monic divisors

    def residue(self, p: Coeffs) -> Coeffs:
        return trim(self.K.projection[a] for a in p)

    def _monic_with_residue(self, gbar: Coeffs):
        S = self.S
        choices = [self.lifts[c] for c in gbar[:-1]]
        for low in cartesian(*choices):
            yield tuple(low) + (S.one,)

    def monic_of_degree(self, m: int):
        K = self.K
        for low in cartesian(range(K.size), repeat=m):
            yield tuple(low) + (K.one,)

    def monic_divisors(self, p: Coeffs, max_deg: int | None = None) -> list:
        """Monic G with G | p; for p = 0 every monic G up to max_deg."""
        key = (p, max_deg)
        if key in self._monic:
            return self._monic[key]
        S, K = self.S, self.K
        regular = bool(p) and is_regular(S, p)
        if regular:
            top = max(i for i, c in enumerate(p) if c in S.units)
        elif p:
            top = len(p) - 1
        else:
            top = max_deg if max_deg is not None else 0
        if max_deg is not None:
            top = min(top, max_deg)
        pbar = self.residue(p)
        out = []
        for m in range(top + 1):
            for gbar in self.monic_of_degree(m):
                if regular and pdivmod(K, pbar, gbar)[1]:
                    continue
                for G in self._monic_with_residue(gbar):
                    if not p or not pdivmod(S, p, G)[1]:
                        out.append(G)
        self._monic[key] = out
        return out

    def regular_data(self, P: Coeffs) -> RegularData:
        """Lattice of monic divisors of the monic polynomial P."""
        if P in self._regular:
            return self._regular[P]
        S = self.S
        D = self.monic_divisors(P)
        Dset = set(D)
        splits: dict = {d: [] for d in D}
        by_deg: dict = {}
        for d in D:
            by_deg.setdefault(len(d) - 1, []).append(d)
        n = len(P) - 1
        for i in range(1, n + 1):
            for j in range(i, n - i + 1):
                for e in by_deg.get(i, ()):
                    for q in by_deg.get(j, ()):
                        if i == j and q < e:
                            continue
                        d = pmul(S, e, q)
                        if d in Dset:
                            splits[d].append((e, q))
                            if e != q:
                                splits[d].append((q, e))
        atoms = frozenset(d for d in D if len(d) > 1 and not splits[d])
        data = RegularData(P, D, splits, atoms)
        self._regular[P] = data
        return data

    def is_regular_atom(self, G: Coeffs) -> bool:
        return G in self.regular_data(G).atoms

    # ------------------------------------------------------------ bounded universe

    def nonregular_universe(self, B: int) -> list:
        if B not in self._universe:
            self._universe[B] = [p for p in all_polys(self.S, B, self.M) if p]
        return self._universe[B]

    def nonregular_pairs(self, p: Coeffs, B: int) -> list:
        """(g, cofactors) for nonzero g in M[X] of degree <= B dividing p."""
        key = (p, B)
        if key not in self._nonreg_pairs:
            out = []
            for g in self.nonregular_universe(B):
                hs = cofactors(self.S, g, p, B)
                if hs:
                    out.append((g, hs))
            self._nonreg_pairs[key] = out
        return self._nonreg_pairs[key]

    def regular_pairs(self, p: Coeffs, B: int) -> list:
        """(G, p/G) for monic G dividing p with degree <= B."""
        S = self.S
        out = []
        for G in self.monic_divisors(p, B if not p or not is_regular(S, p) else None):
            q = pdivmod(S, p, G)[0] if p else ()
            out.append((G, q))
        return out

    # ------------------------------------------------------------ relations to a subject

    def rel(self, q: Coeffs, p: Coeffs, B: int) -> tuple:
        """(q~p, q strongly assoc p, q very strongly assoc p (multipliers all units), q unit, q ~ constant)."""
        key = (q, p, B)
        if key in self._rel:
            return self._rel[key]
        S = self.S
        unit = is_unit(S, q)
        const = self.is_const_like(q, B)
        if not p:
            r = (not q, not q, False, unit, const)
        elif not q:
            r = (False, False, False, unit, const)
        else:
            rq, rp = is_regular(S, q), is_regular(S, p)
            if rq and rp:
                same = monic_normal_form(S, q)[1] == monic_normal_form(S, p)[1]
                r = (same, same, same, unit, const)
            elif rq != rp:
                r = (False, False, False, unit, const)
            else:
                mult = cofactors(S, q, p, B)
                assoc = bool(mult) and bool(cofactors(S, p, q, B, limit=1))
                strong = any(is_unit(S, m) for m in mult)
                vsc = assoc and all(is_unit(S, m) for m in mult)
                r = (assoc, strong, vsc, unit, const)
        self._rel[key] = r
        return r

    def is_const_like(self, q: Coeffs, B: int) -> bool:
        """q = u*a for a unit polynomial u and a constant a."""
        S = self.S
        if len(q) <= 1:
            return True
        if is_regular(S, q):
            return is_unit(S, q)
        for a in self.M:
            if a and any(is_unit(S, u) for u in cofactors(S, (a,), q, B)):
                return True
        return False

    # ------------------------------------------------------------ type sets

    def pair_types(self, p: Coeffs, B: int) -> tuple[dict, bool]:
        """type tuple -> witness pair (g, h) with g*h = p; plus exactness flag.

        Type layout: (g~p, h~p, g≈p, h≈p, g≅p, h≅p, g unit, h unit, g≈const, h≈const)
        where "≅" means "associate with every multiplier a unit".
        """
        key = (p, B)
        if key in self._types:
            return self._types[key]
        S = self.S
        one = (S.one,)
        X = (0, S.one)
        types: dict = {}
        if not p:
            exact = True
            types[(True, True, True, True, False, False, False, False, True, True)] = ((), ())
            types[(True, False, True, False, False, False, False, True, True, True)] = ((), one)
            types[(True, False, True, False, False, False, False, False, True, False)] = ((), X)
            types[(False, True, False, True, False, False, True, False, True, True)] = (one, ())
            types[(False, True, False, True, False, False, False, False, False, True)] = (X, ())
            if not S.is_field:
                m = self.socle_element()
                types[(False,) * 8 + (True, True)] = ((m,), (m,))
                types[(False,) * 8 + (False, True)] = ((0, m), (m,))
                types[(False,) * 10] = ((0, m), (0, m))
        elif is_regular(S, p):
            exact = True
            u, P = monic_normal_form(S, p)
            if len(P) == 1:
                types[(True,) * 10] = (one, p)
            else:
                data = self.regular_data(P)
                types[(False, True, False, True, False, True, True, False, True, False)] = (one, p)
                types[(True, False, True, False, True, False, False, True, False, True)] = (P, u)
                for d in data.divisors:
                    if 1 < len(d) < len(P):
                        q = pdivmod(S, p, d)[0]
                        types[(False,) * 10] = (d, q)
                        break
        else:
            exact = False
            for g, h in self.regular_pairs(p, B):
                self._add_type(types, g, h, p, B)
            for g, hs in self.nonregular_pairs(p, B):
                for h in hs:
                    self._add_type(types, g, h, p, B)
        self._types[key] = (types, exact)
        return types, exact

    def _add_type(self, types: dict, g, h, p, B):
        rg, rh = self.rel(g, p, B), self.rel(h, p, B)
        t = (rg[0], rh[0], rg[1], rh[1], rg[2], rh[2], rg[3], rh[3], rg[4], rh[4])
        if t not in types:
            types[t] = (g, h)

    def divisor_types(self, p: Coeffs, B: int) -> tuple[dict, bool]:
        """(g unit, g ~ p) -> witness divisor g."""
        S = self.S
        one = (S.one,)
        types: dict = {}
        if not p:
            return {(False, True): (), (True, False): one, (False, False): (0, S.one)}, True
        if is_regular(S, p):
            P = monic_normal_form(S, p)[1]
            if len(P) == 1:
                return {(True, True): one}, True
            types[(True, False)] = one
            types[(False, True)] = P
            for d in self.regular_data(P).divisors:
                if 1 < len(d) < len(P):
                    types[(False, False)] = d
                    break
            return types, True
        for g, _ in self.regular_pairs(p, B):
            t = (is_unit(S, g), False)
            types.setdefault(t, g)
        for g, _ in self.nonregular_pairs(p, B):
            r = self.rel(g, p, B)
            types.setdefault((r[3], r[0]), g)
        return types, False

    def socle_element(self) -> int:
        S = self.S
        for m in self.M:
            if m and all(S.mul(m, x) == 0 for x in self.M):
                return m
        raise ValueError("field has no nonzero socle element in its maximal ideal")

    # ------------------------------------------------------------ classes and atoms

    def class_key(self, a: Coeffs, B: int) -> tuple:
        if a and is_regular(self.S, a):
            return ("r", monic_normal_form(self.S, a)[1])
        key = (a, B)
        if key not in self._class_rep:
            if not a:
                rep = ()
            else:
                rep = a
                for c in self.nonregular_universe(B):
                    if _poly_key(c) >= _poly_key(rep):
                        break
                    if self.rel(c, a, B)[0]:
                        rep = c
                        break
            self._class_rep[key] = rep
        return ("n", self._class_rep[key])

    def class_members(self, rep: Coeffs, max_deg: int, B: int) -> list:
        """Members of the associate class of rep with degree <= max_deg."""
        S = self.S
        if not rep:
            return [()]
        if is_regular(S, rep):
            # u * P with u a unit of S[X]: degree grows by deg u
            out = set()
            for k in range(max_deg - len(rep) + 2):
                for u0 in sorted(S.units):
                    for tail in cartesian(self.M, repeat=k):
                        if k and not tail[-1]:
                            continue
                        out.add(pmul(S, (u0,) + tail, rep))
            return sorted(out, key=_poly_key)
        return [c for c in self.nonregular_universe(max_deg) if self.rel(c, rep, B)[0]]

    def is_atom(self, a: Coeffs, B: int) -> tuple[bool, bool]:
        """(irreducible, exact)"""
        S = self.S
        if a and is_unit(S, a):
            return False, True
        if a and is_regular(S, a):
            return self.is_regular_atom(monic_normal_form(S, a)[1]), True
        key = (a, B)
        if key not in self._is_atom:
            types, exact = self.pair_types(a, B)
            bad = any(not t[0] and not t[1] for t in types)
            self._is_atom[key] = (not bad, exact or bad)
        return self._is_atom[key]

    def factorizations(self, p: Coeffs, B: int, cap: int) -> dict:
        """Class multiset -> realizing tuple (exact product p), lengths <= cap.  p not a unit."""
        key = (p, B, cap)
        if key in self._facs:
            return self._facs[key]
        S = self.S
        out: dict = {}
        if cap <= 0:
            self._facs[key] = out
            return out
        if p and is_regular(S, p):
            u, P = monic_normal_form(S, p)
            data = self.regular_data(P)
            for fac in data.factorizations(P, cap):
                real = (pmul(S, u, fac[0]),) + fac[1:]
                ms = tuple(sorted((("r", a) for a in fac), key=_class_sort))
                out[ms] = real
            self._facs[key] = out
            return out
        ck = self.class_key
        if self.is_atom(p, B)[0]:
            out[(ck(p, B),)] = (p,)
        # regular atoms
        for G, q in self.regular_pairs(p, B):
            if len(G) > 1 and self.is_regular_atom(G):
                if q and is_unit(S, q):
                    _merge(out, (ck(G, B),), (pmul(S, G, q),), S.one)
                    continue
                for ms, real in self.factorizations(q, B, cap - 1).items():
                    _merge(out, tuple(sorted(ms + (ck(G, B),), key=_class_sort)), (G,) + real, S.one)
        # nonregular atoms
        for g, hs in self.nonregular_pairs(p, B):
            if not self.is_atom(g, B)[0]:
                continue
            kg = ck(g, B)
            for h in hs:
                if h and is_unit(S, h):
                    _merge(out, (kg,), (pmul(S, g, h),), S.one)
                    continue
                for ms, real in self.factorizations(h, B, cap - 1).items():
                    _merge(out, tuple(sorted(ms + (kg,), key=_class_sort)), (g,) + real, S.one)
        self._facs[key] = out
        return out


def _class_sort(k):
    return (k[0], _poly_key(k[1]))


def _merge(out: dict, ms: tuple, real: tuple, one: int):
    # prefer monic factors, then the smallest coefficients
    def key(t):
        return tuple((p[-1] != one, len(p), p) for p in t)

    if ms not in out or key(real) < key(out[ms]):
        out[ms] = real


def local_engine(S: FiniteRing) -> LocalEngine:
    cache = S.__dict__.setdefault("_extra_cache", {})
    if "local_engine" not in cache:
        cache["local_engine"] = LocalEngine(S)
    return cache["local_engine"]


# ====================================================================== global


def _components(f: Polynomial):
    R = f.ring
    return list(zip(R.local_components, split_coeffs(R, f.coeffs)))


def _default_bound(f: Polynomial) -> int:
    return max(f.degree, 0) + f.ring.nilpotency_index


def _check_bound(f: Polynomial, bound: int | None) -> int:
    b = _default_bound(f) if bound is None else bound
    if b < f.degree:
        raise ValueError(f"bound {b} is below deg f = {f.degree}")
    return b


def _find_mixed(type_sets: list[dict], ia: int, ib: int):
    """Pick one type per component so that not all have flag ia and not all have flag ib."""
    states = {(True, True): []}
    for ts in type_sets:
        nxt = {}
        for (aa, bb), picks in states.items():
            for t in ts:
                s = (aa and t[ia], bb and t[ib])
                if s not in nxt:
                    nxt[s] = picks + [t]
        states = nxt
    return states.get((False, False))


def _assemble_pair(R: FiniteRing, type_sets: list[dict], picks: list) -> tuple[Polynomial, Polynomial]:
    gs = [ts[t][0] for ts, t in zip(type_sets, picks)]
    hs = [ts[t][1] for ts, t in zip(type_sets, picks)]
    return Polynomial(R, assemble_coeffs(R, gs)), Polynomial(R, assemble_coeffs(R, hs))


_KIND_INDEX = {
    "irreducible": (0, 1),
    "strongly_irreducible": (2, 3),
    "very_strongly_irreducible": (4, 5),
}


def is_irreducible_poly(
    f: Polynomial, bound: int | None = None, kind: str = "irreducible", use_constant_shortcut: bool = True
) -> Verdict:
    """Irreducibility of f in R[X] (kind: irreducible, strongly/very strongly irreducible, m_irreducible)."""
    R = f.ring
    B = _check_bound(f, bound)
    if is_unit(R, f.coeffs):
        raise ValueError(f"{render_poly(R, f.coeffs)} is a unit")
    if not f.coeffs:
        # every flavour of irreducibility of 0 means "R[X] has no zero divisors"
        if kind == "m_irreducible":
            return Verdict(False, EXACT, None, None)
        return Verdict(R.is_domain, EXACT, None)
    if use_constant_shortcut and kind == "irreducible" and f.degree == 0:
        return Verdict(theory(R).classify(f.coeffs[0]).irreducible, EXACT, None)
    comps = _components(f)
    if kind == "m_irreducible":
        sets, exacts = [], []
        for c, p in comps:
            ts, ex = local_engine(c.ring).divisor_types(p, B)
            sets.append(ts)
            exacts.append(ex)
        picks = _find_mixed(sets, 0, 1)
        if picks is not None:
            g = Polynomial(R, assemble_coeffs(R, [ts[t] for ts, t in zip(sets, picks)]))
            return Verdict(False, EXACT, B, g)
        return Verdict(True, EXACT if all(exacts) else BOUNDED, B)
    ia, ib = _KIND_INDEX[kind]
    sets, exacts = [], []
    for c, p in comps:
        ts, ex = local_engine(c.ring).pair_types(p, B)
        sets.append(ts)
        exacts.append(ex)
    picks = _find_mixed(sets, ia, ib)
    if picks is not None:
        return Verdict(False, EXACT, B, _assemble_pair(R, sets, picks))
    return Verdict(True, EXACT if all(exacts) else BOUNDED, B)


def is_indecomposable_poly(f: Polynomial, bound: int | None = None) -> Verdict:
    """f = gh forces g or h to be strongly associated to a constant."""
    R = f.ring
    B = _check_bound(f, bound)
    if not f.coeffs:
        # 0 is indecomposable exactly when 0 is irreducible, i.e. R is a domain
        if R.is_domain:
            return Verdict(True, EXACT, None)
        a, b = next(
            (a, b) for a in range(1, R.size) for b in range(1, R.size) if R.mul(a, b) == 0
        )
        # 0 = (a + aX)(b + bX), and neither factor is strongly associated to a constant
        return Verdict(False, EXACT, None, (Polynomial(R, (a, a)), Polynomial(R, (b, b))))
    sets, exacts = [], []
    for c, p in _components(f):
        ts, ex = local_engine(c.ring).pair_types(p, B)
        sets.append(ts)
        exacts.append(ex)
    picks = _find_mixed(sets, 8, 9)
    if picks is not None:
        return Verdict(False, EXACT, B, _assemble_pair(R, sets, picks))
    return Verdict(True, EXACT if all(exacts) else BOUNDED, B)


def _local_classes(eng: LocalEngine, p: Coeffs, B: int) -> tuple[list, bool]:
    S = eng.S
    if p and is_regular(S, p):
        P = monic_normal_form(S, p)[1]
        return list(eng.regular_data(P).divisors), True
    reps = [G for G, _ in eng.regular_pairs(p, B)]
    nonreg = [g for g, _ in eng.nonregular_pairs(p, B)]
    seen = {}
    for g in nonreg:
        k = eng.class_key(g, B)
        seen.setdefault(k, g)
    reps.extend(sorted({k[1] for k in seen}, key=_poly_key))
    if not p:
        reps.append(())
    return reps, False


def divisors_poly(f: Polynomial, bound: int | None = None) -> DivisorReport:
    """Associate classes of divisors of f, one canonical representative each."""
    R = f.ring
    B = _check_bound(f, bound)
    per, exact = [], True
    for c, p in _components(f):
        reps, ex = _local_classes(local_engine(c.ring), p, B)
        per.append(reps)
        exact = exact and ex
    engines = [local_engine(c.ring) for c in R.local_components]
    out = [Polynomial(R, canonical_representative(R, engines, choice, B)) for choice in cartesian(*per)]
    out.sort(key=lambda g: _poly_key(g.coeffs))
    return DivisorReport(tuple(out), EXACT if exact else BOUNDED, B)


def canonical_representative(R: FiniteRing, engines: list, reps: tuple, B: int) -> Coeffs:
    """Least member of the product class: minimal degree, then least coefficient vector."""
    if len(engines) == 1:
        return engines[0].class_members(reps[0], max(len(reps[0]) - 1, 0), B)[0]
    top = max(len(r) - 1 for r in reps)
    members = [eng.class_members(r, top, B) for eng, r in zip(engines, reps)]
    members = [[m + (eng.S.zero,) * (top + 1 - len(m)) for m in ms] for eng, ms in zip(engines, members)]
    chosen = []
    for k in range(top + 1):
        # pick the least assembled k-th coefficient, then keep only compatible members
        best = min(
            cartesian(*[sorted({m[k] for m in ms}) for ms in members]),
            key=lambda coords: assemble_coeffs(R, [(c,) for c in coords])[:1] or (R.zero,),
        )
        chosen.append(best)
        members = [[m for m in ms if m[k] == c] for ms, c in zip(members, best)]
    return trim(assemble_coeffs(R, [tuple(c[i] for c in chosen) for i in range(len(engines))]))


def atomic_factorizations_poly(
    f: Polynomial, deg_bound: int | None = None, len_cap: int | None = None, allow_zero: bool = False
) -> FactorizationReport:
    """Atomic factorizations of f up to order and associates."""
    R = f.ring
    if is_unit(R, f.coeffs):
        raise ValueError(f"{render_poly(R, f.coeffs)} is a unit")
    if not f.coeffs and not allow_zero:
        raise ValueError("the zero polynomial has unbounded factorizations; pass allow_zero=True")
    B = _check_bound(f, deg_bound)
    cap = len_cap if len_cap is not None else max(f.degree, 1) + R.nilpotency_index + len(R.local_components) + 2
    comps = _components(f)
    per = []  # list of (component index, list of (classes, realizer)) for nonunit parts
    units = []
    exact = True
    truncated = False
    for i, (c, p) in enumerate(comps):
        eng = local_engine(c.ring)
        S = c.ring
        if p and is_unit(S, p):
            units.append(p)
            continue
        units.append((S.one,))
        found = eng.factorizations(p, B, cap + 1)
        if not (p and is_regular(S, p)):
            exact = False
        items = sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0]))
        per.append((i, items))
    facs = []
    for combo in cartesian(*[items for _, items in per]):
        length = sum(len(ms) for ms, _ in combo)
        if length > cap:
            truncated = True
            continue
        classes = tuple((i, ms) for (i, _), (ms, _) in zip(per, combo))
        factors = []
        for (i, _), (_, real) in zip(per, combo):
            factors.extend(Polynomial(R, lift_component(R, i, a)) for a in real)
        prod_f: Coeffs = (R.one,)
        for g in factors:
            prod_f = pmul(R, prod_f, g.coeffs)
        unit = Polynomial(R, assemble_coeffs(R, units))
        prod_u = pmul(R, unit.coeffs, prod_f)
        if prod_u != f.coeffs:
            # component realizers multiply back exactly, so a mismatch is a bug
            raise AssertionError("factorization does not multiply back to the subject")
        flags = _factorization_flags(f, unit, factors, regular=is_regular(R, f.coeffs) if f.coeffs else False)
        facs.append(
            Factorization(
                f,
                tuple(factors),
                unit if unit.coeffs != (R.one,) else None,
                classes,
                True,
                **flags,
            )
        )
    facs.sort(key=lambda fa: (fa.length, fa.classes))
    return FactorizationReport(f, tuple(facs), EXACT if exact else BOUNDED, B, cap, truncated)


def _factorization_flags(f: Polynomial, unit: Polynomial, factors: list, regular: bool) -> dict:
    if regular:
        return dict(reduced=True, mu_reduced=True, strongly_reduced=True, strongly_mu_reduced=True)
    from itertools import combinations

    from .poly import poly_associates

    R = f.ring
    n = len(factors)
    idx = range(n)

    def prod_of(sub):
        out = unit.coeffs
        for i in sub:
            out = pmul(R, out, factors[i].coeffs)
        return Polynomial(R, out)

    def strong(p: Polynomial) -> bool:
        if p.degree < 0 or f.degree < 0:
            return p.coeffs == f.coeffs
        b = max(p.degree, f.degree, 0) + R.nilpotency_index
        return poly_associates(f, p, b).strong_assoc

    drop_one = [prod_of([j for j in idx if j != i]) for i in idx]
    proper = [prod_of(s) for k in range(n) for s in combinations(idx, k)]
    return dict(
        reduced=all(p != f for p in drop_one),
        strongly_reduced=all(p != f for p in proper),
        mu_reduced=all(not strong(p) for p in drop_one),
        strongly_mu_reduced=all(not strong(p) for p in proper),
    )


# ====================================================================== X^n


def set_of_lengths_Xn(R: FiniteRing, n: int, deg_bound: int | None = None) -> LengthSet:
    """Lengths of atomic factorizations of X^n (exact: X^n is regular)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    total = {0}
    for c in R.local_components:
        S = c.ring
        P = (0,) * n + (S.one,)
        ls = local_engine(S).regular_data(P).lengths(P)
        total = {a + b for a in total for b in ls}
    return LengthSet(frozenset(total), deg_bound, None, True, EXACT)


@dataclass(frozen=True)
class XFactorization:
    factorization: Factorization
    uniqueness_count: int
    primes: bool
    search_bound: int


def factor_X(R: FiniteRing, search_bound: int = 2) -> XFactorization:
    """X = prod over local components of (1,...,X,...,1), with an independent uniqueness count."""
    X = Polynomial.x(R)
    comps = R.local_components
    factors = tuple(Polynomial(R, lift_component(R, i, (0, c.ring.one))) for i, c in enumerate(comps))
    classes = tuple(canonical_class(g) for g in factors)
    fac = Factorization(X, factors, None, classes, True, True, True, True, True)
    found = brute_force_factorizations(X, search_bound, len(comps) + 2)
    primes = all(c.ring.is_field for c in comps)
    return XFactorization(fac, len(found.classes), primes, search_bound)


def canonical_class(g: Polynomial) -> tuple:
    R = g.ring
    B = _default_bound(g)
    return tuple(local_engine(c.ring).class_key(p, B) for c, p in _components(g))


# ====================================================================== brute force


@dataclass
class BruteForceResult:
    subject: Polynomial
    bound: int
    divisors: list
    atoms: list
    classes: dict  # class multiset (sorted tuple of class indices) -> realizing tuple
    class_of: dict

    @property
    def lengths(self) -> set:
        return {len(ms) for ms in self.classes}


def brute_force_factorizations(f: Polynomial, bound: int, len_cap: int) -> BruteForceResult:
    """Atomic factorizations by plain enumeration of all polynomials of degree <= bound.

    Independent of the component splitting and monic normal forms used
    elsewhere: units, associates and atoms are all decided by cofactor search
    inside the same finite candidate set.
    """
    R = f.ring
    cands = [p for p in all_polys(R, bound) if p]
    one = (R.one,)

    def divides(g, h):
        return bool(cofactors(R, g, h, bound, limit=1))

    units = {p for p in cands if divides(p, one)}
    divs = []
    cof = {}
    for g in cands:
        hs = cofactors(R, g, f.coeffs, bound)
        if hs:
            divs.append(g)
            cof[g] = hs
    divset = set(divs)
    # associate classes among divisors
    class_of: dict = {}
    reps: list = []
    for g in divs:
        for k, r in enumerate(reps):
            if divides(g, r) and divides(r, g):
                class_of[g] = k
                break
        else:
            class_of[g] = len(reps)
            reps.append(g)
    def assoc(a, g):
        return divides(a, g) and divides(g, a)

    # atoms: nonunit divisors whose every split g = ab has a ~ g or b ~ g
    atoms = []
    for g in divs:
        if g in units:
            continue
        ok = True
        for a in cands:
            for b in cofactors(R, a, g, bound):
                if not b:
                    continue
                if not assoc(a, g) and not assoc(b, g):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            atoms.append(g)
    memo: dict = {}

    def facs(p, cap):
        key = (p, cap)
        if key in memo:
            return memo[key]
        out: dict = {}
        if cap > 0:
            for a in atoms:
                for c in cofactors(R, a, p, bound):
                    if c in units:
                        ms = (class_of[a],)
                        out.setdefault(ms, (pmul(R, a, c),))
                    elif c and c in divset and c in cof:
                        for ms, real in facs(c, cap - 1).items():
                            key2 = tuple(sorted(ms + (class_of[a],)))
                            out.setdefault(key2, (a,) + real)
        memo[key] = out
        return out

    classes = facs(f.coeffs, len_cap)
    return BruteForceResult(f, bound, divs, atoms, classes, class_of)


# ====================================================================== Thm 6.2 style witness


@dataclass(frozen=True)
class LengthWitness:
    subject: Polynomial
    short: tuple  # factors
    long: tuple
    nilpotent_atom: int
    exponent: int


def nilpotent_atom_witness(R: FiniteRing) -> LengthWitness | None:
    """Two atomic factorizations of X^(2^n) of different lengths, built from a nonzero nilpotent atom b.

    With b^(2^(n-1)) = 0:
    X^(2^n) = (X^(2^(n-1)) + b^(2^(n-2))) ... (X^4 + b^2)(X^2 + b)(X^2 - b).
    Each bracket is factored into atoms and the product is re-verified.
    """
    T = theory(R)
    cands = [b for b in sorted(R.nilradical) if b and T.classify(b).irreducible]
    if not cands or not R.is_local:
        return None
    b = cands[0]
    n = 1
    while R.pow(b, 2 ** (n - 1)) != 0:
        n += 1
    N = 2**n
    X = (0, R.one)
    pieces = []
    for k in range(n - 1, 0, -1):
        pieces.append(_x_pow_plus(R, 2**k, R.pow(b, 2 ** (k - 1))))
    pieces.append(_x_pow_plus(R, 2, R.neg(b)))
    eng = local_engine(R)
    short: list = []
    for piece in pieces:
        u, P = monic_normal_form(R, piece)
        data = eng.regular_data(P)
        fac = min(data.factorizations(P, len(P)), key=lambda t: (len(t), [_poly_key(a) for a in t]))
        fac = (pmul(R, u, fac[0]),) + fac[1:]
        short.extend(fac)
    subject = pxpow((R.one,), N)
    check: Coeffs = (R.one,)
    for g in short:
        check = pmul(R, check, g)
    if check != subject:
        raise AssertionError("length witness does not multiply back to X^(2^n)")
    long = tuple(Polynomial(R, X) for _ in range(N))
    if ppow(R, X, N) != subject:
        raise AssertionError("X^(2^n) mismatch")
    return LengthWitness(
        Polynomial(R, subject), tuple(Polynomial(R, g) for g in short), long, b, n
    )


def _x_pow_plus(R: FiniteRing, k: int, c: int) -> Coeffs:
    return trim((c,) + (0,) * (k - 1) + (R.one,))


# ====================================================================== U-decompositions


@dataclass(frozen=True)
class UDecomposition:
    subject: int
    irrelevant: tuple
    relevant: tuple


def refine_to_u_decomposition(R: FiniteRing, a: int, factors: tuple) -> UDecomposition:
    T = theory(R)
    relevant = list(factors)
    irrelevant = []
    changed = True
    while changed:
        changed = False
        for j, b in enumerate(relevant):
            rest = relevant[:j] + relevant[j + 1 :]
            if rest and b in T.U(T.product(rest)):
                irrelevant.append(b)
                relevant = rest
                changed = True
                break
    return UDecomposition(a, tuple(sorted(irrelevant)), tuple(sorted(relevant)))


def u_decomposition(a) -> UDecomposition:
    """One U-decomposition of the nonunit a, refined from a shortest atomic factorization."""
    from .elements import enumerate_class_factorizations

    R = a.ring
    T = theory(R)
    if a.index in T.units:
        raise ValueError(f"{R.label(a.index)} is a unit")
    found = {}
    cap = 1
    while not found:
        found = enumerate_class_factorizations(T, a.index, cap)
        cap += 1
        if cap > R.size + 4:
            raise ValueError(f"{R.label(a.index)} has no atomic factorization")
    best = min(found.values(), key=lambda t: (len(t), t))
    return refine_to_u_decomposition(R, a.index, best)


def is_u_decomposition(R: FiniteRing, a: int, irrelevant: tuple, relevant: tuple) -> bool:
    T = theory(R)
    if T.product(irrelevant + relevant) != a or not relevant:
        return False
    U_all = T.U(T.product(relevant))
    if any(x not in U_all for x in irrelevant):
        return False
    for j, b in enumerate(relevant):
        if b in T.U(T.product(relevant[:j] + relevant[j + 1 :])):
            return False
    return True


def fletcher_search(R: FiniteRing, len_cap: int | None = None) -> tuple[bool, Any]:
    """Definition check: relevant parts of U-decompositions are unique up to order and ~."""
    from itertools import combinations

    from .elements import default_len_cap

    T = theory(R)
    cap = default_len_cap(R) if len_cap is None else len_cap
    atoms = T.of_kind("irreducible")
    by_prod = T.tuples_by_product(atoms, cap)
    for a in range(R.size):
        if a in T.units:
            continue
        tuples = by_prod.get(a, [])
        if not tuples:
            return False, ("no U-decomposition", a)
        seen: dict = {}
        for t in tuples:
            n = len(t)
            for k in range(1, n + 1):
                for rel_idx in combinations(range(n), k):
                    relevant = tuple(t[i] for i in rel_idx)
                    irrelevant = tuple(t[i] for i in range(n) if i not in rel_idx)
                    if is_u_decomposition(R, a, irrelevant, relevant):
                        key = tuple(sorted(T.class_id[b] for b in relevant))
                        seen.setdefault(key, (irrelevant, relevant))
            if len(seen) > 1:
                return False, (a, list(seen.values())[:2])
    return True, None


def is_fletcher_ufr(R: FiniteRing) -> bool:
    ok, _ = fletcher_search(R)
    structure = _product_of_fields_and_spirs(R)
    if ok != structure:
        raise InconsistencyError("fletcher_ufr", R.name, f"definition {ok}, structure {structure}")
    return ok


def _product_of_fields_and_spirs(R: FiniteRing) -> bool:
    return all(c.ring.is_spir for c in R.local_components)


class InconsistencyError(RuntimeError):
    def __init__(self, flag: str, ring: str, witness: Any):
        super().__init__(f"{flag} disagrees on {ring}: {witness}")
        self.flag = flag
        self.ring = ring
        self.witness = witness


# ====================================================================== weakly prime probe


@dataclass(frozen=True)
class ProbeEntry:
    element: int
    found: bool
    witness: tuple | None  # (f, g) with a | fg != 0, a ∤ f, a ∤ g


@dataclass(frozen=True)
class ProbeReport:
    ring: str
    deg_bound: int
    entries: tuple

    def as_dict(self, R: FiniteRing) -> dict:
        return {
            "ring": self.ring,
            "deg_bound": self.deg_bound,
            "elements": [
                {
                    "element": R.label(e.element),
                    "result": "found" if e.found else "none at bound",
                    "witness": None
                    if e.witness is None
                    else [render_poly(R, e.witness[0]), render_poly(R, e.witness[1])],
                }
                for e in self.entries
            ],
        }


def probe_weakly_prime_lift(R: FiniteRing, deg_bound: int = 3) -> ProbeReport:
    """For each weakly prime a of R, look for f, g of degree <= deg_bound with a | fg != 0, a ∤ f, a ∤ g.

    Divisibility by a constant a is coefficientwise, so a ∤ f means f is
    nonzero over R/aR.  Pairs are enumerated over R/aR with zero product; a
    pair yields a witness for some lift exactly when the lifts f~, g~ (least
    representatives) satisfy f~g~ != 0, a f~ != 0, a g~ != 0 or a^2 != 0.
    """
    from .ring import quotient_ring

    T = theory(R)
    entries = []
    for a in range(R.size):
        if not T.classify(a).weakly_prime:
            continue
        Q = quotient_ring(R, R.principal_ideal(a))
        reps = Q.representatives
        aa = R.mul(a, a)
        witness = None
        for fbar in all_polys(Q, deg_bound):
            if not fbar:
                continue
            for gbar in cofactors(Q, fbar, (), deg_bound):
                if not gbar:
                    continue
                f = tuple(reps[c] for c in fbar)
                g = tuple(reps[c] for c in gbar)
                fg = pmul(R, f, g)
                if fg:
                    witness = (f, g)
                elif any(R.mul(a, c) for c in g):
                    witness = (padd_const(R, f, a), g)
                elif any(R.mul(a, c) for c in f):
                    witness = (f, padd_const(R, g, a))
                elif aa:
                    witness = (padd_const(R, f, a), padd_const(R, g, a))
                if witness:
                    break
            if witness:
                break
        if witness is not None:
            prod_fg = pmul(R, witness[0], witness[1])
            assert prod_fg and all(c in R.principal_ideal(a) for c in prod_fg)
            assert any(c not in R.principal_ideal(a) for c in witness[0])
            assert any(c not in R.principal_ideal(a) for c in witness[1])
        entries.append(ProbeEntry(a, witness is not None, witness))
    return ProbeReport(R.name, deg_bound, tuple(entries))


def padd_const(R: FiniteRing, f: Coeffs, c: int) -> Coeffs:
    """f + c (constant)."""
    out = list(f) or [0]
    out[0] = R.add(out[0], c)
    return trim(out)
