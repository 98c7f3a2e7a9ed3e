"""Verification suite: run named checks over a corpus of finite rings and collect a report.

Each check takes a built ring and the bounds in force and returns a
``CheckResult``.  A check that does not apply to a ring reports "n/a" rather
than passing vacuously.  A ring that fails to build is recorded as an error
and the remaining rings still run.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from itertools import combinations
from pathlib import Path
from typing import Callable

from .classify import (
    classify_poly_ring,
    classify_ring,
    ffr_conditions,
    find_nonisomorphic_factorizations,
    idempotent_length_witness,
)
from .dsl import RingSpecError, parse_ring_spec, render_ring_spec
from .elements import enumerate_class_factorizations, is_atomic_of_kind, is_presimplifiable_ring, theory
from .factor import (
    InconsistencyError,
    atomic_factorizations_poly,
    brute_force_factorizations,
    divisors_poly,
    factor_X,
    is_indecomposable_poly,
    is_irreducible_poly,
    nilpotent_atom_witness,
    probe_weakly_prime_lift,
    set_of_lengths_Xn,
)
from .poly import (
    Polynomial,
    all_polys,
    classify_poly,
    cofactors,
    constant_very_strong_assoc_in_polyring,
    is_unit,
    pmul,
    ppow,
    psub,
    reduce_mod_nil,
    render_poly,
)
from .ring import FiniteRing, build_ring, component_isomorphism

PASS, FAIL, NA, ERROR = "pass", "fail", "n/a", "error"

DEFAULT_CORPUS = (
    *(f"Z({n})" for n in range(2, 17)),
    "Z(2)xZ(2)",
    "Z(2)xZ(3)",
    "Z(2)xZ(4)",
    "Z(2)xZ(2)xZ(2)",
    "Z(2)[s,t]/(s^2,s*t,t^2)",
    "Z(4)[t]/(t^2,2*t)",
    "Z(2)[u]/(u^2+u+1)",
    "Z(3)xZ(3)",
)

Z4_LENGTHS = {
    1: {1},
    2: {2},
    3: {3},
    4: {2, 4},
    5: {3, 4},
    6: {2, 4, 6},
    7: {3, 5, 7},
    8: {2, 3, 4, 6, 8},
}


@dataclass(frozen=True)
class Bounds:
    """Search bounds shared by all checks."""

    search_deg: int = 2  # cofactor / divisor degree for bounded polynomial searches
    assoc_deg: int = 3  # constant-to-polynomial associate search
    oracle_deg: int = 3  # subjects enumerated by the unit / zero-divisor oracle
    oracle_cofactor_deg: int = 6
    probe_deg: int = 3
    collision_deg: int = 3  # regular-subject search for non-isomorphic factorizations
    brute_force_n: int = 5  # X^n cross-checked by the independent enumerator
    len_cap: int | None = None

    @classmethod
    def parse(cls, text: str | None) -> "Bounds":
        """Parse "key=value,key=value"; unknown keys raise ValueError."""
        if not text:
            return cls()
        known = {f.name for f in fields(cls)}
        updates = {}
        for item in text.split(","):
            key, sep, value = item.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in known:
                raise ValueError(f"unknown bound {item.strip()!r}; known: {', '.join(sorted(known))}")
            updates[key] = None if value.strip() == "none" else int(value)
        return replace(cls(), **updates)


@dataclass(frozen=True)
class CheckResult:
    status: str
    tier: str = "exact"
    bound: int | None = None
    detail: dict = field(default_factory=dict)


def _result(ok: bool, tier: str = "exact", bound: int | None = None, **detail) -> CheckResult:
    return CheckResult(PASS if ok else FAIL, tier, bound, detail)


def _na(reason: str) -> CheckResult:
    return CheckResult(NA, "exact", None, {"reason": reason})


CheckFn = Callable[[FiniteRing, Bounds], CheckResult]
CHECKS: dict[str, tuple[str, CheckFn]] = {}


def check(name: str, summary: str):
    def register(fn: CheckFn) -> CheckFn:
        CHECKS[name] = (summary, fn)
        return fn

    return register


def select_checks(requested) -> list[str]:
    """Resolve requested ids; "thm6.2" selects "thm6.2-witness".  Unknown ids raise KeyError."""
    if not requested:
        return list(CHECKS)
    out: list[str] = []
    for want in requested:
        hits = [n for n in CHECKS if n == want or n.startswith(want + "-")]
        if not hits:
            raise KeyError(want)
        out.extend(h for h in hits if h not in out)
    return out


def _p(R: FiniteRing, f) -> str:
    return render_poly(R, f.coeffs if isinstance(f, Polynomial) else f)


def _labels(R: FiniteRing, xs) -> list[str]:
    return [R.label(x) for x in xs]


# ====================================================================== ring structure


@check("ring-axioms", "commutative ring axioms hold on the full carrier")
def _ring_axioms(R: FiniteRing, bounds: Bounds) -> CheckResult:
    n = range(R.size)
    add, mul = R.add, R.mul
    for a in n:
        if add(a, R.zero) != a or mul(a, R.one) != a or add(a, R.neg(a)) != R.zero:
            return _result(False, element=R.label(a), law="identity or inverse")
        for b in n:
            if add(a, b) != add(b, a) or mul(a, b) != mul(b, a):
                return _result(False, elements=_labels(R, (a, b)), law="commutativity")
            for c in n:
                if add(add(a, b), c) != add(a, add(b, c)) or mul(mul(a, b), c) != mul(a, mul(b, c)):
                    return _result(False, elements=_labels(R, (a, b, c)), law="associativity")
                if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
                    return _result(False, elements=_labels(R, (a, b, c)), law="distributivity")
    return _result(True, size=R.size)


@check("jacobson-nil", "J(R) = nil(R), both recomputed from their definitions")
def _jacobson_nil(R: FiniteRing, bounds: Bounds) -> CheckResult:
    units = R.units
    nil = {a for a in range(R.size) if R.pow(a, R.size) == R.zero}
    jac = {a for a in range(R.size) if all(R.sub(R.one, R.mul(a, r)) in units for r in range(R.size))}
    ok = nil == jac == set(R.nilradical) == set(R.jacobson_radical)
    return _result(ok, nilradical=_labels(R, sorted(nil)))


@check("unit-or-zd", "every element is a unit or a zero divisor, never both")
def _unit_or_zd(R: FiniteRing, bounds: Bounds) -> CheckResult:
    zd = {a for a in range(R.size) if any(b != R.zero and R.mul(a, b) == R.zero for b in range(R.size))}
    units = {a for a in range(R.size) if any(R.mul(a, b) == R.one for b in range(R.size))}
    ok = not (zd & units) and len(zd | units) == R.size and zd == set(R.zero_divisors)
    return _result(ok, units=len(units), zero_divisors=len(zd))


@check("local-decomp", "R is isomorphic to the product of its local components")
def _local_decomp(R: FiniteRing, bounds: Bounds) -> CheckResult:
    comps = R.local_components
    es = [c.idempotent for c in comps]
    total = R.zero
    for e in es:
        total = R.add(total, e)
    orthogonal = all(R.mul(a, b) == R.zero for a, b in combinations(es, 2))
    ok = total == R.one and orthogonal and all(c.ring.is_local for c in comps) and component_isomorphism(R) is not None
    return _result(ok, components=[{"idempotent": R.label(c.idempotent), "size": c.ring.size} for c in comps])


# ====================================================================== elements


@check("thm2.1-chains", "associate and irreducibility notions form the expected implication chains")
def _chains(R: FiniteRing, bounds: Bounds) -> CheckResult:
    T = theory(R)
    bad = []
    for a in range(R.size):
        for b in range(R.size):
            v = T.vector(a, b)
            if v.very_strong_assoc and not v.strong_assoc or v.strong_assoc and not v.assoc:
                bad.append(("assoc", a, b))
            if v.very_strong_assoc and not v.very_strong_regular_assoc:
                bad.append(("regular", a, b))
            if v.very_strong_regular_assoc and not v.strong_regular_assoc:
                bad.append(("regular", a, b))
            if v.strong_assoc and not v.strong_regular_assoc or v.strong_regular_assoc and not v.assoc:
                bad.append(("regular", a, b))
        c = T.classify(a)
        if a != R.zero and c.very_strongly_irreducible and not c.m_irreducible:
            bad.append(("vsi->m", a, a))
        if c.m_irreducible and not c.strongly_irreducible or c.strongly_irreducible and not c.irreducible:
            bad.append(("m->s->irr", a, a))
        if c.very_strongly_irreducible and not c.strongly_irreducible:
            bad.append(("vsi->s", a, a))
        if a != R.zero and c.very_strongly_irreducible and not R.annihilator(a) <= R.jacobson_radical:
            bad.append(("ann in J", a, a))
    return _result(not bad, violations=[(k, R.label(a), R.label(b)) for k, a, b in bad[:5]])


def _maximal_principal_in(T, a: int, region) -> bool:
    Ia = T.ideal[a]
    if not Ia <= region:
        return False
    return not any(Ia < T.ideal[b] and T.ideal[b] <= region for b in range(T.n))


@check("thm2.1", "every irreducibility characterization agrees with direct search on every element")
def _thm21(R: FiniteRing, bounds: Bounds) -> CheckResult:
    T = theory(R)
    zd = frozenset(R.zero_divisors)
    primes = R.maximal_ideals  # finite: prime = maximal
    failures: dict[str, list] = {}

    def fail(item, *xs):
        failures.setdefault(item, []).append(_labels(R, xs))

    for a in range(R.size):
        c = T.classify(a)
        nonunit = a not in T.units
        if a != R.zero and c.presimplifiable_element and nonunit:
            if len({c.irreducible, c.strongly_irreducible, c.very_strongly_irreducible, c.m_irreducible}) != 1:
                fail("1", a)
        if nonunit:
            via_prime = any(_maximal_principal_in(T, a, P) for P in primes)
            via_zd = (c.regular and c.m_irreducible) or (c.zero_divisor and _maximal_principal_in(T, a, zd))
            if not (c.irreducible == via_prime == via_zd):
                fail("2", a)
        if c.irreducible:
            for b in range(R.size):
                if T.ideal[a] < T.ideal[b] and R.one not in T.ideal[b]:
                    if not (a in zd and b not in zd):
                        fail("3", a, b)
        if a != R.zero and nonunit:
            split_ok = all(x in T.units or y in T.units for x, y in T.pairs[a])
            if c.very_strongly_irreducible != split_ok:
                fail("4", a)
        if a != R.zero and c.very_strongly_irreducible and not R.annihilator(a) <= R.jacobson_radical:
            fail("5", a)
        if a != R.zero and nonunit:
            maximal = T.ideal[a] in {frozenset(P) for P in primes}
            if c.m_irreducible != (c.very_strongly_irreducible or maximal):
                fail("6", a)
    comps = R.local_components
    item7 = "n/a"
    if len(comps) > 1:
        item7 = "checked"
        thys = [theory(cp.ring) for cp in comps]
        for a in range(R.size):
            parts = [cp.project[a] for cp in comps]
            nonunits = [i for i, (t, x) in enumerate(zip(thys, parts)) if x not in t.units]
            cls = T.classify(a)
            for kind in ("irreducible", "strongly_irreducible", "m_irreducible", "prime"):
                want = len(nonunits) == 1 and getattr(thys[nonunits[0]].classify(parts[nonunits[0]]), kind)
                if getattr(cls, kind) != want:
                    fail("7", a)
            i0 = nonunits[0] if len(nonunits) == 1 else None
            want_vs = (
                i0 is not None
                and thys[i0].classify(parts[i0]).very_strongly_irreducible
                and parts[i0] != comps[i0].ring.zero
            )
            if cls.very_strongly_irreducible != want_vs:
                fail("7", a)
    return _result(not failures, failures={k: v[:3] for k, v in sorted(failures.items())}, item7=item7)


@check("weakly-prime", "weakly prime elements are prime or square to zero; regular ones are prime")
def _weakly_prime(R: FiniteRing, bounds: Bounds) -> CheckResult:
    T = theory(R)
    bad = []
    wps = [a for a in range(R.size) if T.classify(a).weakly_prime]
    for a in wps:
        c = T.classify(a)
        if not c.prime and R.mul(a, a) != R.zero:
            bad.append(a)
        if c.regular and not c.prime:
            bad.append(a)
    if not wps:
        return _na("no weakly prime elements")
    return _result(not bad, weakly_prime=_labels(R, wps), violations=_labels(R, bad))


@check("thm2.2", "atomicity flavours: implications, indecomposable collapse, p-atomic structure, products")
def _thm22(R: FiniteRing, bounds: Bounds) -> CheckResult:
    kinds = ("irreducible", "strongly_irreducible", "m_irreducible", "very_strongly_irreducible", "prime")
    flags = {k: is_atomic_of_kind(R, k)[0] for k in kinds}
    out: dict[str, bool] = {}
    out["1"] = (
        (not flags["very_strongly_irreducible"] or flags["m_irreducible"])
        and (not flags["m_irreducible"] or flags["strongly_irreducible"])
        and (not flags["strongly_irreducible"] or flags["irreducible"])
        and (not flags["prime"] or flags["strongly_irreducible"])
    )
    if R.is_indecomposable:
        out["2"] = flags["very_strongly_irreducible"] == flags["m_irreducible"]
    comps = [c.ring for c in R.local_components]
    out["3"] = flags["prime"] == all(S.is_field or S.is_spir for S in comps)
    if not R.is_domain:
        T = theory(R)
        found = enumerate_class_factorizations(T, R.zero, R.nilpotency_index + len(comps) + 1)
        shortest = min((len(ms) for ms in found), default=None)
        out["4"] = shortest is not None and len(comps) <= shortest
    if len(comps) > 1:
        per = [{k: is_atomic_of_kind(S, k)[0] for k in kinds} for S in comps]
        out["6a"] = all(
            flags[k] == all(p[k] for p in per) for k in ("irreducible", "strongly_irreducible", "prime")
        )
        out["6b"] = flags["m_irreducible"] == (
            all(p["m_irreducible"] for p in per) and all(S.is_field or not S.is_domain for S in comps)
        )
        out["6c"] = flags["very_strongly_irreducible"] == (
            all(p["very_strongly_irreducible"] for p in per) and not any(S.is_domain for S in comps)
        )
    return _result(all(out.values()), items=out, atomic=flags)


@check("open-q-separation", "search for a ring element strongly irreducible but not m-irreducible")
def _separation(R: FiniteRing, bounds: Bounds) -> CheckResult:
    T = theory(R)
    found = [a for a in range(R.size) if T.classify(a).strongly_irreducible and not T.classify(a).m_irreducible]
    # in a finite ring a regular element is a unit, so an irreducible a has Ra
    # maximal among proper principal ideals: irreducible implies m-irreducible
    broken = [a for a in range(R.size) if T.classify(a).irreducible and not T.classify(a).m_irreducible]
    return _result(not broken, result="found" if found else "none", separating=_labels(R, found))


# ====================================================================== R[X] basics


@check("thm3.1-oracle", "unit / zero-divisor / idempotent / nilpotent flags against direct search")
def _oracle(R: FiniteRing, bounds: Bounds) -> CheckResult:
    deg = bounds.oracle_deg if R.size ** (bounds.oracle_deg + 1) <= 4096 else 2
    cd = bounds.oracle_cofactor_deg
    disagree = []
    count = 0
    for f in all_polys(R, deg):
        count += 1
        cls = classify_poly(Polynomial(R, f))
        unit = bool(f) and bool(cofactors(R, f, (R.one,), cd, limit=1))
        if not f:
            zd = True
        else:
            zd = any(h for h in cofactors(R, f, (), cd, limit=2))
        idem = pmul(R, f, f) == f
        nil = not ppow(R, f, R.size)
        if (cls.unit, cls.zero_divisor, cls.idempotent, cls.nilpotent) != (unit, zd, idem, nil):
            disagree.append(_p(R, f))
    return _result(not disagree, "bounded", cd, subjects=count, max_degree=deg, disagreements=disagree[:5])


def _const_multipliers(R: FiniteRing, a: int, b: int, deg: int):
    """All r of degree <= deg with a = r b (b a nonzero constant)."""
    return cofactors(R, (b,), (a,) if a != R.zero else (), deg)


@check("thm3.2", "constants in R[X]: associate notions, presimplifiable R[X] and irreducibility match R")
def _thm32(R: FiniteRing, bounds: Bounds) -> CheckResult:
    T = theory(R)
    items: dict[str, list] = {"1": [], "2": [], "3": [], "6": [], "8": []}
    for a in range(R.size):
        for b in range(R.size):
            if b == R.zero:
                sim = strong = vs = a == R.zero
            else:
                there = _const_multipliers(R, a, b, 1)
                back = a != R.zero and bool(_const_multipliers(R, b, a, 1))
                sim = bool(there) and back
                strong = any(is_unit(R, r) for r in there)
                vs = sim and a != R.zero and all(is_unit(R, r) for r in there)
            if sim != T.assoc(a, b):
                items["1"].append(_labels(R, (a, b)))
            if strong != T.strong(a, b):
                items["2"].append(_labels(R, (a, b)))
            if vs != constant_very_strong_assoc_in_polyring(R, a, b):
                items["3"].append(_labels(R, (a, b)))
    # (6): R[X] presimplifiable at degree <= 2 means no f != 0, g nonunit with f = fg
    witness = None
    for h in all_polys(R, 2):  # h = 1 - g
        if not h:
            continue
        g = psub(R, (R.one,), h)
        if is_unit(R, g):
            continue
        fs = [f for f in cofactors(R, h, (), 2, limit=2) if f]
        if fs:
            witness = (_p(R, fs[0]), _p(R, g))
            break
    zero_primary = all(
        R.mul(x, y) != R.zero or x == R.zero or y in R.nilradical for x in range(R.size) for y in range(R.size)
    )
    predicted = is_presimplifiable_ring(R) and zero_primary
    if (witness is None) != predicted:
        items["6"].append({"witness": witness, "predicted": predicted})
    B = bounds.search_deg
    for a in range(R.size):
        if a in T.units:
            continue
        v = is_irreducible_poly(Polynomial(R, (a,) if a else ()), B, use_constant_shortcut=False)
        if v.value != T.classify(a).irreducible:
            items["8"].append([R.label(a), v.value, v.tier])
    ok = not any(items.values())
    return _result(
        ok,
        "bounded",
        B,
        disagreements={k: v[:3] for k, v in items.items() if v},
        presimplifiable_polyring=witness is None,
        presimplifiable_witness=witness,
    )


@check("prop3.3", "R reduced iff no constant is associated to a nonconstant polynomial")
def _prop33(R: FiniteRing, bounds: Bounds) -> CheckResult:
    B = bounds.assoc_deg
    T = theory(R)
    if not R.is_reduced:
        a = min(x for x in R.nilradical if x != R.zero)
        f = (R.one, a)
        ok = bool(cofactors(R, f, (R.one,), B, limit=1))  # 1 = f h
        return _result(ok, "exact", B, reduced=False, witness=["1", _p(R, f)])
    # a ~ f with a != 0 forces f in aR[X]; one constant per principal ideal suffices
    found = None
    reps = sorted({min(T.orbit[a]) for a in range(R.size) if a != R.zero})
    seen_ideals = set()
    for a in reps:
        if T.ideal[a] in seen_ideals:
            continue
        seen_ideals.add(T.ideal[a])
        aR = sorted(T.ideal[a])
        for f in all_polys(R, B, aR):
            if len(f) <= 1:
                continue
            if cofactors(R, f, (a,), B, limit=1):
                found = (R.label(a), _p(R, f))
                break
        if found:
            break
    return _result(found is None, "bounded", B, reduced=True, witness=found)


@check("thm3.5", "nonzero f of low degree: m-irreducible iff very strongly irreducible")
def _thm35(R: FiniteRing, bounds: Bounds) -> CheckResult:
    deg = 2 if R.size <= 9 else 1
    B = max(bounds.search_deg, deg)
    bad = []
    count = 0
    for f in all_polys(R, deg):
        if not f or is_unit(R, f):
            continue
        count += 1
        g = Polynomial(R, f)
        m = is_irreducible_poly(g, B, kind="m_irreducible")
        v = is_irreducible_poly(g, B, kind="very_strongly_irreducible")
        if m.value != v.value:
            bad.append(_p(R, f))
    return _result(not bad, "bounded", B, subjects=count, max_degree=deg, disagreements=bad[:5])


@check("thm3.6", "indecomposable polynomials: vsi implies indecomposable, reduced criterion, the zero polynomial")
def _thm36(R: FiniteRing, bounds: Bounds) -> CheckResult:
    B = bounds.search_deg
    items: dict[str, list] = {"1": [], "2": [], "3": []}
    for f in all_polys(R, 1):
        if not f or is_unit(R, f):
            continue
        g = Polynomial(R, f)
        if is_irreducible_poly(g, B, kind="very_strongly_irreducible").value and not is_indecomposable_poly(g, B).value:
            items["1"].append(_p(R, f))
    if R.is_reduced:
        deg = 2 if R.size <= 9 else 1
        positive = [p for p in all_polys(R, deg) if len(p) >= 2]
        split = set()
        for g in positive:
            for h in positive:
                gh = pmul(R, g, h)
                if len(gh) - 1 <= deg:
                    split.add(gh)
        for f in all_polys(R, deg):
            if not f:
                continue
            if is_indecomposable_poly(Polynomial(R, f), max(B, deg)).value == (f in split):
                items["2"].append(_p(R, f))
    zero = is_indecomposable_poly(Polynomial(R, ()))
    if zero.value != R.is_domain:
        items["3"].append("value")
    if not zero.value:
        g, h = zero.witness
        constant_like = any(
            any(is_unit(R, u) for u in cofactors(R, (c,), g.coeffs, B))
            for c in range(1, R.size)
        )
        if pmul(R, g.coeffs, h.coeffs) or constant_like:
            items["3"].append([str(g), str(h)])
    return _result(
        not any(items.values()),
        "bounded",
        B,
        failures={k: v[:3] for k, v in items.items() if v},
        zero_witness=None if zero.value else [str(x) for x in zero.witness],
    )


@check("ex3.4-search", "search for a strongly irreducible constant that is not strongly irreducible in R[X]")
def _ex34(R: FiniteRing, bounds: Bounds) -> CheckResult:
    T = theory(R)
    B = bounds.search_deg
    found = []
    for a in range(R.size):
        if a in T.units or not T.classify(a).strongly_irreducible:
            continue
        v = is_irreducible_poly(Polynomial(R, (a,) if a else ()), B, kind="strongly_irreducible")
        if not v.value:
            found.append({"element": R.label(a), "witness": [str(x) for x in v.witness] if v.witness else None})
    return _result(True, "bounded", B, result="found" if found else "none at bound", elements=found)


# ====================================================================== powers of X


def _x(R: FiniteRing, n: int = 1) -> Polynomial:
    return Polynomial.x(R, n)


def _x_prime(S: FiniteRing) -> bool:
    # X | f exactly when f(0) = 0, so X | fg forces X | f or X | g iff S has no zero divisors
    return all(S.mul(a, b) != S.zero or a == S.zero or b == S.zero for a in range(S.size) for b in range(S.size))


@check("thm4.1", "X irreducible iff X indecomposable iff R indecomposable; X prime iff R a domain")
def _thm41(R: FiniteRing, bounds: Bounds) -> CheckResult:
    X = _x(R)
    irr = is_irreducible_poly(X)
    ind = is_indecomposable_poly(X)
    shifted = all(is_irreducible_poly(X - Polynomial.constant(R, a)).value == irr.value for a in range(R.size))
    prime = _x_prime(R)
    ok = irr.value == ind.value == R.is_indecomposable and prime == R.is_domain and shifted
    return _result(
        ok,
        irr.tier if irr.tier == ind.tier else "bounded",
        irr.bound,
        irreducible=irr.value,
        indecomposable=ind.value,
        prime=prime,
        witness=[str(g) for g in irr.witness] if irr.witness else None,
    )


@check("lemma4.2", "nonunit divisors of X^n: indecomposable iff irreducible")
def _lemma42(R: FiniteRing, bounds: Bounds) -> CheckResult:
    bad = []
    checked = 0
    for n in (1, 2, 3):
        divs = divisors_poly(_x(R, n))
        if divs.tier != "exact":
            continue
        for g in divs.classes:
            if is_unit(R, g.coeffs):
                continue
            checked += 1
            if is_indecomposable_poly(g).value != is_irreducible_poly(g).value:
                bad.append(str(g))
    return _result(not bad, divisors=checked, disagreements=bad[:5])


@check("thm4.3-uniqueness", "X is a product of one atom per local component, unique up to order and associates")
def _thm43(R: FiniteRing, bounds: Bounds) -> CheckResult:
    fx = factor_X(R, bounds.search_deg)
    factors = fx.factorization.factors
    prod = (R.one,)
    for g in factors:
        prod = pmul(R, prod, g.coeffs)
    atoms = all(is_irreducible_poly(g).value for g in factors)
    ok = prod == (R.zero, R.one) and len(factors) == len(R.local_components) and fx.uniqueness_count == 1 and atoms
    return _result(
        ok,
        "bounded",
        fx.search_bound,
        factors=[str(g) for g in factors],
        components=len(R.local_components),
        classes_found=fx.uniqueness_count,
    )


@check("cor4.4", "X is a product of primes iff every local component is a field")
def _cor44(R: FiniteRing, bounds: Bounds) -> CheckResult:
    comps = [c.ring for c in R.local_components]
    fx = factor_X(R, bounds.search_deg)
    all_prime = all(_x_prime(S) for S in comps)
    ok = fx.primes == all_prime == all(S.is_field for S in comps)
    return _result(ok, primes=fx.primes)


@check("thm4.5", "X^2 (and X^3) has a unique atomic factorization iff R is reduced")
def _thm45(R: FiniteRing, bounds: Bounds) -> CheckResult:
    counts = {n: atomic_factorizations_poly(_x(R, n)).class_count for n in (2, 3)}
    ok = all((c == 1) == R.is_reduced for c in counts.values())
    return _result(ok, reduced=R.is_reduced, classes={f"X^{n}": c for n, c in counts.items()})


def _is_unit_times_power(R: FiniteRing, g: Polynomial) -> bool:
    cs = g.coeffs
    return bool(cs) and cs[-1] in R.units and all(c == R.zero for c in cs[:-1])


@check("cor4.6", "divisors of X^n are only u X^m iff R is reduced and indecomposable")
def _cor46(R: FiniteRing, bounds: Bounds) -> CheckResult:
    expected = R.is_reduced and R.is_indecomposable
    details = {}
    ok = True
    for n in (1, 2, 3):
        divs = divisors_poly(_x(R, n))
        odd = [str(g) for g in divs.classes if not _is_unit_times_power(R, g)]
        details[f"X^{n}"] = odd[:4]
        if n >= 2 and (not odd) != expected:
            ok = False
        if expected and odd:
            ok = False
    return _result(ok, reduced_indecomposable=expected, other_divisors=details)


@check("lengths-z4", "sets of lengths of X^n over Z(4), n = 1..8")
def _lengths_z4(R: FiniteRing, bounds: Bounds) -> CheckResult:
    if R.name != "Z(4)":
        return _na("only defined for Z(4)")
    got = {n: set(set_of_lengths_Xn(R, n).lengths) for n in Z4_LENGTHS}
    brute = {}
    for n in range(1, bounds.brute_force_n + 1):
        brute[n] = set(brute_force_factorizations(_x(R, n), n, n).lengths)
    mismatches = [
        {"n": n, "expected": _set_text(want), "computed": _set_text(got[n]),
         "brute_force": _set_text(brute[n]) if n in brute else None}
        for n, want in Z4_LENGTHS.items()
        if got[n] != want or (n in brute and brute[n] != got[n])
    ]
    return _result(
        not mismatches,
        lengths={n: _set_text(v) for n, v in got.items()},
        mismatches=mismatches,
    )


def _set_text(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


@check("mod-nil", "factorizations of X^n map to factorizations over R/nil(R)")
def _mod_nil(R: FiniteRing, bounds: Bounds) -> CheckResult:
    bad = []
    for n in range(1, 5):
        target = reduce_mod_nil(_x(R, n))
        Q = target.ring
        for fac in atomic_factorizations_poly(_x(R, n)).factorizations:
            images = [reduce_mod_nil(g) for g in fac.factors]
            prod = (Q.one,)
            for g in images:
                prod = pmul(Q, prod, g.coeffs)
            if fac.unit is not None:
                prod = pmul(Q, prod, reduce_mod_nil(fac.unit).coeffs)
            if prod != target.coeffs or any(is_unit(Q, g.coeffs) for g in images):
                bad.append([str(g) for g in fac.factors])
    return _result(not bad, failures=bad[:3])


# ====================================================================== classification


@check("ring-class-dual", "every ring-level flag: definition search agrees with the structure shortcut")
def _ring_class(R: FiniteRing, bounds: Bounds) -> CheckResult:
    try:
        rep = classify_ring(R, bounds.len_cap, check=True)
    except InconsistencyError as exc:
        return _result(False, flag=exc.flag, witness=str(exc.witness))
    return _result(True, undetermined=list(rep.undetermined))


@check("poly-ring-class", "R[X] report: hfr => bfr, ffr => bfr, bfr => atomic, UFR flavours by structure")
def _poly_class(R: FiniteRing, bounds: Bounds) -> CheckResult:
    rep = classify_poly_ring(R)
    pof = all(c.ring.is_field for c in R.local_components)
    ok = (
        (not rep.hfr or rep.bfr)
        and (not rep.ffr or rep.bfr)
        and (not rep.bfr or rep.atomic)
        and rep.ufr == R.is_field
        and rep.factorial == rep.fletcher_ufr == rep.weak_ufr == pof
    )
    return _result(ok, "theorem", None, flags={k: v.value for k, v in rep.claims.items()})


def _verify_witness(R: FiniteRing, w) -> bool:
    if w is None:
        return True
    for fac in (w.first, w.second):
        prod = (R.one,)
        for g in fac:
            prod = pmul(R, prod, g.coeffs)
        if prod != w.subject.coeffs:
            return False
    return True


@check("thm5.4-chain", "R[X] weak / Fletcher UFR iff R a product of fields iff no regular collision")
def _thm54(R: FiniteRing, bounds: Bounds) -> CheckResult:
    pof = all(c.ring.is_field for c in R.local_components)
    w = find_nonisomorphic_factorizations(R, bounds.collision_deg, regular_only=True)
    rep = classify_poly_ring(R)
    ok = (w is None) == pof == rep.weak_ufr == rep.fletcher_ufr and _verify_witness(R, w)
    return _result(
        ok,
        "bounded",
        bounds.collision_deg,
        product_of_fields=pof,
        witness=None
        if w is None
        else {"subject": str(w.subject), "factorizations": [[str(g) for g in w.first], [str(g) for g in w.second]]},
    )


@check("cor5.5", "R[X] is a UFR iff R is a field")
def _cor55(R: FiniteRing, bounds: Bounds) -> CheckResult:
    rep = classify_poly_ring(R)
    claim = rep.claim("ufr")
    return _result(claim.value == R.is_field, "theorem", None, ufr=claim.value, witness=claim.witness)


@check("thm6.1", "R local: R[X] is a BFR; lengths of X^n stay within n")
def _thm61(R: FiniteRing, bounds: Bounds) -> CheckResult:
    if not R.is_local:
        return _na("R is not local")
    rep = classify_poly_ring(R)
    spread = {n: sorted(set_of_lengths_Xn(R, n).lengths) for n in range(1, 5)}
    ok = rep.bfr and all(max(v) <= n for n, v in spread.items())
    return _result(ok, "theorem", None, bfr=rep.bfr, lengths=spread)


@check("thm6.2-witness", "a nonzero nilpotent atom yields factorizations of X^(2^n) of different lengths")
def _thm62(R: FiniteRing, bounds: Bounds) -> CheckResult:
    T = theory(R)
    nil_atoms = [b for b in R.nilradical if b != R.zero and T.classify(b).irreducible]
    if not nil_atoms:
        return _na("no nonzero nilpotent atom")
    w = nilpotent_atom_witness(R)
    if w is None:
        return _result(False, reason="no witness produced")
    ok = len(w.short) != len(w.long)
    for fac in (w.short, w.long):
        prod = (R.one,)
        for g in fac:
            prod = pmul(R, prod, g.coeffs)
        ok = ok and prod == w.subject.coeffs and all(is_irreducible_poly(g).value for g in fac)
    return _result(
        ok,
        subject=str(w.subject),
        nilpotent_atom=R.label(w.nilpotent_atom),
        lengths=[len(w.short), len(w.long)],
        short=[str(g) for g in w.short],
    )


@check("thm6.3", "R[X] is an FFR iff the two maximal-ideal conditions hold for local R; never for non-local R")
def _thm63(R: FiniteRing, bounds: Bounds) -> CheckResult:
    rep = classify_poly_ring(R)
    if R.is_field:
        return _result(rep.ffr, "theorem", None, ffr=rep.ffr)
    if not R.is_local:
        w = idempotent_length_witness(R)
        return _result(not rep.ffr and w is not None, "exact", None, ffr=rep.ffr, witness=w)
    conds = ffr_conditions(R)
    return _result(rep.ffr == (conds["a"] and conds["b"]), "exact", None, ffr=rep.ffr, conditions=conds)


@check("idempotent-not-bfr", "a nontrivial idempotent gives unbounded lengths, so R[X] is not a BFR")
def _idem(R: FiniteRing, bounds: Bounds) -> CheckResult:
    if R.is_indecomposable:
        return _na("no nontrivial idempotent")
    w = idempotent_length_witness(R)
    rep = classify_poly_ring(R)
    return _result(w is not None and not rep.bfr, witness=w)


@check("probe-weakly-prime", "is each weakly prime element of R still weakly prime in R[X]? (bounded probe)")
def _probe(R: FiniteRing, bounds: Bounds) -> CheckResult:
    rep = probe_weakly_prime_lift(R, bounds.probe_deg)
    if not rep.entries:
        return _na("no weakly prime elements")
    data = rep.as_dict(R)
    definite = all(e["result"] in ("found", "none at bound") for e in data["elements"])
    return _result(definite, "bounded", bounds.probe_deg, elements=data["elements"])


# ====================================================================== suite


@dataclass
class SuiteReport:
    meta: dict
    rings: list
    checks: list
    timing: dict

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c["status"] in (FAIL, ERROR)]

    @property
    def build_errors(self) -> list:
        return [r for r in self.rings if r["status"] == ERROR]

    def as_dict(self, timing: bool = True) -> dict:
        out = {"meta": self.meta, "rings": self.rings, "checks": self.checks}
        if timing:
            out["timing"] = self.timing
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=False, default=str) + "\n"

    def to_text(self) -> str:
        lines = [f"# bounds: {_bounds_text(self.meta['bounds'])}"]
        for r in self.rings:
            if r["status"] == ERROR:
                lines.append(f"error  {r['spec']}  build: {r['error']}")
        for c in self.checks:
            lines.append(f"{c['status']:<5}  {c['ring']:<26} {c['check']:<20} {_detail_text(c)}".rstrip())
        counts = {s: sum(1 for c in self.checks if c["status"] == s) for s in (PASS, FAIL, NA, ERROR)}
        lines.append(
            f"# {counts[PASS]} passed, {counts[FAIL]} failed, {counts[NA]} n/a, "
            f"{counts[ERROR] + len(self.build_errors)} errors"
        )
        return "\n".join(lines) + "\n"


def _bounds_text(b: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in b.items())


def _detail_text(c: dict) -> str:
    tier = c["tier"] if c["bound"] is None else f"{c['tier']}@{c['bound']}"
    d = c["detail"]
    for key in ("error", "mismatches", "lengths", "witness", "result", "reason", "failures", "disagreements", "flag"):
        if key in d and d[key] not in (None, [], {}):
            return f"[{tier}] {key}: {json.dumps(d[key], default=str, separators=(',', ':'))}"
    return f"[{tier}]"


def load_corpus(source: str | None = None) -> list[str]:
    """The default corpus, or specs read from a file (one per line, '#' comments)."""
    if source in (None, "default"):
        return list(DEFAULT_CORPUS)
    out = []
    for line in Path(source).read_text().splitlines():
        text = line.split("#", 1)[0].strip()
        if text:
            out.append(text)
    return out


def _run_ring(spec: str, names: list[str], bounds: Bounds) -> tuple[dict, list, list]:
    try:
        canonical = render_ring_spec(parse_ring_spec(spec))
        R = build_ring(canonical)
    except (RingSpecError, ValueError) as exc:
        return {"spec": spec, "status": ERROR, "error": str(exc)}, [], []
    ring = {
        "spec": spec,
        "name": R.name,
        "status": "ok",
        "size": R.size,
        "local_components": len(R.local_components),
        "reduced": R.is_reduced,
        "local": R.is_local,
    }
    results, timing = [], []
    for name in names:
        t0 = time.perf_counter()
        try:
            res = CHECKS[name][1](R, bounds)
        except Exception as exc:  # a crashing check is reported, not fatal
            res = CheckResult(ERROR, "exact", None, {"error": f"{type(exc).__name__}: {exc}"})
        results.append({"ring": R.name, "check": name, **asdict(res)})
        timing.append({"ring": R.name, "check": name, "seconds": round(time.perf_counter() - t0, 4)})
    return ring, results, timing


def run_suite(
    corpus=None, checks=None, bounds: Bounds | None = None, jobs: int = 1
) -> SuiteReport:
    """Run the selected checks on every ring of the corpus."""
    specs = list(corpus) if corpus is not None else list(DEFAULT_CORPUS)
    names = select_checks(checks)
    bounds = bounds or Bounds()
    t0 = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outputs = list(pool.map(_run_ring, specs, [names] * len(specs), [bounds] * len(specs)))
    else:
        outputs = [_run_ring(s, names, bounds) for s in specs]
    rings, results, timing = [], [], []
    for ring, res, tm in outputs:
        rings.append(ring)
        results.extend(res)
        timing.extend(tm)
    meta = {"tool": "ufrlab", "corpus": specs, "checks": names, "bounds": asdict(bounds)}
    return SuiteReport(
        meta, rings, results, {"total_seconds": round(time.perf_counter() - t0, 3), "per_check": timing}
    )
