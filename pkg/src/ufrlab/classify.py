"""Unique-factorization classification of a finite ring R and of R[X].

Every ring-level flag is decided twice: once by searching the definition over
the carrier and once from the structure of R (fields, SPIRs, local rings with
square-zero maximal ideal, products).  A disagreement raises
``InconsistencyError``.

A finite domain is a field (multiplication by a nonzero element is injective,
hence onto), so "UFD" below always means "field".
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

from .elements import (
    default_len_cap,
    enumerate_class_factorizations,
    is_atomic_of_kind,
    is_presimplifiable_ring,
    theory,
)
from .factor import (
    InconsistencyError,
    LocalEngine,
    fletcher_search,
    local_engine,
    nilpotent_atom_witness,
)
from .poly import Polynomial, lift_component, pmul, render_poly
from .ring import FiniteRing

RING_FLAGS = (
    "atomic",
    "strongly_atomic",
    "m_atomic",
    "very_strongly_atomic",
    "p_atomic",
    "accp",
    "presimplifiable",
    "ufr",
    "weak_ufr",
    "fletcher_ufr",
    "factorial",
    "mu_reduced_ufr",
    "strongly_mu_reduced_ufr",
    "reduced_ufr",
    "strongly_reduced_ufr",
    "weak_mu_reduced_ufr",
    "weak_strongly_mu_reduced_ufr",
    "weak_reduced_ufr",
    "weak_strongly_reduced_ufr",
)

STRUCTURE_FLAGS = ("field", "spir", "local_m2_zero", "product_of_fields", "product_of_fields_and_spirs")


@dataclass(frozen=True)
class RingClassReport:
    ring: str
    atomic: bool
    strongly_atomic: bool
    m_atomic: bool
    very_strongly_atomic: bool
    p_atomic: bool
    accp: bool
    presimplifiable: bool
    ufr: bool
    weak_ufr: bool
    fletcher_ufr: bool
    factorial: bool
    mu_reduced_ufr: bool
    strongly_mu_reduced_ufr: bool
    reduced_ufr: bool
    strongly_reduced_ufr: bool
    weak_mu_reduced_ufr: bool
    weak_strongly_mu_reduced_ufr: bool
    weak_reduced_ufr: bool
    weak_strongly_reduced_ufr: bool
    field: bool
    spir: bool
    local_m2_zero: bool
    product_of_fields: bool
    product_of_fields_and_spirs: bool
    witnesses: dict = field(default_factory=dict, compare=False)
    undetermined: tuple = ()

    def as_dict(self) -> dict:
        out = {k: getattr(self, k) for k in RING_FLAGS + STRUCTURE_FLAGS}
        out["witnesses"] = {k: repr(v) for k, v in sorted(self.witnesses.items())}
        out["structure_undetermined"] = list(self.undetermined)
        return out


# ---------------------------------------------------------------- structure


def _structure(R: FiniteRing) -> dict:
    comps = [c.ring for c in R.local_components]
    return {
        "field": R.is_field,
        "spir": R.is_spir,
        "local_m2_zero": R.is_local_m2_zero,
        "product_of_fields": all(S.is_field for S in comps),
        "product_of_fields_and_spirs": all(S.is_spir for S in comps),
    }


def _is_product_of_f2(R: FiniteRing) -> bool:
    return all(c.ring.size == 2 for c in R.local_components)


def structure_flags(R: FiniteRing) -> dict:
    """Flag values predicted from the shape of R alone; None where no prediction is made."""
    st = _structure(R)
    comps = [c.ring for c in R.local_components]
    local = R.is_local
    fs = st["product_of_fields_and_spirs"]
    local_ufr = R.is_spir or R.is_local_m2_zero  # SPIR includes fields
    f2 = _is_product_of_f2(R)
    weak_sr: bool | None
    if local or f2:
        weak_sr = local_ufr or f2
    elif any(S.is_field for S in comps):
        weak_sr = False
    else:
        weak_sr = None
    return {
        "atomic": True,
        "strongly_atomic": True,
        "m_atomic": True,
        "very_strongly_atomic": local or not any(S.is_field for S in comps),
        "p_atomic": fs,
        "accp": True,
        "presimplifiable": local,
        "ufr": local_ufr,
        "weak_ufr": fs or R.is_local_m2_zero,
        "fletcher_ufr": fs,
        "factorial": True,
        "mu_reduced_ufr": fs,
        "strongly_mu_reduced_ufr": fs,
        "reduced_ufr": R.is_spir or f2,
        "strongly_reduced_ufr": R.is_spir or f2,
        "weak_mu_reduced_ufr": fs or R.is_local_m2_zero,
        "weak_strongly_mu_reduced_ufr": fs or R.is_local_m2_zero,
        "weak_reduced_ufr": local_ufr or f2,
        "weak_strongly_reduced_ufr": weak_sr,
    }


# ---------------------------------------------------------------- definitions


def _factorization_sets(R: FiniteRing, cap: int) -> dict[int, dict]:
    T = theory(R)
    return {
        a: enumerate_class_factorizations(T, a, cap)
        for a in range(R.size)
        if a != R.zero and a not in T.units
    }


def _weakly_homomorphic(T, f: tuple, g: tuple, reps: dict) -> bool:
    R = T.R

    def div(x, y):
        return R.divides(reps[x], reps[y])

    return all(any(div(x, y) for y in g) for x in f) and all(any(div(y, x) for x in f) for y in g)


def _reduced_flavours(R: FiniteRing, cap: int, include_zero: bool) -> tuple[dict, dict]:
    """For each flavour: is the class multiset of flagged atomic factorizations unique per subject?"""
    T = theory(R)
    atoms = T.of_kind("irreducible")
    by_prod = T.tuples_by_product(atoms, cap)
    names = ("reduced", "strongly_reduced", "mu_reduced", "strongly_mu_reduced")
    ok = dict.fromkeys(names, True)
    wit: dict = {}
    for a in range(R.size):
        if a in T.units or (a == R.zero and not include_zero):
            continue
        seen: dict = {n: {} for n in names}
        for t in by_prod.get(a, ()):
            flags = T.factorization_flags(a, t)
            key = tuple(sorted(T.class_id[x] for x in t))
            for n in names:
                if flags[n]:
                    seen[n].setdefault(key, t)
        for n in names:
            if ok[n] and len(seen[n]) > 1:
                ok[n] = False
                wit[n] = (R.label(a), [[R.label(x) for x in t] for t in list(seen[n].values())[:2]])
    return ok, wit


def definition_flags(R: FiniteRing, len_cap: int | None = None) -> tuple[dict, dict]:
    """Every flag by search over the definition; returns (flags, witnesses)."""
    T = theory(R)
    cap = default_len_cap(R) if len_cap is None else len_cap
    wit: dict = {}
    out: dict = {}
    for flag, kind in (
        ("atomic", "irreducible"),
        ("strongly_atomic", "strongly_irreducible"),
        ("m_atomic", "m_irreducible"),
        ("very_strongly_atomic", "very_strongly_irreducible"),
        ("p_atomic", "prime"),
    ):
        ok, w = is_atomic_of_kind(R, kind)
        out[flag] = ok
        if not ok:
            wit[flag] = R.label(w)
    # every ascending chain of ideals in a finite ring stabilizes
    out["accp"] = True
    out["presimplifiable"] = is_presimplifiable_ring(R)
    if not out["presimplifiable"]:
        x, y = next(
            (x, y)
            for x in range(R.size)
            for y in T.quot[x].get(x, ())
            if x != R.zero and y not in T.units
        )
        wit["presimplifiable"] = (R.label(x), R.label(y))

    facs = _factorization_sets(R, cap)
    reps = {}
    for a in range(R.size):
        reps.setdefault(T.class_id[a], a)
    ufr = out["atomic"]
    weak = out["atomic"]
    for a, found in facs.items():
        keys = sorted(found, key=lambda k: (len(k), k))
        if ufr and len(keys) > 1:
            ufr = False
            wit["ufr"] = (R.label(a), [[R.label(x) for x in found[k]] for k in keys[:2]])
        if weak:
            for i, f in enumerate(keys):
                bad = next((g for g in keys[i + 1 :] if not _weakly_homomorphic(T, f, g, reps)), None)
                if bad is not None:
                    weak = False
                    wit["weak_ufr"] = (R.label(a), [[R.label(x) for x in found[k]] for k in (f, bad)])
                    break
    out["ufr"] = ufr
    out["weak_ufr"] = weak

    fl, w = fletcher_search(R, cap)
    out["fletcher_ufr"] = fl
    if not fl:
        wit["fletcher_ufr"] = w

    # regular nonunits: in a finite ring regular elements are units, so this is usually vacuous
    regular_nonunits = [a for a in T.regular if a not in T.units]
    factorial = True
    for a in regular_nonunits:
        if len(enumerate_class_factorizations(T, a, cap)) != 1:
            factorial = False
            wit["factorial"] = R.label(a)
    out["factorial"] = factorial

    for weak_flag, include_zero in (("", True), ("weak_", False)):
        ok, w = _reduced_flavours(R, cap, include_zero)
        for n in ("reduced", "strongly_reduced", "mu_reduced", "strongly_mu_reduced"):
            flag = f"{weak_flag}{n}_ufr"
            out[flag] = out["atomic"] and ok[n]
            if n in w:
                wit[flag] = w[n]
    return out, wit


def classify_ring(R: FiniteRing, len_cap: int | None = None, check: bool = True) -> RingClassReport:
    """Classify R; with check=True a disagreement between the two deciders raises."""
    defn, wit = definition_flags(R, len_cap)
    pred = structure_flags(R)
    undetermined = []
    for flag in RING_FLAGS:
        if pred[flag] is None:
            undetermined.append(flag)
            continue
        if check and pred[flag] != defn[flag]:
            raise InconsistencyError(
                flag, R.name, f"definition gives {defn[flag]}, structure gives {pred[flag]}; {wit.get(flag)}"
            )
    return RingClassReport(R.name, **defn, **_structure(R), witnesses=wit, undetermined=tuple(undetermined))


# ---------------------------------------------------------------- R[X]


@dataclass(frozen=True)
class Claim:
    value: bool
    provenance: str  # "theorem" or "bounded-witness"
    witness: Any = None

    def as_dict(self) -> dict:
        return {"value": self.value, "provenance": self.provenance, "witness": self.witness}


POLY_FLAGS = (
    "ufr",
    "factorial",
    "weak_ufr",
    "fletcher_ufr",
    "mu_reduced_ufr",
    "strongly_mu_reduced_ufr",
    "weak_mu_reduced_ufr",
    "weak_strongly_mu_reduced_ufr",
    "reduced_ufr",
    "strongly_reduced_ufr",
    "weak_reduced_ufr",
    "weak_strongly_reduced_ufr",
    "bfr",
    "hfr",
    "ffr",
    "atomic",
)


@dataclass(frozen=True)
class PolyRingClassReport:
    ring: str
    claims: dict  # flag -> Claim
    ffr_conditions: dict | None = None

    def __getattr__(self, name):
        claims = self.__dict__.get("claims", {})
        if name in claims:
            return claims[name].value
        raise AttributeError(name)

    def claim(self, flag: str) -> Claim:
        return self.claims[flag]

    def as_dict(self) -> dict:
        return {
            "ring": self.ring,
            "flags": {k: self.claims[k].as_dict() for k in POLY_FLAGS},
            "ffr_conditions": self.ffr_conditions,
        }


def maximal_ideal_powers(R: FiniteRing) -> list[frozenset]:
    """[M^0 = R, M^1, ..., M^n = 0] for a local ring R."""
    M = R.maximal_ideal
    powers = [frozenset(range(R.size)), M]
    while len(powers[-1]) > 1:
        powers.append(R.ideal_product(powers[-1], M))
    return powers


def ffr_conditions(R: FiniteRing) -> dict:
    """Conditions (a) and (b) on a finite local ring, checked by powering M.

    (a) x in M^i \\ M^(i+1), y in M^j \\ M^(j+1), i+j < n  =>  xy in M^(i+j) \\ M^(i+j+1)
    (b) aM = M^2 for every a in M \\ M^2
    """
    if not R.is_local:
        raise ValueError(f"{R.name} is not local")
    P = maximal_ideal_powers(R)
    n = len(P) - 1  # M^n = 0, M^(n-1) != 0
    layer = {}
    for i in range(1, n):
        for x in P[i] - P[i + 1]:
            layer[x] = i
    a_ok = True
    a_witness = None
    for x, i in layer.items():
        for y, j in layer.items():
            if i + j < n and layer.get(R.mul(x, y)) != i + j:
                a_ok = False
                a_witness = (R.label(x), R.label(y))
                break
        if not a_ok:
            break
    M = P[1]
    M2 = P[2] if n >= 2 else frozenset({R.zero})
    b_ok = True
    b_witness = None
    for a in sorted(M - M2):
        if frozenset(R.mul(a, m) for m in M) != M2:
            b_ok = False
            b_witness = R.label(a)
            break
    return {"n": n, "a": a_ok, "b": b_ok, "a_witness": a_witness, "b_witness": b_witness}


def idempotent_length_witness(R: FiniteRing) -> dict | None:
    """For R with a nontrivial idempotent: an idempotent with atomic factorizations of two lengths.

    Pick a component S_j and an atom b of S_j (0 when S_j is a field), with b^N = 0.
    Then (1 - e_j) + e_j b is an atom of R[X] and its k-th power equals 1 - e_j
    for every k >= N, so lengths are unbounded.
    """
    comps = R.local_components
    if len(comps) < 2:
        return None
    j = next((i for i, c in enumerate(comps) if c.ring.is_field), 0)
    S = comps[j].ring
    if S.is_field:
        b = S.zero
        N = 1
    else:
        T = theory(S)
        b = next(x for x in sorted(S.nilradical) if x and T.classify(x).irreducible)
        N = S.nilpotency_order[b]
    e = comps[j].idempotent
    atom_j = lift_component(R, j, (b,))
    atom = atom_j[0] if atom_j else R.zero
    target = R.sub(R.one, e)
    facs = []
    for k in (N, N + 1):
        prod = R.one
        for _ in range(k):
            prod = R.mul(prod, atom)
        if prod != target:
            raise AssertionError("idempotent witness does not multiply back")
        facs.append([R.label(atom)] * k)
    return {"subject": R.label(target), "factorizations": facs, "lengths": [N, N + 1]}


def classify_poly_ring(R: FiniteRing) -> PolyRingClassReport:
    comps = [c.ring for c in R.local_components]
    field_ = R.is_field
    pof = all(S.is_field for S in comps)
    f2 = _is_product_of_f2(R)
    th = "theorem"
    claims: dict = {}
    nonreg = None if pof else find_nonisomorphic_factorizations(R, 2, regular_only=True)
    claims["ufr"] = Claim(field_, th, None if field_ else _witness_text(R, nonreg))
    for flag in (
        "factorial",
        "weak_ufr",
        "fletcher_ufr",
        "mu_reduced_ufr",
        "strongly_mu_reduced_ufr",
        "weak_mu_reduced_ufr",
        "weak_strongly_mu_reduced_ufr",
    ):
        claims[flag] = Claim(pof, th, None if pof else _witness_text(R, nonreg))
    for flag in ("reduced_ufr", "strongly_reduced_ufr", "weak_reduced_ufr", "weak_strongly_reduced_ufr"):
        claims[flag] = Claim(field_ or f2, th)
    claims["atomic"] = Claim(True, th)

    conds = None
    if R.is_local:
        claims["bfr"] = Claim(True, th)
        if field_:
            claims["hfr"] = Claim(True, th)
            claims["ffr"] = Claim(True, th)
        else:
            w = nilpotent_atom_witness(R)
            claims["hfr"] = Claim(False, "bounded-witness", _length_witness_text(R, w))
            conds = ffr_conditions(R)
            claims["ffr"] = Claim(conds["a"] and conds["b"], th)
    else:
        w = idempotent_length_witness(R)
        claims["bfr"] = Claim(False, "bounded-witness", w)
        claims["hfr"] = Claim(False, "bounded-witness", w)
        claims["ffr"] = Claim(False, "bounded-witness", w)
    return PolyRingClassReport(R.name, claims, conds)


def _witness_text(R: FiniteRing, w) -> Any:
    if w is None:
        return None
    return {
        "subject": str(w.subject),
        "factorizations": [[str(g) for g in fac] for fac in (w.first, w.second)],
    }


def _length_witness_text(R: FiniteRing, w) -> Any:
    if w is None:
        return None
    return {
        "subject": str(w.subject),
        "factorizations": [[str(g) for g in w.short], [str(g) for g in w.long]],
        "lengths": [len(w.short), len(w.long)],
    }


# ---------------------------------------------------------------- non-isomorphic factorizations


@dataclass(frozen=True)
class NonIsomorphicWitness:
    subject: Polynomial
    first: tuple
    second: tuple


def _regular_collision(eng: LocalEngine, max_deg: int):
    """Least monic P of degree <= max_deg with two different multisets of monic atoms."""
    S = eng.S
    facs: dict = {}
    atoms_by_deg: dict[int, list] = {}
    monics_by_deg: dict[int, list] = {0: [(S.one,)]}
    facs[(S.one,)] = {()}
    for d in range(1, max_deg + 1):
        monics = [tuple(low) + (S.one,) for low in _tuples(S.size, d)]
        monics.sort(key=lambda p: p)
        monics_by_deg[d] = monics
        found: dict = {}
        for i in range(1, d):
            for a in atoms_by_deg.get(i, ()):
                for q in monics_by_deg[d - i]:
                    p = pmul(S, a, q)
                    for ms in facs.get(q, ()):
                        found.setdefault(p, set()).add(tuple(sorted(ms + (a,))))
        atoms_by_deg[d] = [p for p in monics if p not in found]
        for p in atoms_by_deg[d]:
            found[p] = {(p,)}
        facs.update(found)
        collisions = sorted((p for p in monics if len(facs[p]) > 1), key=lambda p: tuple(reversed(p)))
        if collisions:
            p = collisions[0]
            a, b = sorted(facs[p], key=lambda m: (len(m), m))[:2]
            return p, a, b
    return None


def _tuples(base: int, length: int):
    from itertools import product

    return product(range(base), repeat=length)


def find_nonisomorphic_factorizations(
    R: FiniteRing, deg_bound: int, regular_only: bool = True
) -> NonIsomorphicWitness | None:
    """Search subjects of degree <= deg_bound for two non-isomorphic atomic factorizations.

    Regular subjects are scanned one local component at a time, degree by
    degree; a component witness is lifted with 1 in the other coordinates.
    Without regular_only, nonregular subjects of each component are scanned
    next, and for a decomposable R the idempotent family e = e^k is used.
    """
    comps = R.local_components

    def lift(i, p):
        return Polynomial(R, lift_component(R, i, p))

    best = None
    for i, c in enumerate(comps):
        hit = _regular_collision(local_engine(c.ring), deg_bound)
        if hit is not None:
            p, a, b = hit
            key = (len(p), i)
            if best is None or key < best[0]:
                best = (key, NonIsomorphicWitness(lift(i, p), tuple(lift(i, g) for g in a), tuple(lift(i, g) for g in b)))
    if best is not None:
        return best[1]
    if regular_only:
        return None
    for i, c in enumerate(comps):
        eng = local_engine(c.ring)
        S = c.ring
        for p in eng.nonregular_universe(deg_bound):
            found = eng.factorizations(p, deg_bound, default_len_cap(S) + deg_bound)
            if len(found) > 1:
                ms = sorted(found, key=lambda k: (len(k), k))[:2]
                return NonIsomorphicWitness(
                    lift(i, p), tuple(lift(i, g) for g in found[ms[0]]), tuple(lift(i, g) for g in found[ms[1]])
                )
    w = idempotent_length_witness(R)
    if w is not None:
        subject = Polynomial.parse(R, w["subject"])
        first = tuple(Polynomial.parse(R, x) for x in w["factorizations"][0])
        second = tuple(Polynomial.parse(R, x) for x in w["factorizations"][1])
        return NonIsomorphicWitness(subject, first, second)
    return None


def report_json(report) -> dict:
    if hasattr(report, "as_dict"):
        return report.as_dict()
    return asdict(report)


__all__ = [
    "Claim",
    "InconsistencyError",
    "NonIsomorphicWitness",
    "PolyRingClassReport",
    "RingClassReport",
    "classify_poly_ring",
    "classify_ring",
    "definition_flags",
    "ffr_conditions",
    "find_nonisomorphic_factorizations",
    "idempotent_length_witness",
    "maximal_ideal_powers",
    "render_poly",
    "structure_flags",
]
