import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ufrlab.dsl import RingSpecError
from ufrlab.elements import classify_element
from ufrlab.ring import (
    NotAnIdealError,
    NotFiniteError,
    RingMismatchError,
    annihilator,
    build_ring,
    compute_structure,
    component_isomorphism,
    divides,
    find_isomorphism,
    principal_ideal,
    quotient_ring,
    reduction_mod_nil,
    ring_from_components,
)

LARGER_RINGS = [
    "Z(4)[t]/(t^3)",
    "Z(3)[s,t]/(s^2,t^2)",
    "Z(2)[u]/(u^3+u+1)",
    "Id(Z(8),4)",
    "Z(5)xZ(9)xZ(4)",
    "Z(2)[s]/(s^4)xZ(3)",
]


def labels(R, elems):
    return {R.label(a) for a in elems}


def check_axioms(R, a, b, c):
    add, mul = R.add, R.mul
    assert add(a, b) == add(b, a)
    assert mul(a, b) == mul(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, R.zero) == a
    assert mul(a, R.one) == a
    assert add(a, R.neg(a)) == R.zero


def test_axioms_hold_exhaustively_on_the_corpus(corpus_rings):
    for R in corpus_rings:
        rng = range(R.size)
        for a, b, c in itertools.product(rng, rng, rng):
            check_axioms(R, a, b, c)


@pytest.mark.parametrize("spec", LARGER_RINGS)
@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_axioms_hold_on_sampled_triples_of_larger_rings(spec, data):
    R = build_ring(spec)
    element = st.integers(min_value=0, max_value=R.size - 1)
    check_axioms(R, data.draw(element), data.draw(element), data.draw(element))


@pytest.mark.parametrize("spec", ["Z(4)[t]/(t^3)", "Z(2)[s]/(s^4)xZ(3)", "Id(Z(8),4)"])
def test_axioms_hold_exhaustively_on_size_64_rings(spec):
    R = build_ring(spec)
    assert R.size <= 256
    elems = range(R.size)
    for a, b in itertools.product(elems, elems):
        assert R.add(a, b) == R.add(b, a)
        assert R.mul(a, b) == R.mul(b, a)
    for a, b, c in itertools.product(elems, repeat=3):
        assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
        assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))


def test_structural_invariants(corpus_rings):
    for R in corpus_rings + [build_ring(s) for s in LARGER_RINGS]:
        assert R.jacobson_radical == R.nilradical, R.name
        assert R.units.isdisjoint(R.zero_divisors), R.name
        assert R.units | R.zero_divisors == frozenset(range(R.size)), R.name
        size = 1
        for c in R.local_components:
            size *= c.ring.size
            assert c.ring.is_local
        assert size == R.size, R.name
        assert R.is_indecomposable == (R.idempotents == frozenset({R.zero, R.one}))
        assert R.is_reduced == (R.nilradical == frozenset({R.zero}))
        assert not R.is_spir or R.is_local
        assert sum_of_idempotents(R) == R.one
        for e, f in itertools.combinations(R.primitive_idempotents, 2):
            assert R.mul(e, f) == R.zero


def sum_of_idempotents(R):
    total = R.zero
    for e in R.primitive_idempotents:
        total = R.add(total, e)
    return total


def test_rebuilding_from_local_components_gives_an_isomorphic_ring(corpus_rings):
    for R in corpus_rings:
        assert R.size <= 64
        assert component_isomorphism(R) is not None, R.name
        assert find_isomorphism(R, ring_from_components(R)) is not None, R.name


def test_isomorphism_search_separates_non_isomorphic_rings():
    assert find_isomorphism(build_ring("Z(4)"), build_ring("Z(2)xZ(2)")) is None
    assert find_isomorphism(build_ring("Z(6)"), build_ring("Z(2)xZ(3)")) is not None
    assert find_isomorphism(build_ring("Z(4)[t]/(t^2,2*t)"), build_ring("Z(2)[s,t]/(s^2,s*t,t^2)")) is None


def test_z6_structure():
    R = build_ring("Z(6)")
    assert labels(R, R.units) == {"1", "5"}
    assert labels(R, R.idempotents) == {"0", "1", "3", "4"}
    assert sorted(c.ring.size for c in R.local_components) == [2, 3]


def test_z4_structure():
    R = build_ring("Z(4)")
    rep = compute_structure(R)
    assert labels(R, rep.units) == {"1", "3"}
    assert labels(R, rep.nilradical) == {"0", "2"}
    assert rep.is_local and rep.is_spir
    assert not rep.is_reduced


def test_local_ring_with_two_generated_maximal_ideal():
    R = build_ring("Z(2)[s,t]/(s^2,s*t,t^2)")
    assert R.size == 8
    assert labels(R, R.units) == {"1", "1+s", "1+t", "1+s+t"}
    M = R.maximal_ideal
    assert R.ideal_product(M, M) == frozenset({R.zero})
    assert R.is_local and R.is_local_m2_zero and not R.is_spir


def test_quadratic_extension_is_a_field():
    R = build_ring("Z(2)[u]/(u^2+u+1)")
    assert R.size == 4
    assert R.is_field
    assert all(any(R.mul(a, b) == R.one for b in range(R.size)) for a in range(1, R.size))


def test_relation_without_nilpotent_variable_is_not_finite():
    with pytest.raises(NotFiniteError, match="not finite"):
        build_ring("Z(4)[t]/(2*t)")
    assert build_ring("Z(4)[t]/(t^3)").size == 64


def test_finiteness_cap_is_configurable():
    with pytest.raises(NotFiniteError):
        build_ring("Z(2)[t]/(t^10)", cap=512)
    assert build_ring("Z(2)[t]/(t^10)").size == 1024


def test_idealization_needs_compatible_modulus():
    assert build_ring("Id(Z(8),4)").size == 32
    with pytest.raises(ValueError):
        build_ring("Id(Z(8),3)")


def test_bad_text_raises_spec_error():
    with pytest.raises(RingSpecError):
        build_ring("Z(1)")


def test_ideal_membership_examples():
    R = build_ring("Z(4)")
    two = R.element("2")
    assert labels(R, (x.index for x in principal_ideal(two))) == {"0", "2"}
    assert labels(R, (x.index for x in annihilator(two))) == {"0", "2"}
    for spec in ("Z(4)", "Z(6)", "Z(2)xZ(2)"):
        S = build_ring(spec)
        assert annihilator(S.element("1")) == frozenset({S.element("0")})
    Z6 = build_ring("Z(6)")
    assert divides(Z6.element("2"), Z6.element("4"))
    assert divides(Z6.element("4"), Z6.element("2"))
    assert not divides(Z6.element("2"), Z6.element("3"))


def test_mixing_rings_is_an_error():
    a = build_ring("Z(4)").element("2")
    b = build_ring("Z(6)").element("2")
    with pytest.raises(RingMismatchError):
        divides(a, b)
    with pytest.raises(RingMismatchError):
        _ = a * b


def test_quotient_examples():
    Z4 = build_ring("Z(4)")
    assert reduction_mod_nil(Z4).size == 2
    Z6 = build_ring("Z(6)")
    trivial = quotient_ring(Z6, {Z6.zero})
    assert trivial.size == 6
    assert find_isomorphism(trivial, Z6) is not None
    D = build_ring("Z(2)[s,t]/(s^2,s*t,t^2)")
    residue = quotient_ring(D, D.maximal_ideal)
    assert residue.size == 2 and residue.is_field


def test_quotient_projection_is_a_homomorphism():
    R = build_ring("Z(12)")
    Q = quotient_ring(R, R.principal_ideal(R.parse_element("4")))
    assert Q.size == 4
    for a in range(R.size):
        for b in range(R.size):
            assert Q.projection[R.add(a, b)] == Q.add(Q.projection[a], Q.projection[b])
            assert Q.projection[R.mul(a, b)] == Q.mul(Q.projection[a], Q.projection[b])


def test_non_ideal_is_rejected_with_a_violating_pair():
    R = build_ring("Z(6)")
    with pytest.raises(NotAnIdealError, match="not an ideal"):
        quotient_ring(R, {0, 2})
    with pytest.raises(NotAnIdealError):
        quotient_ring(R, {1})


def test_very_strongly_irreducible_elements_have_annihilator_in_radical(corpus_rings):
    for R in corpus_rings:
        for a in range(1, R.size):
            if classify_element(R(a)).very_strongly_irreducible:
                assert R.annihilator(a) <= R.jacobson_radical, (R.name, R.label(a))


def test_element_labels_round_trip(corpus_rings):
    for R in corpus_rings + [build_ring(s) for s in LARGER_RINGS]:
        for a in range(R.size):
            assert R.parse_element(R.label(a)) == a


def test_element_arithmetic_uses_ring_operations():
    R = build_ring("Z(2)xZ(3)")
    a, b = R.element("(1,2)"), R.element("(1,1)")
    assert a + b == R.element("(0,0)")
    assert a * b == R.element("(1,2)")
    assert a ** 2 == R.element("(1,1)")
    assert a - b == R.element("(0,1)")


@pytest.mark.parametrize(
    "spec",
    ["Z(2)[t]/(t^6)", "Z(3)[s,t]/(s^2,t^2)", "Z(8)[s]/(s^2-2,4*s)", "Z(4)[s,t]/(s^2-2,t^2-2,s*t,2*s-2*t)"],
)
def test_tabulated_quotient_tables_match_direct_normal_forms(spec, monkeypatch):
    import ufrlab.ring as ring_module

    fast = build_ring(spec)
    monkeypatch.setattr(ring_module, "_tabulate_from_basis", lambda size, strides, add, mul: (add, mul))
    direct = build_ring(spec)
    assert fast.add_table == direct.add_table
    assert fast.mul_table == direct.mul_table


def test_integers_parse_as_multiples_of_one_in_products():
    R = build_ring("Z(2)xZ(3)")
    assert R.element("1") == R.element("(1,1)")
    assert R.element("5") == R.element("(1,2)")
    assert R.element("-1") == R.element("(1,2)")
