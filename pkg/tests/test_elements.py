import itertools

import pytest

from ufrlab.elements import (
    associate_vector,
    atomic_factorizations_elem,
    classify_element,
    is_atomic_of_kind,
    is_presimplifiable_ring,
    is_weakly_presimplifiable_ring,
    theory,
)
from ufrlab.factor import is_fletcher_ufr, is_u_decomposition, u_decomposition
from ufrlab.ring import RingMismatchError, build_ring

FIELDS = ["Z(2)", "Z(3)", "Z(5)", "Z(7)", "Z(2)[u]/(u^2+u+1)"]


def elem(spec, label):
    return build_ring(spec).element(label)


def pair(spec, a, b):
    R = build_ring(spec)
    return R.element(a), R.element(b)


def test_associate_vector_examples():
    v = associate_vector(*pair("Z(6)", "2", "4"))
    assert v.assoc and v.strong_assoc and not v.very_strong_assoc
    assert associate_vector(*pair("Z(4)", "2", "2")).very_strong_assoc
    v = associate_vector(*pair("Z(2)xZ(2)", "(1,0)", "(1,0)"))
    assert v.assoc and v.strong_assoc and not v.very_strong_assoc
    for spec in ("Z(4)", "Z(6)", "Z(2)[s,t]/(s^2,s*t,t^2)"):
        v = associate_vector(*pair(spec, "0", "0"))
        assert all(v.as_dict()[k] for k in ("assoc", "strong_assoc", "very_strong_assoc"))
        assert v.strong_regular_assoc and v.very_strong_regular_assoc


def test_associate_vector_rejects_mixed_rings():
    with pytest.raises(RingMismatchError):
        associate_vector(elem("Z(4)", "2"), elem("Z(6)", "2"))


def test_associate_implications_hold_everywhere(corpus_rings):
    for R in corpus_rings:
        for a, b in itertools.product(range(R.size), repeat=2):
            v = associate_vector(R(a), R(b))
            assert not v.very_strong_assoc or v.strong_assoc
            assert not v.strong_assoc or v.assoc
            assert not v.strong_assoc or v.strong_regular_assoc
            assert not v.very_strong_assoc or v.very_strong_regular_assoc


def test_element_classification_examples():
    two = classify_element(elem("Z(4)", "2"))
    assert two.prime and two.very_strongly_irreducible
    s = classify_element(elem("Z(2)[s,t]/(s^2,s*t,t^2)", "s"))
    assert s.weakly_prime and not s.prime
    e = classify_element(elem("Z(2)xZ(2)", "(0,1)"))
    assert e.m_irreducible and not e.very_strongly_irreducible
    three = classify_element(elem("Z(6)", "3"))
    assert three.irreducible


def test_zero_is_irreducible_only_in_domains_and_m_irreducible_only_in_fields(corpus_rings):
    for R in corpus_rings:
        zero = classify_element(R(R.zero))
        assert zero.irreducible == R.is_domain
        assert zero.m_irreducible == R.is_field


def test_irreducibility_and_primeness_chains(corpus_rings):
    for R in corpus_rings:
        for a in range(R.size):
            c = classify_element(R(a))
            assert not c.prime or c.weakly_prime or a == R.zero
            assert not c.weakly_prime or c.irreducible
            if a != R.zero:
                assert not c.very_strongly_irreducible or c.m_irreducible
                assert not c.m_irreducible or c.strongly_irreducible
                assert not c.strongly_irreducible or c.irreducible
            assert c.unit == (not c.zero_divisor)
            assert c.regular == c.unit


def test_presimplifiable_elements_have_one_notion_of_irreducible(corpus_rings):
    for R in corpus_rings:
        for a in range(1, R.size):
            c = classify_element(R(a))
            if c.presimplifiable_element:
                flags = {c.irreducible, c.strongly_irreducible, c.very_strongly_irreducible, c.m_irreducible}
                assert len(flags) == 1, (R.name, R.label(a))


def maximal_among(ideal, family):
    return not any(ideal < other for other in family)


def test_irreducible_characterization_by_principal_ideals(corpus_rings):
    for R in corpus_rings:
        T = theory(R)
        proper = [T.ideal[b] for b in range(R.size) if b not in T.units]
        inside_zd = [T.ideal[b] for b in range(R.size) if T.ideal[b] <= R.zero_divisors]
        for a in range(1, R.size):
            if a in T.units:
                continue
            c = classify_element(R(a))
            if a in T.regular:
                expected = c.m_irreducible
            else:
                expected = maximal_among(T.ideal[a], inside_zd)
            assert c.irreducible == expected, (R.name, R.label(a))
            assert c.m_irreducible == maximal_among(T.ideal[a], proper)


def test_no_irreducible_sits_below_a_proper_regular_chain(corpus_rings):
    for R in corpus_rings:
        T = theory(R)
        for a1 in range(1, R.size):
            if not classify_element(R(a1)).irreducible:
                continue
            for a2 in range(R.size):
                if T.ideal[a1] < T.ideal[a2] < frozenset(range(R.size)):
                    assert a1 in R.zero_divisors and a2 not in R.zero_divisors


def test_very_strong_irreducibility_means_every_factorization_has_a_unit(corpus_rings):
    for R in corpus_rings:
        T = theory(R)
        for a in range(1, R.size):
            if a in T.units:
                continue
            every_has_unit = all(
                b in T.units or c in T.units
                for b, c in itertools.product(range(R.size), repeat=2)
                if R.mul(b, c) == a
            )
            assert classify_element(R(a)).very_strongly_irreducible == every_has_unit


def test_m_irreducible_means_very_strong_or_idempotent_maximal_ideal(corpus_rings):
    for R in corpus_rings:
        T = theory(R)
        maximal = set(R.maximal_ideals)
        for a in range(1, R.size):
            if a in T.units:
                continue
            c = classify_element(R(a))
            ideal = T.ideal[a]
            idempotent_maximal = ideal in maximal and R.ideal_product(ideal, ideal) == ideal
            assert c.m_irreducible == (c.very_strongly_irreducible or idempotent_maximal)


def test_weakly_prime_elements_are_prime_or_square_zero(corpus_rings):
    for R in corpus_rings:
        for a in range(1, R.size):
            c = classify_element(R(a))
            if c.weakly_prime:
                assert c.prime or R.mul(a, a) == R.zero
                if c.regular:
                    assert c.prime


def test_presimplifiable_rings():
    assert is_presimplifiable_ring(build_ring("Z(4)"))
    assert not is_presimplifiable_ring(build_ring("Z(6)"))
    for spec in FIELDS:
        assert is_presimplifiable_ring(build_ring(spec))
    assert is_weakly_presimplifiable_ring(build_ring("Z(6)")) is False


def test_presimplifiable_local_rings(corpus_rings):
    for R in corpus_rings:
        if R.is_local:
            assert is_presimplifiable_ring(R)
        else:
            assert not is_presimplifiable_ring(R)


def test_atomic_factorization_examples():
    two = atomic_factorizations_elem(elem("Z(4)", "2"), 4)
    assert [f.factors for f in two.factorizations] == [(2,)]

    R6 = build_ring("Z(6)")
    found = atomic_factorizations_elem(R6.element("2"), 3)
    assert found.lengths == {1, 2, 3}
    T = theory(R6)
    for f in found.factorizations:
        assert T.product(f.factors) == R6.parse_element("2")
        assert all(T.assoc(x, R6.parse_element("2")) for x in f.factors)
    assert found.truncated

    zero = atomic_factorizations_elem(elem("Z(4)", "0"), 3)
    assert [f.factors for f in zero.factorizations] == [(2, 2), (2, 2, 2)]


def test_atomic_factorizations_reject_units():
    with pytest.raises(ValueError, match="unit"):
        atomic_factorizations_elem(elem("Z(4)", "3"), 3)


def test_atomic_factorizations_are_products_of_irreducibles(corpus_rings):
    for R in corpus_rings:
        T = theory(R)
        for a in range(R.size):
            if a in T.units:
                continue
            for f in atomic_factorizations_elem(R(a)).factorizations:
                assert T.product(f.factors) == a
                assert all(classify_element(R(x)).irreducible for x in f.factors)


def test_every_finite_ring_is_atomic(corpus_rings):
    for R in corpus_rings:
        assert is_atomic_of_kind(R, "irreducible")[0]
        assert is_atomic_of_kind(R, "strongly_irreducible")[0]
        assert is_atomic_of_kind(R, "m_irreducible")[0]


def test_u_decomposition_examples():
    R4 = build_ring("Z(4)")
    zero = u_decomposition(R4.element("0"))
    assert zero.relevant == (2, 2) and zero.irrelevant == ()
    R6 = build_ring("Z(6)")
    two = u_decomposition(R6.element("2"))
    assert [R6.label(b) for b in two.relevant] == ["2"]
    assert R6.parse_element("4") in theory(R6).U(R6.parse_element("2"))
    with pytest.raises(ValueError, match="unit"):
        u_decomposition(R6.element("5"))


def test_u_decompositions_satisfy_the_definition(corpus_rings):
    for R in corpus_rings:
        T = theory(R)
        for a in range(R.size):
            if a in T.units:
                continue
            d = u_decomposition(R(a))
            assert is_u_decomposition(R, a, d.irrelevant, d.relevant)


def test_fletcher_unique_factorization_matches_fields_and_spirs(corpus_rings):
    assert is_fletcher_ufr(build_ring("Z(4)"))
    assert not is_fletcher_ufr(build_ring("Z(2)[s,t]/(s^2,s*t,t^2)"))
    for R in corpus_rings:
        expected = all(c.ring.is_field or c.ring.is_spir for c in R.local_components)
        assert is_fletcher_ufr(R) == expected, R.name
