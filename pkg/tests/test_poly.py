import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ufrlab.elements import classify_element
from ufrlab.factor import EXACT, is_indecomposable_poly, is_irreducible_poly
from ufrlab.poly import (
    Polynomial,
    all_polys,
    assemble_components,
    classify_poly,
    constant_very_strong_assoc_in_polyring,
    default_bound,
    poly_associates,
    reduce_mod_nil,
    split_components,
)
from ufrlab.ring import RingMismatchError, build_ring

SPLIT_RINGS = ["Z(6)", "Z(12)", "Z(2)xZ(4)", "Z(2)xZ(2)xZ(2)", "Z(3)xZ(3)"]


def poly(spec, text):
    return Polynomial.parse(build_ring(spec), text)


@st.composite
def polys_over(draw, spec, max_deg=4):
    R = build_ring(spec)
    coeffs = draw(st.lists(st.integers(0, R.size - 1), max_size=max_deg + 1))
    return Polynomial(R, tuple(coeffs))


def test_arithmetic_examples():
    R4 = build_ring("Z(4)")
    assert Polynomial.parse(R4, "X+2") * Polynomial.parse(R4, "X+2") == Polynomial.parse(R4, "X^2")
    R6 = build_ring("Z(6)")
    assert Polynomial.parse(R6, "2+3X") * Polynomial.parse(R6, "3+2X") == Polynomial.x(R6)
    f = Polynomial.parse(R6, "5X^3+2X+1")
    assert f * Polynomial.constant(R6, R6.one) == f
    assert f - f == Polynomial(R6, ())
    assert (f + f).degree == 3


def test_zero_polynomial_is_normalized():
    R = build_ring("Z(4)")
    zero = Polynomial(R, (0, 0, 0))
    assert zero.coeffs == ()
    assert zero.is_zero
    assert zero.degree < 0
    assert Polynomial(R, (1, 2, 0)) == Polynomial.parse(R, "2X+1")


def test_shift_evaluates_at_translated_argument():
    R = build_ring("Z(6)")
    f = Polynomial.parse(R, "X^3+2X+5")
    for a in range(R.size):
        g = f.shift(a)
        for x in range(R.size):
            assert g.eval(x) == f.eval(R.add(x, a))


@pytest.mark.parametrize("spec", ["Z(4)", "Z(6)", "Z(2)xZ(3)", "Z(2)[s,t]/(s^2,s*t,t^2)"])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_polynomial_ring_axioms(spec, data):
    f, g, h = (data.draw(polys_over(spec)) for _ in range(3))
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) - g == f


@pytest.mark.parametrize("spec", ["Z(4)", "Z(2)xZ(3)", "Z(2)[s,t]/(s^2,s*t,t^2)", "Id(Z(4),2)"])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_text_format_round_trips(spec, data):
    f = data.draw(polys_over(spec))
    assert Polynomial.parse(f.ring, str(f)) == f


def test_text_format_examples():
    R = build_ring("Z(4)")
    assert str(Polynomial.parse(R, "2X^3+X+1")) == "2X^3+X+1"
    assert str(Polynomial.parse(R, "X^2-1")) == "X^2+3"
    assert str(Polynomial.parse(build_ring("Z(2)xZ(3)"), "(1,2)X^2+(0,1)")) == "(1,2)X^2+(0,1)"
    with pytest.raises(ValueError):
        Polynomial.parse(R, "2Y")


def test_mixing_base_rings_is_an_error():
    with pytest.raises(RingMismatchError):
        _ = Polynomial.x(build_ring("Z(4)")) + Polynomial.x(build_ring("Z(6)"))


def test_classification_examples():
    assert classify_poly(poly("Z(4)", "1+2X")).unit
    assert classify_poly(poly("Z(6)", "2+2X")).zero_divisor
    assert classify_poly(poly("Z(6)", "3")).idempotent
    assert classify_poly(poly("Z(4)", "2+2X")).nilpotent
    assert classify_poly(poly("Z(6)", "2+3X")).regular


def test_classification_invariants(corpus_rings):
    for R in corpus_rings:
        if R.size > 9:
            continue
        for coeffs in all_polys(R, 2):
            f = Polynomial(R, coeffs)
            c = classify_poly(f)
            assert not c.unit or c.regular
            assert c.regular == (not c.zero_divisor)
            if not f.is_zero:
                assert not c.nilpotent or c.zero_divisor


def test_reduction_mod_nil_examples():
    R4 = build_ring("Z(4)")
    reduced = reduce_mod_nil(Polynomial.parse(R4, "X+2"))
    assert reduced.ring.size == 2
    assert str(reduced) == "X"
    assert reduce_mod_nil(Polynomial.parse(R4, "2+2X")).is_zero
    f = poly("Z(6)", "5X^2+3X+4")
    assert str(reduce_mod_nil(f)) == str(f)


@pytest.mark.parametrize("spec", ["Z(4)", "Z(8)", "Z(12)", "Z(2)xZ(4)"])
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_reduction_mod_nil_is_multiplicative(spec, data):
    f, g = data.draw(polys_over(spec, 3)), data.draw(polys_over(spec, 3))
    assert reduce_mod_nil(f * g) == reduce_mod_nil(f) * reduce_mod_nil(g)


def test_split_components_examples():
    R6 = build_ring("Z(6)")
    parts = split_components(Polynomial.x(R6))
    assert [str(p) for p in parts] == ["X", "X"]
    assert sorted(p.ring.size for p in parts) == [2, 3]
    parts = split_components(Polynomial.parse(R6, "2+3X"))
    assert [str(p) for p in parts] == ["X", "2"]
    R5 = build_ring("Z(5)")
    f = Polynomial.parse(R5, "3X^2+1")
    assert split_components(f) == [f]


@pytest.mark.parametrize("spec", SPLIT_RINGS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_split_then_assemble_is_identity(spec, data):
    f, g = data.draw(polys_over(spec)), data.draw(polys_over(spec))
    assert assemble_components(f.ring, split_components(f)) == f
    products = [a * b for a, b in zip(split_components(f), split_components(g))]
    assert assemble_components(f.ring, products) == f * g


def test_associate_examples():
    R4 = build_ring("Z(4)")
    X = Polynomial.x(R4)
    assert not poly_associates(X, Polynomial.parse(R4, "X+2"), 3).assoc
    assert poly_associates(X, Polynomial.parse(R4, "3X"), 3).strong_assoc
    constants = poly_associates(poly("Z(6)", "2"), poly("Z(6)", "4"))
    assert constants.assoc and constants.tier == EXACT
    with pytest.raises(ValueError, match="below the degrees"):
        poly_associates(X * X, X, 1)


def test_associates_stabilize_when_the_bound_doubles():
    for spec in ("Z(4)", "Z(8)", "Z(2)[s,t]/(s^2,s*t,t^2)"):
        R = build_ring(spec)
        for f, g in itertools.combinations(list(all_polys(R, 1))[1:12], 2):
            F, G = Polynomial(R, f), Polynomial(R, g)
            base = max(default_bound(F), default_bound(G))
            first = poly_associates(F, G, base).as_dict()
            doubled = poly_associates(F, G, 2 * base).as_dict()
            flags = ("assoc", "strong_assoc", "very_strong_assoc", "strong_regular_assoc", "very_strong_regular_assoc")
            assert [first[k] for k in flags] == [doubled[k] for k in flags], (spec, str(F), str(G))


def test_constant_associates_agree_with_ring_level(corpus_rings):
    for R in corpus_rings:
        if R.size > 9:
            continue
        for a, b in itertools.product(range(R.size), repeat=2):
            v = poly_associates(Polynomial.constant(R, a), Polynomial.constant(R, b))
            assert v.assoc == (R.principal_ideal(a) == R.principal_ideal(b))
            assert v.strong_assoc == any(R.mul(u, b) == a for u in R.units)


def test_constant_very_strong_associates():
    R4 = build_ring("Z(4)")
    assert constant_very_strong_assoc_in_polyring(R4, 2, 2)
    assert constant_very_strong_assoc_in_polyring(R4, 0, 0)
    assert not constant_very_strong_assoc_in_polyring(build_ring("Z(6)"), 2, 4)


def test_indecomposable_examples():
    R6 = build_ring("Z(6)")
    X = Polynomial.x(R6)
    verdict = is_indecomposable_poly(X)
    assert verdict.value is False
    g, h = verdict.witness
    assert g * h == X
    assert is_indecomposable_poly(Polynomial.x(build_ring("Z(4)"))).value is True
    zero = is_indecomposable_poly(Polynomial(R6, ()))
    assert zero.value is False and zero.tier == EXACT
    a, b = zero.witness
    assert (a * b).is_zero


def test_constant_irreducibility_matches_ring_level(corpus_rings):
    for R in corpus_rings:
        for a in range(R.size):
            if a in R.units:
                continue
            verdict = is_irreducible_poly(Polynomial.constant(R, a))
            assert verdict.tier == EXACT
            assert verdict.value == classify_element(R(a)).irreducible, (R.name, R.label(a))
