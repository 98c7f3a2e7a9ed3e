"""Factorization theory of finite commutative rings and their polynomial rings."""

from .classify import classify_poly_ring, classify_ring, find_nonisomorphic_factorizations
from .dsl import parse_ring_spec, render_ring_spec
from .elements import associate_vector, atomic_factorizations_elem, classify_element
from .factor import (
    atomic_factorizations_poly,
    divisors_poly,
    factor_X,
    is_fletcher_ufr,
    is_indecomposable_poly,
    is_irreducible_poly,
    probe_weakly_prime_lift,
    set_of_lengths_Xn,
    u_decomposition,
)
from .harness import run_suite
from .poly import Polynomial, classify_poly, poly_associates
from .ring import FiniteRing, RingElement, build_ring

__version__ = "0.1.0"

__all__ = [
    "FiniteRing",
    "Polynomial",
    "RingElement",
    "associate_vector",
    "atomic_factorizations_elem",
    "atomic_factorizations_poly",
    "build_ring",
    "classify_element",
    "classify_poly",
    "classify_poly_ring",
    "classify_ring",
    "divisors_poly",
    "factor_X",
    "find_nonisomorphic_factorizations",
    "is_fletcher_ufr",
    "is_indecomposable_poly",
    "is_irreducible_poly",
    "parse_ring_spec",
    "poly_associates",
    "probe_weakly_prime_lift",
    "render_ring_spec",
    "run_suite",
    "set_of_lengths_Xn",
    "u_decomposition",
]
