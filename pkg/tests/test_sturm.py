"""Exact root isolation against polynomials with known roots and sympy."""

from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from pwlmelnikov.chebyshev.polynomials import NAMED, Polynomial, gcd, square_free
from pwlmelnikov.chebyshev.sturm import (
    count_real_roots, descartes_bound, positive_root_count, square_free_factor, sturm_sequence,
)
from pwlmelnikov.errors import DegenerateZeroPolynomial


def from_roots(roots, lead=1):
    p = Polynomial([lead])
    for r in roots:
        p = p * Polynomial([-Fraction(r), 1])
    return p


roots_st = st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=50), min_size=1, max_size=7)


@settings(max_examples=60, deadline=None)
@given(roots_st, st.integers(1, 5).map(lambda v: v) | st.just(-3))
def test_isolation_recovers_constructed_roots(roots, lead):
    p = from_roots(roots, lead)
    iso = count_real_roots(p, width=Fraction(1, 10**9))
    distinct = sorted(set(roots))
    assert iso.count == len(distinct)
    for r, (a, b), mult in zip(distinct, iso.intervals, iso.multiplicities):
        assert a <= r <= b and b - a <= Fraction(1, 10**9)
        assert mult == roots.count(r)
    assert iso.count_with_multiplicity == len(roots)


@settings(max_examples=40, deadline=None)
@given(roots_st, st.fractions(-10, 10, max_denominator=7), st.fractions(0, 10, max_denominator=7))
def test_open_interval_excludes_endpoints(roots, lo, span):
    hi = lo + span + Fraction(1, 3)
    p = from_roots(roots + [lo, hi])
    iso = count_real_roots(p, (lo, hi))
    assert iso.count == len({r for r in roots if lo < r < hi})


def test_irreducible_roots_match_numpy():
    p = Polynomial.from_high([1, 0, -7, 2, 3, -1])
    want = sorted(r.real for r in np.roots([1, 0, -7, 2, 3, -1]) if abs(r.imag) < 1e-12)
    got = count_real_roots(p).midpoints()
    np.testing.assert_allclose(got, want, atol=1e-11)


def test_float_coefficients_are_exact():
    p = Polynomial([0.1, -1.0, 1.0])  # x^2 - x + 0.1
    assert count_real_roots(p).count == 2


@pytest.mark.parametrize("name,lo,hi,count", [
    ("q1", 0, Fraction(1, 5), 1),
    ("q2", 0, Fraction(1, 5), 1),
    ("q2", Fraction(1, 5), Fraction(1, 3), 1),
    ("q2", Fraction(3, 2), 2, 1),
    ("q2", 3, 4, 1),
    ("q3", 3, 4, 1),
    ("k6", Fraction(3, 4), Fraction(4, 5), 1),
])
def test_named_roots_against_sympy_count(name, lo, hi, count):
    x = sp.Symbol("x")
    poly = sp.Poly(list(reversed([int(c) for c in NAMED[name].coeffs])), x)
    assert poly.count_roots(sp.Rational(lo), sp.Rational(hi)) == count
    iso = count_real_roots(NAMED[name], (lo, hi))
    assert iso.count == count
    assert float((iso.intervals[0][1] - iso.intervals[0][0])) <= 1e-12


def test_sturm_sequence_degrees_decrease():
    seq = sturm_sequence(NAMED["q3"])
    assert [q.degree for q in seq] == sorted((q.degree for q in seq), reverse=True)


def test_gcd_and_square_free():
    a = from_roots([1, 1, 2, 3])
    b = from_roots([1, 3, 5])
    assert gcd(a, b) == from_roots([1, 3])
    assert square_free(a) == from_roots([1, 2, 3])
    assert square_free_factor(a) == from_roots([1, 2, 3])


def test_polynomial_arithmetic():
    p = Polynomial([1, 2, 3])
    q = Polynomial([0, 1])
    quo, rem = (p * q + Polynomial([5])).divmod(q)
    assert quo == p and rem == Polynomial([5])
    assert (p - p).is_zero and p.derivative() == Polynomial([2, 6])
    np.testing.assert_allclose(p(np.array([0.0, 1.0])), [1.0, 6.0])


def test_descartes_and_positive_roots():
    p = from_roots([1, 2, -3])
    assert descartes_bound(list(p.coeffs)) == 2
    assert positive_root_count(p) == 2
    assert positive_root_count(from_roots([2, 2, -1]), with_multiplicity=True) == 2


def test_zero_polynomial_rejected():
    with pytest.raises(DegenerateZeroPolynomial):
        count_real_roots(Polynomial([0]))
