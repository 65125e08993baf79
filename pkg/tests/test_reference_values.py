"""Published and hand-derived reference values across the package."""

import math
from fractions import Fraction

import numpy as np
import pytest

from pwlmelnikov.chebyshev.bounds import general_bound, zero_count_bound
from pwlmelnikov.chebyshev.discriminant import quartic_sign_analysis
from pwlmelnikov.chebyshev.families import family
from pwlmelnikov.chebyshev.polynomials import Polynomial, named_polynomial
from pwlmelnikov.chebyshev.realize import realize_zeros
from pwlmelnikov.chebyshev.regions import region_constants
from pwlmelnikov.chebyshev.sturm import count_real_roots
from pwlmelnikov.chebyshev.wronskian import closed_wronskian, wronskian_closed, wronskian_numeric
from pwlmelnikov.classify import classify
from pwlmelnikov.closed_forms import coeffs_from_target_rho, coeffs_to_rho, delta1_vanishing, rho_form
from pwlmelnikov.melnikov import melnikov_numeric
from pwlmelnikov.model import (
    PerturbationCoeffs, PwlSystem, SwitchingCurve, build_angle_set, evaluate_field, polar_rhs, switching_angle,
)
from pwlmelnikov.poincare import find_limit_cycles, flow_to_section, piece_for

PI = math.pi


# model ------------------------------------------------------------------------


def test_field_values():
    np.testing.assert_allclose(evaluate_field(PwlSystem(SwitchingCurve(3, 1)), (1, 2)), (2, -1))
    sys_ = PwlSystem(SwitchingCurve(2, 1), PerturbationCoeffs.from_named(a01=1.0), 0.1)
    np.testing.assert_allclose(evaluate_field(sys_, (0, 1)), (1.1, 0.0))
    # (1, 0.5) lies below y = x^3, so the lower-zone field applies
    low = PwlSystem(SwitchingCurve(3, 1), PerturbationCoeffs.from_named(alpha01=1.0, a01=5.0), 1.0)
    np.testing.assert_allclose(evaluate_field(low, (1, 0.5)), (0.5 + 1.0, -1.0))


def test_switching_angles():
    assert switching_angle(SwitchingCurve(3, 3), 2.7) == pytest.approx(PI / 4)
    assert switching_angle(SwitchingCurve(1, 1), 10.0) == pytest.approx(PI / 4)
    th = switching_angle(SwitchingCurve(2, 1), 1.0)
    assert math.sin(th) == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-12)


def test_angle_sets_at_unit_radius():
    np.testing.assert_allclose(build_angle_set(SwitchingCurve(1, 1), 1.0).angles, [PI / 4, 5 * PI / 4])
    np.testing.assert_allclose(build_angle_set(SwitchingCurve(2, 2), 1.0).angles,
                               [PI / 4, 3 * PI / 4, 5 * PI / 4, 7 * PI / 4])
    assert build_angle_set(SwitchingCurve(1, 1), 1.0).zones == ("-", "+", "-")
    assert build_angle_set(SwitchingCurve(2, 2), 1.0).zones == ("-", "+", "-", "+", "-")
    s = build_angle_set(SwitchingCurve(2, 1), 1.0)
    assert s.zones == ("-", "+", "-")
    # y = x^2 is symmetric about the y-axis: second crossing at pi - theta1
    np.testing.assert_allclose(s.angles, [s.theta1, PI - s.theta1])


def test_first_order_polar_term():
    sys_ = PwlSystem(SwitchingCurve(2, 1), PerturbationCoeffs.from_named(a01=1.0))
    for th in (0.2, 1.1, 2.9):
        assert float(polar_rhs(sys_, "+", 1, 1.3, th)) == pytest.approx(-math.cos(th))
        assert float(polar_rhs(sys_, "-", 1, 1.3, th)) == 0.0


def test_first_clockwise_crossing_of_four_branch_curve():
    sys_ = PwlSystem(SwitchingCurve(2, 2))
    piece = piece_for(sys_, "-")
    point, t = flow_to_section(piece, np.array([1.0, 0.0]), sys_.curve)[:2]
    assert t == pytest.approx(PI / 4)
    np.testing.assert_allclose(point, [math.cos(-PI / 4), math.sin(-PI / 4)], atol=1e-12)


# closed forms ----------------------------------------------------------------


def test_single_term_form_value():
    assert rho_form(1, 2, (1.0, 0.0, 0.0))(1.0) == pytest.approx(1.0)


def test_order1_weights_of_unit_coefficients():
    np.testing.assert_allclose(coeffs_to_rho(SwitchingCurve(3, 1), PerturbationCoeffs.from_named(b01=1.0), 1).raw,
                               (0, 0, -4))
    # even/even vanishing pattern
    c = PerturbationCoeffs.from_named(a11=0.7, alpha11=0.7, b21=-0.7, beta21=-0.7)
    np.testing.assert_allclose(coeffs_to_rho(SwitchingCurve(2, 4), c, 1).raw, (0, 0, 0), atol=1e-15)


def test_odd_odd_unit_a01_gives_positive_multiple_of_v0():
    sys_ = PwlSystem(SwitchingCurve(1, 1), PerturbationCoeffs.from_named(a01=1.0))
    f = coeffs_to_rho(sys_.curve, sys_.coeffs, 1)
    assert f.weights[0] == pytest.approx(4.0)
    assert melnikov_numeric(sys_, 1, 1.0) == pytest.approx(f.delta(1.0))
    assert melnikov_numeric(sys_, 1, 1.0) > 0


def test_mixed_vanishing_substitution():
    c = delta1_vanishing(SwitchingCurve(2, 1), PerturbationCoeffs.from_named(beta21=0.3, beta01=1.0))
    assert [c[k] for k in ("b01", "a11", "b21", "alpha11")] == pytest.approx([1.0, -0.3, 0.3, -0.3])


def test_mixed_order2_constant_weight(rng):
    curve = SwitchingCurve(2, 1)
    c = delta1_vanishing(curve, PerturbationCoeffs.random(rng, orders=2))
    f = coeffs_to_rho(curve, c, 2)
    assert f.raw[0] == pytest.approx(-PI * curve.n * (c["a12"] + c["alpha12"] + c["b22"] + c["beta22"]))


def test_order1_inverse_examples():
    c = coeffs_from_target_rho(SwitchingCurve(3, 1), [4.0, 0.0, 0.0])
    assert c["a01"] == pytest.approx(1.0) and c["alpha01"] == pytest.approx(0.0)
    assert np.allclose(np.delete(c.table[0], 0), 0.0)
    c = coeffs_from_target_rho(SwitchingCurve(2, 4), [0.0, -PI, 0.0])
    np.testing.assert_allclose(coeffs_to_rho(SwitchingCurve(2, 4), c, 1).raw, [0.0, -PI, 0.0], atol=1e-12)
    assert coeffs_from_target_rho(SwitchingCurve(2, 1), np.zeros(4)) == PerturbationCoeffs()


def test_no_cycles_without_perturbation():
    assert find_limit_cycles(PwlSystem(SwitchingCurve(2, 1), epsilon=1e-3), (0.5, 3.0), samples=20) == []


# Wronskians --------------------------------------------------------------------


@pytest.mark.parametrize("k", [0.5, 2.0, 3.7])
def test_two_function_wronskian(k):
    assert float(wronskian_numeric(family("G1", k), 1, 1.0)) == pytest.approx(k)


def test_g2_second_wronskian_at_k2():
    fam = family("G2", 2)
    assert float(wronskian_numeric(fam, 2, 1.0)) == pytest.approx(-2.0, rel=1e-9)
    assert wronskian_closed(fam, 2, x=1.0) == pytest.approx(-2.0)


def test_g5_top_wronskian_at_k3():
    fam = family("G5", 3)
    x = np.array([1.1])
    closed = closed_wronskian(fam, 7)(fam.k, x, digits=40)
    assert float(wronskian_numeric(fam, 7, x, digits=40)[0]) == pytest.approx(closed[0], rel=1e-8)


def test_g3_second_wronskian_structure():
    for k in (Fraction(3, 2), Fraction(5, 2), Fraction(1, 3)):
        x = np.array([0.7, 1.3])
        p0 = named_polynomial(0, k)
        want = float(k - 1) * x ** float(k - 3) * p0(x ** float(2 * k - 2))
        np.testing.assert_allclose(wronskian_closed(family("G3", k), 2, x=x), want, rtol=1e-12)
        np.testing.assert_allclose(wronskian_numeric(family("G3", k), 2, x), want, rtol=1e-9)


def test_g6_fourth_wronskian_value():
    assert wronskian_closed(family("G6"), 4, x=1.0) == pytest.approx(2112.0)
    assert float(wronskian_numeric(family("G6"), 4, np.array([1.0]), digits=30)[0]) == pytest.approx(2112.0)


def test_g3_second_wronskian_roots():
    # no positive root of P_0 for k in (1, 2], exactly one simple root for k > 2
    for k in (Fraction(11, 10), Fraction(3, 2), Fraction(2)):
        assert count_real_roots(named_polynomial(0, k), (0, None)).count == 0
    for k in (Fraction(5, 2), Fraction(4), Fraction(9)):
        iso = count_real_roots(named_polynomial(0, k), (0, None))
        assert iso.count == 1 and iso.simple


# roots and bounds --------------------------------------------------------------


def test_root_counts():
    assert count_real_roots(Polynomial([1, 0, 1]), (-10, 10)).count == 0
    c = region_constants()
    assert c["k4"].value == pytest.approx(3.053684426190, abs=1e-11)
    assert c["k1"].value == pytest.approx(0.176376026889, abs=1e-11)


@pytest.mark.parametrize("k,count", [(0.4, 1), (2.5, 2), (0.01, 3), (0.02, 3)])
def test_quartic_positive_roots(k, count):
    qa = quartic_sign_analysis(Fraction(k))
    assert qa.positive_roots == count and qa.simple and qa.consistent


def test_bound_examples():
    b = zero_count_bound("G3", Fraction(3, 2))
    assert (b.upper, b.rule) == (2, "ECT")
    b = zero_count_bound("G5", Fraction(9, 5))
    assert (b.upper, b.rule) == (8, "accuracy-one")
    # n + nu_n + nu_{n-1} + 2 * 0 with all mu terms zero: 6 + 4 + 2
    assert general_bound([0, 0, 0, 0, 0, 2, 4]) == 12


def test_realization_examples():
    r = realize_zeros("G1", 2, [1.0])
    np.testing.assert_allclose(r.coefficients / r.coefficients[1], [-1.0, 1.0])
    assert r.zeros == pytest.approx((1.0,))
    r = realize_zeros("G3", Fraction(3, 2), [0.5, 2.0])
    assert r.verified and len(r.zeros) == 2
    r = realize_zeros("G8", Fraction(5, 2), [0.3, 0.6, 1.0, 1.6, 2.5])
    assert r.method == "perturbation" and len(r.zeros) >= 4


# classification ---------------------------------------------------------------


@pytest.mark.parametrize("m,n,expected", [
    (3, 3, (1, 1, 2, 2)),
    (2, 2, (0, 1, 1, 1)),
    (2, 1, (3, 4, 4, 4)),
    (4, 2, (2, 4, 4, 4)),
])
def test_classification_examples(m, n, expected):
    r = classify(m, n)
    assert (r.m1, r.m2, r.m3, r.H_lower) == expected
