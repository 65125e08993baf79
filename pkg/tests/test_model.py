import json
import math

import numpy as np
import pytest
from scipy.optimize import brentq

from pwlmelnikov.errors import InvalidExponent, NonPositiveRadius, OnSwitchingManifold
from pwlmelnikov.model import (
    ParityCase, PerturbationCoeffs, PwlSystem, SwitchingCurve, build_angle_set, evaluate_field,
    polar_rhs, r_of_x, switching_angle, theta1_jet, x_of_r,
)

CURVES = [(1, 1), (3, 1), (1, 3), (2, 2), (2, 4), (2, 1), (1, 2), (5, 3), (4, 3)]


@pytest.mark.parametrize("m,n", [(0, 1), (1, 0), (-2, 1), (1.5, 2)])
def test_invalid_exponents(m, n):
    with pytest.raises(InvalidExponent):
        SwitchingCurve(m, n)


def test_parity_cases_and_ratio():
    assert SwitchingCurve(3, 5).parity_case is ParityCase.ODD_ODD
    assert SwitchingCurve(4, 2).parity_case is ParityCase.EVEN_EVEN
    assert SwitchingCurve(4, 3).parity_case is ParityCase.EVEN_ODD
    assert SwitchingCurve(3, 4).parity_case is ParityCase.ODD_EVEN
    c = SwitchingCurve(4, 6)
    assert c.k == pytest.approx(2 / 3) and c.swapped() == SwitchingCurve(6, 4)


@pytest.mark.parametrize("m,n", CURVES)
@pytest.mark.parametrize("r", [0.05, 0.7, 1.0, 3.0, 40.0])
def test_switching_angle_solves_curve_equation(m, n, r):
    # independent root find on the original equation
    g = lambda t: (r * math.sin(t)) ** n - (r * math.cos(t)) ** m
    want = brentq(g, 1e-14, math.pi / 2 - 1e-14, xtol=1e-15)
    assert switching_angle(SwitchingCurve(m, n), r) == pytest.approx(want, abs=1e-11)


def test_switching_angle_rejects_nonpositive_radius():
    with pytest.raises(NonPositiveRadius):
        switching_angle(SwitchingCurve(2, 1), np.array([1.0, 0.0]))


@pytest.mark.parametrize("m,n", CURVES)
def test_x_of_r_round_trip(m, n):
    c = SwitchingCurve(m, n)
    r = np.geomspace(0.01, 50, 30)
    np.testing.assert_allclose(r_of_x(c, x_of_r(c, r)), r, rtol=1e-11)


@pytest.mark.parametrize("m,n", [(3, 1), (2, 5), (1, 2)])
def test_theta1_jet_matches_finite_differences(m, n):
    c = SwitchingCurve(m, n)
    r0, h = 1.3, 1e-4
    j = theta1_jet(c, r0, 2)
    f = lambda r: switching_angle(c, r)
    d1 = (f(r0 + h) - f(r0 - h)) / (2 * h)
    d2 = (f(r0 + h) - 2 * f(r0) + f(r0 - h)) / h**2
    assert j.c[0] == pytest.approx(f(r0), abs=1e-13)
    assert j.c[1] == pytest.approx(d1, rel=1e-7)
    assert 2 * j.c[2] == pytest.approx(d2, rel=1e-4, abs=1e-6)


@pytest.mark.parametrize("m,n", CURVES)
@pytest.mark.parametrize("r", [0.4, 1.7])
def test_angle_set_points_lie_on_curve_and_zones_alternate(m, n, r):
    c = SwitchingCurve(m, n)
    s = build_angle_set(c, r)
    for a in s.angles:
        x, y = r * math.cos(a), r * math.sin(a)
        assert abs(c.H(x, y)) <= 1e-9 * (abs(x) ** m + abs(y) ** n + 1)
    assert all(s.zones[i] != s.zones[i + 1] for i in range(len(s.zones) - 1))
    # brute-force count of crossings of the circle
    th = np.linspace(0, 2 * math.pi, 20001)
    h = c.H(r * np.cos(th), r * np.sin(th))
    assert np.count_nonzero(np.sign(h[1:]) != np.sign(h[:-1])) == len(s.angles)


def test_coefficient_access_and_json_round_trip(rng):
    c = PerturbationCoeffs.random(rng, orders=3)
    assert c["a01"] == c.table[0, 0] and c["beta23"] == c.table[2, 11]
    d = c.replace(alpha12=5.0)
    assert d["alpha12"] == 5.0 and c["alpha12"] != 5.0
    sys_ = PwlSystem(SwitchingCurve(4, 3), c, 0.01)
    back = PwlSystem.from_json(sys_.to_json())
    assert back == sys_
    json.loads(sys_.to_json())
    with pytest.raises(ValueError):
        PerturbationCoeffs.from_dict({"order4": {"a0": 1}})
    with pytest.raises(ValueError):
        PerturbationCoeffs.from_dict({"order1": {"gamma0": 1}})


def test_swap_is_an_involution(rng):
    c = PerturbationCoeffs.random(rng, orders=3)
    assert c.swapped().swapped() == c


def test_swapped_system_is_conjugate_field(rng):
    # (x, y) -> (y, x) with time reversal maps the field of one system onto the other
    sys_ = PwlSystem(SwitchingCurve(3, 2), PerturbationCoeffs.random(rng), 0.1)
    tw = sys_.swapped()
    for p in [(0.5, 1.2), (1.3, -0.2), (-0.7, 0.4)]:
        f = evaluate_field(sys_, p)
        g = evaluate_field(tw, (p[1], p[0]))
        np.testing.assert_allclose(g, [-f[1], -f[0]], atol=1e-14)


def test_evaluate_field_on_manifold_raises():
    sys_ = PwlSystem(SwitchingCurve(1, 1))
    with pytest.raises(OnSwitchingManifold):
        evaluate_field(sys_, (0.5, 0.5))
    np.testing.assert_allclose(evaluate_field(sys_, (0.5, 0.5), side="+"), [0.5, -0.5])


@pytest.mark.parametrize("zone", "+-")
def test_polar_terms_are_eps_coefficients_of_dr_dtheta(rng, zone):
    sys_ = PwlSystem(SwitchingCurve(2, 1), PerturbationCoeffs.random(rng, orders=3))
    r, th = 1.4, 0.9

    def drdth(eps):
        A, c = sys_.affine(zone, eps)
        p = np.array([r * math.cos(th), r * math.sin(th)])
        v = A @ p + c
        rdot = (p @ v) / r
        thdot = (p[0] * v[1] - p[1] * v[0]) / r**2
        return rdot / thdot

    # polynomial fit in eps as oracle
    eps = np.linspace(-0.02, 0.02, 9)
    coef = np.polynomial.polynomial.polyfit(eps, [drdth(e) for e in eps], 6)
    for order in (1, 2, 3):
        assert float(polar_rhs(sys_, zone, order, r, th)) == pytest.approx(coef[order], rel=1e-5, abs=1e-7)
