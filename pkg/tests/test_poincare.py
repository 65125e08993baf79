import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from pwlmelnikov.model import PerturbationCoeffs, PwlSystem, SwitchingCurve, evaluate_field
from pwlmelnikov.poincare import AffinePiece, ReturnMap, displacement, eps_taylor_coefficients, find_limit_cycles

MATRICES = [
    np.array([[0.1, 1.0], [-1.0, 0.05]]),     # focus
    np.array([[0.5, 0.2], [0.1, -0.3]]),      # saddle
    np.array([[0.2, 1.0], [0.0, 0.2]]),       # defective node
    np.array([[0.0, 1.0], [0.0, 0.0]]),       # singular
    np.array([[0.3, 1.0], [-1e-8, 0.3]]),     # nearly defective
]


@pytest.mark.parametrize("A", MATRICES)
def test_expm_matches_scipy(A):
    piece = AffinePiece(A, np.zeros(2))
    for t in (0.0, 0.3, -1.1, 2.5):
        np.testing.assert_allclose(piece.expm(np.array(t)), expm(A * t), rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("A", MATRICES)
def test_flow_matches_ode_solver(A):
    c = np.array([0.3, -0.2])
    piece = AffinePiece(A, c)
    p0 = np.array([0.4, 0.9])
    ts = np.array([0.5, 1.0, 2.0])
    sol = solve_ivp(lambda t, p: A @ p + c, (0, 2.0), p0, t_eval=ts, rtol=1e-12, atol=1e-13)
    np.testing.assert_allclose(piece.flow(p0, ts), sol.y.T, rtol=1e-9, atol=1e-10)


@pytest.mark.parametrize("mn", [(1, 1), (3, 1), (2, 2), (2, 1), (1, 2), (5, 3)])
def test_unperturbed_return_map_is_identity(mn, rng):
    sys_ = PwlSystem(SwitchingCurve(*mn), PerturbationCoeffs.random(rng), 0.0)
    pm = ReturnMap(sys_)
    for r0 in (0.2, 1.0, 4.0):
        assert pm(r0) == pytest.approx(r0, abs=1e-10)


def _event_integrate(sys_, r0):
    """Forward return map by a generic ODE solver restarted at each switch."""
    curve = sys_.curve
    p, elapsed = np.array([r0, 0.0]), 0.0
    while elapsed < 20:
        zone = "+" if curve.H(*p) > 0 else "-"
        A, c = sys_.affine(zone)
        start = elapsed

        def switch(t, q):
            return curve.H(q[0], q[1]) if t > start + 1e-9 else (1.0 if zone == "+" else -1.0)

        def section(t, q):
            return q[1] if t > 1e-3 else -1.0

        switch.terminal = True
        section.terminal, section.direction = True, -1.0
        sol = solve_ivp(lambda t, q: A @ q + c, (elapsed, elapsed + 10), p, events=[switch, section],
                        rtol=1e-12, atol=1e-13)
        if sol.t_events[1].size:
            return sol.y_events[1][0][0]
        p, elapsed = sol.y_events[0][0], sol.t_events[0][0]
    raise RuntimeError("no return")


@pytest.mark.parametrize("mn", [(1, 1), (2, 1), (3, 1)])
def test_return_map_matches_event_driven_integration(mn, rng):
    sys_ = PwlSystem(SwitchingCurve(*mn), PerturbationCoeffs.random(rng, scale=0.5), 0.05)
    pm = ReturnMap(sys_)
    for r0 in (0.6, 1.5):
        assert pm(r0) == pytest.approx(_event_integrate(sys_, r0), rel=1e-7)


def test_crossings_are_transversal_and_on_curve(rng):
    sys_ = PwlSystem(SwitchingCurve(2, 2), PerturbationCoeffs.random(rng), 0.02)
    pm = ReturnMap(sys_)
    _, events = pm.orbit(1.1)
    switches = [e for e in events if e.kind == "switch"]
    assert len(switches) == 4
    for e in switches:
        assert abs(sys_.curve.H(*e.point)) < 1e-9
        assert abs(e.dHdt) > 1e-3


def test_uniform_expansion_has_no_cycles():
    # same linear damping in both zones: r grows monotonically
    c = PerturbationCoeffs.from_named(a11=1.0, b21=1.0, alpha11=1.0, beta21=1.0)
    sys_ = PwlSystem(SwitchingCurve(3, 1), c, 0.01)
    d = displacement(sys_, np.linspace(0.3, 3, 10))
    assert np.all(d > 0)
    assert find_limit_cycles(sys_, (0.3, 3.0), samples=30) == []
    # exact: r grows by exp(2 pi eps / (1 - 0)) per turn for trace 2 eps and rotation 1
    r1 = ReturnMap(sys_)(1.0)
    assert r1 == pytest.approx(math.exp(2 * math.pi * 0.01), rel=1e-10)


def test_linear_coefficient_of_forward_displacement(rng):
    sys_ = PwlSystem(SwitchingCurve(2, 1), PerturbationCoeffs.random(rng, orders=3))
    coef = eps_taylor_coefficients(sys_, 1.2, direction=1)
    eps = 1e-4
    d = ReturnMap(sys_.with_epsilon(eps))(1.2) - 1.2
    assert d / eps == pytest.approx(coef[0], rel=1e-3)


def test_field_used_by_return_map_is_the_model_field(rng):
    sys_ = PwlSystem(SwitchingCurve(2, 1), PerturbationCoeffs.random(rng), 0.3)
    for p in [(0.3, 0.8), (0.9, 0.1)]:
        zone = "+" if sys_.curve.H(*p) > 0 else "-"
        A, c = sys_.affine(zone)
        np.testing.assert_allclose(A @ np.array(p) + c, evaluate_field(sys_, p))
