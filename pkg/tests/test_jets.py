"""Jet arithmetic against Taylor coefficients computed symbolically."""

import numpy as np
import pytest
import sympy as sp

from pwlmelnikov import jets
from pwlmelnikov.jets import Jet

X = sp.Symbol("x")
DEG = 6


def taylor(expr, x0, deg=DEG):
    return np.array([float(sp.diff(expr, X, p).subs(X, x0) / sp.factorial(p)) for p in range(deg + 1)])


CASES = [
    (lambda t: t * t * t - 2 * t, X**3 - 2 * X, 0.7),
    (lambda t: jets.exp(t) * jets.sin(t), sp.exp(X) * sp.sin(X), 0.3),
    (lambda t: jets.log(t) / t, sp.log(X) / X, 1.9),
    (lambda t: jets.power(t, 2.5) + jets.sqrt(t), X**2.5 + sp.sqrt(X), 1.3),
    (lambda t: jets.arctan(jets.power(t, -0.4)), sp.atan(X**-0.4), 0.8),
    (lambda t: 1.0 / (1.0 + t * t), 1 / (1 + X**2), 0.5),
    (lambda t: jets.cos(2.0 * t) - t, sp.cos(2 * X) - X, -0.4),
]


@pytest.mark.parametrize("fn,expr,x0", CASES)
def test_normalized_coefficients_match_symbolic_series(fn, expr, x0):
    got = fn(Jet.variable(x0, DEG)).c
    want = taylor(expr, x0)
    np.testing.assert_allclose(got, want, rtol=1e-11, atol=1e-12)


def test_batch_axis_evaluates_pointwise():
    xs = np.array([0.5, 1.0, 2.0])
    batch = jets.arctan(jets.power(Jet.variable(xs, 4), 1.5))
    for i, x0 in enumerate(xs):
        single = jets.arctan(jets.power(Jet.variable(x0, 4), 1.5))
        np.testing.assert_allclose(batch.c[:, i], single.c, rtol=1e-14)


def test_derivatives_and_differentiate():
    j = jets.exp(Jet.variable(0.0, 5))
    np.testing.assert_allclose(j.derivatives(), np.ones(6))
    np.testing.assert_allclose(j.differentiate().c, [1, 1, 1 / 2, 1 / 6, 1 / 24])


def test_compose_series_reconstructs_polynomial():
    j = Jet.variable(1.0, 3) ** 3
    assert j.compose_series(0.5) == pytest.approx(1.5**3)


def test_broadcast_left_pads_batch():
    j = Jet.variable(np.array([1.0, 2.0]), 2)
    assert j.broadcast((3, 2)).shape == (3, 3, 2)


def test_power_requires_jet():
    with pytest.raises(TypeError):
        jets.power(2.0, 3)
