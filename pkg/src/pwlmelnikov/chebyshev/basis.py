"""The functions ``u_0^k .. u_13^k`` on ``x > 0``.

Every evaluator accepts plain floats/arrays or :class:`~pwlmelnikov.jets.Jet`
objects, so derivatives of any order come from the same code path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import jets

BASIS_SIZE = 14


def _pow(x, p):
    if isinstance(x, jets.Jet):
        return jets.power(x, float(p))
    return np.power(x, float(p))


def _one(x):
    return x * 0.0 + 1.0


def u(index: int, k, x):
    """Evaluate ``u_index^k`` at ``x``."""
    k = float(k)
    if index == 0:
        return _one(x)
    if index == 1:
        return _pow(x, k)
    if index == 2:
        return _pow(x, k - 1)
    if index == 3:
        return _pow(x, k - 2)
    if index == 4:
        return _pow(x, 2 * k - 1)
    if index == 5:
        return _pow(x, 2 * k - 2)
    if index == 6:
        return _pow(x, 3 * k - 2)
    if index == 7:
        return _pow(x, 3 * k - 3)
    if index == 8:
        return x + _pow(x, 2 * k - 1)
    if index == 9:
        return x + k * _pow(x, 4 * k - 3)
    if index == 10:
        return (1.0 + _pow(x, 2 * k - 2)) * (x + k * _pow(x, 2 * k - 1))
    if index == 11:
        return (x + _pow(x, 2 * k - 1)) * jets.arctan(_pow(x, k - 1))
    if index == 12:
        return (1.0 + _pow(x, 2 * k - 2)) * (x + k * _pow(x, 2 * k - 1)) * jets.arctan(_pow(x, k - 1))
    if index == 13:
        return _pow(x, 2 * k)
    raise IndexError(f"basis index must be 0..13, got {index}")


@dataclass(frozen=True)
class BasisFunction:
    index: int
    k: float

    def __call__(self, x):
        return u(self.index, self.k, x)

    def jet(self, x0, degree: int) -> jets.Jet:
        """Normalized Taylor coefficients ``u^(p)(x0) / p!`` for ``p <= degree``."""
        return u(self.index, self.k, jets.Jet.variable(x0, degree))

    def derivatives(self, x0, degree: int) -> np.ndarray:
        return self.jet(x0, degree).derivatives()


def evaluate_combination(indices, coeffs, k, x):
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for i, c in zip(indices, coeffs):
        if c != 0.0:
            out = out + c * u(i, k, x)
    return out
