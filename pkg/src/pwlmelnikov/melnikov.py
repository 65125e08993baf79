"""Melnikov functions of orders 1 to 3 by the switching-aware recursion.

The polar angle plays the role of time. On every arc between consecutive
crossings of the switching curve the normalized corrections
``y_i = z_i / i!`` of the radius obey

    y1' = F1
    y2' = F2 + F1_r y1
    y3' = F3 + F2_r y1 + F1_r y2 + (F1_rr / 2) y1^2

and these are integrated cumulatively on Chebyshev-Lobatto nodes. At a
crossing angle ``theta_j(r)`` the arc solutions differ because the true
crossing happens at ``theta_j`` evaluated on the perturbed radius; with
``d1 = F1^- - F1^+`` (left minus right arc) and ``d2`` the same difference
of the order-2 integrands, the jumps are

    y2 += d1 h1
    y3 += d1 h2 + d2 h1 + (d1_theta / 2) h1^2

where ``h1 = theta_j' y1`` and ``h2 = theta_j' (y2 + F1^- h1) + theta_j'' y1^2 / 2``
are the first two coefficients of the crossing-angle shift. The returned
``Delta_i(r) = y_i(2 pi)`` are the eps-Taylor coefficients of the map
``r -> r(2 pi)`` obtained by following the flow with increasing polar angle,
i.e. backward in time.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as C

from . import jets
from .errors import NonPositiveRadius, OrderUnsupported, QuadratureFailure
from .model import PwlSystem, polar_terms, theta1_jet, x_of_r

_NODE_LADDER = (17, 33, 65, 129, 257)


@functools.lru_cache(maxsize=None)
def _lobatto(n: int):
    """Increasing Chebyshev-Lobatto nodes on [-1, 1] and the matrix of
    cumulative integrals from -1 evaluated at those nodes."""
    xi = -np.cos(np.pi * np.arange(n) / (n - 1))
    V = C.chebvander(xi, n - 1)
    Vinv = np.linalg.inv(V)
    integ = np.zeros((n + 1, n))
    for col in range(n):
        e = np.zeros(n)
        e[col] = 1.0
        integ[:, col] = C.chebint(e, lbnd=-1.0)
    Q = C.chebvander(xi, n) @ integ @ Vinv
    return xi, Q


def _arc_layout(sys: PwlSystem, r: np.ndarray):
    curve = sys.curve
    pattern = curve.angle_pattern
    th1 = theta1_jet(curve, r, 2)
    crossings = []
    for off, sgn in pattern:
        crossings.append((off + sgn * th1.c[0], sgn * th1.c[1], sgn * 2.0 * th1.c[2]))
    # zone on each arc from the sign of H at its midpoint (same for all r)
    edges = [0.0] + [c[0] for c in crossings] + [2 * math.pi]
    zones = []
    for i in range(len(edges) - 1):
        mid = 0.5 * (np.asarray(edges[i]) + np.asarray(edges[i + 1]))
        h = curve.H(r * np.cos(mid), r * np.sin(mid))
        signs = np.unique(np.sign(h))
        if len(signs) != 1 or signs[0] == 0:
            raise ArithmeticError("zone pattern is not uniform across the radius grid")
        zones.append("+" if signs[0] > 0 else "-")
    return crossings, edges, zones


def _radial_jets(block, r, theta, order):
    rj = jets.Jet.variable(r, max(order - 1, 0))
    return polar_terms(block, rj, theta, order)


def _evaluate(sys: PwlSystem, r: np.ndarray, order: int, nodes: int):
    xi, Q = _lobatto(nodes)
    crossings, edges, zones = _arc_layout(sys, r)
    blocks = {z: sys.coeffs.zone(z) for z in "+-"}
    R = r.shape[0]
    y = np.zeros((order, R))  # values at the start of the current arc
    for a in range(len(zones)):
        lo = np.broadcast_to(np.asarray(edges[a], dtype=float), (R,))
        hi = np.broadcast_to(np.asarray(edges[a + 1], dtype=float), (R,))
        if a > 0:
            y = _apply_jump(blocks, zones[a - 1], zones[a], crossings[a - 1], r, y, order)
        half = 0.5 * (hi - lo)
        theta = lo[None, :] + (xi[:, None] + 1.0) * half[None, :]
        F = _radial_jets(blocks[zones[a]], r, theta, order)

        def cum(g):
            return (Q @ g) * half[None, :]

        y1 = y[0] + cum(F[0].c[0])
        new = [y1[-1]]
        if order >= 2:
            g2 = F[1].c[0] + F[0].c[1] * y1
            y2 = y[1] + cum(g2)
            new.append(y2[-1])
        if order >= 3:
            g3 = F[2].c[0] + F[1].c[1] * y1 + F[0].c[1] * y2 + F[0].c[2] * y1 * y1
            y3 = y[2] + cum(g3)
            new.append(y3[-1])
        y = np.array(new)
    return y


def _apply_jump(blocks, left, right, crossing, r, y, order):
    if order < 2:
        return y
    tau, dth, d2th = crossing
    Fl = _radial_jets(blocks[left], r, tau, order)
    Fr = _radial_jets(blocks[right], r, tau, order)
    y1 = y[0]
    f1l = Fl[0].c[0]
    d1 = f1l - Fr[0].c[0]
    h1 = dth * y1
    out = y.copy()
    out[1] = y[1] + d1 * h1
    if order >= 3:
        d2 = (Fl[1].c[0] + Fl[0].c[1] * y1) - (Fr[1].c[0] + Fr[0].c[1] * y1)
        tj = jets.Jet.variable(tau, 1)
        d1_theta = polar_terms(blocks[left], r, tj, 1)[0].c[1] - polar_terms(blocks[right], r, tj, 1)[0].c[1]
        h2 = dth * (y[1] + f1l * h1) + 0.5 * d2th * y1 * y1
        out[2] = y[2] + d1 * h2 + d2 * h1 + 0.5 * d1_theta * h1 * h1
    return out


def melnikov_functions(sys: PwlSystem, r, order: int = 3, tol: float = 1e-10):
    """``[Delta_1(r), ..., Delta_order(r)]`` stacked on the first axis."""
    if not 1 <= order <= 3:
        raise OrderUnsupported(f"orders 1..3 are supported, got {order}")
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r_arr <= 0):
        raise NonPositiveRadius("radii must be positive")
    shape = np.shape(r)
    flat = r_arr.ravel()
    prev = None
    for nodes in _NODE_LADDER:
        cur = _evaluate(sys, flat, order, nodes)
        if prev is not None:
            scale = max(1.0, float(np.max(np.abs(cur))))
            if np.max(np.abs(cur - prev)) <= tol * scale:
                return cur.reshape((order,) + shape)
        prev = cur
    raise QuadratureFailure(f"arc quadrature did not reach tolerance {tol}")


def melnikov_numeric(sys: PwlSystem, order: int, r, tol: float = 1e-10):
    """``Delta_order`` at radius ``r`` (scalar or array)."""
    out = melnikov_functions(sys, r, order, tol)[order - 1]
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class MelnikovFunction:
    """Evaluable ``Delta_i`` of a system, in the initial radius."""

    system: PwlSystem
    order: int
    tol: float = 1e-10

    def __call__(self, r):
        return melnikov_numeric(self.system, self.order, r, self.tol)

    def x_of_r(self, r):
        return x_of_r(self.system.curve, r)
