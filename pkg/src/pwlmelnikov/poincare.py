"""Exact flows of the affine pieces and the Poincare map on the positive x-axis."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm
from scipy.optimize import brentq

from .errors import NoCrossingFound, TangencyDetected
from .model import PwlSystem, SwitchingCurve, build_angle_set

DEFAULT_STEP = math.pi / 64
TRANSVERSAL_TOL = 1e-8


@dataclass(frozen=True)
class AffinePiece:
    """Flow of ``p' = A p + c``."""

    A: np.ndarray
    c: np.ndarray
    zone: str = "+"

    def __post_init__(self):
        object.__setattr__(self, "A", np.asarray(self.A, dtype=float))
        object.__setattr__(self, "c", np.asarray(self.c, dtype=float))

    def _exp_parts(self, t):
        """``e^{tA} = C(t) I + S(t) (A - tau I)`` scaled by ``e^{tau t}``."""
        A = self.A
        tau = 0.5 * (A[0, 0] + A[1, 1])
        det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
        disc = tau * tau - det
        t = np.asarray(t, dtype=float)
        z = disc * t * t
        if disc < 0:
            w = math.sqrt(-disc)
            Cf, Sf = np.cos(w * t), np.sin(w * t) / w
        elif disc > 0:
            w = math.sqrt(disc)
            Cf, Sf = np.cosh(w * t), np.sinh(w * t) / w
        else:
            Cf, Sf = np.ones_like(t), t.copy()
        small = np.abs(z) < 1e-6
        if np.any(small):
            # near-defective: short series in disc * t^2
            Cf = np.where(small, 1 + z / 2 + z * z / 24, Cf)
            Sf = np.where(small, t * (1 + z / 6 + z * z / 120), Sf)
        return np.exp(tau * t), Cf, Sf, tau

    def expm(self, t):
        e, Cf, Sf, tau = self._exp_parts(t)
        M = self.A - tau * np.eye(2)
        return e[..., None, None] * (Cf[..., None, None] * np.eye(2) + Sf[..., None, None] * M)

    def flow(self, p, t):
        """``phi_t(p)``; ``t`` may be an array (result has shape ``t.shape + (2,)``)."""
        p = np.asarray(p, dtype=float)
        t = np.asarray(t, dtype=float)
        A, c = self.A, self.c
        det = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
        E = self.expm(t)
        if abs(det) > 1e-12:
            shift = np.linalg.solve(A, c)
            return E @ (p + shift) - shift
        # singular A: exponential of the augmented 3x3 generator
        out = np.empty(t.shape + (2,))
        G = np.zeros((3, 3))
        G[:2, :2] = A
        G[:2, 2] = c
        for idx, tt in np.ndenumerate(t):
            out[idx] = (expm(G * tt) @ np.append(p, 1.0))[:2]
        return out

    def velocity(self, p):
        return self.A @ np.asarray(p, dtype=float) + self.c


def piece_for(sys: PwlSystem, zone: str) -> AffinePiece:
    A, c = sys.affine(zone)
    return AffinePiece(A, c, zone)


@dataclass(frozen=True)
class Crossing:
    point: np.ndarray
    time: float
    dHdt: float
    kind: str  # "switch" or "section"


def _first_event(values, start_sign):
    """Index of the first sample where ``start_sign * values`` stops being positive."""
    bad = start_sign * values <= 0
    idx = np.flatnonzero(bad)
    return int(idx[0]) if idx.size else None


def flow_to_section(piece: AffinePiece, p, curve: SwitchingCurve, direction: int = 1,
                    max_time: float = 2 * math.pi + 1.0, step: float = DEFAULT_STEP,
                    tol: float = TRANSVERSAL_TOL, zone_sign: int | None = None):
    """First crossing of ``H = y^n - x^m = 0`` along the piece's flow.

    ``direction = -1`` follows the flow backward in time. Returns
    ``(point, time)`` with ``time > 0`` measured in the chosen direction.
    """
    ev = _next_event(piece, p, curve, direction, max_time, step, tol,
                     zone_sign=zone_sign, want_section=False)
    if ev is None:
        raise NoCrossingFound("no crossing of the switching curve within one revolution")
    return ev.point, ev.time


def _next_event(piece, p, curve, direction, max_time, step, tol, zone_sign=None,
                want_section=True):
    p = np.asarray(p, dtype=float)
    s = float(direction)
    if zone_sign is None:
        zone_sign = 1 if piece.zone == "+" else -1

    def H(t):
        q = piece.flow(p, s * t)
        return float(curve.H(q[0], q[1]))

    def Y(t):
        return float(piece.flow(p, s * t)[1])

    n = int(math.ceil(max_time / step)) + 1
    ts = np.linspace(0.0, max_time, n)
    # the start point may sit on the curve or on the section; skip its neighbourhood
    qs = piece.flow(p, s * ts)
    hs = curve.H(qs[:, 0], qs[:, 1])
    ys = qs[:, 1]
    ih = _first_event(hs[1:], zone_sign)
    ih = None if ih is None else ih + 1
    isec = None
    if want_section:
        # section crossing: y passes through 0 at x > 0, from y*s > 0 to y*s <= 0
        cond = (s * ys[:-1] > 0) & (s * ys[1:] <= 0) & (qs[1:, 0] > 0)
        idx = np.flatnonzero(cond)
        isec = int(idx[0]) + 1 if idx.size else None
    if ih is not None and hs[1] * zone_sign <= 0:
        # stepped across a thin zone: refine the first interval
        return _next_event(piece, p, curve, direction, step, step / 16, tol,
                           zone_sign, want_section) or _raise_tangent()
    if ih is None and isec is None:
        return None
    if isec is not None and (ih is None or isec <= ih):
        t = brentq(Y, ts[isec - 1], ts[isec], xtol=1e-15, rtol=1e-15, maxiter=200)
        q = piece.flow(p, s * t)
        v = piece.velocity(q) * s
        t = t - (q[1] / v[1])  # Newton polish
        q = piece.flow(p, s * t)
        return Crossing(q, float(t), float(v[1]), "section")
    t = brentq(H, ts[ih - 1], ts[ih], xtol=1e-15, rtol=1e-15, maxiter=200)
    q = piece.flow(p, s * t)
    gx, gy = curve.grad_H(q[0], q[1])
    v = piece.velocity(q) * s
    dh = float(gx * v[0] + gy * v[1])
    if abs(dh) > 0:
        t_new = t - float(curve.H(q[0], q[1])) / dh
        if abs(t_new - t) < step:
            t = t_new
            q = piece.flow(p, s * t)
    if abs(dh) < tol:
        raise TangencyDetected(f"|dH/dt| = {abs(dh):.3g} at crossing {q}")
    return Crossing(q, float(t), dh, "switch")


def _raise_tangent():
    raise TangencyDetected("orbit grazes the switching curve")


@dataclass
class ReturnMap:
    """Poincare map ``r -> P(r, eps)`` on the positive x-axis.

    ``direction = 1`` follows the clockwise (forward-time) flow; ``-1``
    follows it backward, which is the orientation of increasing polar angle.
    """

    system: PwlSystem
    direction: int = 1
    tol: float = TRANSVERSAL_TOL
    crossings: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        self._pieces = {z: piece_for(self.system, z) for z in "+-"}

    def __call__(self, r0: float, record: bool = False) -> float:
        return self.orbit(r0, record=record)[0]

    def orbit(self, r0: float, revolutions: int = 1, record: bool = False):
        """Landing radius after ``revolutions`` turns and the crossing list."""
        curve = self.system.curve
        step = DEFAULT_STEP
        try:
            arcs = build_angle_set(curve, r0).arcs
            step = min(step, min(b - a for a, b, _ in arcs) / 8)
        except ArithmeticError:
            pass
        p = np.array([float(r0), 0.0])
        events = []
        for _ in range(revolutions):
            zone = "+" if curve.H(p[0], p[1]) > 0 else "-"
            while True:
                ev = _next_event(self._pieces[zone], p, curve, self.direction,
                                 2 * math.pi + 1.0, step, self.tol)
                if ev is None:
                    raise NoCrossingFound(f"orbit from r={r0} never returned to the section")
                events.append(ev)
                p = ev.point
                if ev.kind == "section":
                    p = np.array([p[0], 0.0])
                    break
                zone = "-" if zone == "+" else "+"
                if len(events) > 64:
                    raise NoCrossingFound("too many crossings in one revolution")
        if record:
            self.crossings = events
        return float(p[0]), events

    def displacement(self, r):
        r = np.atleast_1d(np.asarray(r, dtype=float))
        return np.array([self(float(x)) - float(x) for x in r])


def return_map(sys: PwlSystem, r0: float, direction: int = 1) -> float:
    return ReturnMap(sys, direction)(r0)


def displacement(sys: PwlSystem, r, direction: int = 1):
    return ReturnMap(sys, direction).displacement(r)


def eps_taylor_coefficients(sys: PwlSystem, r0: float, h: float = 0.02,
                            order: int = 3, direction: int = -1):
    """eps-Taylor coefficients of ``P(r0, eps) - r0`` by interpolation.

    Uses the exact map at ``eps = +-h, +-2h, +-3h`` and fits a polynomial
    without constant term; the default backward orientation matches the
    convention of :func:`pwlmelnikov.melnikov.melnikov_functions`.
    """
    eps = np.array([-3, -2, -1, 1, 2, 3], dtype=float) * h
    d = np.array([return_map(sys.with_epsilon(e), r0, direction) - r0 for e in eps])
    V = np.vander(eps, 7, increasing=True)[:, 1:]
    coef = np.linalg.solve(V, d)
    return coef[:order]


@dataclass(frozen=True)
class LimitCycleReport:
    radius: float
    residual: float
    stable: bool
    multiplier: float
    melnikov_zero: float | None = None
    distance: float | None = None


def find_limit_cycles(sys: PwlSystem, window=(0.2, 5.0), tol: float = 1e-12,
                      samples: int = 200, melnikov_zeros=None):
    """Fixed points of the forward return map in ``window``.

    Each sign change of ``d(r) = P(r) - r`` on a uniform grid is bracketed,
    solved with Brent's method and reported with its stability. Zeros
    without a sign change above round-off (a center, a tangency) are not
    reported. When ``melnikov_zeros`` is given each cycle is paired with
    the nearest one.
    """
    pm = ReturnMap(sys, 1)
    rs = np.linspace(window[0], window[1], samples)
    d = np.array([pm(float(x)) - float(x) for x in rs])
    # displacements within a few ulps of r are round-off, not sign information
    noise = 64 * np.finfo(float).eps * np.abs(rs)
    live = np.nonzero(np.abs(d) > noise)[0]
    reports = []
    for i, j in zip(live[:-1], live[1:]):
        if d[i] * d[j] > 0:
            continue
        rstar = brentq(lambda x: pm(x) - x, rs[i], rs[j], xtol=tol, rtol=1e-15, maxiter=200)
        hstep = max(1e-7, 1e-6 * rstar)
        slope = (pm(rstar + hstep) - pm(rstar - hstep)) / (2 * hstep)
        res = abs(pm(rstar) - rstar)
        near, dist = None, None
        if melnikov_zeros is not None and len(melnikov_zeros):
            zs = np.asarray(melnikov_zeros, dtype=float)
            near = float(zs[np.argmin(np.abs(zs - rstar))])
            dist = abs(near - rstar)
        reports.append(LimitCycleReport(float(rstar), float(res), bool(abs(slope) < 1), float(slope), near, dist))
    return reports
