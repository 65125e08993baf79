"""Piecewise-linear perturbations of the linear center and their polar form.

The vector field is ``(y, -x) + sum_i eps^i (P_i, Q_i)`` with affine
``P_i, Q_i`` that differ on the two sides of the curve ``y^n = x^m``. The
side where ``y^n - x^m > 0`` is the upper zone ("+") and carries the
coefficients ``a_ji, b_ji``; the other side ("-") carries ``alpha_ji,
beta_ji``. Index ``j`` selects the constant/x/y part and ``i`` the order.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import jets
from .errors import InvalidExponent, NonPositiveRadius, OnSwitchingManifold

COEFF_NAMES = (
    "a0", "a1", "a2", "b0", "b1", "b2",
    "alpha0", "alpha1", "alpha2", "beta0", "beta1", "beta2",
)
MAX_ORDER = 3
DEFAULT_R_WINDOW = (1e-3, 1e3)


class ParityCase(enum.Enum):
    ODD_ODD = "OddOdd"
    EVEN_EVEN = "EvenEven"
    EVEN_ODD = "EvenOdd"
    ODD_EVEN = "OddEven"

    @classmethod
    def of(cls, m: int, n: int) -> "ParityCase":
        return {
            (1, 1): cls.ODD_ODD,
            (0, 0): cls.EVEN_EVEN,
            (0, 1): cls.EVEN_ODD,
            (1, 0): cls.ODD_EVEN,
        }[(m % 2, n % 2)]

    @property
    def mixed(self) -> bool:
        return self in (ParityCase.EVEN_ODD, ParityCase.ODD_EVEN)


# Crossing angles on a circle of radius r, as (offset, sign) pairs meaning
# ``offset + sign * theta1(r)``. These follow from the symmetries of the
# branches of y^n = x^m (x-axis symmetric when n is even, y-axis symmetric
# when m is even, point symmetric when both are odd).
_ANGLE_PATTERN = {
    ParityCase.ODD_ODD: ((0.0, 1), (math.pi, 1)),
    ParityCase.EVEN_EVEN: ((0.0, 1), (math.pi, -1), (math.pi, 1), (2 * math.pi, -1)),
    ParityCase.EVEN_ODD: ((0.0, 1), (math.pi, -1)),
    ParityCase.ODD_EVEN: ((0.0, 1), (2 * math.pi, -1)),
}


@dataclass(frozen=True)
class SwitchingCurve:
    """The curve ``y^n - x^m = 0``."""

    m: int
    n: int

    def __post_init__(self):
        for v in (self.m, self.n):
            if int(v) != v or v < 1:
                raise InvalidExponent(f"exponents must be positive integers, got ({self.m}, {self.n})")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))

    @property
    def k(self) -> Fraction:
        return Fraction(self.m, self.n)

    @property
    def parity_case(self) -> ParityCase:
        return ParityCase.of(self.m, self.n)

    def swapped(self) -> "SwitchingCurve":
        return SwitchingCurve(self.n, self.m)

    def H(self, x, y):
        return np.asarray(y, dtype=float) ** self.n - np.asarray(x, dtype=float) ** self.m

    def grad_H(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return -self.m * x ** (self.m - 1), self.n * y ** (self.n - 1)

    @property
    def angle_pattern(self):
        return _ANGLE_PATTERN[self.parity_case]


class PerturbationCoeffs:
    """Perturbation coefficients for orders 1..3, twelve per order.

    Stored as a ``(3, 12)`` array whose columns follow :data:`COEFF_NAMES`.
    Individual entries are addressed by name and order, e.g. ``c["a01"]``
    for ``a_{01}`` or ``c["beta21"]`` for ``beta_{21}``.
    """

    __slots__ = ("_table",)

    def __init__(self, table=None):
        t = np.zeros((MAX_ORDER, len(COEFF_NAMES)))
        if table is not None:
            table = np.asarray(table, dtype=float)
            if table.ndim != 2 or table.shape[1] != len(COEFF_NAMES) or table.shape[0] > MAX_ORDER:
                raise ValueError(f"coefficient table must have shape (<=3, 12), got {table.shape}")
            t[: table.shape[0]] = table
        t.setflags(write=False)
        self._table = t

    @property
    def table(self) -> np.ndarray:
        return self._table

    @staticmethod
    def _locate(key: str):
        name, order = key[:-1], int(key[-1])
        j = int(name[-1])
        base = name[:-1]
        col = COEFF_NAMES.index(f"{base}{j}")
        if not 1 <= order <= MAX_ORDER:
            raise KeyError(key)
        return order - 1, col

    def __getitem__(self, key: str) -> float:
        return float(self._table[self._locate(key)])

    def replace(self, **updates) -> "PerturbationCoeffs":
        t = self._table.copy()
        for key, val in updates.items():
            t[self._locate(key)] = val
        return PerturbationCoeffs(t)

    def order(self, i: int) -> np.ndarray:
        return self._table[i - 1]

    def upper(self, i: int) -> np.ndarray:
        """``(a0, a1, a2, b0, b1, b2)`` at order ``i``."""
        return self._table[i - 1, :6]

    def lower(self, i: int) -> np.ndarray:
        """``(alpha0, alpha1, alpha2, beta0, beta1, beta2)`` at order ``i``."""
        return self._table[i - 1, 6:]

    def zone(self, zone: str) -> np.ndarray:
        """``(3, 6)`` slice for the ``"+"`` or ``"-"`` zone."""
        if zone == "+":
            return self._table[:, :6]
        if zone == "-":
            return self._table[:, 6:]
        raise ValueError(f"zone must be '+' or '-', got {zone!r}")

    def truncated(self, order: int) -> "PerturbationCoeffs":
        t = self._table.copy()
        t[order:] = 0.0
        return PerturbationCoeffs(t)

    def swapped(self) -> "PerturbationCoeffs":
        """Coefficients seen after ``(x, y) -> (y, x)`` and time reversal.

        The exchange maps the upper zone of ``y^n = x^m`` onto the lower zone
        of ``y^m = x^n``, so the two coefficient blocks trade places.
        """
        t = self._table
        out = np.empty_like(t)
        a0, a1, a2, b0, b1, b2 = (t[:, i] for i in range(6))
        al0, al1, al2, be0, be1, be2 = (t[:, i] for i in range(6, 12))
        out[:, 0], out[:, 1], out[:, 2] = -be0, -be2, -be1
        out[:, 3], out[:, 4], out[:, 5] = -al0, -al2, -al1
        out[:, 6], out[:, 7], out[:, 8] = -b0, -b2, -b1
        out[:, 9], out[:, 10], out[:, 11] = -a0, -a2, -a1
        return PerturbationCoeffs(out)

    def to_dict(self) -> dict:
        return {
            f"order{i + 1}": {name: float(v) for name, v in zip(COEFF_NAMES, self._table[i])}
            for i in range(MAX_ORDER)
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PerturbationCoeffs":
        t = np.zeros((MAX_ORDER, len(COEFF_NAMES)))
        for key, block in data.items():
            if not key.startswith("order"):
                raise ValueError(f"unexpected coefficient block {key!r}")
            i = int(key[len("order"):])
            if not 1 <= i <= MAX_ORDER:
                raise ValueError(f"order must be in 1..3, got {i}")
            for name, v in block.items():
                if name not in COEFF_NAMES:
                    raise ValueError(f"unknown coefficient {name!r}")
                t[i - 1, COEFF_NAMES.index(name)] = float(v)
        return cls(t)

    @classmethod
    def from_named(cls, **values) -> "PerturbationCoeffs":
        return cls().replace(**values)

    @classmethod
    def random(cls, rng, orders=1, scale=1.0) -> "PerturbationCoeffs":
        t = np.zeros((MAX_ORDER, len(COEFF_NAMES)))
        t[:orders] = rng.uniform(-scale, scale, size=(orders, len(COEFF_NAMES)))
        return cls(t)

    def __add__(self, other):
        return PerturbationCoeffs(self._table + other._table)

    def __mul__(self, s):
        return PerturbationCoeffs(self._table * float(s))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PerturbationCoeffs) and np.array_equal(self._table, other._table)

    def __hash__(self):
        return hash(self._table.tobytes())

    def __repr__(self):
        nz = {
            f"{name[:-1]}{name[-1]}{i + 1}": float(v)
            for i in range(MAX_ORDER)
            for name, v in zip(COEFF_NAMES, self._table[i])
            if v != 0.0
        }
        return f"PerturbationCoeffs({nz})"


@dataclass(frozen=True)
class PwlSystem:
    curve: SwitchingCurve
    coeffs: PerturbationCoeffs = field(default_factory=PerturbationCoeffs)
    epsilon: float = 0.0

    def swapped(self) -> "PwlSystem":
        return PwlSystem(self.curve.swapped(), self.coeffs.swapped(), self.epsilon)

    def with_epsilon(self, eps: float) -> "PwlSystem":
        return PwlSystem(self.curve, self.coeffs, float(eps))

    def affine(self, zone: str, eps: float | None = None):
        """Matrix ``A`` and offset ``c`` of the zone field at ``eps``."""
        eps = self.epsilon if eps is None else eps
        blk = self.coeffs.zone(zone)
        powers = eps ** np.arange(1, MAX_ORDER + 1)
        a0, a1, a2, b0, b1, b2 = powers @ blk
        A = np.array([[a1, 1.0 + a2], [-1.0 + b1, b2]])
        c = np.array([a0, b0])
        return A, c

    def to_json(self) -> str:
        return json.dumps(
            {"m": self.curve.m, "n": self.curve.n, "epsilon": self.epsilon,
             "coeffs": self.coeffs.to_dict()},
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "PwlSystem":
        data = json.loads(text)
        return cls(
            SwitchingCurve(int(data["m"]), int(data["n"])),
            PerturbationCoeffs.from_dict(data.get("coeffs", {})),
            float(data.get("epsilon", 0.0)),
        )

    @classmethod
    def load(cls, path) -> "PwlSystem":
        with open(path) as fh:
            return cls.from_json(fh.read())


def evaluate_field(sys: PwlSystem, p, side: str | None = None, tol: float = 1e-12):
    """Vector field at ``p = (x, y)``; ``side`` forces ``"+"`` or ``"-"``."""
    x, y = float(p[0]), float(p[1])
    if side is None:
        h = float(sys.curve.H(x, y))
        if abs(h) < tol:
            raise OnSwitchingManifold(f"point {p} lies on y^n = x^m (|H| = {abs(h):.3g})")
        side = "+" if h > 0 else "-"
    A, c = sys.affine(side)
    return A @ np.array([x, y]) + c


def _log_gap(curve: SwitchingCurve, theta, r):
    # n log(r sin) - m log(r cos): same sign as r^n sin^n - r^m cos^m
    return curve.n * np.log(r * np.sin(theta)) - curve.m * np.log(r * np.cos(theta))


def switching_angle(curve: SwitchingCurve, r, tol: float = 1e-12):
    """First-quadrant crossing angle of the circle of radius ``r`` with the curve.

    Bisection on the monotone function ``n log sin - m log cos`` followed by
    at most three Newton steps. ``r`` may be an array. ``tol`` bounds the
    residual of ``g = r^n sin^n - r^m cos^m`` relative to ``r^n + r^m``.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise NonPositiveRadius(f"radius must be positive, got {r}")
    if curve.m == curve.n:
        out = np.full(r_arr.shape, math.pi / 4)
        return float(out) if out.ndim == 0 else out
    lo = np.full(r_arr.shape, 0.0)
    hi = np.full(r_arr.shape, math.pi / 2)
    with np.errstate(divide="ignore", invalid="ignore"):
        while np.max(hi - lo) > 1e-12:
            mid = 0.5 * (lo + hi)
            pos = _log_gap(curve, mid, r_arr) > 0
            hi = np.where(pos, mid, hi)
            lo = np.where(pos, lo, mid)
    th = 0.5 * (lo + hi)
    for _ in range(3):
        f = _log_gap(curve, th, r_arr)
        df = curve.n / np.tan(th) + curve.m * np.tan(th)
        step = f / df
        th_new = th - step
        inside = (th_new > lo - 1e-12) & (th_new < hi + 1e-12)
        th = np.where(inside, th_new, th)
    g = (r_arr * np.sin(th)) ** curve.n - (r_arr * np.cos(th)) ** curve.m
    scale = r_arr ** curve.n + r_arr ** curve.m
    if np.any(np.abs(g) > max(tol, 1e-15) * scale * 1e3):
        raise ArithmeticError("switching angle did not converge")
    return float(th) if th.ndim == 0 else th


def theta1_jet(curve: SwitchingCurve, r0, degree: int = 2) -> jets.Jet:
    """Taylor jet of ``theta1`` in the radius around ``r0``."""
    th0 = switching_angle(curve, r0)
    if curve.m == curve.n:
        return jets.Jet.constant(th0, degree)
    r = jets.Jet.variable(r0, degree)
    rhs = (curve.m - curve.n) * jets.log(r)
    th = jets.Jet.constant(th0, degree)
    for _ in range(degree + 1):
        s, c = jets.sincos(th)
        f = curve.n * jets.log(s) - curve.m * jets.log(c) - rhs
        df = curve.n * c / s + curve.m * s / c
        th = th - f / df
    return th


def x_of_r(curve: SwitchingCurve, r):
    """Abscissa ``x = r cos(theta1(r))`` of the first-quadrant crossing."""
    return np.asarray(r, dtype=float) * np.cos(switching_angle(curve, r))


def r_of_x(curve: SwitchingCurve, x):
    """Inverse of :func:`x_of_r`: the first-quadrant branch is ``y = x^k``."""
    x = np.asarray(x, dtype=float)
    return np.sqrt(x * x + x ** (2 * float(curve.k)))


@dataclass(frozen=True)
class SwitchAngleSet:
    r: float
    theta1: float
    angles: tuple
    zones: tuple
    period: float = 2 * math.pi

    @property
    def arcs(self):
        """``(start, end, zone)`` for each arc between consecutive crossings."""
        edges = (0.0,) + tuple(self.angles) + (self.period,)
        return tuple((edges[i], edges[i + 1], self.zones[i]) for i in range(len(edges) - 1))


def zone_at(curve: SwitchingCurve, r, theta) -> str:
    h = curve.H(r * np.cos(theta), r * np.sin(theta))
    return "+" if h > 0 else "-"


def build_angle_set(curve: SwitchingCurve, r: float) -> SwitchAngleSet:
    if r <= 0:
        raise NonPositiveRadius(f"radius must be positive, got {r}")
    th1 = switching_angle(curve, r)
    angles = tuple(off + sgn * th1 for off, sgn in curve.angle_pattern)
    edges = (0.0,) + angles + (2 * math.pi,)
    zones = tuple(zone_at(curve, r, 0.5 * (edges[i] + edges[i + 1])) for i in range(len(edges) - 1))
    return SwitchAngleSet(float(r), float(th1), angles, zones)


def polar_terms(block: np.ndarray, r, theta, order: int):
    """``[F_1, ..., F_order]`` of ``dr/dtheta`` for one zone.

    ``block`` is the ``(3, 6)`` coefficient slice of the zone. ``r`` and
    ``theta`` may be arrays or :class:`~pwlmelnikov.jets.Jet` objects (one of
    them at a time), so the same code yields radial or angular derivatives.

    With ``r' = sum eps^i A_i`` and ``theta' = -1 + sum eps^i B_i`` the ratio is
    expanded as a power series in ``eps``.
    """
    s, c = jets.sin(theta), jets.cos(theta)
    A, B = [], []
    for i in range(order):
        p0, p1, p2, q0, q1, q2 = block[i]
        P = p0 + (p1 * c + p2 * s) * r
        Q = q0 + (q1 * c + q2 * s) * r
        A.append(c * P + s * Q)
        B.append((c * Q - s * P) / r)
    # (-1 + B) F = A, solved order by order
    F = []
    for i in range(order):
        acc = -A[i]
        for j in range(1, i + 1):
            acc = acc + B[j - 1] * F[i - j]
        F.append(acc)
    return F


def polar_rhs(sys: PwlSystem, zone: str, order: int, r, theta):
    """``F_order`` of the zone, the ``eps^order`` coefficient of ``dr/dtheta``."""
    if np.any(np.asarray(jets.value(r)) <= 0):
        raise NonPositiveRadius(f"radius must be positive, got {r}")
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be 1..3, got {order}")
    return polar_terms(sys.coeffs.zone(zone), r, theta, order)[order - 1]
