"""Closed forms of the first two Melnikov functions in the u-basis.

After the change of variable ``x = r cos(theta_1(r))`` each Melnikov function
is a linear combination of the basis functions ``u_j^k`` divided by a
positive prefactor:

    order 1:  Delta_1(x) = rho(x) / (c x^-1 sqrt(x^2k + x^2))
    order 2:  Delta_2(x) = rho(x) / (c x^-3 sqrt(x^2k + x^2) (m x^2k + n x^2))

The forms are indexed 1..7 and 9 by parity and order:

    =========  =======  =======  =======
    parity     order 1  order 2  order 3
    =========  =======  =======  =======
    odd/odd    1        2        3
    even/even  4        5        -
    mixed      6        7        9
    =========  =======  =======  =======

For mixed parity the order-1 form is written for the orientation in which
``m`` is odd and the order-2 form for ``m`` even. The other orientation is
handled through :meth:`PwlSystem.swapped` (coordinate exchange plus time
reversal), which flips the sign of the displacement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import SimpleNamespace

import numpy as np
from scipy.optimize import least_squares

from .chebyshev.basis import u
from .errors import NonPositiveRadius, NotInImage, OrderUnsupported, VanishingConditionViolated
from .model import COEFF_NAMES, MAX_ORDER, ParityCase, PerturbationCoeffs, PwlSystem, SwitchingCurve, x_of_r

PI = math.pi

# basis index lists of the order-3 spans (coefficients unknown)
DELTA3_BASIS = {
    ("OddOdd", "generic"): (9, 2, 5, 4, 0, 1, 6, 7),
    ("OddOdd", "k=1"): (0, 1, 13),
    ("Mixed", "generic"): (10, 5, 12, 6, 3, 0, 1),
    ("Mixed", "k=2/3"): (10, 5, 12, 0, 3, 1),
    ("Mixed", "k=2"): (10, 5, 12, 6, 0),
}

_PREFACTOR_SCALE = {1: 2.0, 2: 4.0, 4: 1.0, 5: 1.0, 6: 1.0, 7: 2.0}


def _names(c: PerturbationCoeffs) -> SimpleNamespace:
    """``a01``, ``al11``, ``be22`` ... as attributes."""
    short = {"a": "a", "b": "b", "alpha": "al", "beta": "be"}
    d = {}
    for i in range(1, MAX_ORDER + 1):
        for name in COEFF_NAMES:
            base, j = name[:-1], name[-1]
            d[f"{short[base]}{j}{i}"] = c[f"{name}{i}"]
    return SimpleNamespace(**d)


def _branch(index: int, k: Fraction) -> str:
    if index in (1, 2, 4, 5) and k == 1:
        return "k=1"
    if index in (7, 9) and k == Fraction(2, 3):
        return "k=2/3"
    if index in (7, 9) and k == 2:
        return "k=2"
    return "generic"


def _terms(index: int, branch: str, raw):
    """``(basis indices, weights)`` of a form given its raw coefficients."""
    v = list(raw)
    if index == 1:
        if branch == "k=1":
            return (0, 8), (v[0] + v[2], v[1])
        return (2, 8, 0), (v[0], v[1], v[2])
    if index == 2:
        if branch == "k=1":
            return (0, 1), (v[0], v[1])
        return (9, 2, 5, 4, 0, 1, 6, 7), tuple(v)
    if index == 4:
        if branch == "k=1":
            # u_8 = 2x and u_11 = (pi/2) x at k = 1
            return (1,), (v[0] + 2 * v[1] + 0.5 * PI * v[2],)
        return (1, 8, 11), (v[0], v[1], v[2])
    if index == 5:
        if branch == "k=1":
            return (3, 1), (v[0], v[1])
        return (10, 1, 12, 6, 3), tuple(v)
    if index == 6:
        return (2, 1, 8, 11), tuple(v)
    if index == 7:
        if branch == "k=2/3":
            return (10, 5, 12, 0, 3, 1), (v[0], v[1], v[2], v[3] + v[5], v[4], v[6])
        if branch == "k=2":
            return (10, 5, 12, 6, 0), (v[0], v[1] + v[6], v[2], v[3], v[4] + v[5])
        return (10, 5, 12, 6, 3, 0, 1), tuple(v)
    raise ValueError(f"no coefficient formulas for form {index}")


@dataclass(frozen=True)
class RhoClosedForm:
    """A closed-form Melnikov function.

    ``raw`` holds the coefficients as produced by the coefficient formulas;
    ``basis`` and ``weights`` are the reduced combination actually evaluated
    (they differ from ``raw`` only on the degenerate branches). ``curve`` is
    the switching curve the form is written for; when ``twin`` is set this is
    the swapped curve of the physical system and ``orientation`` is -1.
    """

    index: int
    curve: SwitchingCurve
    raw: tuple
    twin: bool = False
    basis: tuple = field(init=False)
    weights: np.ndarray = field(init=False)

    def __post_init__(self):
        idx, w = _terms(self.index, self.branch, self.raw)
        object.__setattr__(self, "basis", idx)
        object.__setattr__(self, "weights", np.asarray(w, dtype=float))

    @property
    def k(self) -> Fraction:
        return self.curve.k

    @property
    def order(self) -> int:
        return 1 if self.index in (1, 4, 6) else 2

    @property
    def parity_case(self) -> ParityCase:
        return self.curve.parity_case

    @property
    def branch(self) -> str:
        return _branch(self.index, self.curve.k)

    @property
    def orientation(self) -> int:
        return -1 if self.twin else 1

    @property
    def physical_curve(self) -> SwitchingCurve:
        return self.curve.swapped() if self.twin else self.curve

    def prefactor(self, x):
        x = np.asarray(x, dtype=float)
        k = float(self.k)
        root = np.sqrt(x ** (2 * k) + x * x)
        c = _PREFACTOR_SCALE[self.index]
        if self.order == 1:
            return c * root / x
        m, n = self.curve.m, self.curve.n
        return c * root * (m * x ** (2 * k) + n * x * x) / x**3

    def __call__(self, x):
        return rho_eval(self, x)

    def x_of_r(self, r):
        return x_of_r(self.curve, r)

    def delta(self, r):
        """``Delta_order`` of the physical system at initial radius ``r``."""
        x = self.x_of_r(r)
        return self.orientation * rho_eval(self, x) / self.prefactor(x)

    def describe_prefactor(self) -> str:
        c = _PREFACTOR_SCALE[self.index]
        lead = "" if c == 1 else f"{c:g} "
        if self.order == 1:
            return f"{lead}x^-1 sqrt(x^2k + x^2)"
        return f"{lead}x^-3 sqrt(x^2k + x^2) ({self.curve.m} x^2k + {self.curve.n} x^2)"


def rho_form(index: int, k, raw, m: int | None = None, n: int | None = None) -> RhoClosedForm:
    """Form ``index`` at ratio ``k`` from a raw coefficient vector."""
    k = Fraction(k)
    if m is None or n is None:
        m, n = k.numerator, k.denominator
    return RhoClosedForm(index, SwitchingCurve(m, n), tuple(float(x) for x in raw))


def rho_eval(form: RhoClosedForm, x):
    """``sum_j w_j u_{b_j}^k(x)`` for ``x > 0``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise NonPositiveRadius("closed forms are defined for x > 0")
    out = np.zeros_like(x)
    for j, w in zip(form.basis, form.weights):
        if w != 0.0:
            out = out + w * u(j, form.k, x)
    return float(out) if out.ndim == 0 else out


# coefficient formulas ------------------------------------------------------


def _rho1(c, m, n):
    return (4 * (c.a01 - c.al01), -PI * (c.a11 + c.al11 + c.b21 + c.be21), -4 * (c.b01 - c.be01))


def _rho2(c, m, n):
    if m == n:
        l8 = 8 * n * (
            -2 * c.al01 * c.al11 + c.al01 * c.al21 - c.al01 * c.be11 + 2 * c.a02 - 2 * c.al02
            - 2 * c.al11 * c.be01 - c.al01 * c.a21 + c.a21 * c.be01 - c.al21 * c.be01
            - 4 * c.be21 * (c.al01 + c.b01) - 4 * c.al11 * c.b01 + c.be01 * c.be11
            - 2 * c.b02 + 2 * c.be02 + c.al01 * c.b11 - c.be01 * c.b11
            + 2 * c.al01 * c.b21 - 2 * c.be01 * c.b21
        )
        l9 = -4 * PI * n * (
            2 * (c.al12 + c.be22) + 2 * c.a12
            + (c.al11 + c.be21) * (c.a21 - c.al21 - c.b11 + c.be11) + 2 * c.b22
        )
        return (l8, l9)
    s = c.al11 + c.be21
    l0 = -PI * n * (
        -c.al11 * c.al21 + c.al11 * c.be11 + 2 * c.a12 + 2 * c.al12 + c.al11 * c.a21
        + c.a21 * c.be21 - c.al21 * c.be21 - c.al11 * c.b11 - c.b11 * c.be21
        + c.be11 * c.be21 + 2 * c.b22 + 2 * c.be22
    )
    l1 = 8 * (
        c.a02 * n + c.al01 * c.b11 * n - c.be01 * c.b21 * m - c.be01 * c.b21 * n
        - 2 * c.al11 * c.be01 * m - c.be01 * c.be21 * m - c.al01 * c.be11 * n - c.al02 * n
        - 2 * c.al11 * c.be01 * n - c.be01 * c.be21 * n
    )
    l2 = 8 * (
        c.a21 * c.be01 * m - c.b02 * m + c.al01 * c.b21 * (m + n) - c.al01 * c.be21 * m
        - c.al21 * c.be01 * m + c.be02 * m - c.al01 * c.be21 * n
    )
    l3 = -PI * (
        c.a21 * s * (3 * m - n) + c.al11 * c.b11 * m + c.b11 * c.be21 * m
        - 3 * c.al11 * c.b11 * n - 3 * c.b11 * c.be21 * n + 2 * c.b22 * (m + n)
        - 3 * c.al11 * c.al21 * m - c.al11 * c.be11 * m + 2 * c.al12 * m
        - 3 * c.al21 * c.be21 * m - c.be11 * c.be21 * m + 2 * c.be22 * m
        + c.al11 * c.al21 * n + 3 * c.al11 * c.be11 * n + 2 * c.al12 * n
        + c.al21 * c.be21 * n + 3 * c.be11 * c.be21 * n + 2 * c.be22 * n + 2 * c.a12 * (m + n)
    )
    l4 = -8 * n * (2 * c.al01 * s - c.be01 * c.be11 + c.b02 - c.be02 + c.be01 * c.b11)
    l5 = 2 * PI * s * (m - n) * (2 * c.al11 + c.b21 + c.be21)
    l6 = -2 * PI * s * (c.b21 - c.be21) * (m - n)
    l7 = 8 * m * (
        c.al01 * c.al21 + c.a02 - c.al02 - 2 * c.al11 * c.be01 - c.al01 * c.a21 - 2 * c.be01 * c.be21
    )
    return (l0, l1, l2, l3, l4, l5, l6, l7)


def _rho4(c, m, n):
    return (
        2 * (c.a11 - c.al11 - c.b21 + c.be21),
        -PI * (c.a11 + c.b21),
        2 * (c.a11 - c.al11 + c.b21 - c.be21),
    )


def _rho5(c, m, n):
    if m == n:
        l5 = 4 * n * (c.a01 * c.b01 - c.al01 * c.be01)
        p2 = PI * PI
        body = (
            c.a11 * ((PI - 2) * (PI * c.al21 - (4 + PI) * c.be11) - PI * (2 + PI) * c.a21
                     + (PI - 4) * (2 + PI) * c.b11)
            + 2 * (p2 - 4) * c.a12 + (2 * p2 + 8 * PI + 8) * c.al12
            - (p2 + 6 * PI + 8) * c.a21 * c.b21 + 8 * c.al21 * c.be21
            + (p2 + 2 * PI) * c.b11 * c.b21 + 8 * c.be11 * c.be21
            + (p2 + 2 * PI) * c.al21 * c.b21
            - (p2 + 6 * PI + 8) * c.be11 * c.b21
            + (2 * p2 + 8 * PI + 8) * c.b22 + 2 * (p2 - 4) * c.be22
        )
        return (l5, -n / (2 + PI) * body)
    return (
        -PI * n * (c.a12 + c.b22),
        2 * n * (c.a12 - c.al12 - 2 * c.b11 * c.be21 + 2 * c.be11 * c.be21 - c.b22 + c.be22),
        2 * n * (c.a12 - c.al12 + c.b22 - c.be22),
        2 * m * (c.a12 - c.al12 + 2 * c.a21 * c.be21 - 2 * c.al21 * c.be21 - c.b22 + c.be22),
        4 * c.a01 * c.b01 * m - 4 * c.al01 * (c.b01 * (m - n) + c.be01 * n),
    )


def _rho6(c, m, n):
    return (
        2 * (c.a01 - c.al01),
        c.a11 - c.al11 - c.b21 + c.be21,
        -PI * (c.a11 + c.b21),
        c.a11 - c.al11 + c.b21 - c.be21,
    )


def _rho7(c, m, n):
    return (
        -PI * n * (c.a12 + c.al12 + c.b22 + c.be22),
        4 * m * (c.a01 * c.be21 - c.al01 * c.be21 + c.a21 * c.be01 - c.al21 * c.be01 - c.b02 + c.be02),
        2 * n * (c.a12 - c.al12 + c.b22 - c.be22),
        2 * m * (c.a12 - c.al12 + 2 * c.a21 * c.be21 - 2 * c.al21 * c.be21 - c.b22 + c.be22),
        4 * m * c.be01 * (c.a01 - c.al01),
        4 * n * (c.be01 * c.be11 - c.b02 + c.be02 - c.be01 * c.b11),
        2 * n * (c.a12 - c.al12 - 2 * c.b11 * c.be21 + 2 * c.be11 * c.be21 - c.b22 + c.be22),
    )


_FORMULAS = {1: _rho1, 2: _rho2, 4: _rho4, 5: _rho5, 6: _rho6, 7: _rho7}


def form_index(curve: SwitchingCurve, order: int) -> int:
    case = curve.parity_case
    if order not in (1, 2):
        raise OrderUnsupported(f"closed forms exist for orders 1 and 2, got {order}")
    if case is ParityCase.ODD_ODD:
        return 1 if order == 1 else 2
    if case is ParityCase.EVEN_EVEN:
        return 4 if order == 1 else 5
    return 6 if order == 1 else 7


def _needs_twin(curve: SwitchingCurve, order: int) -> bool:
    if not curve.parity_case.mixed:
        return False
    m_even = curve.m % 2 == 0
    return m_even if order == 1 else not m_even


def _form_unchecked(curve: SwitchingCurve, coeffs: PerturbationCoeffs, order: int) -> RhoClosedForm:
    index = form_index(curve, order)
    twin = _needs_twin(curve, order)
    cv, cf = (curve.swapped(), coeffs.swapped()) if twin else (curve, coeffs)
    raw = _FORMULAS[index](_names(cf), cv.m, cv.n)
    return RhoClosedForm(index, cv, tuple(float(x) for x in raw), twin)


def delta1_identically_zero(curve: SwitchingCurve, coeffs: PerturbationCoeffs, tol: float = 1e-9) -> bool:
    w = _form_unchecked(curve, coeffs, 1).weights
    scale = max(1.0, float(np.max(np.abs(coeffs.order(1)))))
    return bool(np.all(np.abs(w) <= tol * scale))


def coeffs_to_rho(curve: SwitchingCurve, coeffs: PerturbationCoeffs, order: int = 1,
                  tol: float = 1e-9) -> RhoClosedForm:
    """Closed form of ``Delta_order`` for the system ``(curve, coeffs)``."""
    if order == 2 and not delta1_identically_zero(curve, coeffs, tol):
        raise VanishingConditionViolated("Delta_1 does not vanish identically; apply delta1_vanishing first")
    return _form_unchecked(curve, coeffs, order)


def delta1_vanishing(curve: SwitchingCurve, coeffs: PerturbationCoeffs) -> PerturbationCoeffs:
    """Coefficients modified so that ``Delta_1`` vanishes identically."""
    c = _names(coeffs)
    case = curve.parity_case
    if case is ParityCase.ODD_ODD:
        a11 = -c.al11 - c.b21 - c.be21
        if curve.k == 1:
            return coeffs.replace(a01=c.al01 + c.b01 - c.be01, a11=a11)
        return coeffs.replace(a01=c.al01, b01=c.be01, a11=a11)
    if case is ParityCase.EVEN_EVEN:
        if curve.k == 1:
            al11 = ((2 - PI) * c.a11 - (2 + PI) * c.b21 + (2 - PI) * c.be21) / (2 + PI)
            return coeffs.replace(alpha11=al11)
        return coeffs.replace(a11=-c.be21, b21=c.be21, alpha11=-c.be21)
    shared = dict(a11=-c.be21, b21=c.be21, alpha11=-c.be21)
    if curve.m % 2 == 0:
        return coeffs.replace(b01=c.be01, **shared)
    return coeffs.replace(a01=c.al01, **shared)


# inverse direction -------------------------------------------------------------


def _order1_matrix(curve: SwitchingCurve) -> np.ndarray:
    """Linear map from the twelve order-1 coefficients to the form weights."""
    cols = []
    for j in range(len(COEFF_NAMES)):
        t = np.zeros((MAX_ORDER, len(COEFF_NAMES)))
        t[0, j] = 1.0
        cols.append(_form_unchecked(curve, PerturbationCoeffs(t), 1).weights)
    return np.array(cols).T


def coeffs_from_target_rho(curve: SwitchingCurve, target, order: int = 1, tol: float = 1e-9,
                           rng=None, attempts: int = 20) -> PerturbationCoeffs:
    """Coefficients whose closed form has the weights ``target``.

    Order 1 is linear: the minimum-norm solution using only the upper-zone
    coefficients is returned when it exists, otherwise the minimum-norm
    solution over all twelve. Order 2 is polynomial in the coefficients and
    is solved by nonlinear least squares over systems satisfying
    :func:`delta1_vanishing`, from random starts.
    """
    target = np.asarray(target, dtype=float)
    if order == 1:
        M = _order1_matrix(curve)
        if M.shape[0] != target.size:
            raise ValueError(f"expected {M.shape[0]} weights, got {target.size}")
        for cols in (np.arange(6), np.arange(12)):
            sol, *_ = np.linalg.lstsq(M[:, cols], target, rcond=None)
            full = np.zeros(12)
            full[cols] = sol
            if np.linalg.norm(M @ full - target) <= tol * max(1.0, np.linalg.norm(target)):
                t = np.zeros((MAX_ORDER, 12))
                t[0] = full
                return PerturbationCoeffs(t)
        raise NotInImage("target weights are not reachable by the order-1 coefficient map")
    if order != 2:
        raise OrderUnsupported("inverse maps exist for orders 1 and 2")
    rng = np.random.default_rng(0) if rng is None else rng

    def build(p):
        t = np.zeros((MAX_ORDER, 12))
        t[:2] = p.reshape(2, 12)
        return delta1_vanishing(curve, PerturbationCoeffs(t))

    def resid(p):
        w = _form_unchecked(curve, build(p), 2).weights
        if w.size != target.size:
            raise ValueError(f"expected {w.size} weights, got {target.size}")
        return w - target

    scale = max(1.0, float(np.linalg.norm(target)))
    best = None
    for _ in range(attempts):
        sol = least_squares(resid, rng.uniform(-1, 1, 24), xtol=1e-15, ftol=1e-15, gtol=1e-15)
        err = float(np.linalg.norm(sol.fun))
        if best is None or err < best[0]:
            best = (err, sol.x)
        if err <= tol * scale:
            return build(sol.x)
    raise NotInImage(f"order-2 target not reached (residual {best[0]:.3g})")


def delta3_basis(curve: SwitchingCurve) -> tuple:
    case = curve.parity_case
    if case is ParityCase.ODD_ODD:
        return DELTA3_BASIS[("OddOdd", "k=1" if curve.k == 1 else "generic")]
    if case.mixed:
        cv = curve if curve.m % 2 == 0 else curve.swapped()
        return DELTA3_BASIS[("Mixed", _branch(9, cv.k))]
    raise OrderUnsupported("no order-3 span is available for even/even curves")


def second_order_vanishing(curve: SwitchingCurve, rng=None, scale: float = 1.0,
                           order3: bool = True) -> PerturbationCoeffs:
    """A random system with ``Delta_1 = Delta_2 = 0`` identically.

    Orders 1 and 2 are found by :func:`coeffs_from_target_rho` with a zero
    target; order 3 is drawn uniformly in ``[-scale, scale]`` when requested.
    """
    rng = np.random.default_rng() if rng is None else rng
    size = _form_unchecked(curve, PerturbationCoeffs(), 2).weights.size
    c = coeffs_from_target_rho(curve, np.zeros(size), 2, rng=rng)
    t = c.table.copy()
    if order3:
        t[2] = rng.uniform(-scale, scale, 12)
    return PerturbationCoeffs(t)


def delta3_denominator(curve: SwitchingCurve, x):
    """Positive weight ``nu`` with ``Delta_3 nu`` in the order-3 span.

    Same shape as the order-2 prefactor for ``k != 1``; proportional to
    ``x`` when ``k = 1``.
    """
    x = np.asarray(x, dtype=float)
    if curve.k == 1:
        return x
    k = float(curve.k)
    return np.sqrt(x ** (2 * k) + x * x) * (curve.m * x ** (2 * k) + curve.n * x * x) / x**3


@dataclass(frozen=True)
class Delta3SpanFit:
    basis: tuple
    coefficients: np.ndarray
    residual: float
    curve: SwitchingCurve

    @property
    def in_span(self) -> bool:
        return self.residual <= 1e-6


def delta3_span_check(sys: PwlSystem, radii, tol: float = 1e-8) -> Delta3SpanFit:
    """Least-squares fit of ``Delta_3 nu`` on the stated order-3 basis.

    ``radii`` are initial radii; at least twice as many as basis functions
    are required. The relative residual is zero when the fitted combination
    reproduces ``Delta_3`` exactly.
    """
    from .melnikov import melnikov_functions

    curve = sys.curve
    basis = delta3_basis(curve)
    radii = np.asarray(radii, dtype=float)
    if radii.size < 2 * len(basis):
        raise ValueError(f"need at least {2 * len(basis)} sample radii, got {radii.size}")
    D = melnikov_functions(sys, radii, 3)
    scale = max(1.0, float(np.max(np.abs(sys.coeffs.table))))
    if np.max(np.abs(D[:2])) > tol * scale:
        raise VanishingConditionViolated(
            f"lower orders do not vanish (max {np.max(np.abs(D[:2])):.3g})")
    cv = curve.swapped() if curve.parity_case.mixed and curve.m % 2 == 1 else curve
    x = x_of_r(cv, radii)
    y = D[2] * delta3_denominator(cv, x)
    B = np.array([u(j, cv.k, x) for j in basis]).T
    coef, *_ = np.linalg.lstsq(B, y, rcond=None)
    norm = float(np.linalg.norm(y))
    res = 0.0 if norm == 0.0 else float(np.linalg.norm(B @ coef - y) / norm)
    return Delta3SpanFit(basis, coef, res, cv)
