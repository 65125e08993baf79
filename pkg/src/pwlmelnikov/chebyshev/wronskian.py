"""Wronskians of ordered families: numeric (from derivative jets) and the
tabulated closed forms.

Every closed form has the shape

    W(x) = c(k) * x^e(k) * (x^{2k} + x^2)^q * P(x^s(k)) * g(x)

with ``P`` a polynomial whose coefficients depend on ``k`` and ``g`` a factor
that is positive on ``x > 0`` (only ``arctan(x^{k-1})`` occurs). That shape
makes the zero count on ``(0, inf)`` exactly the positive root count of ``P``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from .. import jets
from ..errors import DegenerateK, NonPositiveRadius, NotTabulated
from .basis import u
from .families import FIXED_K, OrderedFamily, family as lookup_family
from .polynomials import Polynomial, named_polynomial, quartic
from .sturm import count_real_roots

# ---------------------------------------------------------------------------
# numeric


def _check_x(x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise NonPositiveRadius("Wronskians are evaluated on x > 0")
    return x


def _mpf(v):
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


class _MpSeries:
    """Truncated Taylor series with mpmath coefficients (``c[p] = f^(p)/p!``)."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = list(c)

    @classmethod
    def power(cls, x0, a, deg):
        # (x0 + h)^a = sum binom(a, p) x0^(a-p) h^p
        c = [x0**a]
        for p in range(1, deg + 1):
            c.append(c[-1] * (a - p + 1) / (p * x0))
        return cls(c)

    def __add__(self, other):
        if isinstance(other, _MpSeries):
            return _MpSeries([a + b for a, b in zip(self.c, other.c)])
        return _MpSeries([self.c[0] + other] + self.c[1:])

    __radd__ = __add__

    def __mul__(self, other):
        if not isinstance(other, _MpSeries):
            return _MpSeries([a * other for a in self.c])
        n = len(self.c)
        return _MpSeries([mpmath.fsum(self.c[i] * other.c[p - i] for i in range(p + 1)) for p in range(n)])

    __rmul__ = __mul__

    def reciprocal(self):
        q = [1 / self.c[0]]
        for p in range(1, len(self.c)):
            q.append(-mpmath.fsum(self.c[i] * q[p - i] for i in range(1, p + 1)) / self.c[0])
        return _MpSeries(q)

    def arctan(self):
        n = len(self.c)
        deriv = _MpSeries([(p + 1) * self.c[p + 1] for p in range(n - 1)] + [mpmath.mpf(0)])
        g = deriv * (self * self + 1).reciprocal()
        return _MpSeries([mpmath.atan(self.c[0])] + [g.c[p - 1] / p for p in range(1, n)])


def _u_series(index: int, k, x0, deg):
    """Taylor series of a basis function at ``x0`` (mpmath arithmetic)."""
    P = lambda a: _MpSeries.power(x0, a, deg)  # noqa: E731
    if index == 0:
        return P(0)
    simple = {1: k, 2: k - 1, 3: k - 2, 4: 2 * k - 1, 5: 2 * k - 2, 6: 3 * k - 2, 7: 3 * k - 3, 13: 2 * k}
    if index in simple:
        return P(simple[index])
    if index == 8:
        return P(1) + P(2 * k - 1)
    if index == 9:
        return P(1) + P(4 * k - 3) * k
    core = (P(2 * k - 2) + 1) * (P(1) + P(2 * k - 1) * k)
    if index == 10:
        return core
    if index == 11:
        return (P(1) + P(2 * k - 1)) * P(k - 1).arctan()
    if index == 12:
        return core * P(k - 1).arctan()
    raise IndexError(f"basis index must be 0..13, got {index}")


def _wronskian_mp(basis, js, k, x, digits):
    """``W_j`` for every ``j`` in ``js`` (leading minors of one matrix)."""
    top = max(js)
    with mpmath.workdps(digits):
        kk = _mpf(k)
        out = np.empty((len(js),) + x.shape)
        for idx, x0 in np.ndenumerate(x):
            xm = _mpf(float(x0))
            cols = [_u_series(i, kk, xm, top).c for i in basis[: top + 1]]
            minors = _leading_minors([[cols[i][p] for i in range(top + 1)] for p in range(top + 1)])
            for r, j in enumerate(js):
                fact = math.prod(math.factorial(p) for p in range(j + 1))
                out[(r,) + idx] = float(minors[j] * fact)
        return out


def _leading_minors(a):
    """Leading principal minors by elimination without pivoting.

    Pivoting would mix leading blocks; at 40 digits a vanishing pivot only
    happens when a grid point hits a zero of some W_j, and then every later
    minor is computed as a determinant directly.
    """
    n = len(a)
    a = [row[:] for row in a]
    minors, acc = [], mpmath.mpf(1)
    for i in range(n):
        piv = a[i][i]
        if piv == 0:
            rest = [mpmath.det(mpmath.matrix([r[: j + 1] for r in a[: j + 1]])) for j in range(i, n)]
            return minors + rest
        acc *= piv
        minors.append(acc)
        for r in range(i + 1, n):
            f = a[r][i] / piv
            if f:
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    return minors


def wronskian_sequence(fam: OrderedFamily, x, digits: int = 40, rtol: float = 1e-13,
                       max_digits: int = 320):
    """All of ``W_0 .. W_n`` at ``x`` in extended precision, shape ``(n+1, *x.shape)``.

    The working precision starts at ``digits`` and is doubled until two
    successive precisions agree to ``rtol``; cancellation grows with ``k``
    and a fixed precision is not enough for large ``k``.
    """
    x = _check_x(x)
    js = list(range(fam.size))
    prev = _wronskian_mp(fam.basis, js, fam.k, x, digits)
    while True:
        digits *= 2
        cur = _wronskian_mp(fam.basis, js, fam.k, x, digits)
        scale = np.where(cur == 0, 1.0, np.abs(cur))
        if np.all(np.abs(cur - prev) <= rtol * scale):
            return cur
        if digits >= max_digits:
            raise ArithmeticError(f"Wronskians of {fam.label()} not converged at {digits} digits")
        prev = cur


def wronskian_numeric(fam: OrderedFamily, j: int, x, digits: int | None = None):
    """Determinant of the derivative matrix of the first ``j+1`` functions.

    Derivatives come from jets in the scaled variable ``x(1+t)``, so row
    ``p`` holds ``x^p u^(p)(x) / p!``; columns are normalized before the
    determinant and the scalings are multiplied back afterwards.

    With ``digits`` set, derivatives and determinant are computed in mpmath
    at that many significant digits instead. Double precision loses most of
    its digits to cancellation for large ``k`` or near zeros of ``W_j``.
    """
    if not 0 <= j < fam.size:
        raise IndexError(f"{fam.name} has {fam.size} functions, no W_{j}")
    x = _check_x(x)
    if digits is not None:
        return _wronskian_mp(fam.basis, [j], fam.k, x, digits)[0]
    kf = float(fam.k)
    t = jets.Jet.variable(x, j)
    if j >= 1:
        t.c[1] = x  # x0 + x0*t
    mat = np.stack([u(i, kf, t).broadcast(x.shape) for i in fam.basis[: j + 1]], axis=-1)  # (p, *batch, i)
    mat = np.moveaxis(mat, 0, -2)  # (*batch, p, i)
    scale = np.max(np.abs(mat), axis=-2, keepdims=True)
    scale = np.where(scale == 0, 1.0, scale)
    det = np.linalg.det(mat / scale) * np.prod(scale, axis=(-2, -1))
    fact = math.prod(math.factorial(p) for p in range(j + 1))
    return det * fact * x ** (-(j * (j + 1) / 2))


# ---------------------------------------------------------------------------
# closed forms


def _one(k):
    return 1


@dataclass(frozen=True)
class ClosedWronskian:
    const: Callable
    power: Callable
    q: int = 0
    poly: Callable | None = None
    arg: Callable | None = None
    positive_factor: Callable | None = None
    text: str = ""

    def polynomial(self, k) -> Polynomial | None:
        return None if self.poly is None else self.poly(k)

    def __call__(self, k, x, digits: int | None = None):
        x = _check_x(x)
        if digits is not None:
            return self._eval_mp(k, x, digits)
        kf = float(k)
        val = float(self.const(k)) * x ** float(self.power(k))
        if self.q:
            val = val * (x ** (2 * kf) + x * x) ** self.q
        if self.poly is not None:
            val = val * self.poly(k)(x ** float(self.arg(k)))
        if self.positive_factor is not None:
            val = val * self.positive_factor(kf, x)
        return val

    def _eval_mp(self, k, x, digits):
        with mpmath.workdps(digits):
            kk = _mpf(k)
            poly = self.poly(k) if self.poly is not None else None
            out = np.empty(x.shape)
            for idx, x0 in np.ndenumerate(x):
                xm = _mpf(float(x0))
                val = _mpf(self.const(k)) * xm ** _mpf(self.power(k))
                if self.q:
                    val *= (xm ** (2 * kk) + xm * xm) ** self.q
                if poly is not None:
                    y = xm ** _mpf(self.arg(k))
                    acc = mpmath.mpf(0)
                    for c in reversed(poly.coeffs):
                        acc = acc * y + _mpf(c)
                    val *= acc
                if self.positive_factor is not None:
                    val *= mpmath.atan(xm ** (kk - 1))
                out[idx] = float(val)
            return out

    def zero_count(self, k) -> tuple[int, int]:
        """(distinct, with multiplicity) zeros on ``(0, inf)``."""
        if self.const(k) == 0:
            raise DegenerateK(f"Wronskian vanishes identically at k={k}")
        if self.poly is None:
            return 0, 0
        p = self.poly(k)
        if p.is_zero:
            raise DegenerateK(f"Wronskian vanishes identically at k={k}")
        if self.arg(k) == 0:
            if p(1) == 0:
                raise DegenerateK(f"Wronskian vanishes identically at k={k}")
            return 0, 0
        iso = count_real_roots(p, (0, None))
        return iso.count, iso.count_with_multiplicity

    def roots(self, k) -> list[float]:
        """Positive zeros in x (midpoints of certified enclosures)."""
        if self.poly is None or self.arg(k) == 0:
            return []
        s = float(self.arg(k))
        return [y ** (1.0 / s) for y in count_real_roots(self.poly(k), (0, None)).midpoints()]


def _P(index):
    return lambda k: named_polynomial(index, k)


def _fixed(coeffs):
    return lambda k: Polynomial(coeffs)


def _arctan_factor(k, x):
    return np.arctan(x ** (k - 1))


def W(const, power, q=0, poly=None, arg=None, positive_factor=None, text=""):
    return ClosedWronskian(const, power, q, poly, arg, positive_factor, text)


def _s(k):  # argument x^{2k-2}
    return 2 * k - 2


_G9 = [
    W(_one, lambda k: 0, text="1"),
    W(lambda k: k, lambda k: k - 1, text="k x^(k-1)"),
    W(lambda k: 2 * (k - 1) * k * (3 * k - 2), lambda k: 4 * k - 5, text="2(k-1)k(3k-2) x^(4k-5)"),
    W(lambda k: -4 * (k - 2) * (k - 1) ** 2 * k**2 * (3 * k - 2), lambda k: 6 * k - 10,
      text="-4(k-2)(k-1)^2 k^2 (3k-2) x^(6k-10)"),
    W(lambda k: 16 * k**4 * (3 * k - 2) * (k * k - 3 * k + 2) ** 2, lambda k: 7 * k - 16,
      text="16k^4(3k-2)(k^2-3k+2)^2 x^(7k-16)"),
    W(lambda k: 16 * (k - 2) ** 2 * (k - 1) ** 4 * k**4 * (3 * k - 2), lambda k: 7 * k - 20, 0, _P(9), _s,
      text="16(k-2)^2(k-1)^4 k^4 (3k-2) x^(7k-20) P9(x^(2k-2))"),
    W(lambda k: 512 * (k - 2) ** 2 * (k - 1) ** 7 * k**4 * (3 * k - 2), lambda k: 12 * k - 20, -5, quartic, _s,
      text="512(k-2)^2(k-1)^7 k^4 (3k-2) x^(12k-20) S^-5 Quartic(x^(2k-2))"),
]


def _neg(w: ClosedWronskian, text):
    return W(lambda k, c=w.const: -c(k), w.power, w.q, w.poly, w.arg, w.positive_factor, text)


CLOSED_FORMS: dict[str, list[ClosedWronskian]] = {
    "G2": [
        W(_one, lambda k: 1, 0, _fixed([1, 1]), _s, text="x + x^(2k-1)"),
        W(lambda k: k - 1, lambda k: k - 2, 1, text="(k-1) x^(k-2) S"),
        W(lambda k: -4 * (k - 1) ** 3, lambda k: 4 * k - 2, -1, text="-4(k-1)^3 x^(4k-2) S^-1"),
    ],
    "G3": [
        W(_one, lambda k: 0, text="1"),
        W(lambda k: k - 1, lambda k: k - 2, text="(k-1) x^(k-2)"),
        W(lambda k: k - 1, lambda k: k - 3, 0, _P(0), _s, text="(k-1) x^(k-3) P0(x^(2k-2))"),
    ],
    "G4": [
        W(_one, lambda k: 1, 0, _fixed([1, 1]), _s, _arctan_factor, text="(x + x^(2k-1)) arctan(x^(k-1))"),
        W(lambda k: -(k - 1), lambda k: k - 2, 1, text="-(k-1) x^(k-2) S"),
        W(lambda k: 4 * (k - 1) ** 3, lambda k: 4 * k - 2, -1, text="4(k-1)^3 x^(4k-2) S^-1"),
        W(lambda k: 4 * (k - 1) ** 3, lambda k: 5 * k - 4, -2, _P(1), _s,
          text="4(k-1)^3 x^(5k-4) S^-2 P1(x^(2k-2))"),
    ],
    "G5": [
        W(_one, lambda k: k - 1, text="x^(k-1)"),
        W(lambda k: k - 1, lambda k: 3 * k - 4, text="(k-1) x^(3k-4)"),
        W(lambda k: (k - 1) * k, lambda k: 5 * k - 7, text="(k-1)k x^(5k-7)"),
        W(lambda k: -2 * (k - 1) ** 3 * k * (2 * k - 1), lambda k: 5 * k - 10, text="-2(k-1)^3 k(2k-1) x^(5k-10)"),
        W(lambda k: -2 * (k - 2) * (k - 1) ** 4 * k**2 * (2 * k - 1), lambda k: 6 * k - 14,
          text="-2(k-2)(k-1)^4 k^2 (2k-1) x^(6k-14)"),
        W(lambda k: -4 * (1 - 2 * k) ** 2 * (k - 2) * (k - 1) ** 6 * k**3 * (3 * k - 2), lambda k: 9 * k - 21,
          text="-4(1-2k)^2(k-2)(k-1)^6 k^3 (3k-2) x^(9k-21)"),
        W(lambda k: 24 * (1 - 2 * k) ** 2 * (k - 2) ** 2 * (k - 1) ** 9 * k**3 * (2 * k - 3) * (3 * k - 2),
          lambda k: 12 * k - 30, text="24(1-2k)^2(k-2)^2(k-1)^9 k^3 (2k-3)(3k-2) x^(12k-30)"),
        W(lambda k: 144 * (1 - 2 * k) ** 2 * (k - 2) ** 2 * (k - 1) ** 12 * k**3 * (2 * k - 3) * (3 * k - 2),
          lambda k: 12 * k - 36, 0, _P(2), lambda k: 4 * k - 4,
          text="144(1-2k)^2(k-2)^2(k-1)^12 k^3 (2k-3)(3k-2) x^(12k-36) P2(x^(4k-4))"),
    ],
    # k = 2 only
    "G6": [
        W(_one, lambda k: 4, text="x^4"),
        W(lambda k: -4, lambda k: 3, text="-4x^3"),
        W(lambda k: 16, lambda k: 3, text="16x^3"),
        W(lambda k: 48, lambda k: 1, 0, _fixed([1, -3, 10]), lambda k: 2, text="48(10x^5 - 3x^3 + x)"),
        W(lambda k: 1536, lambda k: 9, -3, _fixed([9, 2]), lambda k: 2, text="1536 x^3 (2x^2+9) / (x^2+1)^3"),
    ],
    # k = 2/3 only
    "G7": [
        W(_one, lambda k: Fraction(-2, 3), text="x^(-2/3)"),
        W(lambda k: Fraction(2, 3), lambda k: Fraction(-5, 3), text="2/(3 x^(5/3))"),
        W(lambda k: Fraction(16, 27), lambda k: -5, text="16/(27 x^5)"),
        W(lambda k: Fraction(256, 243), lambda k: Fraction(-22, 3), text="256/(243 x^(22/3))"),
        W(lambda k: Fraction(256, 19683), lambda k: Fraction(-35, 3), 0, _fixed([6, -25, 105]),
          lambda k: Fraction(2, 3), text="256(-25x^(2/3) + 105x^(4/3) + 6)/(19683 x^(35/3))"),
        W(lambda k: Fraction(-65536, 4782969), lambda k: -10, -4, _fixed([26, 9]), lambda k: Fraction(2, 3),
          text="-65536(9x^(2/3)+26)/(4782969 (x^(2/3)+1)^4 x^(46/3))"),
    ],
    "F1:1": [
        W(_one, lambda k: k, text="x^k"),
        W(lambda k: 2 * (k - 1), lambda k: 4 * k - 3, text="2(k-1) x^(4k-3)"),
        W(lambda k: 2 * (k - 1) ** 3, lambda k: 4 * k - 4, 0, _P(3), _s, text="2(k-1)^3 x^(4k-4) P3(x^(2k-2))"),
        W(lambda k: -32 * (k - 1) ** 6, lambda k: 9 * k - 7, -2, _P(4), _s,
          text="-32(k-1)^6 x^(9k-7) S^-2 P4(x^(2k-2))"),
        W(lambda k: 256 * (k - 1) ** 6 * k, lambda k: 10 * k - 11, -3, _P(5), _s,
          text="256(k-1)^6 k x^(10k-11) S^-3 P5(x^(2k-2))"),
    ],
    "F1:2": [
        W(_one, lambda k: k, text="x^k"),
        W(lambda k: -2, lambda k: 2 * k - 3, text="-2 x^(2k-3)"),
        W(lambda k: -2 * (k - 1), lambda k: 2 * k - 4, 0, _P(6), _s, text="-2(k-1) x^(2k-4) P6(x^(2k-2))"),
        W(lambda k: 8 * (k - 1) ** 3, lambda k: 5 * k - 5, -2, _P(7), _s,
          text="8(k-1)^3 x^(5k-5) S^-2 P7(x^(2k-2))"),
        W(lambda k: 256 * (k - 1) ** 6 * k, lambda k: 10 * k - 11, -3, _P(8), _s,
          text="256(k-1)^6 k x^(10k-11) S^-3 P8(x^(2k-2))"),
    ],
    "G9": _G9,
    "F2:1": [
        W(_one, lambda k: 2 * k - 2, text="x^(2k-2)"),
        W(lambda k: k, lambda k: 5 * k - 5, text="k x^(5k-5)"),
        W(lambda k: 2 * k**3, lambda k: 6 * k - 9, text="2k^3 x^(6k-9)"),
        W(lambda k: -4 * (k - 2) * (k - 1) * k**3 * (3 * k - 2), lambda k: 6 * (k - 2),
          text="-4(k-2)(k-1)k^3(3k-2) x^(6(k-2))"),
        W(lambda k: -16 * k**4 * (3 * k - 2) * (k * k - 3 * k + 2) ** 2, lambda k: 7 * k - 16,
          text="-16k^4(3k-2)(k^2-3k+2)^2 x^(7k-16)"),
        W(lambda k: -16 * (k - 2) ** 2 * (k - 1) ** 4 * k**4 * (3 * k - 2), lambda k: 7 * k - 20, 0, _P(10), _s,
          text="-16(k-2)^2(k-1)^4 k^4 (3k-2) x^(7k-20) P10(x^(2k-2))"),
        _neg(_G9[6], "-(G9 W6)"),
    ],
    "F2:2": [
        W(_one, lambda k: 2 * k - 2, text="x^(2k-2)"),
        W(lambda k: k, lambda k: 5 * k - 5, text="k x^(5k-5)"),
        W(lambda k: 2 * k**3, lambda k: 6 * k - 9, text="2k^3 x^(6k-9)"),
        W(lambda k: 8 * (k - 2) * (k - 1) * k**3, lambda k: 7 * k - 12, text="8(k-2)(k-1)k^3 x^(7k-12)"),
        W(lambda k: 8 * (k - 2) * (k - 1) ** 3 * k**3, lambda k: 7 * k - 15, 0, _P(11), _s,
          text="8(k-2)(k-1)^3 k^3 x^(7k-15) P11(x^(2k-2))"),
        W(lambda k: 256 * (k - 2) * (k - 1) ** 6 * k**3, lambda k: 12 * k - 16, -4, _P(12), _s,
          text="256(k-2)(k-1)^6 k^3 x^(12k-16) S^-4 P12(x^(2k-2))"),
        _G9[6],
    ],
    "F2:3": [
        W(_one, lambda k: 3 * k - 2, text="x^(3k-2)"),
        W(lambda k: -2 * k, lambda k: 4 * k - 5, text="-2k x^(4k-5)"),
        W(lambda k: 8 * (k - 1) * k, lambda k: 5 * k - 7, text="8(k-1)k x^(5k-7)"),
        W(lambda k: 8 * (k - 1) ** 3 * k, lambda k: 5 * k - 9, 0, _P(13), _s,
          text="8(k-1)^3 k x^(5k-9) P13(x^(2k-2))"),
        W(lambda k: 256 * (k - 1) ** 6 * k, lambda k: 10 * k - 11, -3, _P(14), _s,
          text="256(k-1)^6 k x^(10k-11) S^-3 P14(x^(2k-2))"),
        W(lambda k: 256 * (k - 2) * (k - 1) ** 6 * k**2 * (3 * k - 2), lambda k: 10 * k - 14, -4, _P(15), _s,
          text="256(k-2)(k-1)^6 k^2 (3k-2) x^(10k-14) S^-4 P15(x^(2k-2))"),
        _G9[6],
    ],
    "F2:4": [
        W(_one, lambda k: 3 * k - 2, text="x^(3k-2)"),
        W(lambda k: -2 * (k - 1), lambda k: 4 * k - 3, text="-2(k-1) x^(4k-3)"),
        W(lambda k: -2 * (k - 1) ** 3, lambda k: 4 * k - 4, 0, _P(16), _s,
          text="-2(k-1)^3 x^(4k-4) P16(x^(2k-2))"),
        W(lambda k: 32 * (k - 1) ** 6, lambda k: 9 * k - 7, -2, _P(17), _s,
          text="32(k-1)^6 x^(9k-7) S^-2 P17(x^(2k-2))"),
        W(lambda k: 32 * (k - 2) * (k - 1) ** 6 * k, lambda k: 11 * k - 11, -3, _P(18), _s,
          text="32(k-2)(k-1)^6 k x^(11k-11) S^-3 P18(x^(2k-2))"),
        W(lambda k: 64 * (k - 2) * (k - 1) ** 7 * k**2 * (3 * k - 2), lambda k: 11 * k - 14, -4, _P(19), _s,
          text="64(k-2)(k-1)^7 k^2 (3k-2) x^(11k-14) S^-4 P19(x^(2k-2))"),
        _G9[6],
    ],
    "F2:5": [
        W(_one, lambda k: 2 * k - 2, text="x^(2k-2)"),
        W(lambda k: -k, lambda k: 3 * k - 5, text="-k x^(3k-5)"),
        W(lambda k: -2 * (k - 2) * (k - 1) * k, lambda k: 3 * k - 7, text="-2(k-2)(k-1)k x^(3k-7)"),
        W(lambda k: 4 * (k - 2) ** 2 * (k - 1) * k**2, lambda k: 4 * k - 10, text="4(k-2)^2(k-1)k^2 x^(4k-10)"),
        W(lambda k: 4 * (k - 2) ** 2 * (k - 1) ** 2 * k**2, lambda k: 4 * k - 13, 0, _P(20), _s,
          text="4(k-2)^2(k-1)^2 k^2 x^(4k-13) P20(x^(2k-2))"),
        W(lambda k: 16 * (k - 2) ** 2 * (k - 1) ** 4 * k**2, lambda k: 7 * k - 12, -4, _P(21), _s,
          text="16(k-2)^2(k-1)^4 k^2 x^(7k-12) S^-4 P21(x^(2k-2))"),
        _G9[6],
    ],
}
CLOSED_FORMS["F2:6"] = _G9


def closed_form_key(fam: OrderedFamily) -> str:
    """Key into :data:`CLOSED_FORMS` for an ordered family."""
    if fam.name in ("F1", "F2"):
        return f"{fam.name}:{fam.case}"
    if fam.name == "G8":
        # G8 and the first F1 ordering coincide
        f1 = lookup_family("F1", fam.k) if fam.k > 1 else None
        if f1 is not None and f1.case == 1:
            return "F1:1"
        raise NotTabulated(f"G8 has no closed-form Wronskians at k={fam.k}")
    if fam.name in CLOSED_FORMS:
        return fam.name
    raise NotTabulated(f"no closed-form Wronskians for {fam.name}")


def closed_wronskian(fam: OrderedFamily, j: int) -> ClosedWronskian:
    key = closed_form_key(fam)
    forms = CLOSED_FORMS[key]
    if not 0 <= j < len(forms):
        raise NotTabulated(f"{key} has no tabulated W_{j}")
    return forms[j]


def wronskian_closed(fam, j: int, k=None, x=1.0, digits: int | None = None):
    """Evaluate the tabulated closed form of ``W_j``.

    ``fam`` is an :class:`OrderedFamily` or a family name (then ``k`` picks
    the member, and for ``F1``/``F2`` the ordering case).
    """
    if isinstance(fam, str):
        fam = lookup_family(fam, k)
    return closed_wronskian(fam, j)(fam.k, x, digits)


def tabulated(fam: OrderedFamily) -> bool:
    try:
        closed_form_key(fam)
        return True
    except NotTabulated:
        return False


__all__ = [
    "CLOSED_FORMS",
    "ClosedWronskian",
    "FIXED_K",
    "closed_wronskian",
    "tabulated",
    "wronskian_closed",
    "wronskian_numeric",
]
