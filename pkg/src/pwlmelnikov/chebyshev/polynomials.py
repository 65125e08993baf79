"""Univariate polynomials with exact or float coefficients, and the named
polynomials whose coefficients depend on the exponent ratio ``k``.

Coefficients are stored lowest degree first. When ``k`` is a
:class:`~fractions.Fraction` (or an int) every named polynomial has exact
rational coefficients, which is what the Sturm counter needs.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np


def _exact(c):
    return isinstance(c, (int, Rational)) and not isinstance(c, bool)


class Polynomial:
    __slots__ = ("coeffs", "name")

    def __init__(self, coeffs, name: str | None = None):
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        self.coeffs = tuple(cs)
        self.name = name

    @classmethod
    def from_high(cls, coeffs, name=None):
        """Build from coefficients listed highest degree first."""
        return cls(list(coeffs)[::-1], name)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if any(c != 0 for c in self.coeffs) else -1

    @property
    def is_zero(self) -> bool:
        return self.degree < 0

    @property
    def exact(self) -> bool:
        return all(_exact(c) for c in self.coeffs)

    @property
    def leading(self):
        return self.coeffs[-1]

    def __call__(self, x):
        if isinstance(x, np.ndarray):
            out = np.zeros_like(x, dtype=float)
            for c in reversed(self.coeffs):
                out = out * x + float(c)
            return out
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:] or [0])

    def as_exact(self) -> "Polynomial":
        """Exact rational copy; floats are converted without rounding."""
        return Polynomial([c if _exact(c) else Fraction(float(c)) for c in self.coeffs], self.name)

    def as_float(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs])

    def monic(self) -> "Polynomial":
        lead = Fraction(self.leading) if self.exact else float(self.leading)
        return Polynomial([c / lead for c in self.coeffs], self.name)

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs], self.name)

    def __add__(self, other):
        other = other if isinstance(other, Polynomial) else Polynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-(other if isinstance(other, Polynomial) else Polynomial([other])))

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def divmod(self, other: "Polynomial"):
        """Polynomial long division (exact when both operands are exact)."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        num = [Fraction(c) if _exact(c) else c for c in self.coeffs]
        den = other.coeffs
        dd = other.degree
        lead = Fraction(den[dd]) if _exact(den[dd]) else den[dd]
        if self.degree < dd:
            return Polynomial([0]), Polynomial(num)
        q = [0] * (self.degree - dd + 1)
        for i in range(self.degree - dd, -1, -1):
            coef = num[i + dd] / lead
            q[i] = coef
            if coef != 0:
                for j in range(dd + 1):
                    num[i + j] -= coef * den[j]
        return Polynomial(q), Polynomial(num[:dd] or [0])

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            terms.append(f"{c}" + (f"*x^{i}" if i > 1 else "*x" if i == 1 else ""))
        return f"Polynomial({label}{' + '.join(terms) or '0'})"


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (exact inputs)."""
    a, b = a.as_exact(), b.as_exact()
    while not b.is_zero:
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero else a


def square_free(p: Polynomial) -> Polynomial:
    p = p.as_exact()
    g = gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    return p.divmod(g)[0]


def _k(k):
    if isinstance(k, float) and k.is_integer():
        return int(k)
    return k


# ---------------------------------------------------------------------------
# named polynomials in x with k-dependent coefficients (lowest degree first)


def _lin(a, b):
    """``a x + b``"""
    return [b, a]


def _quad(a, b, c):
    """``a x^2 + b x + c``"""
    return [c, b, a]


def _h(k):
    # recurring quartic factor k(k(k(k+10)-30)+10)+1
    return k * (k * (k * (k + 10) - 30) + 10) + 1


def _P(k):
    return {
        0: lambda: _lin(k * (2 * k - 1), -(k - 2)),
        1: lambda: _lin(k * (2 * k - 3), (k - 2) * (2 * k - 1)),
        2: lambda: _lin(k**2 * (2 * k - 1) * (3 * k - 2) * (4 * k - 3), (k - 2) * (2 * k - 3) * (3 * k - 4)),
        3: lambda: _quad(3 * k, -(k + 1), 3),
        4: lambda: _lin((k - 5) * k, 1 - 5 * k),
        5: lambda: _quad((k - 5) * (k - 2) * k * (3 * k - 1), -2 * _h(k), -(k - 3) * (2 * k - 1) * (5 * k - 1)),
        6: lambda: _quad(3 * k * (3 * k - 1), (k + 1) ** 2, k - 3),
        7: lambda: [
            k * (k * (7 - 3 * k) + 6),
            4 - k * (k * (k * (k + 22) - 61) + 18),
            -k * (k * (k * (k + 34) - 67) + 20),
            -17 * k**4 + 8 * k**3 + k**2,
            -3 * k**3 * (3 * k - 1),
        ],
        8: lambda: _quad(-(k - 5) * (k - 2) * k * (3 * k - 1), 2 * _h(k), (k - 3) * (2 * k - 1) * (5 * k - 1)),
        9: lambda: _quad(3 * k * (2 * k - 1) * (3 * k - 1) * (4 * k - 3), -((k + 1) ** 2) * (2 * k - 1),
                         3 * (k - 3) * (2 * k - 3)),
        10: lambda: _quad(3 * k * (2 * k - 1) * (3 * k - 1) * (4 * k - 3), -((k + 1) ** 2) * (2 * k - 1),
                          3 * (k - 3) * (2 * k - 3)),
        11: lambda: _quad(3 * k * (k * (6 * k - 5) + 1), -((k + 1) ** 2), 3 * (k - 3) * (2 * k - 3)),
        12: lambda: [
            (k - 3) * (2 * k - 3) * (2 * k - 1) * (3 * k - 2) * (5 * k - 1),
            (3 * k - 2) * (k * (k * (2 * k * (18 * k - 89) + 185) + 10) - 29),
            k * (k * (k * (k * (9 * k * (4 * k + 3) - 562) + 949) - 498) + 80) - 8,
            -(k - 5) * (k - 2) * k * (2 * k - 1) * (3 * k - 4) * (3 * k - 1),
        ],
        13: lambda: _quad(3 * k * (3 * k - 1), -((k + 1) ** 2), -3 * (k - 3)),
        14: lambda: _quad((k - 5) * (k - 2) * k * (3 * k - 1), -2 * _h(k), -(k - 3) * (2 * k - 1) * (5 * k - 1)),
        15: lambda: [
            (k - 3) * (2 * k - 1) * (5 * k - 4) * (5 * k - 1),
            k * (5 * k * (k * (4 * k * (k**2 + 4) - 91) + 84) - 73) - 16,
            -(k * (k * (k * (k * (k * (82 * k - 329) + 246) + 341) - 404) + 84) + 4),
            (k - 5) * (k - 2) ** 2 * k * (3 * k - 1) * (4 * k - 3),
        ],
        16: lambda: _quad(3 * k, -(k + 1), 3),
        17: lambda: _lin((k - 5) * k, 1 - 5 * k),
        18: lambda: _quad((k - 5) * k * (2 * k - 1) * (3 * k - 4), -(k * (k * (51 * k - 98) + 35) + 4),
                          k * ((71 - 30 * k) * k - 43) + 6),
        19: lambda: [
            (2 * k - 3) * (3 * k - 2) * (5 * k - 4) * (5 * k - 1),
            (5 * k - 4) * (k * (k * (k * (6 * k + 59) - 125) + 40) + 8),
            -(2 * k - 1) * (3 * k - 4) * (k * (k * (10 * k * (2 * k - 3) - 49) + 45) + 2),
            (k - 5) * (k - 2) * k * (2 * k - 1) * (3 * k - 4) * (4 * k - 3),
        ],
        20: lambda: _quad(3 * k * (2 * k - 1) * (3 * k - 1) * (4 * k - 3), (k + 1) ** 2 * (2 * k - 1),
                          (9 - 2 * k) * k - 9),
        21: lambda: [
            -(k - 3) * k**2 * (2 * k - 3) * (3 * k - 2) * (3 * k + 2),
            (3 * k - 2) * (k * (k * (k * (k * (k * (2 * k - 153) + 894) - 1625) + 1234) - 444) + 48),
            -(3 * k - 2) * (k * (k * (k * (k * (k * (2 * k * (36 * k - 77) + 337) - 1899) + 3376) - 2038) + 312) + 64),
            2 * (k * (k * (k * (k * (k * (4 * k * (9 * k * (28 * k - 123) + 1928) - 4375) - 3482) + 5733) - 2528)
                      + 324) + 16),
            k * (k * (k * (k * (k * (6 * k * (12 * k * (16 * k - 17) - 877) + 15977) - 19731) + 12594) - 3976) + 480),
            k**3 * (2 * k - 1) * (3 * k - 2) * (k * (k * (144 * k - 157) + 34) - 1),
            3 * k**4 * (2 * k - 1) * (3 * k - 2) * (3 * k - 1) * (4 * k - 3),
        ],
    }


def named_polynomial(index: int, k) -> Polynomial:
    """``P_{index,k}`` for ``index`` in 0..21."""
    k = _k(k)
    table = _P(k)
    if index not in table:
        raise KeyError(f"no polynomial P_{index}")
    return Polynomial(table[index](), f"P{index}")


def quartic_coefficients(k):
    """``(A, B, C, D, E)`` of the quartic ``A x^4 + B x^3 + C x^2 + D x + E``."""
    k = _k(k)
    A = (k - 5) * (k - 2) ** 2 * k * (2 * k - 1) * (3 * k - 4) * (3 * k - 1) * (4 * k - 3)
    B = -2 * (2 * k - 1) * (3 * k - 4) * (k * (k * (k * (2 * k * (k * (39 * k - 179) + 235) - 89) - 118) + 35) - 2)
    C = (3 * k - 4) * (k * (k * (k * (5 * k * (k * (2 * k * (24 * k - 61) + 177) - 366) + 2034) - 930) + 201) - 38)
    D = -2 * (3 * k - 2) * (5 * k - 4) * (k * (k * (k * (k * (2 * k - 19) + 88) - 75) - 38) + 26)
    E = (k - 3) * (2 * k - 3) * (2 * k - 1) * (3 * k - 2) * (5 * k - 4) * (5 * k - 1)
    return A, B, C, D, E


def quartic(k) -> Polynomial:
    A, B, C, D, E = quartic_coefficients(k)
    return Polynomial([E, D, C, B, A], "quartic")


Q1 = Polynomial.from_high([2, -153, 894, -1625, 1234, -444, 48], "q1")
Q2 = Polynomial.from_high([
    177586560, -1447424208, 5969663136, -29387373904, 129626832188, -293774330511,
    102470736381, 1027573184492, -2645532232771, 3259827826136, -2344796073539,
    997977148820, -227233713561, 15757275163, 3311923726, -563207524, 11249208, 19744,
], "q2")
Q3 = Polynomial.from_high([862, -4831, 8308, -5186, 974, 1], "q3")
K6_POLY = Polynomial.from_high([240, -610, 885, -1830, 2034, -930, 201, -38], "k6")
DISC_M = Polynomial.from_high([
    32400, -189990, 503307, -781069, 742059, -352440, -84219, 253647, -161955, 28332,
    22032, -15336, 3296,
], "M")
DISC_N = Polynomial(Q2.coeffs, "N")

NAMED = {"q1": Q1, "q2": Q2, "q3": Q3, "k6": K6_POLY, "M": DISC_M, "N": DISC_N}
