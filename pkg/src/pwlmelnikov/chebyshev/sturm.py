"""Exact real-root counting and isolation with Sturm sequences.

Float coefficients are converted to rationals without rounding, so the count
is exact for the polynomial the floats actually represent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import DegenerateZeroPolynomial
from .polynomials import Polynomial, gcd

DEFAULT_WIDTH = Fraction(1, 10**12)


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    p = p.as_exact()
    seq = [p, p.derivative()]
    while not seq[-1].is_zero:
        rem = seq[-2].divmod(seq[-1])[1]
        if rem.is_zero:
            break
        seq.append(-rem)
    return [s for s in seq if not s.is_zero]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _sign_at(p: Polynomial, x) -> int:
    """Sign of p at x; ``x`` may be +-inf."""
    if x == math.inf or x == -math.inf:
        if p.degree <= 0:
            return _sign(p.coeffs[0])
        s = _sign(p.leading)
        return s if (x > 0 or p.degree % 2 == 0) else -s
    return _sign(p(x))


def _variations(seq, x) -> int:
    signs = [s for s in (_sign_at(p, x) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _as_bound(x):
    if x is None:
        return None
    if isinstance(x, float):
        if math.isinf(x):
            return x
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class RootIsolation:
    """Distinct real roots of a polynomial in ``(lo, hi]``.

    ``intervals[i]`` is an isolating interval ``(a, b)`` of rational
    endpoints containing exactly one root, whose multiplicity is
    ``multiplicities[i]``.
    """

    count: int
    intervals: list = field(default_factory=list)
    multiplicities: list = field(default_factory=list)

    @property
    def count_with_multiplicity(self) -> int:
        return sum(self.multiplicities)

    @property
    def simple(self) -> bool:
        return all(m == 1 for m in self.multiplicities)

    def midpoints(self) -> list[float]:
        return [float((a + b) / 2) for a, b in self.intervals]


def count_in(seq, lo, hi) -> int:
    """Number of distinct roots in ``(lo, hi]`` for a Sturm sequence."""
    return _variations(seq, lo) - _variations(seq, hi)


def _cauchy_bound(p: Polynomial) -> Fraction:
    lead = abs(Fraction(p.leading))
    return 1 + max(abs(Fraction(c)) for c in p.coeffs[:-1]) / lead if p.degree > 0 else Fraction(1)


def _multiplicity(p: Polynomial, a, b) -> int:
    """Multiplicity of the single root of ``p`` lying in ``(a, b]``."""
    mult, q = 1, gcd(p, p.derivative())
    while q.degree > 0 and count_in(sturm_sequence(square_free_factor(q)), a, b) > 0:
        mult += 1
        q = gcd(q, q.derivative())
    return mult


def count_real_roots(p: Polynomial, interval=(None, None), width=DEFAULT_WIDTH) -> RootIsolation:
    """Count and isolate the distinct real roots of ``p`` in an open interval.

    ``interval`` endpoints may be rationals, floats, ``None`` or +-inf
    (unbounded side). Endpoint roots are excluded. Each returned interval
    has width at most ``width``.
    """
    p = p.as_exact()
    if p.is_zero:
        raise DegenerateZeroPolynomial("zero polynomial has infinitely many roots")
    if p.degree == 0:
        return RootIsolation(0)
    lo, hi = (_as_bound(v) for v in interval)
    bound = _cauchy_bound(p)
    lo = -bound if lo is None or lo == -math.inf else max(lo, -bound)
    hi = bound if hi is None or hi == math.inf else min(hi, bound)
    if lo >= hi:
        return RootIsolation(0)
    full = p
    # Sturm counts are only reliable at multiple roots for a square-free input
    p = square_free_factor(p)
    seq = sturm_sequence(p)
    width = Fraction(width)

    # open interval: drop a root sitting exactly on hi
    def n_in(a, b):
        c = count_in(seq, a, b)
        if p(b) == 0 and b == hi:
            c -= 1
        return c

    found = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        c = n_in(a, b)
        if c == 0:
            continue
        if c == 1:
            found.append(_shrink(p, seq, a, b, width))
            continue
        mid = (a + b) / 2
        if p(mid) == 0:
            # nudge so the midpoint is not a root
            mid = mid + (b - a) / 7
        stack.append((mid, b))
        stack.append((a, mid))
    found.sort()
    mults = [_multiplicity(full, a, b) for a, b in found]
    return RootIsolation(len(found), found, mults)


def _shrink(p, seq, a, b, width):
    """Bisect an interval holding exactly one root down to ``width``."""
    fa, fb = _sign(p(a)), _sign(p(b))
    if fa * fb < 0:
        # odd multiplicity: plain sign bisection is enough
        while b - a > width:
            mid = (a + b) / 2
            fm = _sign(p(mid))
            if fm == 0:
                return (mid - width / 4, mid + width / 4)
            if fm == fa:
                a = mid
            else:
                b = mid
        return (a, b)
    while b - a > width:
        mid = (a + b) / 2
        if p(mid) == 0:
            return (mid - width / 4, mid + width / 4)
        if count_in(seq, a, mid) == 1:
            b = mid
        else:
            a = mid
    return (a, b)


def positive_root_count(p: Polynomial, with_multiplicity: bool = False) -> int:
    iso = count_real_roots(p, (0, None))
    return iso.count_with_multiplicity if with_multiplicity else iso.count


def descartes_bound(coeffs) -> int:
    """Sign changes in a coefficient sequence (zeros skipped)."""
    signs = [_sign(c) for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def square_free_factor(p: Polynomial) -> Polynomial:
    """``p / gcd(p, p')``: same distinct roots, all simple."""
    p = p.as_exact()
    g = gcd(p, p.derivative())
    return p if g.degree <= 0 else p.divmod(g)[0]
