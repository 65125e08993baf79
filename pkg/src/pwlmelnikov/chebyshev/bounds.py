"""Upper bounds for the number of zeros in the span of an ordered family,
from the zero counts of its Wronskians.

Three rules, in increasing generality:

* every Wronskian nonvanishing: the family is an ECT-system, at most ``n``
  zeros and every configuration of ``n`` zeros is realized;
* only the last Wronskian vanishes, once and simply: at most ``n + 1`` zeros,
  every configuration realized (accuracy one);
* otherwise ``n + nu_n + nu_{n-1} + 2 (nu_{n-2} + ... + nu_0) + mu_{n-1} + ...
  + mu_3`` with ``mu_i = min(2 nu_i, nu_{i-3} + ... + nu_0)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateK, NotTabulated, UncertifiedWronskianSign
from .families import OrderedFamily, family as lookup_family
from .wronskian import closed_wronskian, wronskian_numeric

DEFAULT_WINDOW = (0.1, 10.0)


@dataclass(frozen=True)
class WronskianZeros:
    j: int
    count: int  # with multiplicity
    distinct: int
    source: str  # "closed" or "numeric"


@dataclass(frozen=True)
class ZeroCountBound:
    family: str
    k: object
    basis: tuple
    zeros: tuple  # WronskianZeros per j
    lower: int
    upper: int
    rule: str  # "ECT", "accuracy-one" or "general"

    @property
    def nus(self) -> tuple[int, ...]:
        return tuple(z.count for z in self.zeros)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self):
        return self.upper if self.exact else (self.lower, self.upper)

    def __str__(self):
        v = str(self.upper) if self.exact else f"[{self.lower},{self.upper}]"
        return f"Z({self.family}, k={self.k}) {v} via {self.rule}, nu={list(self.nus)}"


def general_bound(nus) -> int:
    """The bound for arbitrary Wronskian zero counts ``nu_0..nu_n``."""
    nus = list(nus)
    n = len(nus) - 1
    if n == 0:
        return nus[0]
    total = n + nus[n] + nus[n - 1] + 2 * sum(nus[: n - 1])
    for i in range(3, n):
        total += min(2 * nus[i], sum(nus[: i - 2]))
    return total


def bound_from_nus(nus, simple_last: bool = True) -> tuple[int, int, str]:
    """``(lower, upper, rule)`` for Wronskian zero counts ``nu_0..nu_n``.

    The lower value is ``n`` unless only the last Wronskian vanishes with
    simple zeros, in which case it is ``n + 1`` (one extra zero is always
    realizable then); upper follows the three rules in the module docstring.
    """
    nus = list(nus)
    n = len(nus) - 1
    if not any(nus):
        return n, n, "ECT"
    only_last = not any(nus[:-1])
    if only_last and nus[-1] == 1 and simple_last:
        return n + 1, n + 1, "accuracy-one"
    lower = n + 1 if (only_last and simple_last) else n
    return lower, general_bound(nus), "general"


def _numeric_zero_count(fam: OrderedFamily, j: int, window, samples: int, digits: int) -> int:
    lo, hi = window
    xs = np.geomspace(lo, hi, samples)
    w = wronskian_numeric(fam, j, xs, digits=digits)
    if not np.any(w):
        raise DegenerateK(f"W_{j} of {fam.label()} vanishes identically")
    s = np.sign(w)
    if np.any(s == 0):
        raise UncertifiedWronskianSign(f"W_{j} of {fam.label()} hits zero on a grid point")
    a = np.abs(w)
    # an interior local minimum of |W| far below its neighbours without a
    # sign change may hide a double zero
    inner = (a[1:-1] < a[:-2]) & (a[1:-1] < a[2:]) & (s[:-2] == s[2:])
    if np.any(inner & (a[1:-1] < 1e-6 * np.maximum(a[:-2], a[2:]))):
        raise UncertifiedWronskianSign(f"W_{j} of {fam.label()} nearly touches zero")
    _check_tails(fam, j, window, digits, s[0], s[-1])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _check_tails(fam, j, window, digits, s_lo, s_hi):
    """Outside the window the Wronskian must behave like a single power:
    constant sign and a stable log-log slope over two decades."""
    lo, hi = window
    for pts, s_end in ((np.array([lo / 100, lo / 10, lo]), s_lo), (np.array([hi, hi * 10, hi * 100]), s_hi)):
        w = wronskian_numeric(fam, j, pts, digits=digits)
        if np.any(np.sign(w) != s_end):
            raise UncertifiedWronskianSign(f"W_{j} of {fam.label()} changes sign outside {window}")
        slopes = np.diff(np.log(np.abs(w))) / np.diff(np.log(pts))
        if abs(slopes[1] - slopes[0]) > 0.05 * abs(slopes[0]) + 0.05:
            raise UncertifiedWronskianSign(f"W_{j} of {fam.label()} not in its power-law regime at the window edge")


def wronskian_zero_counts(fam: OrderedFamily, window=DEFAULT_WINDOW, samples: int = 240,
                          digits: int = 30) -> tuple[WronskianZeros, ...]:
    """Zeros on ``(0, inf)`` of each Wronskian: exact from the closed form when
    one is tabulated, otherwise a certified sign scan on ``window``."""
    out = []
    for j in range(fam.size):
        try:
            cw = closed_wronskian(fam, j)
        except NotTabulated:
            c = _numeric_zero_count(fam, j, window, samples, digits)
            out.append(WronskianZeros(j, c, c, "numeric"))
            continue
        distinct, mult = cw.zero_count(fam.k)
        out.append(WronskianZeros(j, mult, distinct, "closed"))
    return tuple(out)


def zero_count_bound(fam, k=None, window=DEFAULT_WINDOW) -> ZeroCountBound:
    """Bound on the number of zeros of any element of the span of ``fam``."""
    if isinstance(fam, str):
        fam = lookup_family(fam, k)
    zeros = wronskian_zero_counts(fam, window)
    simple_last = zeros[-1].count == zeros[-1].distinct
    lower, upper, rule = bound_from_nus([z.count for z in zeros], simple_last)
    return ZeroCountBound(fam.name, fam.k, fam.basis, zeros, lower, upper, rule)
