"""The irrational breakpoints k0..k6 and exact membership tests for unions of
k-intervals whose endpoints mix rationals and those breakpoints."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .polynomials import K6_POLY, Q1, Q2, Q3, Polynomial
from .sturm import count_real_roots

F = Fraction


@dataclass(frozen=True)
class IsolatedRoot:
    """A simple real root of ``poly`` known to lie in ``(lo, hi)``."""

    name: str
    poly: Polynomial
    lo: Fraction
    hi: Fraction

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def compare(self, k) -> int:
        """Exact sign of ``k - root`` for rational ``k``; floats are
        converted exactly. Returns 0 only if ``k`` is the root itself."""
        k = Fraction(k)
        if k <= self.lo:
            return -1
        if k >= self.hi:
            return 1
        pk = self.poly(k)
        if pk == 0:
            return 0
        plo = self.poly(self.lo)
        # same sign as at lo means k sits between lo and the root
        return -1 if (pk > 0) == (plo > 0) else 1

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class RegionConstants:
    k0: IsolatedRoot
    k1: IsolatedRoot
    k2: IsolatedRoot
    k3: IsolatedRoot
    k4: IsolatedRoot
    k5: IsolatedRoot
    k6: IsolatedRoot

    def __getitem__(self, name: str) -> IsolatedRoot:
        return getattr(self, name)

    def values(self) -> dict[str, float]:
        return {f"k{i}": self[f"k{i}"].value for i in range(7)}


_SOURCES = {
    "k0": (Q2, F(0), F(1, 5)),
    "k1": (Q1, F(0), F(1, 5)),
    "k2": (Q2, F(1, 5), F(1, 3)),
    "k3": (Q2, F(3, 2), F(2)),
    "k4": (Q3, F(3), F(4)),
    "k5": (Q2, F(3), F(4)),
    "k6": (K6_POLY, F(3, 4), F(4, 5)),
}


def _isolate(name) -> IsolatedRoot:
    poly, lo, hi = _SOURCES[name]
    iso = count_real_roots(poly, (lo, hi))
    if iso.count != 1 or not iso.simple:
        raise ArithmeticError(f"{name}: expected one simple root of {poly.name} in ({lo}, {hi}), found {iso.count}")
    a, b = iso.intervals[0]
    return IsolatedRoot(name, poly, a, b)


@lru_cache(maxsize=1)
def region_constants() -> RegionConstants:
    """Certified enclosures (width <= 1e-12) of k0..k6."""
    return RegionConstants(**{name: _isolate(name) for name in _SOURCES})


# ---------------------------------------------------------------------------
# intervals over k


def _endpoint(e):
    if isinstance(e, str):
        if e == "inf":
            return math.inf
        return region_constants()[e]
    return e


def _cmp(k, e) -> int:
    """Exact sign of ``k - e``."""
    e = _endpoint(e)
    if isinstance(e, IsolatedRoot):
        return e.compare(k)
    if e == math.inf:
        return -1
    e = Fraction(e)
    kk = Fraction(k)
    return (kk > e) - (kk < e)


@dataclass(frozen=True)
class KInterval:
    """Interval in k with endpoints given as rationals, ``"inf"`` or a
    breakpoint name ``"k0"``..``"k6"``."""

    lo: object
    hi: object
    lo_closed: bool = False
    hi_closed: bool = False

    def __contains__(self, k) -> bool:
        c_lo = _cmp(k, self.lo)
        c_hi = _cmp(k, self.hi)
        return (c_lo > 0 or (c_lo == 0 and self.lo_closed)) and (c_hi < 0 or (c_hi == 0 and self.hi_closed))

    def sample_points(self, n: int = 3) -> list[float]:
        """``n`` interior points, evenly placed (unbounded intervals are cut at lo+3)."""
        lo = float(_endpoint(self.lo))
        hi = _endpoint(self.hi)
        hi = lo + 3.0 if hi == math.inf else float(hi)
        return [lo + (hi - lo) * (i + 1) / (n + 1) for i in range(n)]

    def __str__(self):
        def fmt(e):
            return "∞" if e == "inf" else str(e)

        if self.lo == self.hi:
            return "{" + fmt(self.lo) + "}"
        return f"{'[' if self.lo_closed else '('}{fmt(self.lo)},{fmt(self.hi)}{']' if self.hi_closed else ')'}"


def point(v) -> KInterval:
    return KInterval(v, v, True, True)


def parse_interval(text: str) -> KInterval:
    """Parse ``"(1/2,2/3]"``, ``"{1}"`` or ``"(k5,inf)"``."""
    text = text.strip()
    if text.startswith("{"):
        return point(_parse_end(text[1:-1]))
    lo, hi = text[1:-1].split(",")
    return KInterval(_parse_end(lo), _parse_end(hi), text[0] == "[", text[-1] == "]")


def _parse_end(s: str):
    s = s.strip()
    if s in ("inf", "∞"):
        return "inf"
    if s.startswith("k"):
        return s
    return Fraction(s)


@dataclass(frozen=True)
class KRegion:
    """Finite union of :class:`KInterval`, optionally minus some points."""

    parts: tuple
    excluded: tuple = ()

    @classmethod
    def parse(cls, text: str, excluded=()) -> "KRegion":
        pieces = [p.strip() for p in text.split("U")]
        return cls(tuple(parse_interval(p) for p in pieces), tuple(_parse_end(str(e)) for e in excluded))

    def __contains__(self, k) -> bool:
        if any(_cmp(k, e) == 0 for e in self.excluded):
            return False
        return any(k in part for part in self.parts)

    def sample_points(self, n: int = 3) -> list[float]:
        pts = []
        for part in self.parts:
            if part.lo == part.hi:
                pts.append(float(_endpoint(part.lo)))
            else:
                pts.extend(p for p in part.sample_points(n) if p in self)
        return pts

    def __str__(self):
        s = "∪".join(str(p) for p in self.parts)
        if self.excluded:
            s += "∖{" + ",".join(str(e) for e in self.excluded) + "}"
        return s
