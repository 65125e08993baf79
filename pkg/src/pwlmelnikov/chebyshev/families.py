"""Ordered families of basis functions.

``G0``..``G11`` have fixed orderings. ``F1`` and ``F2`` reorder the span of
``G8`` and ``G9`` depending on where ``k`` lies, so that the Wronskian
sequence has as few zeros as possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import DegenerateK
from .basis import u
from .regions import KRegion

FAMILY_BASES: dict[str, tuple[int, ...]] = {
    "G0": (1,),
    "G1": (0, 1),
    "G2": (8, 11, 1),
    "G3": (0, 2, 8),
    "G4": (11, 8, 1, 2),
    "G5": (2, 5, 4, 0, 1, 6, 7, 9),
    "G6": (6, 0, 1, 10, 12),
    "G7": (5, 6, 3, 1, 10, 12),
    "G8": (1, 6, 10, 12, 3),
    "G9": (0, 1, 6, 5, 3, 10, 12),
    "G10": (0, 1, 13),
    "G11": (1, 3),
}

# k at which a family is defined when it is not a k-family
FIXED_K = {"G6": Fraction(2), "G7": Fraction(2, 3)}

F1_CASES = (
    (1, KRegion.parse("(1,5)"), (1, 6, 10, 12, 3)),
    (2, KRegion.parse("[5,inf)"), (1, 3, 10, 12, 6)),
)

F2_CASES = (
    (1, KRegion.parse("(k4,k5) U (k5,4]"), (5, 6, 3, 0, 1, 10, 12)),
    (2, KRegion.parse("(3/4,4/5]"), (5, 6, 3, 1, 10, 12, 0)),
    (3, KRegion.parse("(1/2,2/3) U (2/3,3/4) U (4/3,3/2)"), (6, 3, 1, 10, 12, 0, 5)),
    (4, KRegion.parse("(1/5,1/3) U (4/5,4/3] U (3/2,2)", excluded=("k2", 1, "k3")), (6, 1, 10, 12, 5, 0, 3)),
    (5, KRegion.parse("(k1,1/5) U (2,3)"), (5, 3, 0, 1, 10, 12, 6)),
    (6, KRegion.parse("(1/3,1/2) U (4,5]"), FAMILY_BASES["G9"]),
)

FAMILY_NAMES = tuple(FAMILY_BASES) + ("F1", "F2")


def reordering_case(name: str, k) -> int:
    """Which case of the ``F1``/``F2`` reordering applies at ``k``."""
    cases = F1_CASES if name == "F1" else F2_CASES
    for case, region, _ in cases:
        if k in region:
            return case
    raise DegenerateK(f"{name} has no ordering for k={k}")


@dataclass(frozen=True)
class OrderedFamily:
    name: str
    k: object
    basis: tuple[int, ...]
    case: int | None = None

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        """Index of the last function (the family spans ``n+1`` functions)."""
        return len(self.basis) - 1

    def functions(self):
        kf = float(self.k)
        return [lambda x, i=i: u(i, kf, x) for i in self.basis]

    def combination(self, coeffs, x):
        x = np.asarray(x, dtype=float)
        return sum(c * u(i, float(self.k), x) for c, i in zip(coeffs, self.basis))

    def label(self) -> str:
        base = f"{self.name}(k={self.k})"
        return base + (f" case {self.case}" if self.case is not None else "")


def family(name: str, k=None) -> OrderedFamily:
    """Look up an ordered family at parameter ``k``."""
    if name in FIXED_K:
        if k is not None and Fraction(k) != FIXED_K[name]:
            raise DegenerateK(f"{name} is only defined at k={FIXED_K[name]}")
        return OrderedFamily(name, FIXED_K[name], FAMILY_BASES[name])
    if k is None:
        raise ValueError(f"{name} needs a value of k")
    if k <= 0:
        raise DegenerateK("k must be positive")
    if name in FAMILY_BASES:
        return OrderedFamily(name, k, FAMILY_BASES[name])
    if name in ("F1", "F2"):
        case = reordering_case(name, k)
        cases = F1_CASES if name == "F1" else F2_CASES
        basis = next(b for c, _, b in cases if c == case)
        return OrderedFamily(name, k, basis, case)
    raise KeyError(f"unknown family {name!r}")
