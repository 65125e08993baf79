"""Sign analysis of the quartic ``A x^4 + B x^3 + C x^2 + D x + E`` that
governs the last Wronskian of the seven-function family."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import DegenerateK
from .polynomials import DISC_M, DISC_N, quartic, quartic_coefficients
from .regions import KRegion
from .sturm import count_real_roots, descartes_bound

DEGENERATE_K = (Fraction(1), Fraction(2, 3), Fraction(2))


def quartic_discriminant(a, b, c, d, e):
    """Discriminant of ``a x^4 + b x^3 + c x^2 + d x + e``."""
    return (256 * a**3 * e**3 - 192 * a**2 * b * d * e**2 - 128 * a**2 * c**2 * e**2
            + 144 * a**2 * c * d**2 * e - 27 * a**2 * d**4 + 144 * a * b**2 * c * e**2
            - 6 * a * b**2 * d**2 * e - 80 * a * b * c**2 * d * e + 18 * a * b * c * d**3
            + 16 * a * c**4 * e - 4 * a * c**3 * d**2 - 27 * b**4 * e**2 + 18 * b**3 * c * d * e
            - 4 * b**3 * d**3 - 4 * b**2 * c**3 * e + b**2 * c**2 * d**2)


def factored_discriminant(k):
    """The factorization of the quartic's discriminant in ``k``."""
    return (-192 * (4 - 3 * k) ** 2 * (k - 1) ** 12 * (2 * k - 1) * (3 * k - 2) * (5 * k - 4)
            * DISC_M(k) * DISC_N(k))


def _sign(v) -> int:
    return (v > 0) - (v < 0)


# stated positive-root counts of the quartic, by k-range
STATED_COUNTS = (
    (KRegion.parse("(k0,1/5) U (k5,5)"), 1),
    (KRegion.parse("(1/5,k2) U (3/2,k3)"), 0),
    (KRegion.parse("(k2,1/3) U (k3,2) U (2,3)"), 2),
    (KRegion.parse("(0,k0) U (3,k5)"), 3),
    (KRegion.parse("{2} U {5}"), 1),
    (KRegion.parse("(5,inf)"), 2),
    # ranges settled by the rule of signs alone
    (KRegion.parse("[2/3,3/4) U [4/5,1) U (1,4/3]"), 0),
    (KRegion.parse("(1/3,1/2) U (1/2,2/3) U (3/4,4/5) U (4/3,3/2)"), 1),
)


def stated_count(k) -> int | None:
    for region, count in STATED_COUNTS:
        if k in region:
            return count
    return None


@dataclass(frozen=True)
class QuarticAnalysis:
    k: object
    discriminant_sign: int
    coefficient_signs: tuple
    positive_roots: int
    simple: bool
    descartes: int
    stated: int | None

    @property
    def consistent(self) -> bool:
        """Count agrees with the rule of signs (bound and parity) and with
        the stated count where one exists."""
        ok = self.positive_roots <= self.descartes and (self.descartes - self.positive_roots) % 2 == 0
        return ok and (self.stated is None or self.stated == self.positive_roots)


def quartic_sign_analysis(k) -> QuarticAnalysis:
    """Discriminant sign, coefficient signs and certified positive-root count."""
    if k <= 0:
        raise DegenerateK("k must be positive")
    if not isinstance(k, float) and Fraction(k) in DEGENERATE_K:
        raise DegenerateK(f"the quartic drops degree at k={k}")
    coeffs = quartic_coefficients(k)
    iso = count_real_roots(quartic(k), (0, None))
    return QuarticAnalysis(
        k=k,
        discriminant_sign=_sign(factored_discriminant(k)),
        coefficient_signs=tuple(_sign(c) for c in coeffs),
        positive_roots=iso.count,
        simple=iso.simple,
        descartes=descartes_bound(coeffs),
        stated=stated_count(k),
    )
