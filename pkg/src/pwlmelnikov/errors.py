"""Exception types raised across the package."""


class PwlMelnikovError(Exception):
    """Base class for all package errors."""


class NonPositiveRadius(PwlMelnikovError, ValueError):
    pass


class OnSwitchingManifold(PwlMelnikovError, ValueError):
    pass


class InvalidExponent(PwlMelnikovError, ValueError):
    pass


class OrderUnsupported(PwlMelnikovError, ValueError):
    pass


class QuadratureFailure(PwlMelnikovError, RuntimeError):
    pass


class VanishingConditionViolated(PwlMelnikovError, ValueError):
    pass


class NotTabulated(PwlMelnikovError, KeyError):
    pass


class DegenerateZeroPolynomial(PwlMelnikovError, ValueError):
    pass


class DegenerateK(PwlMelnikovError, ValueError):
    pass


class UncertifiedWronskianSign(PwlMelnikovError, RuntimeError):
    pass


class RankDeficiency(PwlMelnikovError, RuntimeError):
    pass


class VerificationFailure(PwlMelnikovError, RuntimeError):
    pass


class NoCrossingFound(PwlMelnikovError, RuntimeError):
    pass


class TangencyDetected(PwlMelnikovError, RuntimeError):
    pass


class NotInImage(PwlMelnikovError, ValueError):
    pass
