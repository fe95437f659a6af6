class SignedEngelError(ValueError):
    """Base class for every error raised by the sengel package."""


class ZeroDenominator(SignedEngelError):
    pass


class ParseError(SignedEngelError):
    pass


class OutOfDomain(SignedEngelError):
    pass


class PrecisionExhausted(SignedEngelError):
    """Too few digits could be certified for the requested computation."""


class IndexOutOfRange(SignedEngelError):
    pass


class EmptyExpansion(SignedEngelError):
    pass


class Malformed(SignedEngelError):
    pass


class NotAdmissible(SignedEngelError):
    pass


class OddFinalDigit(SignedEngelError):
    """The cylinder of a sequence ending in an odd digit is a single point."""


class ExpansionTooShort(SignedEngelError):
    pass


class OddDigitAtN(SignedEngelError):
    pass


class SaturatedBatch(SignedEngelError):
    """Too many trajectories were dropped at the state cap."""
