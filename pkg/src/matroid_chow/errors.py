"""Exception hierarchy shared by every module."""


class ChowError(Exception):
    """Base class for all errors raised by this package."""


class InvalidMatroid(ChowError):
    pass


class EmptyBases(InvalidMatroid):
    pass


class UnequalBasisSizes(InvalidMatroid):
    pass


class ExchangeAxiomViolated(InvalidMatroid):
    pass


class LoopDetected(InvalidMatroid):
    pass


class InvalidRank(InvalidMatroid):
    pass


class EmptyGroundSet(ChowError):
    pass


class ElementNotInGroundSet(ChowError):
    pass


class NotAFlat(ChowError):
    pass


class NotAProperFlat(ChowError):
    pass


class GroundSetTooSmall(ChowError):
    pass


class FlatNotInS(ChowError):
    pass


class RingMismatch(ChowError):
    pass


class WrongDegree(ChowError):
    pass


class RayNotInFan(ChowError):
    pass


class FanNotComplete(ChowError):
    pass


class SearchExhausted(ChowError):
    pass


class NotCertifiedConvex(ChowError):
    pass


class DegenerateForm(ChowError):
    pass


class ParseError(ChowError):
    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message if offset is None else f"{message} (byte offset {offset})")
        self.offset = offset
