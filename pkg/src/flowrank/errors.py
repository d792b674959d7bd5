"""Exception hierarchy.

Every error raised on bad input derives from :class:`FlowRankError`, which is
itself a :class:`ValueError` so callers that only care about "bad argument"
can catch that.
"""

from __future__ import annotations


class FlowRankError(ValueError):
    pass


class MalformedInputError(FlowRankError):
    pass


class ParseError(MalformedInputError):
    """Input text could not be parsed; ``line`` is 1-based (0 when unknown)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class DomainTooSmallError(FlowRankError):
    pass


class UnknownVertexError(FlowRankError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class InvalidPermutationError(FlowRankError):
    pass


class IncompatibleNetworksError(FlowRankError):
    pass


class CapacityOverflowError(FlowRankError, OverflowError):
    pass


class InvalidPairError(FlowRankError):
    pass


class InvalidCutError(FlowRankError):
    pass


class OracleTooLargeError(FlowRankError):
    pass


class InvalidRestrictionError(FlowRankError):
    pass


class EnumerationLimitError(FlowRankError):
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"enumeration exceeded the limit of {limit} items")


class InfeasibleForcingError(FlowRankError):
    pass


class NotQuasiAcyclicError(FlowRankError):
    pass


class InvalidKError(FlowRankError):
    pass


class InvalidSpecError(FlowRankError):
    pass


class NotApplicableError(FlowRankError):
    pass


class InvalidSuiteError(FlowRankError):
    pass
