"""Exception hierarchy.

``NumericError`` and ``DataError`` split the failures the CLI maps to exit
codes 4 and 3 respectively.
"""


class BsmlsError(Exception):
    pass


class NumericError(BsmlsError):
    pass


class DataError(BsmlsError):
    pass


class OrderOutOfRangeError(NumericError, ValueError):
    """Spline order outside ``1 <= r <= n + 1``."""


class IndexOutOfRangeError(NumericError, IndexError):
    """Basis index pair (i, j) outside the knot vector."""


class DomainError(NumericError, ValueError):
    """Evaluation parameter outside the curve or surface domain."""


class UnsupportedOrderError(NumericError, ValueError):
    """Derivative order at or above the spline order."""


class ZeroWeightError(NumericError, ZeroDivisionError):
    """Reciprocal weight requested where W(s) = 0."""


class RankDeficiencyError(NumericError):
    """Active rows of E do not have full column rank."""


class SingularNormalMatrixError(NumericError):
    """E^t D^-1 E is numerically singular."""


class UnsupportedBaseError(NumericError, ValueError):
    """Interpolatory shift requested for a base weight it does not apply to."""


class GridTooCoarseError(NumericError):
    """Brute-force search landed on the boundary of its coefficient box."""


class UnknownDatasetError(DataError, KeyError):
    pass


class MalformedRowError(DataError):
    def __init__(self, line: int, text: str, reason: str = "malformed row"):
        super().__init__(f"line {line}: {reason}: {text!r}")
        self.line = line


class NonUniformNodesError(DataError):
    pass


class DuplicateNodeError(DataError):
    pass


class EmitError(DataError):
    pass
