"""
Exception hierarchy for rankpath
Every error raised on bad input or an out-of-domain call derives from RankPathError
"""


class RankPathError(ValueError):
    """Base class for all rankpath errors"""

    kind = "error"


class InvalidPartitionError(RankPathError):
    """Parts are not a weakly decreasing sequence of positive integers"""

    kind = "invalid-partition"


class InvalidWordError(RankPathError):
    """A step word contains letters outside {1,2} / {U,D}"""

    kind = "invalid-word"


class BoxViolationError(RankPathError):
    """A partition does not fit inside the requested m x n box"""

    kind = "box-violation"


class DomainError(RankPathError):
    """A map was applied outside its domain"""

    kind = "domain"


class PreconditionError(RankPathError):
    """Formula or family parameters outside their admissible range"""

    kind = "precondition"


class UnknownNameError(RankPathError):
    """Lookup of an unregistered map, formula or identity name"""

    kind = "unknown-name"


class EnumerationLimitError(RankPathError):
    """An enumeration exceeded the configured cardinality cap"""

    kind = "enumeration-limit"


class IntegralityError(RankPathError, ArithmeticError):
    """A coefficient that must be an integer came out rational"""

    kind = "integrality"
