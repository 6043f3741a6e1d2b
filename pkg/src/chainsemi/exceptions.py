"""Exception hierarchy shared by every module of the package."""


class ChainSemiError(ValueError):
    """Base class for all errors raised by chainsemi."""


class OutOfRange(ChainSemiError):
    pass


class DuplicatePoint(ChainSemiError):
    pass


class SizeMismatch(ChainSemiError):
    pass


class EmptyDomain(ChainSemiError):
    pass


class IdOutOfRange(ChainSemiError):
    pass


class BudgetExceeded(ChainSemiError):
    """The requested computation is larger than the configured budget."""


class FamilyUnsupported(ChainSemiError):
    pass


class HypothesisNotMet(ChainSemiError):
    """Input does not satisfy the precondition of the statement being checked."""


class NotMember(ChainSemiError):
    pass


class HeightTooSmall(ChainSemiError):
    pass


class NotIdempotent(ChainSemiError):
    pass


class NotStronglyRegular(ChainSemiError):
    pass


class CacheFormatError(ChainSemiError):
    pass
