"""Exception hierarchy.

Every error raised by this package derives from ApmetricError, which itself
derives from ValueError so that generic callers can catch bad-input conditions
without importing this module.
"""


class ApmetricError(ValueError):
    """Base class for all apmetric errors."""


class EmptyTableError(ApmetricError):
    """Table has no rows or no columns."""


class RaggedRowsError(ApmetricError):
    """Rows do not all have the same length."""


class NegativeEntryError(ApmetricError):
    """A count is negative."""


class NonIntegerTokenError(ApmetricError):
    """A count is not an integer."""


class ZeroTotalError(ApmetricError):
    """Table sums to zero where a positive total is required."""


class LengthMismatchError(ApmetricError):
    """Paired sequences have different lengths."""


class EmptyInputError(ApmetricError):
    """An input sequence is empty where at least one element is required."""


class InvalidLabelError(ApmetricError):
    """A label value is negative or otherwise unusable."""


class TooFewRowsError(ApmetricError):
    """Operation needs at least two rows."""


class RowTooShortError(ApmetricError):
    """A row needs at least two entries."""


class TooFewColumnsError(ApmetricError):
    """Operation needs at least two columns."""


class AllRowsZeroError(ApmetricError):
    """Every row sums to zero, so no row statistic is defined."""


class TooFewSamplesError(ApmetricError):
    """Pair-based statistics need a total of at least two."""


class NonPositiveBetaError(ApmetricError):
    """The F-measure weight beta must be a positive finite number."""


class InvalidSpecError(ApmetricError):
    """A generation or benchmark specification is out of range."""


class ShapeUnsatisfiableError(ApmetricError):
    """The requested extreme table cannot exist at the requested shape."""


class ZeroVarianceError(ApmetricError):
    """Correlation is undefined because one input has zero variance."""


class InvalidBinsError(ApmetricError):
    """Histogram bin count or value range is unusable."""
