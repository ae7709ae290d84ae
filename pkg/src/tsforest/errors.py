"""Exception types raised across the package.

Everything derives from :class:`TsforestError` so callers can catch the
package's failures with one clause. The subclasses also derive from
``ValueError`` because they all signal bad values handed to an API.
"""


class TsforestError(ValueError):
    """Base class for every error this package raises on purpose."""


class LengthMismatch(TsforestError):
    """Series lengths disagree where a single length is required."""


class InvalidLabel(TsforestError):
    """A class label is missing, non-integer, or outside 1..C."""


class NonFiniteValue(TsforestError):
    """A series value is NaN or infinite."""


class DistributionMismatch(TsforestError):
    """Child class counts do not add up to the parent's counts."""


class InvalidSampleSize(TsforestError):
    """Requested a without-replacement sample larger than the population."""


class IndexOutOfRange(TsforestError):
    """A 1-based time index falls outside 1..M."""


class ParseError(TsforestError):
    """A dataset or model file has a token that cannot be parsed."""


class RaggedRows(TsforestError):
    """Rows of a dataset file have differing numbers of values."""


class EmptyFile(TsforestError):
    """A dataset file contains no data rows."""
