"""Exception types raised across the library."""


class SagDbscanError(Exception):
    """Base class for every error raised by this package."""


# --- dataset loading / generation ---------------------------------------

class ParseError(SagDbscanError):
    """A CSV cell could not be parsed; message carries row/column."""


class NonFiniteValue(SagDbscanError):
    """A dataset cell parsed to NaN or infinity."""


class RaggedRows(SagDbscanError):
    """CSV rows do not all have the same number of columns."""


class InvalidSpread(SagDbscanError):
    """Blob generator called with a non-positive spread."""


class TooFewPoints(SagDbscanError):
    """Generator asked for fewer points than the shape supports."""


class IoError(SagDbscanError):
    """Reading or writing a file failed at the OS level."""


class MissingLabels(SagDbscanError):
    """An operation that needs ground-truth labels got a dataset without them."""


# --- grey relational degree ----------------------------------------------

class DimensionMismatch(SagDbscanError):
    """The two vectors have different lengths."""


class NonFiniteInput(SagDbscanError):
    """An input vector contains NaN or infinity."""


# --- density / dense subset ----------------------------------------------

class KOutOfRange(SagDbscanError):
    """Neighbor count k outside [1, n-1]."""


class TooFewObjects(SagDbscanError):
    """Not enough objects for the requested operation."""


class SplitOutOfRange(SagDbscanError):
    """Split candidate outside the admissible range [10, n-5]."""


# --- DBSCAN / pipeline -----------------------------------------------------

class InvalidParameter(SagDbscanError):
    """A numeric parameter violates its precondition."""


class SubsetTooSmall(SagDbscanError):
    """Dense subset has fewer than m+1 members, so no m-th neighbor exists."""


class SubsetDegenerate(SagDbscanError):
    """Automatic radius collapsed to zero (duplicate points)."""


class DegenerateDenseSubset(SagDbscanError):
    """Pipeline produced a dense subset too small to cluster."""


class NoLabeledSeed(SagDbscanError):
    """Remainder assignment called with no labeled object at all."""


# --- metrics / plotting ----------------------------------------------------

class LengthMismatch(SagDbscanError):
    """Prediction and ground truth have different lengths."""


class NotTwoDimensional(SagDbscanError):
    """Scatter plotting requires exactly two features."""
