"""Exception types raised by the toolkit.

Every error carries a short machine-readable ``code`` that the command line
front end prints as ``error[CODE]: message``.
"""


class ReliabilityError(ValueError):
    """Base class for all data and validation errors."""

    code = "DATA"


class RaggedRowError(ReliabilityError):
    code = "RAGGED_ROW"


class NonNumericCellError(ReliabilityError):
    code = "NON_NUMERIC_CELL"


class TooFewRespondentsError(ReliabilityError):
    code = "TOO_FEW_RESPONDENTS"


class DuplicateLabelError(ReliabilityError):
    code = "DUPLICATE_LABEL"


class LengthMismatchError(ReliabilityError):
    code = "LENGTH_MISMATCH"


class DegenerateInstanceError(ReliabilityError):
    code = "DEGENERATE_INSTANCE"


class CountOutOfRangeError(ReliabilityError):
    code = "COUNT_OUT_OF_RANGE"


class PositionOutOfRangeError(ReliabilityError):
    code = "POSITION_OUT_OF_RANGE"


class InstanceTooLargeError(ReliabilityError):
    code = "INSTANCE_TOO_LARGE"


class ZeroTotalVarianceError(ReliabilityError):
    code = "ZERO_TOTAL_VARIANCE"


class SingleItemError(ReliabilityError):
    code = "SINGLE_ITEM"


class ConstantHalfError(ReliabilityError):
    code = "CONSTANT_HALF"


class ConfigError(ReliabilityError):
    code = "CONFIG"


class NonConvergenceWarning(RuntimeWarning):
    """An iterative estimator stopped at ``max_iter`` before meeting ``tol``."""
