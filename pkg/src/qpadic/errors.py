"""Exception types shared across the package."""


class QPadicError(Exception):
    """Base class for all package-specific errors."""


class InsufficientPrecision(QPadicError):
    """A comparison or normalization needed digits beyond the stored precision."""


class ZeroAtPrecisionError(QPadicError):
    """An operand that must be nonzero is indistinguishable from zero at precision."""

    def __init__(self, abs_precision):
        self.abs_precision = abs_precision
        super().__init__(f"operand is zero at absolute precision {abs_precision}")


class FieldMismatch(QPadicError):
    """Two elements of different fields (or precisions) were combined."""


class FieldTooSmall(QPadicError):
    """The working cyclotomic field does not contain the roots of unity needed."""

    def __init__(self, required_level: int, available_level: int):
        self.required_level = required_level
        self.available_level = available_level
        super().__init__(
            f"operation needs zeta_(p^{required_level}) but the field only has "
            f"zeta_(p^{available_level}); rebuild the field with N >= {required_level}"
        )


class PrecisionOverflow(QPadicError):
    """Requested precision or field size exceeds the configured maximum."""


class WindowCapExceeded(QPadicError):
    """Conservative support/level bounds for an operator exceeded the window cap."""


class UnknownTail(QPadicError):
    """A norm query depends on coefficients beyond the stored range with no tail bound."""

    def __init__(self, message, required_length=None):
        self.required_length = required_length
        super().__init__(message)


class UnsupportedModel(QPadicError):
    """A function-model operation was requested on a model kind that cannot support it."""
