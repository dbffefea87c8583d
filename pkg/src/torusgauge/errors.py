"""Exception types shared across the package."""


class TorusGaugeError(Exception):
    """Base class for all package errors."""


class DimensionError(TorusGaugeError):
    """Operands live on spaces of incompatible dimension."""


class DegreeError(TorusGaugeError):
    """Form degree is out of range for the requested operation."""


class FrequencyError(TorusGaugeError):
    """A pullback produced a trig frequency that is not an integer vector."""


class ExprSyntaxError(TorusGaugeError):
    """Expression text failed to parse.

    Attributes:
        position: 0-based offset of the offending character.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} (offset {position})")
        self.position = position


class NonRealExpressionError(TorusGaugeError):
    """Parsed expression has a nonvanishing imaginary part."""


class QuantizationError(TorusGaugeError):
    """A flux period that must be an integer is not."""


class PeriodicityError(TorusGaugeError):
    """A gauge exponent fails to descend to the torus."""


class PathError(TorusGaugeError):
    """A path fails a structural precondition (endpoints, closedness)."""
