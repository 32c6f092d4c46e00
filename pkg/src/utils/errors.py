class PartitionError(Exception):
    """Base class for every error raised by the toolkit."""


class ArgumentError(PartitionError, ValueError):
    """Invalid input: bad ranges, malformed models, inconsistent flags."""


class ParseError(ArgumentError):
    """Model spec text that does not match the grammar."""

    def __init__(self, message: str, text: str, column: int, token: str | None = None):
        self.text = text
        self.column = column
        self.token = token
        where = f"line 1, column {column + 1}"
        detail = f" near '{token}'" if token else ""
        super().__init__(f"{message} ({where}{detail}): {text}")


class AdmissibilityError(ArgumentError):
    """The part set violates a structural condition required by the asymptotics."""

    def __init__(self, message: str, conditions: list[str] | None = None, witness: int | None = None):
        self.conditions = conditions or []
        self.witness = witness
        super().__init__(message)


class FitError(ArgumentError):
    """Not enough exact data to fit correction coefficients."""


class CapabilityError(PartitionError):
    """The requested quantity needs L-values the model cannot supply."""


class NumericError(PartitionError, ArithmeticError):
    """A numerical procedure failed to converge or lost accuracy."""


class PoleError(NumericError):
    """Evaluation requested at a pole."""


class QuadratureError(NumericError):
    """Quadrature result failed its consistency check."""
