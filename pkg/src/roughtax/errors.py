"""Exception hierarchy shared by every roughtax module."""


class RoughTaxError(Exception):
    """Base class for all errors raised by roughtax."""


class TableParseError(RoughTaxError):
    """Malformed CSV input (ragged rows, missing header)."""

    def __init__(self, message, row=None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class SchemaError(RoughTaxError):
    """Invalid attribute schema: duplicate names, bad decision column, empty domain."""


class EmptyTableError(TableParseError):
    """A table without any case."""


class EvaluationError(RoughTaxError):
    """A formula refers to an attribute or value the table does not know."""


class UnknownClassError(RoughTaxError, KeyError):
    """A class label that does not occur in the decision attribute."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown class"


class UndefinedAccuracyError(RoughTaxError, ZeroDivisionError):
    """Accuracy requested for a formula with empty extension."""


class UndefinedMeasureError(RoughTaxError, ZeroDivisionError):
    """A similarity measure whose denominator vanishes for the given counts."""

    def __init__(self, measure, detail=""):
        msg = f"measure {measure!r} is undefined"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.measure = measure


class ConfigError(RoughTaxError, ValueError):
    """Out-of-range thresholds, unknown measure names, bad config files."""


class StructureError(RoughTaxError, ValueError):
    """A formula that does not have the shape an operation requires."""
