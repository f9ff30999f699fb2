"""Exception types raised by the library."""


class MorphoError(Exception):
    """Base class for all library errors."""


class ParseError(MorphoError):
    """Malformed model document (bad JSON or wrong shape)."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class ValidationError(MorphoError):
    """A model violates one or more structural invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = [str(v) for v in self.violations]
        super().__init__("invalid model:\n  " + "\n  ".join(lines))


class ReferenceMismatchError(MorphoError, KeyError):
    """A snapshot or selection refers to a node the tree does not have."""

    def __str__(self):
        return Exception.__str__(self)


class UnclassifiableChangeError(MorphoError):
    """Aggregation/configuration differences must be recorded by hand."""


class DanglingAnnotationError(MorphoError):
    pass


class ConflictingAnnotationError(MorphoError):
    pass


class IncompleteAssignmentError(MorphoError):
    """Some alternative has no priority."""


class ScaleMismatchError(MorphoError):
    pass


class QuantizationError(MorphoError):
    pass


class InfeasibleError(MorphoError):
    """No selection satisfies the budget."""

    def __init__(self, message, min_cost):
        self.min_cost = min_cost
        super().__init__(message)


class StaleTransitionError(MorphoError):
    pass


class ConfigError(MorphoError):
    pass
