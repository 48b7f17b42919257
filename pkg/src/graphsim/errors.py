"""Exception types shared across the package."""


class GraphSimError(Exception):
    """Base class for all graphsim errors."""


class ParseError(GraphSimError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InputError(GraphSimError):
    """Invalid user-supplied value or file (usage error, CLI exit 2)."""


class InvariantError(GraphSimError):
    """A structure, model, or transformation violates its invariants."""


class ConvergenceError(GraphSimError):
    """Max-ent fit did not reach tolerance; carries worst residual."""

    def __init__(self, message, worst_residual=None):
        self.worst_residual = worst_residual
        super().__init__(message)
