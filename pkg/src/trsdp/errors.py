"""Exception hierarchy shared by every module of the package."""


class TrsError(Exception):
    """Base class for all errors raised by trsdp."""


class ArityError(TrsError, ValueError):
    pass


class SignatureError(TrsError, ValueError):
    """Two uses of the same symbol name disagree on arity or kind."""


class RuleError(TrsError, ValueError):
    """A rule violates TRS well-formedness (variable lhs, extra rhs variables)."""


class PositionError(TrsError, IndexError):
    pass


class NotDefinedRootError(TrsError, ValueError):
    """Raised by ``mark`` when the root is a variable or a constructor."""


class MalformedChainError(TrsError, ValueError):
    """A chain segment has a root R-step or a non-root P-step."""


class ParseError(TrsError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        super().__init__(where + message)


class PreconditionViolated(TrsError):
    """A hypothesis of a simulation/conversion operation does not hold."""


class FuelExhausted(TrsError):
    """A bounded search or normalization ran out of fuel.

    This is a statement about the budget, never about the input.
    """

    def __init__(self, message="fuel exhausted", partial=None):
        super().__init__(message)
        self.partial = partial


class NonOverlayContradiction(TrsError):
    """A normal-form fact guaranteed by the overlay property failed at runtime."""


class SimulationError(TrsError):
    """An internally constructed trace or chain failed its final validation."""
