"""Exception types shared across the package."""


class CascadiaError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(CascadiaError, ValueError):
    """An argument violates an operation's precondition."""


class InvalidConfigurationError(CascadiaError, ValueError):
    """A configuration object is internally inconsistent."""


class EdgeListParseError(CascadiaError, ValueError):
    """Malformed edge-list input; carries the offending 1-based line number."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class UndefinedDistributionError(CascadiaError, ValueError):
    """A sampling distribution has zero total mass (all contenders scored 0)."""


class BudgetViolationError(CascadiaError, ValueError):
    """A seed set exceeds the owning player's budget."""


class ContractViolationError(CascadiaError, RuntimeError):
    """An operation was called on state it must never see."""
