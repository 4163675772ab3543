"""Exception types shared across the library."""


class MrdError(Exception):
    """Base class for all library errors."""


class BudgetExceededError(MrdError):
    """An exhaustive computation would exceed its configured budget."""


class PreconditionError(MrdError, ValueError):
    """An operation was called outside its stated domain."""


class PresetConditionError(MrdError, ValueError):
    """A named code family rejected its parameters.

    ``violations`` lists every failed condition verbatim.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
