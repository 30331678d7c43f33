"""Exception types shared across the package."""


class RejectedInput(ValueError):
    """An argument violates an operation's precondition."""


class BudgetExceeded(MemoryError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, what: str, needed: int, budget: int, unit: str = "bytes"):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"{what}: needs {needed} {unit}, budget is {budget} {unit}"
            " (raise the budget or force enumeration)"
        )


class ConsistencyError(RuntimeError):
    """An internal invariant was found broken."""
