class BudgetExceededError(RuntimeError):
    """A computation would exceed its configured work budget."""

    def __init__(self, message: str, *, required: int | None = None,
                 budget: int | None = None):
        super().__init__(message)
        self.required = required
        self.budget = budget
