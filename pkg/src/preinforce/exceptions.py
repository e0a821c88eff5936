"""Exception types shared across the package."""


class PreinforceError(Exception):
    """Base class for all domain errors raised by this package."""


class GraphError(PreinforceError, ValueError):
    """Malformed graph input (self-loop, duplicate edge, bad id)."""


class NotATreeError(GraphError):
    pass


class SizeGuardError(PreinforceError):
    """An exact search was refused because the instance exceeds its size cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: instance size {size} exceeds guard {cap}")
        self.size = size
        self.cap = cap


class PreconditionError(PreinforceError, ValueError):
    pass


class BudgetExhausted(PreinforceError):
    """No edge set of size <= budget reduces the p-domination number."""

    def __init__(self, budget):
        super().__init__(f"r_p exceeds budget {budget}")
        self.budget = budget
