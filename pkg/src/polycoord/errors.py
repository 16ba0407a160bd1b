"""Exception types shared across the package."""


class PolycoordError(Exception):
    """Base class for all package errors."""


class GameValidationError(PolycoordError):
    """A game, profile or coalition violates a structural invariant."""


class ParameterError(PolycoordError):
    """An operation parameter is out of its documented range."""


class UnsupportedGameError(PolycoordError):
    """The operation requires a graph coordination game and the input is not one."""


class StructureError(PolycoordError):
    """The underlying graph does not have the required shape (tree/forest)."""


class BudgetExceededError(PolycoordError):
    """An exhaustive enumeration would exceed the configured budget."""

    def __init__(self, required, budget):
        super().__init__(
            f"enumeration requires {required} profiles, budget is {budget}"
        )
        self.required = required
        self.budget = budget
