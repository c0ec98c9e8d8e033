"""Exception types shared across modules."""


class DomainError(ValueError):
    """Arguments outside an operation's precondition."""


class PromiseViolation(DomainError):
    """Protocol inputs outside the problem's promise."""


class InvariantError(AssertionError):
    """An internal mathematical check failed.

    ``invariant`` names the check so the CLI can report it.
    """

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)
