"""Exception taxonomy for the cmsvp package.

Every failure mode that callers are expected to distinguish gets its own
class; the CLI maps these onto stable exit codes.
"""


class CmsvpError(Exception):
    """Base class for all package-specific errors."""


class InputError(CmsvpError):
    """Invalid user input: bad coordinates, malformed files, wrong counts."""


class NonPrimeConductorError(InputError):
    """A built-in construction was requested for a non-prime conductor."""


class DependentUnitsError(InputError):
    """A supplied unit basis failed the multiplicative-independence check."""


class DegenerateSimplexError(CmsvpError):
    """A simplex minor determinant could not be bounded away from zero."""

    def __init__(self, perm, minor_index):
        self.perm = tuple(perm)
        self.minor_index = minor_index
        super().__init__(
            f"degenerate simplex for permutation {self.perm}: "
            f"minor {minor_index} has a determinant interval containing zero"
        )


class PrecisionError(CmsvpError):
    """Interval arithmetic failed to certify a result after the retry."""


class BudgetExceededError(CmsvpError):
    """Enumeration visited more nodes than the configured budget allows."""

    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"enumeration exceeded the node budget of {budget}")


class NotPositiveDefiniteError(CmsvpError):
    """A Gram matrix expected to be positive definite is not."""


class SelfTestError(CmsvpError):
    """An internal cross-check between two independent methods disagreed."""
