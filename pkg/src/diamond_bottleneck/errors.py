"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class BracketError(ValueError):
    """A root finder was handed an interval whose endpoints do not bracket a sign change."""


class InvalidArgument(ValueError):
    """A structurally invalid argument (wrong count, wrong range, wrong type)."""


class NonConvergent(RuntimeError):
    """An iterative routine exhausted its budget without meeting its tolerance."""


class DegenerateBudget(ValueError):
    """A compression budget of zero bits makes the requested calibration meaningless."""
