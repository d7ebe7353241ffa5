"""Exception hierarchy shared by the PathCuts modules."""


class PathCutsError(Exception):
    """Base class for all errors raised by this package."""


class InstanceError(PathCutsError, ValueError):
    """Malformed or unsupported path instance (A.2 violations, bad JSON, empty path)."""


class SelectionError(PathCutsError, ValueError):
    """Arc selection inconsistent with its window or with an operation's precondition."""


class InfeasibleFlowError(PathCutsError):
    """The value-function flow problem has no solution honoring its fixed flows."""


class LpInfeasibleError(PathCutsError):
    """The linear program has no feasible solution."""


class LpUnboundedError(PathCutsError):
    """The linear program is unbounded in the optimization direction."""


class LpIterationError(PathCutsError):
    """The simplex method hit its pivot limit."""


class BudgetExceededError(PathCutsError):
    """An enumeration oracle was asked to work beyond its size budget."""
