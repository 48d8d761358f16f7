"""Exception types raised by subordkit."""


class SubordkitError(Exception):
    """Base class for all toolkit errors."""


class NearZeroLeadingCoefficient(SubordkitError, ZeroDivisionError):
    """Series division by a divisor whose constant term is below the guard."""


class BranchCut(SubordkitError, ValueError):
    """Boundary parameter lands exactly on a branch point of the domain map."""


class TooCloseToBoundary(SubordkitError, ValueError):
    """Winding-number probe sits on (or within tolerance of) a boundary sample."""


class BoundaryBand(SubordkitError, ValueError):
    """Probe falls inside the excluded band of an if-and-only-if lemma."""


class ParameterOrder(SubordkitError, ValueError):
    """The (m, k) parameters violate the order constraints."""


class CenterMismatch(SubordkitError, ValueError):
    """p(0) differs from h(0) so subordination is impossible."""


class IdentityMismatch(SubordkitError, AssertionError):
    """A closed-form series identity failed its internal audit."""
