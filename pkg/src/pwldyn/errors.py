"""Exception types shared across the package."""


class PwldynError(Exception):
    """Base class for all package-specific errors."""


class IllConditioned(PwldynError):
    """An eigenvalue computation failed to converge or lost all accuracy."""


class ZeroNormal(PwldynError):
    """A hyperplane normal was zero."""


class SingularMatrix(PwldynError):
    """A linear solve hit a pivot below the singularity threshold."""


class UnsupportedDimension(PwldynError):
    """Normal-form construction is only available in dimensions 2 and 3."""


class NotContinuous(PwldynError):
    """The two matrices do not differ by a rank-one update along the switching normal."""


class DynamicsError(PwldynError):
    """Base class for runtime failures while iterating a map."""


class NonFinite(DynamicsError):
    """An orbit iterate overflowed to a non-finite value."""


class Escaped(DynamicsError):
    """An excursion left the escape radius before returning to the section."""


class NoReturn(DynamicsError):
    """No return to the section within the iteration budget."""


class ReductionError(PwldynError):
    """Base class for failed reduction hypotheses."""


class HypothesisViolated(ReductionError):
    """A shared-eigenvalue hypothesis failed (eigenvalue one, multiplicity, or tangency)."""


class NonTransversal(ReductionError):
    """The invariant plane is parallel to the switching plane."""


class NotSingular(ReductionError):
    """The left piece has no eigenvalue close enough to zero."""


class MultipleZero(ReductionError):
    """Zero is an eigenvalue of the left piece with multiplicity above one."""


class NoFixedPoint(ReductionError):
    """One is an eigenvalue, so the required fixed point does not exist."""


class EmptyCloud(PwldynError):
    """A distance was requested between point clouds with no points."""
