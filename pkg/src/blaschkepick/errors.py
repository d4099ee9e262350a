"""Exception types shared across the package."""


class BlaschkePickError(Exception):
    """Base class for every error this package raises deliberately."""


class ZeroOnOrOutsideDisk(BlaschkePickError):
    """A prescribed zero is not strictly inside the unit disk."""


class ConstantNotUnimodular(BlaschkePickError):
    """The multiplicative constant does not have modulus one."""


class PoleEvaluation(BlaschkePickError):
    """Evaluation was requested too close to a pole of the product."""


class RootFindingFailure(BlaschkePickError):
    """A polished level-set root failed its residual check."""


class SingularResolvent(BlaschkePickError):
    """I - z A is numerically singular at the requested point."""


class DegenerateDenominator(BlaschkePickError):
    """The kernel denominator 1 - z0*u0 is numerically zero at the centers."""


class CoincidentPoints(BlaschkePickError):
    """Two evaluation points coincide within the distinctness tolerance."""


class InsufficientJet(BlaschkePickError):
    """A jet is too short for the requested derivative orders."""


class ZeroLeadingValue(BlaschkePickError):
    """The leading jet value is too close to zero to solve for a supplement."""


class PrincipalNotPD(BlaschkePickError):
    """The selected principal submatrix is not positive definite."""


class RankMismatch(BlaschkePickError):
    """Matrix evidence contradicts the combinatorial uniqueness criterion."""


class ConvergenceFailure(BlaschkePickError):
    """An iterative eigenvalue computation did not converge."""
