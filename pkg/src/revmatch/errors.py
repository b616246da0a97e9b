"""Exception types shared across the package."""


class RevMatchError(Exception):
    """Base class for all revmatch errors."""


class WidthMismatch(RevMatchError):
    """Two objects that must share a wire count do not."""


class WidthLimitExceeded(RevMatchError):
    """An exhaustive operation was asked to run above its configured width cap."""


class StateTooLarge(RevMatchError):
    """A superposition would exceed the supported number of basis patterns."""


class InverseUnavailable(RevMatchError):
    """An algorithm needs an inverse oracle that was not provided."""


class AmbiguityError(RevMatchError):
    """A randomized matcher saw colliding output sequences; retry with a fresh seed."""


class MissingKeyError(RevMatchError):
    """One-hot matching found no partner pattern; the promised equivalence is suspect."""


class NoPartnerError(RevMatchError):
    """Pairwise state probing left some wire unmatched; the promised equivalence is suspect."""


class NoAlgorithmError(RevMatchError):
    """No algorithm exists for the requested equivalence / oracle-availability combination."""


class WitnessShapeError(RevMatchError):
    """A witness does not carry exactly the components its equivalence type demands."""


class RealFormatError(RevMatchError):
    """Malformed .real circuit text."""


class DimacsError(RevMatchError):
    """Malformed DIMACS CNF text."""
