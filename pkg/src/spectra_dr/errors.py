"""Exception hierarchy.

Every failure mode raised by this package derives from EngineError, so callers
can catch one base class.  Validation failures (malformed or inconsistent
input) are kept separate from witness failures (a claimed isomorphism or
exactness check that did not hold on actual data).
"""


class EngineError(Exception):
    """Base class for all errors raised by spectra_dr."""


class ValidationError(EngineError):
    """Input data violates a structural invariant (shapes, d^2 = 0, ...)."""


class ContainmentViolation(ValidationError):
    """A subspace that must contain another does not (boundaries not in cycles)."""


class NotChainCompatible(ValidationError):
    """A map fails to commute with differentials, or does not preserve
    cycles/boundaries when inducing a map on subquotients."""


class JacobiViolation(ValidationError):
    """Structure constants of a Lie model fail d o d = 0 on generators."""


class NotClosed(ValidationError):
    """An element required to be closed under both differentials is not."""


class IntegralNotClosed(ValidationError):
    """The top-degree integral fails Stokes: integral(d x) != 0 for some x,
    so the duality pairing would not descend to cohomology."""


class WitnessFailure(EngineError):
    """A constructed comparison map failed to be an isomorphism, or a
    verification suite found a counterexample."""


class PreconditionViolation(EngineError):
    """Arguments are structurally fine but violate a documented precondition
    (e.g. blowup codimension r < 2)."""


class ParseError(EngineError):
    """Malformed serialized input (JSON syntax, missing keys, bad rationals)."""
