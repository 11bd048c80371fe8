"""Exception types shared across the package."""


class CantorForgeError(Exception):
    """Base class for all cantorforge errors."""


class SpecSyntaxError(CantorForgeError, ValueError):
    """Genus-spec text does not conform to the grammar."""


class SpecValueError(CantorForgeError, ValueError):
    """Genus-spec entry outside the legal range (finite entries must be >= 2)."""


class StageParityError(CantorForgeError):
    """A replacement step was applied at a stage of the wrong parity."""


class InvariantError(CantorForgeError):
    """Produced stage data violates a construction invariant (a bug, not bad input)."""


class NotFoundError(CantorForgeError, LookupError):
    """No component exists with the requested id."""


class ResourceError(CantorForgeError):
    """The node budget would be exceeded."""


class PolicyError(CantorForgeError):
    """An end policy is inconsistent with the component tree."""


class DepthTooShallowError(CantorForgeError):
    """The policy's tail behaviour is not determined, so no limit value can be certified."""
