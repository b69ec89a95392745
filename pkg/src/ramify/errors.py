"""Exception hierarchy for ramify."""


class RamifyError(Exception):
    """Base class for all library errors."""


class DegenerateTriple(RamifyError, ValueError):
    pass


class ConstantMap(RamifyError, ValueError):
    pass


class RootFindingFailure(RamifyError, ArithmeticError):
    pass


class DegenerateW(RamifyError, ValueError):
    pass


class VerificationFailure(RamifyError):
    """A constructed object failed its own post-construction check."""


class MalformedPassport(RamifyError, ValueError):
    pass


class PathThroughBranchValue(RamifyError):
    """Adaptive step bisection hit its depth limit while tracking a fiber."""


class TrackingCollision(RamifyError):
    """Two tracked sheets came closer than the collision tolerance."""


class CycleTypeMismatch(RamifyError):
    pass


class UnknownValue(RamifyError, KeyError):
    pass


class PreconditionViolated(RamifyError, ValueError):
    pass


class UnknownValueClass(RamifyError, KeyError):
    pass


class BoundsTooLarge(RamifyError):
    pass


class InvariantViolation(RamifyError, AssertionError):
    pass
