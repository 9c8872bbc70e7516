"""Exception hierarchy shared across the package."""


class TPLabError(Exception):
    """Base class for every error raised by tplab."""


class PoleProximityError(TPLabError, ValueError):
    pass


class PrecisionExhaustedError(TPLabError, ArithmeticError):
    """A requested enclosure could not be certified within the configured limits."""


class DomainError(TPLabError, ValueError):
    pass


class StripViolationError(DomainError):
    """Evaluation point outside the open convergence strip."""


class EnvelopeMissingError(TPLabError, ValueError):
    pass


class TargetErrorUnreachable(TPLabError, ArithmeticError):
    pass


class ZeroConstantTermError(TPLabError, ZeroDivisionError):
    pass


class ZeroAtOriginError(TPLabError, ValueError):
    pass


class DivergentTailError(TPLabError, ValueError):
    pass


class PreconditionViolation(TPLabError, ValueError):
    pass


class InsufficientMomentsError(TPLabError, ValueError):
    pass


class WindowTooSmallError(TPLabError, ValueError):
    pass


class LengthError(TPLabError, ValueError):
    pass


class UndecidableError(TPLabError, ArithmeticError):
    """Ball-mode answer cannot be decided at the working precision."""
