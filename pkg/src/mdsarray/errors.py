"""Exception types raised across the package."""


class MDSError(Exception):
    """Base class for every error raised by mdsarray."""


class MalformedPolynomial(MDSError, ValueError):
    pass


class NotPrimitive(MDSError, ValueError):
    pass


class DivisionByZero(MDSError, ZeroDivisionError):
    pass


class UndefinedZech(MDSError, ArithmeticError):
    """Z(n) requested for n = 0 mod 2^b - 1, where 1 + alpha^n = 0."""


class DuplicateEvaluationPoint(MDSError, ValueError):
    pass


class DuplicatePoint(MDSError, ValueError):
    pass


class SingularPair(MDSError, ValueError):
    pass


class TooLarge(MDSError, ValueError):
    pass


class DimensionMismatch(MDSError, ValueError):
    pass


class NotSuperregular(MDSError, ValueError):
    pass


class SingularSystem(MDSError, ArithmeticError):
    pass


class DegenerateRelation(MDSError, ArithmeticError):
    """A coefficient of the three-error recurrence has no exponent form."""


class WrongMatrixKind(MDSError, ValueError):
    pass


class UnsupportedRadius(MDSError, ValueError):
    pass
