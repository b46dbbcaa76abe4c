"""Exception types shared across the package."""


class B21Error(Exception):
    """Base class for every error raised by this package."""


class NonUnitConstantTerm(B21Error, ZeroDivisionError):
    pass


class InputTooLarge(B21Error, ValueError):
    pass


class EvenModulus(B21Error, ValueError):
    pass


class NotCoprimeTo6(B21Error, ValueError):
    pass


class WrongResidueClass(B21Error, ValueError):
    pass


class NotPrime(B21Error, ValueError):
    pass


class PreconditionViolated(B21Error, ValueError):
    pass


class NotInvertible(B21Error, ValueError):
    pass


class NonIntegralExclusion(B21Error, ArithmeticError):
    pass


class ExcludedBeta(B21Error, ValueError):
    pass


class KOutOfRange(B21Error, ValueError):
    pass


class LimitTooSmall(B21Error, ValueError):
    pass


class NotInQ(B21Error, ValueError):
    pass


class ExcludedPrime(B21Error, ValueError):
    pass


class NotInDeltaStar(B21Error, ValueError):
    pass


class HypothesisViolated(B21Error, ArithmeticError):
    pass


class UnsupportedLevel(B21Error, ValueError):
    pass
