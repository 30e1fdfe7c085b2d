"""Exceptions raised by the exact arithmetic kernel."""


class ExactMathError(ArithmeticError):
    pass


class NonSquare(ExactMathError, ValueError):
    pass


class BothZero(ExactMathError, ValueError):
    pass


class ZeroPolynomial(ExactMathError, ValueError):
    pass


class NotSquarefree(ExactMathError, ValueError):
    pass


class SingularMatrix(ExactMathError, ValueError):
    pass


class Inconsistent(ExactMathError, ValueError):
    """A linear system has no solution."""


class IrrationalFactor(ExactMathError, ValueError):
    """The requested factor has irrational coefficients."""
