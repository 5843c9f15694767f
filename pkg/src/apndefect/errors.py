"""Exception types raised across the package."""


class AnalysisError(Exception):
    pass


class UnsupportedDegree(AnalysisError, ValueError):
    pass


class ReducibleModulus(AnalysisError, ValueError):
    pass


class ZeroInverse(AnalysisError, ZeroDivisionError):
    pass


class DegenerateAllZero(AnalysisError, ValueError):
    """Every field element is a root (a = b = c = 0)."""


class IndexOutOfRange(AnalysisError, ValueError):
    pass


class DuplicateAlpha(AnalysisError, ValueError):
    pass


class ZeroLeadingCoefficient(AnalysisError, ValueError):
    pass


class ZeroDirection(AnalysisError, ValueError):
    pass


class ZeroAlpha(AnalysisError, ValueError):
    pass


class NotAPowerFunction(AnalysisError, TypeError):
    pass


class NotAPermutation(AnalysisError, ValueError):
    pass


class NotShiftedLinear(AnalysisError, ValueError):
    pass


class MalformedDDT(AnalysisError, ValueError):
    pass


class NonIntegralCount(AnalysisError, ArithmeticError):
    pass


class RowNotApplicable(AnalysisError, ValueError):
    pass


class OddN(AnalysisError, ValueError):
    pass


class TooLarge(AnalysisError, ValueError):
    pass
