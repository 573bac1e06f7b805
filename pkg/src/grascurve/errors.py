"""Exception types raised across the package."""


class GrascurveError(Exception):
    """Base class for every error raised by grascurve."""


class FieldMismatch(GrascurveError, TypeError):
    pass


class DimensionMismatch(GrascurveError, ValueError):
    pass


class DegenerateFamily(GrascurveError, ValueError):
    """Rank-deficient polynomial matrix or a family with base points."""


class NotLocallyFree(GrascurveError, ValueError):
    pass


class NotDecomposable(GrascurveError, ValueError):
    pass


class OutOfScopeDegree(GrascurveError, ValueError):
    pass


class WrongDegree(GrascurveError, ValueError):
    pass


class DegenerateConic(GrascurveError, ValueError):
    pass


class NonGenericEnvelope(GrascurveError, ValueError):
    pass


class LineNotInSection(GrascurveError, ValueError):
    pass


class UnstableInterpolation(GrascurveError, RuntimeError):
    pass


class BudgetExceeded(GrascurveError, RuntimeError):
    pass


class BadReduction(GrascurveError, ValueError):
    """A rational datum has a denominator divisible by the chosen prime."""


class UnknownCheck(GrascurveError, KeyError):
    pass
