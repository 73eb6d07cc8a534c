"""Exception hierarchy shared by all modules."""


class DworkZetaError(Exception):
    """Base class for every error raised by this package."""


class CompositeP(DworkZetaError, ValueError):
    pass


class TooLarge(DworkZetaError, ValueError):
    pass


class InputError(DworkZetaError, ValueError):
    """Malformed variety input (wrong exponent length, non-homogeneous term, ...)."""


class BudgetExceeded(DworkZetaError):
    def __init__(self, predicted, budget, what="enumeration"):
        self.predicted = predicted
        self.budget = budget
        super().__init__(f"{what} needs {predicted} evaluations, budget is {budget}")


class NonIntegralRelation(DworkZetaError):
    pass


class NotSmoothSuspected(DworkZetaError):
    pass


class ExceptionalClassNeeded(DworkZetaError):
    pass


class SolveFailed(DworkZetaError):
    pass


class NonIntegerCoefficient(DworkZetaError):
    pass


class BoundViolation(DworkZetaError):
    pass


class DegreeMismatch(DworkZetaError, ValueError):
    pass


class MismatchAtDegree(DworkZetaError):
    def __init__(self, k, lhs=None, rhs=None):
        self.k = k
        super().__init__(f"L-function identity fails at t^{k}: {lhs} != {rhs}")


class NoRootFound(DworkZetaError):
    pass


class PrecisionExhausted(DworkZetaError):
    pass


class TruncationUncertified(DworkZetaError):
    pass


class DivisionNotExact(DworkZetaError):
    pass


class NoConvergence(DworkZetaError):
    def __init__(self, level, history):
        self.level = level
        self.history = history
        super().__init__(f"reduction did not converge at level {level}; residual valuations {history}")


class PrecisionInsufficient(DworkZetaError):
    pass


class Refused(DworkZetaError):
    """Input is outside the scope of the p-adic Frobenius computation."""
