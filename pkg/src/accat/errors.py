"""Exception hierarchy shared by all modules."""


class AccatError(Exception):
    """Base class for every error raised by accat."""


class InvalidCategory(AccatError, ValueError):
    pass


class MissingComposite(InvalidCategory):
    def __init__(self, first, second):
        super().__init__(f"no composite listed for composable pair ({first}, {second})")
        self.pair = (first, second)


class AssociativityViolation(InvalidCategory):
    def __init__(self, f, g, h):
        super().__init__(f"composition is not associative on ({f}, {g}, {h})")
        self.triple = (f, g, h)


class UnitViolation(InvalidCategory):
    def __init__(self, ident, f):
        super().__init__(f"identity {ident} is not a unit for {f}")
        self.pair = (ident, f)


class DanglingEndpoint(InvalidCategory):
    def __init__(self, what, endpoint):
        super().__init__(f"{what} refers to unknown object or morphism {endpoint!r}")
        self.what = what
        self.endpoint = endpoint


class DuplicateName(InvalidCategory):
    pass


class InvalidFunctor(AccatError, ValueError):
    pass


class NotAnEmbedding(AccatError, ValueError):
    pass


class SearchBudgetExceeded(AccatError, RuntimeError):
    def __init__(self, budget):
        super().__init__(f"search exceeded its budget of {budget} nodes")
        self.budget = budget


class GrowthExceeded(AccatError, RuntimeError):
    """A saturation would create more classes than its cap allows.

    This usually means the quotient is infinite (or at least too large).
    """

    def __init__(self, cap):
        super().__init__(f"congruence saturation exceeded the class cap of {cap}")
        self.cap = cap


class ConditionsViolated(AccatError, ValueError):
    pass


class PreconditionViolated(AccatError, ValueError):
    pass


class NotFiltered(AccatError, ValueError):
    pass


class NotAcyclicInput(AccatError, ValueError):
    pass


class NonCommutingSquare(AccatError, ValueError):
    pass


class StageBudgetExceeded(AccatError, RuntimeError):
    """The small object argument ran out of stages; ``record`` holds the partial run."""

    def __init__(self, max_stages, record=None, q=None):
        super().__init__(f"factorization did not converge within {max_stages} stages")
        self.max_stages = max_stages
        self.record = record
        self.q = q


class TruncatedInput(AccatError, ValueError):
    pass


class UnknownSuite(AccatError, KeyError):
    pass
