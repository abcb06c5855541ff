"""Exception types raised by the toolkit."""


class QuivrepError(Exception):
    """Base class; the CLI maps these to exit code 2 unless noted."""


class NotFiniteDimensional(QuivrepError):
    pass


class MalformedRelation(QuivrepError):
    pass


class NonSplitEndomorphism(QuivrepError):
    """End(M)/rad End(M) of a summand is not split over the base field."""


class ProjectiveInput(QuivrepError):
    pass


class BudgetExceeded(QuivrepError):
    pass


class RequiresARQuiver(QuivrepError):
    pass


class XNotInML(QuivrepError):
    pass


class XNotInMR(QuivrepError):
    pass


class VerificationFailed(QuivrepError):
    """A machine check failed; carries the first counterexample."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
