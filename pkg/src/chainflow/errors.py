"""Exception hierarchy shared across the solver modules."""


class ChainflowError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ChainflowError):
    """Malformed or inconsistent input data."""


class EmptyPoset(InputError):
    pass


class CycleDetected(InputError):
    pass


class UnknownElement(InputError):
    pass


class UnknownChain(InputError):
    pass


class UnknownEdge(InputError):
    pass


class NotAcyclic(InputError):
    pass


class Disconnected(InputError):
    pass


class ConditionsViolated(ChainflowError):
    """The problem data fail the necessary or conservation condition."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class NecessaryConditionViolated(ConditionsViolated):
    pass


class PiAboveOne(InputError):
    """Some maximal chain's target value exceeds 1."""


class TotalExceedsOne(ChainflowError):
    """Total subset weight above 1 cannot be lifted to a distribution."""


class ResourceLimitExceeded(ChainflowError):
    """An enumeration grew past its configured cap."""


class ChainLimitExceeded(ResourceLimitExceeded):
    pass


class PathLimitExceeded(ResourceLimitExceeded):
    pass


class EnumerationLimitExceeded(ResourceLimitExceeded):
    pass


class TooLarge(ResourceLimitExceeded):
    pass


class NonConserving(InputError):
    """Edge flow violates conservation at an interior node."""
