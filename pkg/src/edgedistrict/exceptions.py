"""Exception hierarchy shared by every module of the package."""


class DistrictingError(Exception):
    """Base class for all errors raised by edgedistrict."""


class DisconnectedGraph(DistrictingError, ValueError):
    pass


class InvalidInstance(DistrictingError, ValueError):
    pass


class MeaninglessVariant(DistrictingError, ValueError):
    """The criterion combination is excluded from the model (e.g. C without I)."""


class UnsupportedVariant(DistrictingError, ValueError):
    """The variant is meaningful but outside what the chosen solver handles."""


class InfeasibleBounds(DistrictingError, ValueError):
    pass


class Infeasible(DistrictingError):
    """No assignment satisfies the active constraint groups."""


class NotOptimalInput(DistrictingError, ValueError):
    pass


class NonIntegralBounds(DistrictingError, ValueError):
    pass


class WeightedInstance(DistrictingError, ValueError):
    pass


class LimitExceeded(DistrictingError):
    pass


class MalformedInstance(DistrictingError, ValueError):
    pass


class TooFewEdges(DistrictingError, ValueError):
    pass
