"""Exception types shared across the package."""


class PrefnetError(Exception):
    """Base class for domain errors raised by prefnet."""


class EmptyNetworkError(PrefnetError):
    """Operation needs positive total weight but the network is all zeros."""


class NoCommonUsersError(PrefnetError):
    """Two labeled networks share no node labels."""


class ZeroRowError(PrefnetError):
    """A node row is all zeros where a nonzero row is required."""


class UndefinedMeasureError(PrefnetError):
    """A comparison measure has no defined value for the given inputs."""


class DegenerateRowError(PrefnetError):
    """A sender with zero weighted degree cannot choose a recipient."""


class StuckWalkerError(PrefnetError):
    """A walker has no reachable next node (zero degree and zero noise)."""


class IngestFormatError(PrefnetError):
    """The retweet log violates the input format contract."""
