"""Exception hierarchy shared by the library and the CLI."""


class QuiverRepsError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1
    reason = "error"


class DimensionError(QuiverRepsError, ValueError):
    exit_code = 2
    reason = "dimension-mismatch"


class DomainError(QuiverRepsError, ValueError):
    exit_code = 2
    reason = "domain"


class ResourceError(QuiverRepsError, RuntimeError):
    exit_code = 3
    reason = "resource-cap"


class UnsupportedError(QuiverRepsError, NotImplementedError):
    exit_code = 4
    reason = "unsupported"
