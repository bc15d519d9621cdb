"""Exception hierarchy shared by every module of the package."""


class WitnessError(Exception):
    """Base class for all package errors."""


class DomainError(WitnessError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class UnreachableWitnessError(DomainError):
    """No principal-branch entanglement phase produces the requested witness."""


class SignInconsistentWitnessError(DomainError):
    """The requested witness needs a coupling squared that would be negative."""


class DegenerateGeometryError(DomainError):
    """The branch-difference factor of a potential vanishes numerically."""


class ExclusionFormatError(WitnessError, ValueError):
    """An exclusion-region file failed to parse or validate.

    The offending line number (1-based) is kept in ``lineno`` when known.
    """

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class KindMismatchError(WitnessError, ValueError):
    """A curve and an exclusion region describe different quantities."""


class ConfigError(WitnessError, ValueError):
    """A run configuration is malformed or names an unknown key."""


# short names used when a failure is recorded in-band on a curve sample
ERROR_KINDS = {
    UnreachableWitnessError: "unreachable_witness",
    SignInconsistentWitnessError: "sign_inconsistent",
    DegenerateGeometryError: "degenerate_geometry",
    DomainError: "domain_error",
}


def error_kind(exc):
    """Return the in-band tag for ``exc`` (most specific class wins)."""
    for cls in type(exc).__mro__:
        if cls in ERROR_KINDS:
            return ERROR_KINDS[cls]
    return "error"


class UsageError(WitnessError, ValueError):
    """Arguments are individually valid but do not belong together."""
