"""Exception types shared across the package.

I/O problems during checkpoint save/load surface as the builtin OSError.
"""


class PrefSearchError(Exception):
    """Base class for all package-specific errors."""


class AllNodesExplored(PrefSearchError):
    """Every node in the tree is pruned; the search cannot select anything."""


class GenerationFailed(PrefSearchError):
    """A generation request failed after gateway-level retries."""


class InvalidInput(PrefSearchError):
    """An operation received input violating its precondition."""


class MismatchedCritique(PrefSearchError):
    """A critique was paired with a solution it was not written for."""


class JudgeFailed(PrefSearchError):
    """A pairwise judge request failed after gateway-level retries."""


class MissingPair(PrefSearchError):
    """A required pairwise preference record is absent."""


class NoBackendAvailable(PrefSearchError):
    """No routable backend exists for the requested role."""


class RetriesExhausted(PrefSearchError):
    """All dispatch attempts failed; carries the last underlying error."""

    def __init__(self, message: str, last_error: Exception | None = None):
        super().__init__(message)
        self.last_error = last_error


class DigestMismatch(PrefSearchError):
    """A checkpoint's content hash does not match its payload."""


class VersionUnknown(PrefSearchError):
    """A checkpoint carries an unrecognized version tag."""
