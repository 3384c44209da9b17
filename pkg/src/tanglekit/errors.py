"""Exception hierarchy shared by every engine module."""


class TanglekitError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""


class StructuralError(TanglekitError):
    """Malformed input: bad masks, label clashes, overlapping minor sets."""


class PreconditionError(TanglekitError):
    """An operation was called outside its documented hypotheses."""


class DomainError(TanglekitError):
    """A query that has no meaning for the given object."""


class ResourceCapError(TanglekitError):
    """Ground set too large for an exhaustive computation."""


class InvariantError(TanglekitError):
    """An internal consistency check failed; always a bug or a counterexample."""
