"""Exception hierarchy shared by every module."""


class PtEventError(Exception):
    """Base class for all library errors."""


class ValidationError(PtEventError, ValueError):
    """Input data violates a documented invariant."""


class UnknownEventType(ValidationError, KeyError):
    """Event label is not part of the ontology."""

    def __str__(self):
        return Exception.__str__(self)


class InvalidRole(ValidationError):
    """Argument role is not legal for the mention's event type."""


class SpanTokenMismatch(ValidationError):
    """A span does not start and end on token boundaries."""


class LengthMismatch(ValidationError):
    """Two parallel sequences have different lengths."""


class FormatError(ValidationError):
    """A file does not follow its interchange format."""


class OffsetError(ValidationError):
    """Span offsets disagree with the surface text they claim to cover."""


class MissingTemplate(ValidationError, KeyError):
    """No question template exists for an (event label, role) pair."""

    def __str__(self):
        return Exception.__str__(self)


class ShapeMismatch(ValidationError):
    """Logit arrays do not match the assembled QA input."""


class ConfigError(ValidationError):
    """Bad configuration key or value."""


class AlignmentIOError(PtEventError, IOError):
    """An external client (MT, dictionary, aligner) failed.

    Retryable: nothing is written to the caches when this is raised.
    """


class BackendError(PtEventError, RuntimeError):
    """A model backend failed; carries the offending sentence/role."""
