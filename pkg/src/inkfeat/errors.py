"""Exception hierarchy shared by every inkfeat module."""


class InkError(Exception):
    """Base class for all inkfeat errors."""


class ValidationError(InkError, ValueError):
    """Raw ink data does not satisfy the ink model invariants."""


class EmptyGesture(ValidationError):
    pass


class NonMonotonicTime(ValidationError):
    pass


class PressureOutOfRange(ValidationError):
    pass


class NonFiniteValue(ValidationError):
    pass


class ParseError(InkError, ValueError):
    """Malformed document or feature table."""


class DocumentValidationError(ParseError):
    """An embedded gesture failed validation; wraps the original error.

    The gesture id is available as ``gesture_id`` and the underlying
    validation error as ``__cause__`` / ``cause``.
    """

    def __init__(self, gesture_id, cause):
        self.gesture_id = gesture_id
        self.cause = cause
        super().__init__(f"gesture {gesture_id!r}: {type(cause).__name__}: {cause}")


class DegenerateGeometry(InkError, ValueError):
    pass


class InsufficientSamples(InkError, ValueError):
    pass


class IndexOutOfRange(InkError, IndexError):
    pass


class UnknownFeatureId(InkError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown feature id"


class MissingRole(InkError, LookupError):
    pass


class DegenerateTrainingSet(InkError, ValueError):
    pass
