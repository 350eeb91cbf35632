"""Exception types shared across the package."""


class AccessLensError(Exception):
    """Base class for all package errors."""


class UnknownClass(AccessLensError):
    """A token or id does not name any inaccessibility class."""


class ParseError(AccessLensError):
    """A file is structurally malformed."""


class ValidationError(AccessLensError):
    """A file parsed but violates schema-level invariants."""

    def __init__(self, message: str, diagnostics: list[str] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class EmptyDataset(AccessLensError):
    """An operation needs at least one image."""


class AdapterUnavailable(AccessLensError):
    """The remote model server cannot be reached."""


class MissingPrecomputed(AccessLensError):
    """No precomputed detections exist for the requested image."""


class DegenerateBox(AccessLensError):
    """A box has non-positive width or height."""


class NoGroundTruth(AccessLensError):
    """AP is undefined for a class with zero ground-truth boxes."""


class NoEvaluableClasses(AccessLensError):
    """Every ground-truth box belongs to the non-evaluable class."""


class InconsistentInput(AccessLensError):
    """A detection references an image or class outside the ground truth."""


class DuplicateDesignId(AccessLensError):
    """Two dictionary entries share a design id."""


class UnknownObjectClass(AccessLensError):
    """The requested object class is not in the catalog."""


class UnknownCategory(AccessLensError):
    """The requested category is not actuation, constraint, or indication."""


class UnmappedClass(AccessLensError):
    """The detection class has no target objects to recommend for."""


class MissingGroundTruth(AccessLensError):
    """A submission references a design with no reference label."""


class NoValidSubmissions(AccessLensError):
    """Accuracy is undefined with zero accepted submissions."""


class BadImage(AccessLensError):
    """The uploaded payload is not a decodable raster image."""


class PayloadTooLarge(AccessLensError):
    """The uploaded payload exceeds the configured size limit."""


class NotFound(AccessLensError):
    """No stored scan exists for the requested id."""
