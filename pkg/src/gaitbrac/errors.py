"""Exception hierarchy shared by all gaitbrac modules.

Every error the library raises on bad input or bad state derives from
:class:`GaitBracError`, so callers (and the CLI) can catch one type and
report the subclass name as a machine-readable code.
"""


class GaitBracError(Exception):
    """Base class for all gaitbrac errors."""


# --- ingestion / data model ---

class MalformedFile(GaitBracError):
    """File does not conform to the expected CSV layout."""


class NonMonotonicTime(GaitBracError):
    """Stream timestamps are not strictly increasing."""


class UnknownDevice(GaitBracError):
    """Device name not in the published device catalog."""


class UnknownSensor(GaitBracError):
    """Sensor name unknown, or not available on the given device."""


class EmptyStream(GaitBracError):
    """A sensor stream has fewer than two samples."""


class DuplicateSubject(GaitBracError):
    """A subject id appears more than once in a label file."""


class NegativeBrac(GaitBracError):
    """A BrAC label is negative."""


# --- signal processing ---

class WindowEmpty(GaitBracError):
    """Too few samples inside the requested time window."""


class EvenWindow(GaitBracError):
    """SMA window length must be an odd positive integer."""


class EmptySignal(GaitBracError):
    """Operation requires a non-empty signal."""


class NonFiniteInput(GaitBracError):
    """Input contains NaN or infinite values."""


# --- feature extraction ---

class TooShort(GaitBracError):
    """Signal too short for the requested feature family."""


class MissingSensor(GaitBracError):
    """A required sensor stream is absent from the recording."""


class MissingDevice(GaitBracError):
    """A device in the requested mask is absent from the recording."""


class CatalogMismatch(GaitBracError):
    """Two feature vectors do not share the same catalog."""


# --- models ---

class EmptyData(GaitBracError):
    """Training called with zero rows."""


class NonBinaryLabels(GaitBracError):
    """Classification targets must be in {0, 1}."""


class SingleClass(GaitBracError):
    """Operation requires both classes to be present."""


class DegenerateWeights(GaitBracError):
    """Sample weights sum to zero."""


class DimensionMismatch(GaitBracError):
    """Feature count differs from the model's training dimensionality."""


class MalformedModelFile(GaitBracError):
    """Model file is truncated or does not parse."""


class CatalogFingerprintMismatch(GaitBracError):
    """Model was trained against a different feature catalog."""


# --- evaluation ---

class TooFewSubjects(GaitBracError):
    """Leave-one-subject-out needs at least three subjects."""


class SingleClassAtThreshold(GaitBracError):
    """All subjects fall on one side of the chosen BrAC threshold."""


class LengthMismatch(GaitBracError):
    """Paired sequences have different lengths."""


# --- synthetic data ---

class InvalidProfile(GaitBracError):
    """Subject profile fields out of range."""


class BadDistribution(GaitBracError):
    """Requested dataset size or BrAC distribution is invalid."""


# --- orchestration ---

class MissingSession(GaitBracError):
    """A subject lacks a Before or After recording."""


class MissingLabel(GaitBracError):
    """A subject has recordings but no BrAC label."""
