"""Exception types raised across the package."""


class TwoSDSError(Exception):
    """Base class for all errors raised by twosds."""


class IngestionError(TwoSDSError, ValueError):
    """A frame source could not be read or produced an invalid frame."""


class SegmenterError(TwoSDSError, RuntimeError):
    """The streaming segmenter was driven outside its contract."""


class SelectionError(TwoSDSError, ValueError):
    pass


class DetectionsError(TwoSDSError, ValueError):
    """Malformed or out-of-order detector output."""


class EvaluationError(TwoSDSError, ValueError):
    pass
