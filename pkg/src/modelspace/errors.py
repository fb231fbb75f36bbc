"""Exception hierarchy. Every error carries a machine-readable ``code``."""


class ModelSpaceError(Exception):
    code = "ERROR"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class ValidationError(ModelSpaceError, ValueError):
    code = "VALIDATION"


class SpecParseError(ValidationError):
    code = "SPEC_PARSE"


class PoleError(ModelSpaceError, ZeroDivisionError):
    code = "POLE"


class DiskParameterError(ValidationError):
    code = "OUT_OF_DISK"


class MixedSpecError(ValidationError):
    code = "MIXED_SPEC"


class WindowError(ValidationError):
    code = "WINDOW"


class EmptySpectrumError(ModelSpaceError):
    code = "EMPTY_SPECTRUM"


class SampleAlignmentError(ValidationError):
    code = "SAMPLE_ALIGNMENT"


class SpectralError(ModelSpaceError, ArithmeticError):
    """A computed spectrum failed its own residual or orthogonality check."""

    code = "SPECTRAL_CHECK"


class CalibrationError(ModelSpaceError):
    code = "CALIBRATION"
