"""Exception hierarchy shared across the package."""


class SpeechDFAError(Exception):
    """Base class for all errors raised by speechdfa."""


class PreconditionError(SpeechDFAError, ValueError):
    """An input violated a documented precondition (empty, non-finite, ...)."""


class InvalidGridError(SpeechDFAError, ValueError):
    """A scale grid is not usable for a series of the given length."""

    def __init__(self, message, scale=None):
        super().__init__(message)
        self.scale = scale


class InsufficientScalesError(SpeechDFAError, ValueError):
    """Too few usable scales for a log-log regression."""


class DegenerateSignalError(SpeechDFAError, ValueError):
    """Every fluctuation value is zero, so no exponent exists."""


class GenerationError(SpeechDFAError, RuntimeError):
    """A synthetic generator could not produce a valid realization."""


class NoSegmentsError(SpeechDFAError):
    """A clip was decoded but is shorter than one analysis window."""


class WavError(SpeechDFAError, ValueError):
    """Base class for WAV decoding failures. ``offset`` is the byte position."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class MalformedHeaderError(WavError):
    pass


class MissingChunkError(WavError):
    pass


class UnsupportedFormatError(WavError):
    pass


class TruncatedDataError(WavError):
    pass
