"""Sampled-signal containers and elementary transforms."""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import PreconditionError

__all__ = ["TimeSeries", "Segment", "mean", "segment", "as_samples"]


def as_samples(values):
    """Return `values` as a read-only contiguous float64 array.

    Raises
    ------
    PreconditionError
        If the input is empty, not one-dimensional, or holds NaN/Inf.
    """
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.ndim != 1:
        raise PreconditionError(f"expected a 1-D sequence of samples, got shape {arr.shape}")
    if arr.size == 0:
        raise PreconditionError("series is empty")
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise PreconditionError(f"sample {bad} is not finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled real-valued signal.

    Parameters
    ----------
    samples : array-like
        Amplitudes, stored as an immutable float64 array.
    sample_rate_hz : float
        Samples per second; must be positive.
    origin : str
        Free-text provenance (file path, generator name and seed, ...).
    """

    samples: np.ndarray
    sample_rate_hz: float = 1.0
    origin: str = ""

    def __post_init__(self):
        object.__setattr__(self, "samples", as_samples(self.samples))
        rate = float(self.sample_rate_hz)
        if not (np.isfinite(rate) and rate > 0):
            raise PreconditionError(f"sample_rate_hz must be positive, got {self.sample_rate_hz!r}")
        object.__setattr__(self, "sample_rate_hz", rate)

    def __len__(self):
        return self.samples.size

    @property
    def duration_seconds(self):
        return self.samples.size / self.sample_rate_hz


@dataclass(frozen=True)
class Segment:
    """A window ``[start_index, start_index + length)`` of a parent series."""

    parent_origin: str
    parent_length: int
    start_index: int
    length: int
    label: int = field(default=1)

    def __post_init__(self):
        if self.start_index < 0 or self.length < 1:
            raise PreconditionError("segment needs start_index >= 0 and length >= 1")
        if self.start_index + self.length > self.parent_length:
            raise PreconditionError("segment extends past the end of its parent")

    @property
    def stop_index(self):
        return self.start_index + self.length

    def extract(self, series):
        """Materialize this window of `series` as its own TimeSeries."""
        return TimeSeries(
            series.samples[self.start_index:self.stop_index],
            series.sample_rate_hz,
            f"{series.origin}#{self.label}",
        )


def mean(series):
    """Arithmetic mean of the samples of `series`."""
    samples = series.samples if isinstance(series, TimeSeries) else as_samples(series)
    return float(np.mean(samples))


def segment(series, window_seconds):
    """Cut `series` into consecutive non-overlapping windows.

    Each window holds ``floor(window_seconds * sample_rate_hz)`` samples. A
    trailing remainder shorter than one window is dropped. Labels are 1-based.

    Returns
    -------
    list of Segment
        Empty when the window is longer than the series.
    """
    if not window_seconds > 0:
        raise PreconditionError(f"window_seconds must be positive, got {window_seconds!r}")
    width = int(np.floor(window_seconds * series.sample_rate_hz))
    if width < 1:
        raise PreconditionError("window shorter than one sample at this sample rate")
    count = len(series) // width
    return [
        Segment(series.origin, len(series), i * width, width, i + 1)
        for i in range(count)
    ]
