"""16-bit PCM WAV ingestion.

Only integer PCM at 16 bits per sample is accepted. Samples are scaled by
1/32768 so that code 0x8000 maps to exactly -1.0.
"""

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import (
    MalformedHeaderError,
    MissingChunkError,
    NoSegmentsError,
    PreconditionError,
    TruncatedDataError,
    UnsupportedFormatError,
)
from .timeseries import TimeSeries, segment

__all__ = [
    "WavInfo",
    "SCALE",
    "decode_wav",
    "encode_wav",
    "mixdown",
    "envelope",
    "ingest",
]

SCALE = 32768.0
_PCM = 0x0001
_EXTENSIBLE = 0xFFFE


@dataclass(frozen=True)
class WavInfo:
    sample_rate_hz: int
    channels: int
    bits_per_sample: int
    frame_count: int


def _chunks(data):
    """Yield ``(chunk_id, body_offset, declared_size)`` after the RIFF header."""
    pos = 12
    while pos < len(data):
        if pos + 8 > len(data):
            raise MalformedHeaderError("incomplete chunk header", pos)
        chunk_id = data[pos:pos + 4]
        (size,) = struct.unpack_from("<I", data, pos + 4)
        yield chunk_id, pos + 8, size
        # chunks are word aligned
        pos += 8 + size + (size & 1)


def _parse_fmt(data, offset, size):
    if size < 16 or offset + 16 > len(data):
        raise MalformedHeaderError(f"fmt chunk too short ({size} bytes)", offset)
    tag, channels, rate, _byte_rate, block_align, bits = struct.unpack_from("<HHIIHH", data, offset)
    if tag == _EXTENSIBLE:
        if size < 40 or offset + 40 > len(data):
            raise MalformedHeaderError("extensible fmt chunk too short", offset)
        (tag,) = struct.unpack_from("<H", data, offset + 24)
    if tag != _PCM:
        raise UnsupportedFormatError(f"format tag 0x{tag:04X} is not integer PCM", offset)
    if bits != 16:
        raise UnsupportedFormatError(f"{bits}-bit samples are not supported (16 only)", offset + 14)
    if channels < 1:
        raise MalformedHeaderError("channel count is zero", offset + 2)
    if rate < 1:
        raise MalformedHeaderError("sample rate is zero", offset + 4)
    if block_align != 2 * channels:
        raise MalformedHeaderError(
            f"block align {block_align} does not match {channels} channel(s) of 16 bits", offset + 12
        )
    return channels, rate


def decode_wav(data):
    """Decode a RIFF/WAVE byte string.

    Returns
    -------
    info : WavInfo
    channels : list of numpy.ndarray
        One float64 array per channel, values in ``[-1, 1)``.

    Raises
    ------
    MalformedHeaderError, MissingChunkError, UnsupportedFormatError, TruncatedDataError
        Each carries the byte ``offset`` where decoding stopped.
    """
    data = bytes(data)
    if len(data) < 12:
        raise MalformedHeaderError("file shorter than a RIFF header", 0)
    if data[0:4] != b"RIFF":
        raise MalformedHeaderError("missing 'RIFF' signature", 0)
    if data[8:12] != b"WAVE":
        raise MalformedHeaderError("RIFF form type is not 'WAVE'", 8)

    fmt = None
    for chunk_id, offset, size in _chunks(data):
        if chunk_id == b"fmt ":
            fmt = _parse_fmt(data, offset, size)
        elif chunk_id == b"data":
            if fmt is None:
                raise MissingChunkError("data chunk precedes fmt chunk", offset - 8)
            channels, rate = fmt
            if offset + size > len(data):
                raise TruncatedDataError(
                    f"data chunk declares {size} bytes but only {len(data) - offset} remain", offset
                )
            block = 2 * channels
            if size % block:
                raise TruncatedDataError(
                    f"data chunk size {size} is not a whole number of {block}-byte frames",
                    offset + size - size % block,
                )
            frames = size // block
            codes = np.frombuffer(data, dtype="<i2", count=frames * channels, offset=offset)
            codes = codes.reshape(frames, channels)
            info = WavInfo(rate, channels, 16, frames)
            return info, [codes[:, c].astype(np.float64) / SCALE for c in range(channels)]
    if fmt is None:
        raise MissingChunkError("no fmt chunk found", len(data))
    raise MissingChunkError("no data chunk found", len(data))


def encode_wav(codes, sample_rate_hz, channels=1):
    """Build a canonical 44-byte-header PCM WAV from int16 codes.

    `codes` is interleaved, or 2-D with shape ``(frames, channels)``.
    """
    arr = np.asarray(codes)
    if arr.ndim == 2:
        channels = arr.shape[1]
    body = arr.astype("<i2").tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(body), b"WAVE",
        b"fmt ", 16, _PCM, channels, int(sample_rate_hz),
        int(sample_rate_hz) * 2 * channels, 2 * channels, 16,
        b"data", len(body),
    )
    return header + body


def mixdown(channels, sample_rate_hz=1.0, origin=""):
    """Average channels frame by frame; a single channel passes through."""
    channels = [np.asarray(c, dtype=np.float64) for c in channels]
    if not channels:
        raise PreconditionError("mixdown needs at least one channel")
    lengths = {c.size for c in channels}
    if len(lengths) != 1:
        raise PreconditionError(f"channel lengths differ: {sorted(lengths)}")
    mixed = channels[0] if len(channels) == 1 else np.mean(np.vstack(channels), axis=0)
    return TimeSeries(mixed, sample_rate_hz, origin)


def envelope(series, frame_ms):
    """RMS of the rectified signal over non-overlapping frames of `frame_ms`."""
    width = int(round(frame_ms * series.sample_rate_hz / 1000.0))
    if width < 1:
        raise PreconditionError(f"envelope frame of {frame_ms} ms is shorter than one sample")
    frames = len(series) // width
    if frames < 1:
        raise PreconditionError("series shorter than one envelope frame")
    x = np.abs(series.samples[:frames * width]).reshape(frames, width)
    rms = np.sqrt(np.mean(x * x, axis=1))
    return TimeSeries(rms, series.sample_rate_hz / width, f"{series.origin}:envelope={frame_ms}ms")


def ingest(path, window_seconds=30.0, envelope_ms=None):
    """Decode, mix down, and segment one clip.

    Returns
    -------
    list of (Segment, TimeSeries)

    Raises
    ------
    NoSegmentsError
        If the clip is shorter than one window.
    """
    path = Path(path)
    info, channels = decode_wav(path.read_bytes())
    series = mixdown(channels, info.sample_rate_hz, str(path))
    if envelope_ms is not None:
        series = envelope(series, envelope_ms)
    segments = segment(series, window_seconds)
    if not segments:
        raise NoSegmentsError(
            f"{path}: {series.duration_seconds:.2f} s of audio is shorter than the "
            f"{window_seconds} s analysis window"
        )
    return [(seg, seg.extract(series)) for seg in segments]
