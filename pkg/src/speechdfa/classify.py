"""Speech-act labels derived from DFA exponents.

Two rules are provided. The reading mode is decided by a single threshold
(default 0.3, with exponents below it labelled recitation). The emotion band
is the nearest of five centroids, which are the mean recitation exponents of
the bundled ``table2.csv`` fixture.
"""

import csv
import io
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .exceptions import PreconditionError

__all__ = [
    "RECITATION",
    "FREE_READING",
    "DEFAULT_THRESHOLD",
    "BAND_NAMES",
    "TABLE2_RECITATION",
    "TABLE2_READING",
    "ModeLabel",
    "EmotionBand",
    "PhaseDifference",
    "classify_mode",
    "emotion_bands",
    "classify_emotion",
    "compare_phases",
    "load_bands",
    "parse_bands",
    "load_table2",
]

RECITATION = "recitation"
FREE_READING = "free_reading"
DEFAULT_THRESHOLD = 0.3
BAND_NAMES = ("fun", "happy", "romance_slow", "romance_fast", "sorrow")

# Per-clip segment exponents, clips 1-5 in BAND_NAMES order.
TABLE2_READING = (
    (0.314, 0.324, 0.293),
    (0.303, 0.322, 0.316),
    (0.353, 0.302, 0.326),
    (0.379, 0.372, 0.322),
    (0.368, 0.376, 0.380),
)
TABLE2_RECITATION = (
    (0.216, 0.236, 0.206),
    (0.221, 0.236, 0.237),
    (0.254, 0.270, 0.250),
    (0.290, 0.284, 0.293),
    (0.421, 0.429, 0.403),
)

_TIE_TOL = 1e-12


@dataclass(frozen=True)
class ModeLabel:
    value: str
    threshold_used: float


@dataclass(frozen=True)
class EmotionBand:
    name: str
    centroid: float


@dataclass(frozen=True)
class PhaseDifference:
    clip_id: str
    mean_reading_alpha: float
    mean_recitation_alpha: float
    delta: float


def classify_mode(alpha, threshold=DEFAULT_THRESHOLD, recitation_below=True):
    """Label an exponent as recitation or free reading.

    With the default direction, ``alpha < threshold`` is recitation and
    ``alpha >= threshold`` (boundary included) is free reading.
    ``recitation_below=False`` flips the rule: ``alpha > threshold`` is
    recitation and the boundary still goes to free reading.
    """
    alpha = float(alpha)
    if not np.isfinite(alpha):
        raise PreconditionError(f"alpha must be finite, got {alpha!r}")
    below = alpha < threshold if recitation_below else alpha > threshold
    return ModeLabel(RECITATION if below else FREE_READING, float(threshold))


def _check_bands(bands):
    bands = list(bands)
    if not bands:
        raise PreconditionError("at least one emotion band is required")
    names = [b.name for b in bands]
    if len(set(names)) != len(names):
        raise PreconditionError(f"duplicate band names in {names}")
    for a, b in zip(bands, bands[1:]):
        if not a.centroid < b.centroid:
            raise PreconditionError(
                f"band centroids must strictly increase ({a.name}={a.centroid}, {b.name}={b.centroid})"
            )
    return bands


def emotion_bands():
    """The five default bands, centroids from the Table 2 recitation means."""
    return [
        EmotionBand(name, float(np.mean(values)))
        for name, values in zip(BAND_NAMES, TABLE2_RECITATION)
    ]


def classify_emotion(alpha, bands=None):
    """Nearest-centroid band for `alpha`; exact ties go to the lower centroid."""
    alpha = float(alpha)
    if not np.isfinite(alpha):
        raise PreconditionError(f"alpha must be finite, got {alpha!r}")
    bands = emotion_bands() if bands is None else _check_bands(bands)
    best, best_dist = None, np.inf
    for band in bands:
        dist = abs(alpha - band.centroid)
        if dist < best_dist - _TIE_TOL:
            best, best_dist = band, dist
    return best


def compare_phases(reading_alphas, recitation_alphas, clip_id=""):
    """Mean reading exponent minus mean recitation exponent."""
    reading = np.asarray(reading_alphas, dtype=np.float64)
    recitation = np.asarray(recitation_alphas, dtype=np.float64)
    if reading.size == 0 or recitation.size == 0:
        raise PreconditionError("both reading and recitation exponents are required")
    r, c = float(reading.mean()), float(recitation.mean())
    return PhaseDifference(str(clip_id), r, c, r - c)


def parse_bands(text):
    """Parse ``name = centroid`` lines (``#`` comments and blanks ignored).

    The result is sorted by centroid.
    """
    bands = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        if not sep:
            name, sep, value = line.partition(":")
        name = name.strip()
        try:
            centroid = float(value)
        except ValueError:
            raise PreconditionError(f"line {lineno}: expected 'name = centroid', got {raw!r}") from None
        if not sep or not name or not np.isfinite(centroid):
            raise PreconditionError(f"line {lineno}: expected 'name = centroid', got {raw!r}")
        bands.append(EmotionBand(name, centroid))
    return _check_bands(sorted(bands, key=lambda b: b.centroid))


def load_bands(path):
    with open(path, encoding="utf-8") as fh:
        return parse_bands(fh.read())


def load_table2():
    """Rows of the bundled Table 2 fixture as dicts (``alpha`` as float)."""
    text = resources.files("speechdfa").joinpath("data/table2.csv").read_text(encoding="utf-8")
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    rows = list(csv.DictReader(io.StringIO("\n".join(lines))))
    for row in rows:
        row["alpha"] = float(row["alpha"])
        row["segment"] = int(row["segment"])
    return rows
