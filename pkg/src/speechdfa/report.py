"""Per-segment analysis records and their text encodings."""

import csv
import io
import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .classify import EmotionBand, ModeLabel, PhaseDifference
from .dfa import FluctuationCurve
from .exceptions import PreconditionError

__all__ = [
    "AnalysisRecord",
    "records_to_csv",
    "records_from_csv",
    "records_to_json",
    "records_from_json",
    "format_records",
    "emit_plot_data",
]


@dataclass(frozen=True)
class AnalysisRecord:
    clip_id: str
    segment_label: str
    alpha: float
    r_squared: float
    mode: ModeLabel
    emotion: EmotionBand
    grid_min: int
    grid_max: int
    scales_used: int
    alpha_fast: Optional[float] = None
    alpha_slow: Optional[float] = None
    crossover_scale: Optional[int] = None

    def to_flat(self):
        """Flat dict; nested labels become ``mode``/``threshold`` and ``emotion``/``emotion_centroid``."""
        return {
            "clip_id": self.clip_id,
            "segment_label": self.segment_label,
            "alpha": self.alpha,
            "r_squared": self.r_squared,
            "mode": self.mode.value,
            "threshold": self.mode.threshold_used,
            "emotion": self.emotion.name,
            "emotion_centroid": self.emotion.centroid,
            "grid_min": self.grid_min,
            "grid_max": self.grid_max,
            "scales_used": self.scales_used,
            "alpha_fast": self.alpha_fast,
            "alpha_slow": self.alpha_slow,
            "crossover_scale": self.crossover_scale,
        }

    @classmethod
    def from_flat(cls, row):
        def opt(value, kind):
            return None if value is None or value == "" else kind(value)

        return cls(
            clip_id=str(row["clip_id"]),
            segment_label=str(row["segment_label"]),
            alpha=float(row["alpha"]),
            r_squared=float(row["r_squared"]),
            mode=ModeLabel(str(row["mode"]), float(row["threshold"])),
            emotion=EmotionBand(str(row["emotion"]), float(row["emotion_centroid"])),
            grid_min=int(row["grid_min"]),
            grid_max=int(row["grid_max"]),
            scales_used=int(row["scales_used"]),
            alpha_fast=opt(row.get("alpha_fast"), float),
            alpha_slow=opt(row.get("alpha_slow"), float),
            crossover_scale=opt(row.get("crossover_scale"), int),
        )


COLUMNS = list(AnalysisRecord(
    "", "", 0.0, 0.0, ModeLabel("", 0.0), EmotionBand("", 0.0), 0, 0, 0
).to_flat())


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        # repr is the shortest string that round-trips exactly
        return repr(value)
    return str(value)


def records_to_csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for rec in records:
        flat = rec.to_flat()
        writer.writerow([_cell(flat[c]) for c in COLUMNS])
    return buf.getvalue()


def records_from_csv(text):
    return [AnalysisRecord.from_flat(row) for row in csv.DictReader(io.StringIO(text))]


def records_to_json(records):
    return json.dumps([rec.to_flat() for rec in records], indent=2) + "\n"


def records_from_json(text):
    return [AnalysisRecord.from_flat(row) for row in json.loads(text)]


def format_records(records, fmt="csv"):
    if fmt == "csv":
        return records_to_csv(records)
    if fmt == "json":
        return records_to_json(records)
    raise PreconditionError(f"unknown output format {fmt!r}")


def emit_plot_data(data, stream=None):
    """Write two-column plot data with a single header row.

    A FluctuationCurve gives ``log10_n log10_F`` rows (points with ``F = 0``
    are skipped). A list of PhaseDifference gives ``clip_id delta`` rows.

    Returns the text, and also writes it to `stream` when one is given.
    """
    lines = []
    if isinstance(data, FluctuationCurve):
        scales, flucts = data.usable()
        if scales.size == 0:
            raise PreconditionError("curve has no points with F > 0")
        lines.append("log10_n\tlog10_F")
        for n, f in zip(np.log10(scales.astype(np.float64)), np.log10(flucts)):
            lines.append(f"{float(n)!r}\t{float(f)!r}")
    else:
        diffs = list(data)
        if not diffs:
            raise PreconditionError("no phase differences to emit")
        if not all(isinstance(d, PhaseDifference) for d in diffs):
            raise PreconditionError("expected a FluctuationCurve or a list of PhaseDifference")
        lines.append("clip_id\tdelta")
        for d in diffs:
            lines.append(f"{d.clip_id}\t{d.delta!r}")
    text = "\n".join(lines) + "\n"
    if stream is not None:
        stream.write(text)
    return text

