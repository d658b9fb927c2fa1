"""Command-line front end.

Exit statuses: 0 success, 1 analysis failure, 2 usage error.
"""

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import classify
from .audio import ingest
from .dfa import default_grid, dfa
from .exceptions import SpeechDFAError
from .harness import run_suite
from .report import AnalysisRecord, emit_plot_data, format_records
from .synth import KINDS, GeneratorSpec, generate

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _add_classifier_args(p):
    p.add_argument("--threshold", type=float, default=classify.DEFAULT_THRESHOLD,
                   help="mode threshold on alpha (default: %(default)s)")
    p.add_argument("--direction", choices=("below", "above"), default="below",
                   help="which side of the threshold is recitation (default: below)")
    p.add_argument("--bands", type=Path, help="emotion band file, one 'name = centroid' per line")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser():
    parser = argparse.ArgumentParser(prog="speechdfa", description="DFA scaling exponents for speech recordings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze 16-bit PCM WAV files")
    p.add_argument("paths", nargs="*", type=Path)
    p.add_argument("--window-seconds", type=float, default=30.0)
    p.add_argument("--grid-min", type=int, default=16)
    p.add_argument("--grid-max", type=int, help="largest box size (default: N/4)")
    p.add_argument("--grid-count", type=int, default=20)
    p.add_argument("--crossover", type=int, help="also fit fast/slow exponents split at this box size")
    p.add_argument("--both-ends", action="store_true", help="tile boxes from both ends of the profile")
    p.add_argument("--envelope", type=float, metavar="MS",
                   help="analyze the RMS envelope over MS-millisecond frames instead of the waveform")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--plot-dir", type=Path, help="write log-log fluctuation curves here, one file per segment")
    p.add_argument("-o", "--output", type=Path, help="write records here instead of stdout")
    _add_classifier_args(p)

    p = sub.add_parser("synth", help="generate a synthetic series")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--length", type=int, default=2**16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hurst", type=float)
    p.add_argument("--format", choices=("csv", "f64le"), default="csv")
    p.add_argument("-o", "--output", type=Path)

    p = sub.add_parser("classify", help="label exponents read from a file or stdin")
    p.add_argument("input", nargs="?", default="-",
                   help="one alpha per line, or CSV with an 'alpha' column (default: stdin)")
    p.add_argument("--table2", action="store_true", help="use the bundled Table 2 fixture as input")
    p.add_argument("--phases", action="store_true",
                   help="emit per-clip reading minus recitation deltas as plot data")
    _add_classifier_args(p)

    p = sub.add_parser("validate", help="check exponent recovery on synthetic signals")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--length", type=int, default=2**16)
    p.add_argument("--corrupt-detrend", action="store_true", help=argparse.SUPPRESS)
    return parser


def _bands(args):
    return classify.load_bands(args.bands) if args.bands else classify.emotion_bands()


def _write(text, path=None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _analyze_file(path, args, bands):
    records, curves = [], []
    recitation_below = args.direction == "below"
    for seg, series in ingest(path, args.window_seconds, args.envelope):
        grid = default_grid(len(series), args.grid_min, args.grid_max, args.grid_count)
        try:
            report, curve = dfa(series, grid, args.crossover, args.both_ends, return_curve=True)
        except SpeechDFAError as exc:
            raise SpeechDFAError(f"segment #{seg.label}: {exc}") from exc
        records.append(AnalysisRecord(
            clip_id=str(path),
            segment_label=f"#{seg.label}",
            alpha=report.alpha,
            r_squared=report.r_squared,
            mode=classify.classify_mode(report.alpha, args.threshold, recitation_below),
            emotion=classify.classify_emotion(report.alpha, bands),
            grid_min=report.grid_min,
            grid_max=report.grid_max,
            scales_used=report.scales_used,
            alpha_fast=report.alpha_fast,
            alpha_slow=report.alpha_slow,
            crossover_scale=report.crossover_scale,
        ))
        curves.append(curve)
    return records, curves


def _safe_analyze(path, args, bands):
    try:
        return _analyze_file(path, args, bands), None
    except (SpeechDFAError, OSError) as exc:
        return None, f"{path}: {exc}"


def run_analyze(args):
    if not args.paths:
        raise UsageError("analyze needs at least one input file")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    bands = _bands(args)
    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        results = list(pool.map(lambda p: _safe_analyze(p, args, bands), args.paths))

    records, failed = [], False
    for path, (ok, err) in zip(args.paths, results):
        if err is not None:
            failed = True
            print(f"error: {err}", file=sys.stderr)
            continue
        recs, curves = ok
        records.extend(recs)
        if args.plot_dir is not None:
            args.plot_dir.mkdir(parents=True, exist_ok=True)
            for rec, curve in zip(recs, curves):
                name = f"{path.stem}_seg{rec.segment_label.lstrip('#')}.tsv"
                (args.plot_dir / name).write_text(emit_plot_data(curve), encoding="utf-8")
    _write(format_records(records, args.format), args.output)
    return EXIT_FAILURE if failed else EXIT_OK


def run_synth(args):
    try:
        spec = GeneratorSpec(args.kind, args.length, args.seed, args.hurst)
    except SpeechDFAError as exc:
        raise UsageError(str(exc)) from exc
    samples = generate(spec).samples
    if args.format == "f64le":
        data = samples.astype("<f8").tobytes()
        if args.output is None:
            sys.stdout.buffer.write(data)
        else:
            args.output.write_bytes(data)
    else:
        _write("".join(f"{float(v)!r}\n" for v in samples), args.output)
    return EXIT_OK


def _read_alpha_rows(text):
    lines = [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not lines:
        raise UsageError("no exponents in input")
    try:
        float(lines[0].split(",")[0])
    except ValueError:
        rows = list(csv.DictReader(io.StringIO("\n".join(lines))))
        if not rows or "alpha" not in rows[0]:
            raise UsageError("CSV input needs an 'alpha' column") from None
    else:
        rows = [{"alpha": line.split(",")[0]} for line in lines]
    try:
        for row in rows:
            row["alpha"] = float(row["alpha"])
    except ValueError as exc:
        raise UsageError(f"bad alpha value: {exc}") from None
    return rows


def run_classify(args):
    if args.table2:
        rows = classify.load_table2()
    else:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text(encoding="utf-8")
        rows = _read_alpha_rows(text)

    if args.phases:
        if not rows or "phase" not in rows[0] or "clip_id" not in rows[0]:
            raise UsageError("--phases needs input with clip_id and phase columns")
        clips = {}
        for row in rows:
            clips.setdefault(row["clip_id"], {}).setdefault(row["phase"], []).append(row["alpha"])
        diffs = []
        for clip_id, phases in clips.items():
            try:
                diffs.append(classify.compare_phases(
                    phases.get(classify.FREE_READING, []), phases.get(classify.RECITATION, []), clip_id
                ))
            except SpeechDFAError as exc:
                print(f"error: {clip_id}: {exc}", file=sys.stderr)
                return EXIT_FAILURE
        emit_plot_data(diffs, sys.stdout)
        return EXIT_OK

    bands = _bands(args)
    recitation_below = args.direction == "below"
    out, agree = [], 0
    for row in rows:
        mode = classify.classify_mode(row["alpha"], args.threshold, recitation_below)
        band = classify.classify_emotion(row["alpha"], bands)
        rec = {k: row[k] for k in ("clip_id", "segment", "phase") if k in row}
        rec.update(alpha=row["alpha"], mode=mode.value, threshold=mode.threshold_used,
                   emotion=band.name, emotion_centroid=band.centroid)
        agree += rec.get("phase") == mode.value
        out.append(rec)
    if "phase" in rows[0]:
        print(f"mode agrees with phase column for {agree} of {len(rows)} rows", file=sys.stderr)

    if args.format == "json":
        sys.stdout.write(json.dumps(out, indent=2) + "\n")
    else:
        writer = csv.DictWriter(sys.stdout, fieldnames=list(out[0]), lineterminator="\n")
        writer.writeheader()
        for rec in out:
            writer.writerow({k: repr(v) if isinstance(v, float) else v for k, v in rec.items()})
    return EXIT_OK


def run_validate(args):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    order = 0 if args.corrupt_detrend else 1
    results = run_suite(args.trials, args.seed, args.length, detrend_order=order)
    print(f"{'target':<14}{'expected':>10}{'median':>10}{'tol':>8}  result  (trials={args.trials}, N={args.length})")
    for r in results:
        print(f"{r.target.name:<14}{r.target.alpha:>10.3f}{r.median_alpha:>10.4f}{r.tolerance:>8.3f}  "
              f"{'PASS' if r.passed else 'FAIL'}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILURE


COMMANDS = {
    "analyze": run_analyze,
    "synth": run_synth,
    "classify": run_classify,
    "validate": run_validate,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"speechdfa {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpeechDFAError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
