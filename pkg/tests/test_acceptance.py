"""Exit criteria for the package; one test per criterion.

Run ``pytest tests/test_acceptance.py -v`` to see the PASS/FAIL table at the
end of the session.
"""

import time

import numpy as np
import pytest

from oracles import naive_fluctuation, naive_profile
from speechdfa.audio import decode_wav
from speechdfa.classify import (
    FREE_READING,
    RECITATION,
    classify_mode,
    compare_phases,
    emotion_bands,
    load_table2,
)
from speechdfa.cli import main
from speechdfa.dfa import FluctuationCurve, ScaleGrid, default_grid, dfa, fit_scaling_exponent, fluctuation_function, integrate_profile
from speechdfa.exceptions import MalformedHeaderError, MissingChunkError, TruncatedDataError, UnsupportedFormatError
from speechdfa.synth import GeneratorSpec, generate

pytestmark = pytest.mark.acceptance


def _clip_rows(rows, clip, phase):
    return [r for r in rows if r["clip_id"] == f"clip{clip}" and r["phase"] == phase]


@pytest.mark.criterion("AC1 synthetic exponent recovery (median of 50, N=2^16, <60 s)")
def test_ac1_synthetic_recovery():
    windows = [
        ("white", None, 0.45, 0.55),
        ("random_walk", None, 1.40, 1.60),
        ("one_over_f", None, 0.90, 1.10),
        ("fgn", 0.3, 0.25, 0.35),
        ("fgn", 0.8, 0.75, 0.85),
    ]
    start = time.perf_counter()
    medians = {}
    for kind, hurst, lo, hi in windows:
        alphas = [dfa(generate(GeneratorSpec(kind, 2**16, seed, hurst))).alpha for seed in range(50)]
        medians[(kind, hurst)] = float(np.median(alphas))
    elapsed = time.perf_counter() - start
    print(f"AC1 medians {medians} in {elapsed:.1f} s")
    for kind, hurst, lo, hi in windows:
        assert lo <= medians[(kind, hurst)] <= hi, (kind, hurst, medians[(kind, hurst)])
    assert elapsed < 60


@pytest.mark.criterion("AC2 F(n) equals naive reference on 200 series, rel 1e-9, <5 s")
def test_ac2_oracle_equivalence():
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(16, 513))
        x = rng.normal(size=n) * rng.uniform(0.1, 10) + rng.uniform(-5, 5)
        grid = ScaleGrid(tuple(range(4, n // 4 + 1)))
        curve = fluctuation_function(integrate_profile(x), grid)
        xs = x.tolist()
        ys = naive_profile(xs)
        for s, f in curve.points:
            ref = naive_fluctuation(xs, s, ys)
            worst = max(worst, abs(f - ref) / ref)
    elapsed = time.perf_counter() - start
    print(f"AC2 worst relative error {worst:.2e} in {elapsed:.2f} s")
    assert worst <= 1e-9
    assert elapsed < 5


@pytest.mark.criterion("AC3 affine invariance of alpha, 100 series, tol 1e-9")
def test_ac3_affine_invariance():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(100):
        x = rng.normal(size=4096)
        if rng.random() < 0.5:
            x = np.cumsum(x)
        a, b = rng.uniform(0.1, 10), rng.uniform(-5, 5)
        worst = max(worst, abs(dfa(a * x + b).alpha - dfa(x).alpha))
    print(f"AC3 worst |delta alpha| {worst:.2e}")
    assert worst <= 1e-9


@pytest.mark.criterion("AC4 exact power law F=3n^0.7 -> alpha 0.7 (1e-9), r^2 >= 1-1e-12")
def test_ac4_exact_power_law():
    scales = np.array(default_grid(2**16).box_sizes)
    rep = fit_scaling_exponent(FluctuationCurve(scales, 3.0 * scales.astype(float) ** 0.7, 2**16))
    assert abs(rep.alpha - 0.7) <= 1e-9
    assert rep.r_squared >= 1 - 1e-12


@pytest.mark.criterion("AC5 Table 2 mode classification: 26 of 30 at threshold 0.3")
def test_ac5_table2_mode_regression():
    rows = load_table2()
    assert len(rows) == 30
    misses = [(r["clip_id"], r["segment"], r["phase"], r["alpha"])
              for r in rows if classify_mode(r["alpha"], 0.3).value != r["phase"]]
    print(f"AC5 misses {misses}")
    assert len(rows) - len(misses) == 26
    assert sorted(misses) == sorted([
        ("clip1", 3, FREE_READING, 0.293),
        ("clip5", 1, RECITATION, 0.421),
        ("clip5", 2, RECITATION, 0.429),
        ("clip5", 3, RECITATION, 0.403),
    ])


@pytest.mark.criterion("AC6 phase deltas +0.0910 +0.0823 +0.0690 +0.0687 -0.0430 (5e-4) and ordering")
def test_ac6_phase_differences():
    rows = load_table2()
    deltas = []
    for clip in range(1, 6):
        d = compare_phases(
            [r["alpha"] for r in _clip_rows(rows, clip, FREE_READING)],
            [r["alpha"] for r in _clip_rows(rows, clip, RECITATION)],
            f"clip{clip}",
        )
        deltas.append(d.delta)
    print(f"AC6 deltas {np.round(deltas, 4).tolist()}")
    np.testing.assert_allclose(deltas, [0.0910, 0.0823, 0.0690, 0.0687, -0.0430], atol=5e-4)
    d1, d2, d3, d4, d5 = deltas
    assert d1 == max(deltas)
    assert d1 > d2 > d3 and d2 > d4 and min(d3, d4) > 0 > d5
    assert abs(d3 - d4) < 0.01


@pytest.mark.criterion("AC7 emotion centroids strictly increase fun -> sorrow")
def test_ac7_emotion_ordering():
    rows = load_table2()
    bands = emotion_bands()
    assert [b.name for b in bands] == ["fun", "happy", "romance_slow", "romance_fast", "sorrow"]
    for clip, band in enumerate(bands, 1):
        means = np.mean([r["alpha"] for r in _clip_rows(rows, clip, RECITATION)])
        assert band.centroid == pytest.approx(means, abs=1e-12)
    assert all(a.centroid < b.centroid for a, b in zip(bands, bands[1:]))


@pytest.mark.criterion("AC8 WAV fixtures decode exactly; malformed fixtures raise distinct errors")
def test_ac8_wav_fixtures(fixtures_dir):
    _, (mono,) = decode_wav((fixtures_dir / "mono_7fff.wav").read_bytes())
    assert mono.tolist() == [32767 / 32768] * 4
    _, (neg,) = decode_wav((fixtures_dir / "mono_8000.wav").read_bytes())
    assert neg.tolist() == [-1.0, -1.0]
    _, (left, right) = decode_wav((fixtures_dir / "stereo_4000_c000.wav").read_bytes())
    assert left.tolist() == [0.5, 0.5] and right.tolist() == [-0.5, -0.5]

    expected = {
        "bad_signature.wav": MalformedHeaderError,
        "float32.wav": UnsupportedFormatError,
        "no_data.wav": MissingChunkError,
        "truncated.wav": TruncatedDataError,
    }
    for name, error in expected.items():
        with pytest.raises(error) as info:
            decode_wav((fixtures_dir / name).read_bytes())
        assert type(info.value) is error
        assert info.value.offset >= 0


@pytest.mark.criterion("AC9 analyze output byte-identical with 1 and 8 workers")
def test_ac9_determinism(tmp_path, make_wav):
    paths = [str(make_wav(f"clip{i}.wav", 12, rate=4000, channels=1 + i % 2, seed=i)) for i in range(6)]
    outputs = {}
    for workers in (1, 8):
        for fmt in ("csv", "json"):
            out = tmp_path / f"w{workers}.{fmt}"
            code = main(["analyze", *paths, "--window-seconds", "4", "--workers", str(workers),
                         "--format", fmt, "-o", str(out)])
            assert code == 0
            outputs[(workers, fmt)] = out.read_bytes()
    assert outputs[(1, "csv")] == outputs[(8, "csv")]
    assert outputs[(1, "json")] == outputs[(8, "json")]
