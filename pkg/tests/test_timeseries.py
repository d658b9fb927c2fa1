import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from speechdfa.exceptions import PreconditionError
from speechdfa.timeseries import TimeSeries, mean, segment

finite = st.floats(-1e6, 1e6, allow_nan=False)


@pytest.mark.parametrize("values, expected", [
    ([1, 2, 3], 2.0),
    ([5], 5.0),
    ([0.1, 0.2, 0.4, 0.3], 0.25),
])
def test_mean(values, expected):
    assert mean(TimeSeries(values)) == pytest.approx(expected, rel=1e-15)


def test_mean_rejects_empty():
    with pytest.raises(PreconditionError):
        mean([])


@pytest.mark.parametrize("bad", [[1.0, np.nan], [np.inf]])
def test_timeseries_rejects_non_finite(bad):
    with pytest.raises(PreconditionError):
        TimeSeries(bad)


def test_timeseries_rejects_bad_rate():
    with pytest.raises(PreconditionError):
        TimeSeries([1.0], 0.0)


def test_samples_are_immutable():
    ts = TimeSeries([1.0, 2.0])
    with pytest.raises(ValueError):
        ts.samples[0] = 3.0


@given(st.lists(finite, min_size=1, max_size=200), finite)
def test_mean_translation_equivariant(values, c):
    x = np.array(values)
    shifted = mean(TimeSeries(x + c))
    scale = max(1.0, np.abs(x).max(), abs(c))
    assert abs(shifted - (mean(TimeSeries(x)) + c)) <= 1e-12 * scale


def test_segment_three_thirty_second_windows():
    ts = TimeSeries(np.zeros(90 * 22050), 22050)
    segs = segment(ts, 30)
    assert [s.length for s in segs] == [661500] * 3
    assert [s.label for s in segs] == [1, 2, 3]


def test_segment_drops_remainder():
    ts = TimeSeries(np.arange(10.0), 1.0)
    segs = segment(ts, 3)
    assert [(s.start_index, s.stop_index) for s in segs] == [(0, 3), (3, 6), (6, 9)]


def test_segment_window_shorter_than_a_sample():
    with pytest.raises(PreconditionError):
        segment(TimeSeries(np.ones(5), 1.0), 0.5)


def test_segment_window_longer_than_series():
    assert segment(TimeSeries(np.ones(5), 1.0), 10) == []


def test_segment_extract_origin():
    ts = TimeSeries(np.arange(6.0), 1.0, "clip.wav")
    seg = segment(ts, 3)[1]
    sub = seg.extract(ts)
    assert sub.origin == "clip.wav#2"
    np.testing.assert_array_equal(sub.samples, [3, 4, 5])


@settings(max_examples=60)
@given(st.integers(1, 500), st.floats(0.5, 50), st.floats(1, 40))
def test_segment_partition(n, rate, window):
    assume(window * rate >= 1)
    ts = TimeSeries(np.arange(n, dtype=float), rate)
    segs = segment(ts, window)
    w = int(np.floor(window * rate))
    assert sum(s.length for s in segs) == (n // w) * w
    if segs:
        joined = np.concatenate([s.extract(ts).samples for s in segs])
        np.testing.assert_array_equal(joined, ts.samples[:joined.size])
        for a, b in zip(segs, segs[1:]):
            assert a.stop_index == b.start_index
