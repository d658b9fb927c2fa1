from pathlib import Path

import numpy as np
import pytest

from speechdfa.audio import encode_wav

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def make_wav(tmp_path):
    """Write a seeded white-noise WAV and return its path."""

    def _make(name, seconds, rate=8000, channels=1, seed=0):
        rng = np.random.default_rng(seed)
        frames = int(seconds * rate)
        codes = np.clip(rng.normal(0, 4000, (frames, channels)), -32768, 32767).astype(np.int16)
        path = tmp_path / name
        path.write_bytes(encode_wav(codes, rate))
        return path

    return _make


_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit-criterion tests")
    config.addinivalue_line("markers", "criterion(name): label printed in the acceptance summary")


def pytest_runtest_logreport(report):
    if report.when == "call" or report.outcome != "passed":
        name = _criterion_names.get(report.nodeid)
        if name is not None:
            _criteria[name] = report.outcome.upper()


_criterion_names = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criterion_names[item.nodeid] = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        terminalreporter.write_line(f"{_criteria[name]:<7} {name}")
