import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from prgeom.constructions import distance_colored_graph, distance_graph, paley_graph  # noqa: E402


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("PRG_CACHE_DIR", str(tmp_path / "cache"))


@pytest.fixture(scope="session")
def paley29():
    return paley_graph(29)


@pytest.fixture(scope="session")
def paley101():
    return paley_graph(101)


@pytest.fixture(scope="session")
def dist13():
    return distance_graph(13, 2, 1)


@pytest.fixture(scope="session")
def colored13():
    return distance_colored_graph(13, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion, then assert it."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
