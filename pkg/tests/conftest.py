"""Shared fixtures: synthetic datasets and real-data availability checks.

The acceptance tests mark themselves with ``@pytest.mark.criterion(n)``;
a terminal-summary hook prints one PASS/FAIL/SKIP line per criterion at
the end of the run.
"""

from __future__ import annotations

import numpy as np
import pytest

from swarmclust.core import Dataset
from swarmclust.datasets import default_data_dir, registry


def make_blobs(
    centres: np.ndarray,
    points_each: int = 20,
    spread: float = 0.3,
    seed: int = 7,
    name: str = "blobs",
    labeled: bool = True,
) -> Dataset:
    """Well-separated Gaussian blobs with one label per blob."""
    centres = np.asarray(centres, dtype=float)
    rng = np.random.default_rng(seed)
    features = np.vstack([rng.normal(c, spread, size=(points_each, centres.shape[1])) for c in centres])
    labels = np.repeat(np.arange(len(centres)), points_each) if labeled else None
    return Dataset(name=name, features=features, labels=labels)


@pytest.fixture
def blobs3() -> Dataset:
    """Three separated 4-D blobs, 60 points, labeled."""
    return make_blobs(np.array([[0.0] * 4, [3.0] * 4, [6.0] * 4]))


@pytest.fixture
def blobs2() -> Dataset:
    """Two separated 2-D blobs, 40 points, labeled."""
    return make_blobs(np.array([[0.0, 0.0], [4.0, 4.0]]))


def random_dataset(rng: np.random.Generator, n: int, d: int, labeled: bool = False) -> Dataset:
    labels = rng.integers(0, 2, size=n) if labeled else None
    return Dataset(name="random", features=rng.uniform(-1.0, 1.0, size=(n, d)), labels=labels)


def require_dataset(name: str) -> None:
    """Skip the calling test when a real data file has not been fetched."""
    spec = registry()[name]
    path = spec.path(default_data_dir())
    if not path.exists():
        pytest.skip(
            f"{name} data not fetched ({path} missing); run `bench datasets fetch` "
            "or scripts/fetch_datasets.py (iris works offline via --iris-from-sklearn)"
        )


# --- acceptance-criterion reporting -------------------------------------


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and description")


def pytest_collection_modifyitems(config, items):
    mapping = {}
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            mapping[item.nodeid] = (marker.args[0], marker.args[1] if len(marker.args) > 1 else "")
    config._criterion_map = mapping


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mapping = getattr(config, "_criterion_map", {})
    if not mapping:
        return
    outcomes: dict[int, dict[str, int]] = {}
    texts: dict[int, str] = {}
    for status in ("passed", "failed", "skipped", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", None)
            if nodeid in mapping:
                number, text = mapping[nodeid]
                texts[number] = text
                bucket = outcomes.setdefault(number, {"passed": 0, "failed": 0, "skipped": 0})
                key = "failed" if status == "error" else status
                bucket[key] += 1
    if not outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number in sorted(outcomes):
        counts = outcomes[number]
        total = sum(counts.values())
        if counts["failed"]:
            verdict = "FAIL"
        elif counts["passed"]:
            verdict = "PASS"
        else:
            verdict = "SKIP"
        detail = ""
        if counts["skipped"] and counts["passed"]:
            detail = f" ({counts['passed']}/{total} checks ran, {counts['skipped']} skipped: data not fetched)"
        elif verdict == "SKIP":
            detail = " (data not fetched)"
        terminalreporter.write_line(f"criterion {number:2d} {verdict}{detail}: {texts[number]}")
