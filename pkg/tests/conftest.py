"""Shared fixtures and the acceptance-summary report.

Benchmark-dependent tests pull files from the repository ``data/``
directory (override with the ``ELMBOOST_DATA`` environment variable) and
skip with fetch instructions when a file is missing.  At the end of a run
every test from the acceptance module is echoed as one PASS/FAIL/SKIP
line so the criteria can be audited at a glance.
"""

import os
from pathlib import Path

import numpy as np
import pytest

from elmboost import Dataset

REPO_ROOT = Path(__file__).resolve().parent.parent

_acceptance_outcomes: dict[str, tuple[str, str]] = {}
acceptance_notes: dict[str, str] = {}


def acceptance_note(test_name: str, text: str) -> None:
    """Attach a measured-value note to one acceptance summary line."""
    acceptance_notes[test_name] = text


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        detail = ""
        if report.skipped:
            detail = report.longrepr[2] if isinstance(report.longrepr, tuple) else str(report.longrepr)
        _acceptance_outcomes[name] = (report.outcome.upper(), detail)
    elif report.when == "setup" and report.skipped:
        detail = report.longrepr[2] if isinstance(report.longrepr, tuple) else str(report.longrepr)
        _acceptance_outcomes[name] = ("SKIPPED", detail)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name in sorted(_acceptance_outcomes):
        outcome, detail = _acceptance_outcomes[name]
        note = acceptance_notes.get(name, "")
        line = f"{outcome:8s} {name}"
        if note:
            line += f"  ({note})"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return Path(os.environ.get("ELMBOOST_DATA", REPO_ROOT / "data"))


def require_benchmark(data_dir: Path, *names: str) -> list[Path]:
    """Paths for benchmark files, skipping the test when any is absent."""
    paths = [data_dir / name for name in names]
    missing = [p.name for p in paths if not p.exists()]
    if missing:
        pytest.skip(
            f"benchmark file(s) {missing} not present; run scripts/fetch_datasets.py"
        )
    return paths


def separable_clusters(
    n_per_class: int = 10, n_classes: int = 2, seed: int = 0, spread: float = 0.4
) -> Dataset:
    """Well-separated Gaussian blobs any reasonable classifier nails."""
    rng = np.random.default_rng(seed)
    centers = np.array([[8.0 * c, 8.0 * c] for c in range(n_classes)])
    features = np.vstack(
        [centers[c] + spread * rng.normal(size=(n_per_class, 2)) for c in range(n_classes)]
    )
    labels = np.repeat(np.arange(n_classes), n_per_class)
    return Dataset(features, labels, n_classes, tuple(range(n_classes)))
