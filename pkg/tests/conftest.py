"""Shared fixtures and helpers for the test suite."""
from __future__ import annotations

import numpy as np
import pytest

import cqresolve as cq


def build_flip_erase_channel(eps: float):
    """Three-input classical channel: bit-flip rows plus an erasure-like row.

    Inputs "0" and "1" emit diag(1−ε, ε) and diag(ε, 1−ε); input "e" emits
    the maximally mixed qubit. Returned with the (1/2, 1/2, 0) input law.
    """
    labels = ("0", "1", "e")
    states = [np.diag([1.0 - eps, eps]),
              np.diag([eps, 1.0 - eps]),
              np.diag([0.5, 0.5])]
    channel = cq.CQChannel(labels, states)
    dist = cq.Distribution.from_dict({"0": 0.5, "1": 0.5, "e": 0.0},
                                     labels=labels)
    return channel, dist


def assert_psd(matrix: np.ndarray, slack: float = 1e-9) -> None:
    low = float(np.min(np.linalg.eigvalsh(matrix)))
    assert low >= -slack, f"matrix not PSD within {slack}: min eig {low}"


def distinct_eigenvalue_count(eigenvalues: np.ndarray, tol: float = 1e-10) -> int:
    ev = np.sort(np.asarray(eigenvalues, dtype=float))
    if ev.size == 0:
        return 0
    return 1 + int(np.sum(np.diff(ev) > tol))


@pytest.fixture
def flip_erase_channel():
    return build_flip_erase_channel(0.1)


# ---------------------------------------------------------------------------
# acceptance-criterion reporting: one PASS/FAIL line per criterion, printed
# in the terminal summary of every run that touched the acceptance module.

CRITERION_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    verdict = "PASS" if ok else "FAIL"
    CRITERION_LINES[number] = f"CRITERION {number:2d}: {verdict} — {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERION_LINES):
        terminalreporter.write_line(CRITERION_LINES[number])
