"""Identification codes: validity checks and the counting bridge.

A code is a family of input distributions with binary test operators; the
module verifies the acceptance conditions, the pairwise output-distance
consequence, and the counting argument that ties code size to the
worst-input resolution error. Codes are verified, never optimized.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import numpy.linalg as npl

from .channel import CQChannel, Distribution, distribution_from_json, output_state
from .errors import DimensionMismatchError, ValidationError
from .linalg import trace_norm, validate_hermitian

TEST_OPERATOR_SLACK = 1e-9


@dataclass(frozen=True)
class IDCode:
    """N ≥ 2 entries (p_i, D_i) with 0 ≤ D_i ≤ I, plus the error levels."""

    entries: tuple[tuple[Distribution, np.ndarray], ...]
    lambda1: float
    lambda2: float

    def __post_init__(self):
        if len(self.entries) < 2:
            raise ValidationError("an identification code needs at least 2 entries")
        for lam, name in ((self.lambda1, "lambda1"), (self.lambda2, "lambda2")):
            if not (0.0 < lam < 1.0):
                raise ValidationError(f"{name} must lie in (0,1), got {lam}")
        checked = []
        dim = None
        for dist, test in self.entries:
            t = validate_hermitian(test)
            if dim is None:
                dim = t.shape[0]
            elif t.shape[0] != dim:
                raise DimensionMismatchError("test operators have mixed dimensions")
            vals = npl.eigvalsh(t)
            if float(vals[0]) < -TEST_OPERATOR_SLACK:
                raise ValidationError("test operator is not positive semidefinite")
            if float(vals[-1]) > 1.0 + TEST_OPERATOR_SLACK:
                raise ValidationError("test operator exceeds the identity")
            checked.append((dist, t))
        object.__setattr__(self, "entries", tuple(checked))

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def dim(self) -> int:
        return int(self.entries[0][1].shape[0])


@dataclass(frozen=True)
class IDVerifyReport:
    """Acceptance margins for every entry and cross pair."""

    valid: bool
    hit_margins: tuple[float, ...]
    worst_hit_margin: float
    worst_cross_margin: float
    failures: tuple[str, ...]


def _output_states(code: IDCode, channel: CQChannel) -> list[np.ndarray]:
    outs = []
    for dist, test in code.entries:
        if test.shape[0] != channel.dim:
            raise DimensionMismatchError(
                f"test dim {test.shape[0]} vs channel dim {channel.dim}")
        outs.append(output_state(channel, dist))
    return outs


def verify_id_code(code: IDCode, channel: CQChannel) -> IDVerifyReport:
    """Check Tr(W(p_i)D_i) ≥ 1−λ₁ and Tr(W(p_i)D_j) ≤ λ₂ for all i ≠ j."""
    outs = _output_states(code, channel)
    hit_margins = []
    failures = []
    worst_cross = math.inf
    for i, (out, (_, test)) in enumerate(zip(outs, (e for e in code.entries))):
        hit = float(np.real(np.trace(out @ test)))
        margin = hit - (1.0 - code.lambda1)
        hit_margins.append(margin)
        if margin < 0.0:
            failures.append(f"entry {i}: acceptance {hit:.6g} < 1 - lambda1")
    for i, out in enumerate(outs):
        for j, (_, test) in enumerate(code.entries):
            if i == j:
                continue
            cross = float(np.real(np.trace(out @ test)))
            margin = code.lambda2 - cross
            worst_cross = min(worst_cross, margin)
            if margin < 0.0:
                failures.append(f"pair ({i},{j}): cross acceptance {cross:.6g} > lambda2")
    return IDVerifyReport(valid=not failures,
                          hit_margins=tuple(hit_margins),
                          worst_hit_margin=min(hit_margins),
                          worst_cross_margin=worst_cross,
                          failures=tuple(failures))


@dataclass(frozen=True)
class PairwiseDistanceReport:
    """Minimum pairwise output trace-norm distance against 2(1−λ₁−λ₂)."""

    min_distance: float
    threshold: float
    vacuous: bool
    ok: bool


def pairwise_distance_check(code: IDCode, channel: CQChannel) -> PairwiseDistanceReport:
    """Assert ‖W(p_i) − W(p_j)‖₁ ≥ 2(1 − λ₁ − λ₂) for every pair i ≠ j."""
    outs = _output_states(code, channel)
    min_distance = math.inf
    for i in range(len(outs)):
        for j in range(i + 1, len(outs)):
            min_distance = min(min_distance, trace_norm(outs[i] - outs[j]))
    threshold = 2.0 * (1.0 - code.lambda1 - code.lambda2)
    vacuous = threshold <= 0.0
    ok = vacuous or (min_distance >= threshold - 1e-9)
    return PairwiseDistanceReport(float(min_distance), threshold, vacuous, ok)


@dataclass(frozen=True)
class BridgeCheck:
    """Counting consequence |X|^M ≥ N, gated by 1 − λ₁ − λ₂ > ε(W,M)."""

    applicable: bool
    count_ok: bool

    def __bool__(self) -> bool:
        return self.count_ok


def bridge_counting_check(N: int, alphabet_size: int, M: int, lambda1: float,
                          lambda2: float, eps: float) -> BridgeCheck:
    """Whether |X|^M ≥ N, with applicability flag 1 − λ₁ − λ₂ > eps.

    When the gate fails the counting argument says nothing, so the result
    carries an inapplicability flag rather than raising. Used
    contrapositively: a valid code with |X|^M < N certifies that the
    worst-input resolution error at M exceeds 1 − λ₁ − λ₂.
    """
    for name, val in (("N", N), ("alphabet_size", alphabet_size), ("M", M)):
        if not (isinstance(val, int) and val >= 1):
            raise ValidationError(f"{name} must be a positive integer, got {val}")
    if N < 2:
        raise ValidationError(f"N must be at least 2, got {N}")
    for lam, name in ((lambda1, "lambda1"), (lambda2, "lambda2")):
        if not (0.0 < lam < 1.0):
            raise ValidationError(f"{name} must lie in (0,1), got {lam}")
    if not (eps >= 0.0):
        raise ValidationError(f"eps must be nonnegative, got {eps}")
    applicable = (1.0 - lambda1 - lambda2) > eps
    count_ok = alphabet_size ** M >= N
    return BridgeCheck(applicable, count_ok)


def _matrix_from_json(entry, where: str) -> np.ndarray:
    arr = np.asarray(entry, dtype=float)
    if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 2:
        raise ValidationError(
            f"{where}: matrix must be square with [re, im] entries, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def idcode_from_json(source, labels=None) -> IDCode:
    """Load an ID code from a JSON object or file path.

    Schema: {"lambda1": float, "lambda2": float,
             "entries": [{"dist": {label: mass}, "test": [[[re, im], ...]]}]}
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = source
    if not isinstance(data, dict):
        raise ValidationError("ID-code JSON must be an object")
    for key in ("lambda1", "lambda2", "entries"):
        if key not in data:
            raise ValidationError(f"ID-code JSON is missing the '{key}' field")
    entries = []
    for i, entry in enumerate(data["entries"]):
        if not isinstance(entry, dict) or "dist" not in entry or "test" not in entry:
            raise ValidationError(f"entry {i}: expected an object with 'dist' and 'test'")
        dist = distribution_from_json(entry["dist"], labels=labels)
        test = _matrix_from_json(entry["test"], f"entry {i} test")
        entries.append((dist, test))
    return IDCode(tuple(entries), float(data["lambda1"]), float(data["lambda2"]))
