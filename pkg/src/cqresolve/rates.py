"""Capacity and fixed-input resolvability rates.

The capacity solver is an ascent on input distributions whose stopping rule
doubles as an optimality certificate: the gap max_x D(W_x‖W(p)) - I(X;B) is
an upper bound on how far the iterate is from the supremum. The fixed-input
rate minimizes mutual information over the polytope of input distributions
with the same output state; concavity of mutual information in the input
puts the minimum at a vertex, so vertices are enumerated exactly.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
import numpy.linalg as npl

from .channel import CQChannel, Distribution, output_state
from .errors import ConvergenceError, ResourceLimitError, ValidationError
from .info import SUPPORT_EIG_TOL, mutual_info
from .linalg import eigh, trace_norm

CAPACITY_DEFAULT_TOL = 1e-9
CAPACITY_MAX_ITER = 100000
CAPACITY_PRUNE = 1e-15
FEASIBLE_OUTPUT_TOL = 1e-8
VERTEX_RANK_TOL = 1e-9
VERTEX_DEDUP_TOL = 1e-9
VERTEX_MAX_ALPHABET = 12


@dataclass(frozen=True)
class RateResult:
    """A rate value plus the evidence for it.

    For the capacity, ``certificate`` is the final ascent gap (the value is
    within that gap of the supremum) and ``distribution`` is the achieving
    input. For the fixed-input rate, ``certificate`` is the number of
    polytope vertices examined and ``distribution`` is the minimizing one.
    """

    value: float
    certificate: float
    iterations: int
    distribution: Distribution | None = None


def _entropy_terms(states: np.ndarray) -> np.ndarray:
    """Tr W_x log₂ W_x per input, restricted to each state's support."""
    out = np.empty(states.shape[0])
    for i, w in enumerate(states):
        vals = npl.eigvalsh(w)
        vals = vals[vals > SUPPORT_EIG_TOL]
        out[i] = float(np.sum(vals * np.log2(vals)))
    return out


def _divergences(states: np.ndarray, target: np.ndarray,
                 tr_w_log_w: np.ndarray) -> np.ndarray:
    """D(W_x ‖ target) for every x, with +inf on support violations."""
    dec = eigh(target)
    support = dec.eigenvalues > SUPPORT_EIG_TOL
    cols = dec.eigenvectors[:, support]
    weights = np.real(np.einsum("ia,xij,ja->xa", cols.conj(), states, cols))
    cross = weights @ np.log2(dec.eigenvalues[support])
    div = tr_w_log_w - cross
    if not np.all(support):
        kcols = dec.eigenvectors[:, ~support]
        leak = np.real(np.einsum("ia,xij,ja->x", kcols.conj(), states, kcols))
        div = np.where(leak > 1e-10, math.inf, div)
    return div


def capacity(channel: CQChannel, *, tol: float = CAPACITY_DEFAULT_TOL,
             max_iter: int = CAPACITY_MAX_ITER) -> RateResult:
    """sup_p I(X;B) for the joint input-output state, in bits.

    Multiplicative ascent from the uniform distribution; masses below the
    pruning threshold are fixed to zero. Raises ConvergenceError (carrying
    the best iterate in its attributes) if the gap certificate does not
    reach tol within max_iter steps.
    """
    if tol <= 0:
        raise ValidationError(f"tol must be positive, got {tol}")
    states = channel.states
    k = channel.size
    tr_w_log_w = _entropy_terms(states)
    p = np.full(k, 1.0 / k)
    best_value = -math.inf
    best_p = p
    best_gap = math.inf
    for iteration in range(1, max_iter + 1):
        target = np.einsum("x,xij->ij", p, states)
        div = _divergences(states, target, tr_w_log_w)
        live = p > 0.0
        info = float(np.sum(p[live] * div[live]))
        gap = float(np.max(div) - info)
        if info > best_value:
            best_value, best_p, best_gap = info, p.copy(), gap
        if gap <= tol:
            dist = Distribution(channel.labels, p)
            return RateResult(info, max(gap, 0.0), iteration, dist)
        shift = div[live].max()
        nxt = np.zeros(k)
        nxt[live] = p[live] * np.exp2(div[live] - shift)
        nxt /= nxt.sum()
        nxt[nxt < CAPACITY_PRUNE] = 0.0
        nxt /= nxt.sum()
        p = nxt
    raise ConvergenceError(
        f"capacity ascent gap {best_gap:.3e} > tol {tol:.3e} after {max_iter} iterations",
        value=best_value, iterations=max_iter,
        witness=Distribution(channel.labels, best_p))


def _constraint_matrix(states: np.ndarray) -> np.ndarray:
    """Real matrix whose columns are the stacked (Re, Im) output states."""
    k = states.shape[0]
    flat = states.reshape(k, -1)
    return np.vstack([flat.T.real, flat.T.imag])


def _span_rank(states: np.ndarray) -> int:
    """Rank of the real-linear span of {W_x - W_x0} at the SVD threshold."""
    diffs = states[1:] - states[0]
    if diffs.shape[0] == 0:
        return 0
    mat = np.vstack([diffs.reshape(diffs.shape[0], -1).T.real,
                     diffs.reshape(diffs.shape[0], -1).T.imag])
    svals = npl.svd(mat, compute_uv=False)
    return int(np.sum(svals > VERTEX_RANK_TOL))


def feasible_vertices(channel: CQChannel, dist: Distribution) -> list[Distribution]:
    """Vertices of {q : W(q) = W(p)}, the input distributions with p's output.

    Every vertex is supported on at most rank+1 inputs whose output states
    are affinely independent, so all such supports are enumerated and the
    resulting basic solutions filtered for nonnegativity and output match.
    The input alphabet is capped to keep the subset enumeration exact.
    """
    channel._check_alphabet(dist)
    k = channel.size
    if k > VERTEX_MAX_ALPHABET:
        raise ResourceLimitError(
            f"vertex enumeration supports at most {VERTEX_MAX_ALPHABET} inputs, got {k}")
    states = channel.states
    amat = _constraint_matrix(states)
    target = amat @ dist.masses
    max_support = _span_rank(states) + 1

    vertices: list[np.ndarray] = []
    for size in range(1, min(max_support, k) + 1):
        for support in itertools.combinations(range(k), size):
            sub = amat[:, support]
            aug = np.vstack([sub, np.ones((1, size))])
            if npl.matrix_rank(aug, tol=VERTEX_RANK_TOL) < size:
                continue
            rhs = np.concatenate([target, [1.0]])
            sol, *_ = npl.lstsq(aug, rhs, rcond=None)
            if sol.min() < -1e-9:
                continue
            q = np.zeros(k)
            q[list(support)] = np.clip(sol, 0.0, None)
            total = q.sum()
            if not math.isfinite(total) or total <= 0.0:
                continue
            q /= total
            out_gap = trace_norm(np.einsum("x,xij->ij", q, states)
                                 - np.einsum("x,xij->ij", dist.masses, states))
            if out_gap > FEASIBLE_OUTPUT_TOL:
                continue
            if any(float(np.max(np.abs(q - v))) <= VERTEX_DEDUP_TOL for v in vertices):
                continue
            vertices.append(q)
    vertices.sort(key=lambda v: tuple(v))
    return [Distribution(channel.labels, v) for v in vertices]


def fixed_input_rate(channel: CQChannel, dist: Distribution) -> RateResult:
    """inf_{q : W(q) = W(p)} I(X;B) of the joint state under q, in bits.

    Mutual information is concave in the input distribution, so the infimum
    over the (compact, convex) feasible polytope is attained at a vertex.
    """
    vertices = feasible_vertices(channel, dist)
    if not vertices:
        raise ValidationError("feasible polytope has no vertices; "
                              "the reference distribution should always be feasible")
    best = None
    best_val = math.inf
    for q in vertices:
        val = mutual_info(channel, q)
        if val < best_val:
            best_val = val
            best = q
    return RateResult(float(best_val), float(len(vertices)), len(vertices), best)
