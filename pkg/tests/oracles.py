"""Independent reference implementations used to pin expected test values.

Nothing in this file imports the package under test. Every function is a
direct, brute-force, or closed-form evaluation of the quantity it names,
kept deliberately separate from the library's algorithms: singular values
instead of the library's Hermitian decomposition for norms, explicit
enumeration instead of vectorized batching, classical formulas for
commuting cases, and dense grid searches where the library iterates.
"""
from __future__ import annotations

import functools
import itertools
import math

import numpy as np


# ---------------------------------------------------------------------------
# classical probability


def entropy_bits(p) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def kl_bits(p, q) -> float:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    total = 0.0
    for pi, qi in zip(p, q):
        if pi <= 0:
            continue
        if qi <= 0:
            return math.inf
        total += pi * math.log2(pi / qi)
    return total


def classical_renyi_div(p, q, alpha: float) -> float:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    acc = 0.0
    for pi, qi in zip(p, q):
        if pi <= 0:
            continue
        if qi <= 0:
            return math.inf
        acc += pi ** alpha * qi ** (1.0 - alpha)
    return math.log2(acc) / (alpha - 1.0)


def commuting_phi(rho_diag, sigma_diag, s: float) -> float:
    """log2 Σ ρ_i^{1-s} σ_i^s on the common support (s in (-1,1), s != 0)."""
    acc = 0.0
    for r, g in zip(np.asarray(rho_diag, float), np.asarray(sigma_diag, float)):
        if r <= 0:
            continue
        if g <= 0:
            return -math.inf
        acc += r ** (1.0 - s) * g ** s
    return math.log2(acc)


def binary_entropy_ref(e: float) -> float:
    out = 0.0
    for t in (e, 1.0 - e):
        if t > 0:
            out -= t * math.log2(t)
    return out


# ---------------------------------------------------------------------------
# matrix norms via singular values (independent of any eigh path)


def trace_norm_svd(a) -> float:
    return float(np.sum(np.linalg.svd(np.asarray(a, dtype=complex),
                                      compute_uv=False)))


def half_trace_distance_svd(a, b) -> float:
    return 0.5 * trace_norm_svd(np.asarray(a, complex) - np.asarray(b, complex))


# ---------------------------------------------------------------------------
# classical channels (row-stochastic matrices T[x, y])


def classical_output(T, p) -> np.ndarray:
    return np.asarray(p, float) @ np.asarray(T, float)


def classical_mutual_info(T, p) -> float:
    T = np.asarray(T, float)
    p = np.asarray(p, float)
    out = classical_output(T, p)
    total = 0.0
    for x in range(T.shape[0]):
        if p[x] <= 0:
            continue
        total += p[x] * kl_bits(T[x], out)
    return total


@functools.lru_cache(maxsize=None)
def _simplex_counts(k: int, total: int) -> tuple:
    if k == 1:
        return ((total,),)
    rows = []
    for c in range(total + 1):
        for rest in _simplex_counts(k - 1, total - c):
            rows.append((c,) + rest)
    return tuple(rows)


def simplex_grid(k: int, denominator: int) -> np.ndarray:
    """All distributions on k letters with masses that are multiples of 1/den."""
    return np.asarray(_simplex_counts(k, denominator), dtype=float) / denominator


def fixed_rate_grid_search(T, p, denominator: int, slack: float) -> float:
    """min I(q) over grid q with ||T(q) - T(p)||_1 <= slack (brute force)."""
    T = np.asarray(T, float)
    grid = simplex_grid(T.shape[0], denominator)
    target = classical_output(T, p)
    outs = grid @ T
    feas = np.sum(np.abs(outs - target), axis=1) <= slack
    best = math.inf
    for q in grid[feas]:
        best = min(best, classical_mutual_info(T, q))
    return best


def fixed_rate_projected_grid(T, p, denominator: int = 50,
                              pre_slack: float = 0.08,
                              n_descend: int = 40) -> float:
    """min I(q) subject to T(q) = T(p) exactly, via grid seeding.

    Grid points near the feasible polytope are projected onto it exactly
    (alternating projections between the affine output-match set and the
    positive orthant), then walked downhill to a vertex: I is concave in q,
    so along any feasible line the minimum sits at an endpoint.  Entirely
    independent of any polytope vertex enumeration.
    """
    T = np.asarray(T, float)
    k = T.shape[0]
    target = classical_output(T, p)
    A = np.vstack([T.T, np.ones((1, k))])
    b = np.concatenate([target, [1.0]])
    A_pinv = np.linalg.pinv(A)
    # null-space directions of the constraint map
    _, sv, vt = np.linalg.svd(A)
    nnz = int(np.sum(sv > 1e-11 * sv[0])) if sv.size else 0
    null_dirs = vt[nnz:]
    grid = simplex_grid(k, denominator)
    near = grid[np.sum(np.abs(grid @ T - target), axis=1) <= pre_slack]
    if near.size == 0:
        near = np.asarray(p, float)[None, :]
    # alternating projections: affine set <-> positive orthant
    Q = near.copy()
    for _ in range(400):
        Q = Q - (Q @ A.T - b) @ A_pinv.T
        Q = np.maximum(Q, 0.0)
        if np.max(np.abs(Q @ A.T - b)) < 1e-12:
            break
    resid = np.max(np.abs(Q @ A.T - b), axis=1)
    Q = Q[resid <= 1e-9]
    if Q.shape[0] == 0:
        Q = np.asarray(p, float)[None, :]
    vals = np.array([classical_mutual_info(T, q) for q in Q])
    order = np.argsort(vals)[:n_descend]
    best = float(vals[order[0]]) if order.size else math.inf

    def descend(q):
        val = classical_mutual_info(T, q)
        for _ in range(200):
            improved = False
            for d in null_dirs:
                for sgn in (1.0, -1.0):
                    step = sgn * d
                    with np.errstate(divide="ignore"):
                        ratios = np.where(step < -1e-14, q / -step, math.inf)
                    t = float(np.min(ratios))
                    if not math.isfinite(t) or t <= 1e-13:
                        continue
                    cand = np.maximum(q + t * step, 0.0)
                    cval = classical_mutual_info(T, cand)
                    if cval < val - 1e-12:
                        q, val, improved = cand, cval, True
            if not improved:
                break
        return val

    for idx in order:
        best = min(best, descend(Q[idx].copy()))
    return best


def sibson_renyi_mi(T, q, alpha: float) -> float:
    """Classical order-α mutual information: (α/(α−1)) log Σ_y (Σ_x q T^α)^{1/α}."""
    T = np.asarray(T, float)
    q = np.asarray(q, float)
    inner = np.sum(q[:, None] * T ** alpha, axis=0) ** (1.0 / alpha)
    return (alpha / (alpha - 1.0)) * math.log2(float(np.sum(inner)))


# ---------------------------------------------------------------------------
# quantum Renyi mutual information, d = 2 brute force over the Bloch ball


def _bloch_state(x: float, y: float, z: float) -> np.ndarray:
    return 0.5 * np.array([[1.0 + z, x - 1j * y],
                           [x + 1j * y, 1.0 - z]], dtype=complex)


def bloch_grid_renyi_mi(states, masses, alpha: float, step: float = 0.02) -> float:
    """min over Bloch-ball grid σ of (1/(α−1)) log Σ q(x)‖σ^e W_x σ^e‖_α^α."""
    states = [np.asarray(w, complex) for w in states]
    masses = np.asarray(masses, float)
    exp = (1.0 - alpha) / (2.0 * alpha)
    axis = np.arange(-1.0, 1.0 + step / 2, step)
    best = math.inf
    for x in axis:
        for y in axis:
            for z in axis:
                r2 = x * x + y * y + z * z
                if r2 > (1.0 - 1e-9) ** 2:
                    continue
                sigma = _bloch_state(x, y, z)
                vals, vecs = np.linalg.eigh(sigma)
                if vals[0] < 1e-9:
                    continue
                half = (vecs * vals ** exp) @ vecs.conj().T
                total = 0.0
                for w, mass in zip(states, masses):
                    if mass <= 0:
                        continue
                    sand = half @ w @ half
                    sand = (sand + sand.conj().T) / 2
                    ev = np.linalg.eigvalsh(sand)
                    total += mass * float(np.sum(np.clip(ev, 0, None) ** alpha))
                best = min(best, math.log2(total) / (alpha - 1.0))
    return best


# ---------------------------------------------------------------------------
# resolution errors by explicit enumeration


def all_m_type_count_vectors(k: int, M: int) -> list[tuple[int, ...]]:
    out = []
    for counts in itertools.product(range(M + 1), repeat=k - 1):
        rest = M - sum(counts)
        if rest >= 0:
            out.append(counts + (rest,))
    return sorted(out)


def brute_force_resolution_error(states, p, M: int) -> float:
    """min over M-types q of half trace distance, one candidate at a time."""
    states = [np.asarray(w, complex) for w in states]
    p = np.asarray(p, float)
    target = sum(pi * w for pi, w in zip(p, states))
    best = math.inf
    for counts in all_m_type_count_vectors(len(states), M):
        mix = sum((c / M) * w for c, w in zip(counts, states))
        best = min(best, half_trace_distance_svd(mix, target))
    return best


def binary_flip_exact_error(eps: float, n: int) -> float:
    """Exact ε(p^{⊗n}, W^{⊗n}, 1) for the binary ε-flip channel, p uniform.

    With a single codeword every word state is diagonal with entries
    (1−ε)^{n−k} ε^k over outputs at Hamming distance k from the word, and
    the target is uniform 2^{−n}; the distance is word-independent.
    """
    total = 0.0
    for k in range(n + 1):
        total += math.comb(n, k) * abs(2.0 ** (-n) - (1 - eps) ** (n - k) * eps ** k)
    return 0.5 * total


# ---------------------------------------------------------------------------
# smoothing, spectra, and types


def ceil_diag_reference(values, lam: float, v: int) -> list[float]:
    """Piecewise rounding of diagonal entries: s → s1·2^{λ·max(−v, ⌈log2(s/s1)/λ⌉)}."""
    vals = sorted((float(t) for t in values), reverse=True)
    s1 = vals[0]
    out = []
    for s in vals:
        if s <= s1 * 2.0 ** (-v * lam) + 1e-15:
            out.append(s1 * 2.0 ** (-v * lam))
            continue
        ratio = math.log2(s / s1) / lam
        nearest = round(ratio)
        k = nearest if abs(ratio - nearest) <= 1e-9 else math.ceil(ratio)
        out.append(s1 * 2.0 ** (lam * max(-v, k)))
    return out


def spectral_cdf_classical(rho_diag, sigma_diag, a: float) -> float:
    total = 0.0
    for r, g in zip(np.asarray(rho_diag, float), np.asarray(sigma_diag, float)):
        if r <= 2.0 ** a * g:
            total += r
    return total


def multinomial_exact(n: int, counts) -> int:
    num = math.factorial(n)
    for c in counts:
        num //= math.factorial(int(c))
    return num


def random_density(rng: np.random.Generator, d: int) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return m / np.real(np.trace(m))


def random_projector(rng: np.random.Generator, d: int, rank: int) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, _ = np.linalg.qr(g)
    cols = q[:, :rank]
    return cols @ cols.conj().T
