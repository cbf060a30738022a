"""Method-of-types machinery in a fixed orthonormal basis.

Empirical states, type projectors, permutation twirling, majorization, and
the large-deviation set membership test, all at finite block length with
exact integer rank arithmetic wherever counts are involved.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
import numpy.linalg as npl

from .channel import (CQChannel, Distribution, Word, compositions,
                      empirical_output, output_state)
from .errors import (DimensionMismatchError, ResourceLimitError,
                     ValidationError)
from .info import SUPPORT_EIG_TOL, PinchingMap
from .linalg import DEFAULT_MAX_DIM, eigh, hermitianize, trace_norm, validate_density

BASIS_GRAM_TOL = 1e-10
MAJORIZATION_TOL = 1e-12
TWIRL_MAX_PERMUTATIONS = 5040


@dataclass(frozen=True)
class Basis:
    """Orthonormal basis of C^d, stored as the columns of a unitary matrix."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValidationError(f"basis must be a square matrix, got {v.shape}")
        gram = v.conj().T @ v
        if float(np.max(np.abs(gram - np.eye(v.shape[0])))) > BASIS_GRAM_TOL:
            raise ValidationError("basis vectors are not orthonormal")
        object.__setattr__(self, "vectors", v)

    @classmethod
    def standard(cls, d: int) -> "Basis":
        return cls(np.eye(d, dtype=complex))

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def is_standard(self) -> bool:
        return bool(np.allclose(self.vectors, np.eye(self.dim), atol=1e-14))


@dataclass(frozen=True)
class EmpiricalState:
    """Letter-count profile of a length-n word over d basis indices."""

    counts: tuple[int, ...]
    n: int

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValidationError(f"counts must be nonnegative, got {counts}")
        if sum(counts) != self.n:
            raise ValidationError(
                f"counts {counts} sum to {sum(counts)}, expected n = {self.n}")
        if self.n < 1:
            raise ValidationError(f"block length must be >= 1, got {self.n}")
        object.__setattr__(self, "counts", counts)

    @property
    def dim(self) -> int:
        return len(self.counts)

    def distribution(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.n

    def density(self, basis: Basis) -> np.ndarray:
        if basis.dim != self.dim:
            raise DimensionMismatchError(
                f"basis dim {basis.dim} vs counts length {self.dim}")
        v = basis.vectors
        return (v * self.distribution()) @ v.conj().T

    def rank(self) -> int:
        """Exact number of words with this profile: n! / ∏ counts_j!."""
        num = math.factorial(self.n)
        for c in self.counts:
            num //= math.factorial(c)
        return num


def empirical_state(w: Word, d: int) -> EmpiricalState:
    """Occurrence counts of the word's basis indices."""
    counts = [0] * d
    for sym in w.symbols:
        if not isinstance(sym, (int, np.integer)):
            raise ValidationError(f"word symbols must be basis indices, got {sym!r}")
        if not (0 <= int(sym) < d):
            raise ValidationError(f"basis index {sym} out of range for d = {d}")
        counts[int(sym)] += 1
    return EmpiricalState(tuple(counts), len(w.symbols))


def all_empirical_states(n: int, d: int) -> list[EmpiricalState]:
    """Every feasible count profile for (n, d); there are C(n+d-1, d-1)."""
    return [EmpiricalState(tuple(int(c) for c in row), n)
            for row in compositions(n, d)]


@dataclass(frozen=True)
class TypeProjector:
    """Projector onto all basis words with a fixed letter-count profile."""

    type: EmpiricalState
    basis: Basis
    matrix: np.ndarray
    rank: int


def _digit_table(n: int, d: int) -> np.ndarray:
    """(d^n, n) table of base-d digits of 0..d^n-1, most significant first."""
    idx = np.arange(d ** n, dtype=np.int64)
    powers = d ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers) % d


def _word_mask(t: EmpiricalState) -> np.ndarray:
    digits = _digit_table(t.n, t.dim)
    counts = np.stack([(digits == j).sum(axis=1) for j in range(t.dim)], axis=1)
    return np.all(counts == np.asarray(t.counts), axis=1)


def type_projector(t: EmpiricalState, basis: Basis, *,
                   max_dim: int = DEFAULT_MAX_DIM) -> TypeProjector:
    """Σ over words with profile t of |v[x^n]⟩⟨v[x^n]|, with exact rank."""
    if basis.dim != t.dim:
        raise DimensionMismatchError(f"basis dim {basis.dim} vs profile dim {t.dim}")
    d, n = t.dim, t.n
    total = d ** n
    if total > max_dim:
        raise ResourceLimitError(f"d^n = {total} exceeds the matrix cap {max_dim}")
    mask = _word_mask(t)
    rank = t.rank()
    if int(mask.sum()) != rank:
        raise ValidationError("word enumeration disagrees with the factorial rank")
    if basis.is_standard:
        matrix = np.diag(mask.astype(complex))
    else:
        u = basis.vectors
        un = u
        for _ in range(n - 1):
            un = np.kron(un, u)
        cols = un[:, mask]
        matrix = cols @ cols.conj().T
    return TypeProjector(t, basis, matrix, rank)


def type_pinching(basis: Basis, n: int, *,
                  max_dim: int = DEFAULT_MAX_DIM) -> PinchingMap:
    """Pinching map whose blocks are all type projectors for (n, basis)."""
    projectors = tuple(type_projector(t, basis, max_dim=max_dim).matrix
                       for t in all_empirical_states(n, basis.dim))
    return PinchingMap(projectors)


def majorizes(p, q, *, tol: float = MAJORIZATION_TOL) -> bool:
    """Prefix-sum dominance of descending-sorted copies of p over q."""
    pv = np.asarray(p.masses if isinstance(p, Distribution) else p, dtype=float)
    qv = np.asarray(q.masses if isinstance(q, Distribution) else q, dtype=float)
    if pv.shape != qv.shape or pv.ndim != 1:
        raise DimensionMismatchError(
            f"majorization needs equal-length vectors, got {pv.shape} vs {qv.shape}")
    cp = np.cumsum(np.sort(pv)[::-1])
    cq = np.cumsum(np.sort(qv)[::-1])
    return bool(np.all(cp >= cq - tol))


@dataclass(frozen=True)
class SanovQuery:
    """Membership query for the exponent set {(p', ρ') : D+H-H ≤ r}.

    ``p_prime`` is a sorted candidate spectrum; ``rho_prime`` is the
    empirical profile, read as a density diagonal in the descending
    eigenbasis of ``rho`` (count i pairs with the i-th largest eigenvalue).
    """

    p_prime: np.ndarray
    rho_prime: EmpiricalState
    rho: np.ndarray
    r: float

    def __post_init__(self):
        p = np.asarray(self.p_prime, dtype=float).ravel()
        if np.any(p < -1e-12):
            raise ValidationError("candidate spectrum has negative entries")
        if abs(float(p.sum()) - 1.0) > 1e-10:
            raise ValidationError(f"candidate spectrum sums to {p.sum()}, expected 1")
        diffs = np.diff(p)
        if not (np.all(diffs >= -1e-12) or np.all(diffs <= 1e-12)):
            raise ValidationError("candidate spectrum must be sorted")
        rho = validate_density(self.rho)
        if rho.shape[0] != self.rho_prime.dim or p.shape[0] != self.rho_prime.dim:
            raise DimensionMismatchError("query components have mismatched dimensions")
        if not (self.r > 0):
            raise ValidationError(f"radius must be positive, got {self.r}")
        object.__setattr__(self, "p_prime", p)
        object.__setattr__(self, "rho", rho)


def _entropy_bits(vec: np.ndarray) -> float:
    vec = vec[vec > SUPPORT_EIG_TOL]
    return float(-np.sum(vec * np.log2(vec)))


def sanov_exponent(query: SanovQuery) -> float:
    """D(ρ'‖ρ) + H(ρ') − H(p'), requiring p' to majorize ρ''s spectrum."""
    spectrum = query.rho_prime.distribution()
    if not majorizes(query.p_prime, spectrum):
        raise ValidationError(
            "candidate spectrum does not majorize the empirical profile")
    lam = eigh(query.rho).eigenvalues
    div = 0.0
    for freq, base in zip(spectrum, lam):
        if freq <= 0.0:
            continue
        if base <= SUPPORT_EIG_TOL:
            return math.inf
        div += freq * (math.log2(freq) - math.log2(base))
    return div + _entropy_bits(spectrum) - _entropy_bits(query.p_prime)


def sanov_member(query: SanovQuery) -> bool:
    """Whether the query point lies in the radius-r exponent set."""
    return sanov_exponent(query) <= query.r


def twirl(op, n: int, *, max_perms: int = TWIRL_MAX_PERMUTATIONS) -> np.ndarray:
    """(1/n!) Σ_g U_g X U_g† over all permutations of the n tensor factors."""
    m = np.asarray(op, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"operator must be square, got {m.shape}")
    if not (isinstance(n, int) and n >= 1):
        raise ValidationError(f"n must be a positive integer, got {n}")
    total = m.shape[0]
    d = round(total ** (1.0 / n))
    while d ** n < total:
        d += 1
    if d ** n != total:
        raise ValidationError(
            f"dimension {total} is not a perfect n = {n} tensor power")
    if math.factorial(n) > max_perms:
        raise ResourceLimitError(
            f"n! = {math.factorial(n)} exceeds the permutation cap {max_perms}")
    if n == 1:
        return m.copy()
    tensor = m.reshape((d,) * (2 * n))
    acc = np.zeros_like(tensor)
    for g in itertools.permutations(range(n)):
        axes = list(g) + [n + i for i in g]
        acc = acc + tensor.transpose(axes)
    return (acc / math.factorial(n)).reshape(total, total)


def ee31_margin(w: Word, d: int, *, max_dim: int = DEFAULT_MAX_DIM) -> float:
    """Min eigenvalue of (n+1)^{d-1}·e(x^n)^{⊗n} − twirl(|x^n⟩⟨x^n|).

    Nonnegative (within slack) certifies the twirling domination for the
    word; the word's letters are standard-basis indices.
    """
    n = len(w.symbols)
    if d ** n > max_dim:
        raise ResourceLimitError(f"d^n = {d ** n} exceeds the matrix cap {max_dim}")
    emp = empirical_state(w, d)
    dens = emp.density(Basis.standard(d))
    rhs = dens
    for _ in range(n - 1):
        rhs = np.kron(rhs, dens)
    rhs = ((n + 1) ** (d - 1)) * rhs
    flat_index = 0
    for sym in w.symbols:
        flat_index = flat_index * d + int(sym)
    vec = np.zeros(d ** n, dtype=complex)
    vec[flat_index] = 1.0
    lhs = twirl(np.outer(vec, vec.conj()), n)
    return float(npl.eigvalsh(hermitianize(rhs - lhs))[0])


def bad_codeword_test(channel: CQChannel, w: Word, dist: Distribution,
                      delta: float) -> bool:
    """Whether ‖(1/n)Σ_j W_{x_j} − W(p)‖₁ ≥ δ (the word is a bad codeword)."""
    if not (delta > 0):
        raise ValidationError(f"delta must be positive, got {delta}")
    gap = trace_norm(empirical_output(channel, w) - output_state(channel, dist))
    return bool(gap >= delta)


@dataclass(frozen=True)
class TypesBoundCheck:
    """One row of the commuting types-bound sweep."""

    lhs: float
    rhs: float
    ok: bool


def commuting_types_bound_check(rho, rho_prime: EmpiricalState,
                                n: int) -> TypesBoundCheck:
    """Exact Tr ρ^{⊗n} T_{ρ'} vs 2^{−n D(ρ'‖ρ)} for diagonal ρ.

    The left side is multinomial(n; counts)·∏ ρ_i^{counts_i}, computed
    without building any n-fold matrix. A support violation (a counted
    letter with zero mass in ρ) zeroes both sides, so the bound holds
    vacuously.
    """
    m = validate_density(rho)
    off = m - np.diag(np.diag(m))
    if float(np.max(np.abs(off))) > 1e-10:
        raise ValidationError("the types bound check requires a diagonal state")
    if n != rho_prime.n:
        raise ValidationError(f"n = {n} differs from the profile's n = {rho_prime.n}")
    if m.shape[0] != rho_prime.dim:
        raise DimensionMismatchError(
            f"state dim {m.shape[0]} vs profile dim {rho_prime.dim}")
    probs = np.real(np.diag(m))
    counts = np.asarray(rho_prime.counts)
    active = counts > 0
    if np.any(probs[active] <= SUPPORT_EIG_TOL):
        return TypesBoundCheck(0.0, 0.0, True)
    lhs = float(rho_prime.rank()) * float(np.prod(probs[active] ** counts[active]))
    freq = counts[active] / n
    div = float(np.sum(freq * (np.log2(freq) - np.log2(probs[active]))))
    rhs = 2.0 ** (-n * div)
    return TypesBoundCheck(lhs, rhs, bool(lhs <= rhs * (1.0 + 1e-9)))
