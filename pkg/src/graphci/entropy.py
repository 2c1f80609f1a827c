"""Subsystem entropies and coherent information of dephased graph states.

The reduced state of one party is fixed by the stabilizer generators that
act trivially on the other party. Their X-supports (the rows of ``J``) are
found by Gaussian elimination of the extended biadjacency matrix. Under
dephasing each generator picks up a sign, and the entropy of the side is
``(n_side - K) + H(w)`` where ``w`` is the distribution of sign patterns.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import entr

from .gf2 import BitMatrix, rank, row_echelon, trim_zero_columns
from .graphstate import (
    BipartiteGraphState,
    NoiseModel,
    StructureClass,
    _check_side,
    biadjacency,
    classify,
)

__all__ = [
    "CapExceeded",
    "GeneratorMatrix",
    "WeightVector",
    "CIResult",
    "DEFAULT_MAX_NU",
    "DEFAULT_MAX_K",
    "binary_entropy",
    "shannon_entropy",
    "extract_generator_matrix",
    "compute_weights",
    "compute_weights_reference",
    "subsystem_entropy",
    "side_entropy",
    "coherent_information",
]

DEFAULT_MAX_NU = 30
DEFAULT_MAX_K = 26

# d is split as (high << _LOW_BITS) | low; the low half is tabulated once.
_LOW_BITS = 20


class CapExceeded(RuntimeError):
    """The instance is too large for exhaustive enumeration under the caps."""


@dataclass(frozen=True)
class GeneratorMatrix:
    """X-supports of the generators acting on one side only.

    ``J`` is ``K x n_side``; ``trimmed`` keeps only its non-zero columns,
    whose original indices are ``kept_cols``.
    """

    side: str
    J: BitMatrix
    trimmed: BitMatrix
    kept_cols: tuple[int, ...]

    @property
    def K(self) -> int:
        return self.J.n_rows

    @property
    def n_side(self) -> int:
        return self.J.n_cols

    @property
    def nu(self) -> int:
        return len(self.kept_cols)


@dataclass(frozen=True)
class WeightVector:
    """Probabilities of the ``2**K`` bracket sign patterns.

    Entry ``l`` belongs to the pattern ``(m_1, ..., m_K)`` read as the binary
    string of ``l``, so ``m_1`` is the most significant bit.
    """

    w: np.ndarray
    K: int

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.shape != (1 << self.K,):
            raise ValueError(f"expected {1 << self.K} weights, got shape {w.shape}")
        if np.any(w < -1e-15) or np.any(w > 1 + 1e-12):
            raise ValueError("weights must lie in [0, 1]")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {w.sum()!r}, not 1")
        object.__setattr__(self, "w", w)

    def __len__(self) -> int:
        return len(self.w)

    def __getitem__(self, l):
        return self.w[l]


@dataclass(frozen=True)
class CIResult:
    """Entropies (bits) and coherent informations for one graph and ``P``.

    ``H_AB_direct`` is only filled in by the density-matrix oracle, which
    also evaluates the joint entropy by diagonalising the full state.
    """

    H_A: float
    H_B: float
    H_AB: float
    I_A: float
    I_B: float
    rank: int
    K_A: int
    K_B: int
    method: str
    H_AB_direct: float | None = None


def _probability(P) -> float:
    if isinstance(P, NoiseModel):
        return P.P
    return NoiseModel(P).P


def binary_entropy(p: float) -> float:
    """``-p log2 p - (1-p) log2 (1-p)`` with both endpoints mapped to 0."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p!r}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def shannon_entropy(w) -> float:
    """Shannon entropy in bits, with ``0 log 0 = 0``."""
    return float(np.sum(entr(np.asarray(w, dtype=float)))) / math.log(2)


def extract_generator_matrix(gab: BitMatrix, side: str) -> GeneratorMatrix:
    """Find the generators of the stabilizer subgroup supported on ``side``.

    For side A the matrix ``[I_A | G_AB]`` is eliminated on its ``G_AB``
    block; for side B, ``[G_AB^T | I_B]`` on its ``G_AB^T`` block. The
    identity-block rows that end up next to zero rows form ``J``.
    """
    side = _check_side(side)
    n_A, n_B = gab.shape
    if side == "A":
        ext = BitMatrix.identity(n_A).hstack(gab)
        res = row_echelon(ext, range(n_A, n_A + n_B))
        J = res.echelon.select_rows(res.zero_row_indices).column_range(0, n_A)
    else:
        ext = gab.transpose().hstack(BitMatrix.identity(n_B))
        res = row_echelon(ext, range(0, n_A))
        J = res.echelon.select_rows(res.zero_row_indices).column_range(n_A, n_A + n_B)
    trimmed, kept = trim_zero_columns(J)
    return GeneratorMatrix(side=side, J=J, trimmed=trimmed, kept_cols=kept)


def _packed_columns(gen: GeneratorMatrix) -> list[int]:
    # column j of J' as an int with row k at bit K-1-k
    K = gen.K
    cols = []
    for j in range(gen.nu):
        v = 0
        for k, r in enumerate(gen.trimmed.rows):
            if (r >> j) & 1:
                v |= 1 << (K - 1 - k)
        cols.append(v)
    return cols


def _check_caps(gen: GeneratorMatrix, max_nu: int, max_k: int) -> None:
    if gen.nu > max_nu:
        raise CapExceeded(f"nu={gen.nu} exceeds max_nu={max_nu} (side {gen.side})")
    if gen.K > max_k:
        raise CapExceeded(f"K={gen.K} exceeds max_k={max_k} (side {gen.side})")


def compute_weights_reference(gen: GeneratorMatrix, P) -> WeightVector:
    """Plain loop over all ``2**nu`` configurations, one at a time.

    Slow; kept as a readable baseline for :func:`compute_weights`.
    """
    P = _probability(P)
    nu, K = gen.nu, gen.K
    cols = _packed_columns(gen)
    w = [0.0] * (1 << K)
    for d in range(1 << nu):
        a = [(d >> i) & 1 for i in range(nu)]
        nu_minus = sum(a)
        p_d = P ** (nu - nu_minus) * (1.0 - P) ** nu_minus
        m = 0
        for i in range(nu):
            if a[i]:
                m ^= cols[i]
        w[m] += p_d
    return WeightVector(np.array(w), K)


def _config_table(cols: list[int], P: float) -> tuple[np.ndarray, np.ndarray]:
    """Sign pattern and probability of every configuration of ``len(cols)`` qubits."""
    m = np.zeros(1, dtype=np.uint64)
    p = np.ones(1)
    Q = 1.0 - P
    for c in cols:
        m = np.concatenate([m, m ^ np.uint64(c)])
        p = np.concatenate([p * P, p * Q])
    return m, p


def compute_weights(
    gen: GeneratorMatrix,
    P,
    max_nu: int = DEFAULT_MAX_NU,
    max_k: int = DEFAULT_MAX_K,
    n_jobs: int | None = None,
) -> WeightVector:
    """Accumulate the weight of every bracket sign pattern.

    Enumerates every configuration ``d`` of the ``nu`` qubits touched by
    ``J``, with probability ``P**(nu - nu_minus) * (1-P)**nu_minus``, and
    adds it to the pattern ``J' a mod 2``. The enumeration is blocked: the
    low ``_LOW_BITS`` bits of ``d`` are tabulated once and each value of the
    high bits shifts that table by XOR. Blocks of high bits are spread over
    ``n_jobs`` threads with private accumulators summed at the end.
    """
    P = _probability(P)
    _check_caps(gen, max_nu, max_k)
    K, nu = gen.K, gen.nu
    if K == 0:
        return WeightVector(np.ones(1), 0)

    cols = _packed_columns(gen)
    n_low = min(nu, _LOW_BITS)
    m_low, p_low = _config_table(cols[:n_low], P)
    size = 1 << K
    w_low = np.bincount(m_low.astype(np.intp), weights=p_low, minlength=size)
    if nu == n_low:
        return WeightVector(w_low, K)

    m_high, p_high = _config_table(cols[n_low:], P)
    index = np.arange(size, dtype=np.uint64)

    def accumulate(chunk: range) -> np.ndarray:
        acc = np.zeros(size)
        for h in chunk:
            if p_high[h] == 0.0:
                continue
            acc += p_high[h] * w_low[(index ^ m_high[h]).astype(np.intp)]
        return acc

    n_high = len(m_high)
    if n_jobs is None:
        n_jobs = 1
    elif n_jobs < 0:
        n_jobs = os.cpu_count() or 1
    n_jobs = max(1, min(n_jobs, n_high))
    bounds = np.linspace(0, n_high, n_jobs + 1).astype(int)
    chunks = [range(bounds[i], bounds[i + 1]) for i in range(n_jobs)]
    if n_jobs == 1:
        parts = [accumulate(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            parts = list(pool.map(accumulate, chunks))
    return WeightVector(np.sum(parts, axis=0), K)


def subsystem_entropy(w: WeightVector, n_side: int) -> float:
    """``(n_side - K) + H(w)`` in bits."""
    if w.K > n_side:
        raise ValueError(f"K={w.K} exceeds the side size {n_side}")
    return (n_side - w.K) + shannon_entropy(w.w)


def side_entropy(
    gab: BitMatrix,
    side: str,
    P,
    method: str = "auto",
    *,
    gen: GeneratorMatrix | None = None,
    structure: StructureClass | None = None,
    max_nu: int = DEFAULT_MAX_NU,
    max_k: int = DEFAULT_MAX_K,
    n_jobs: int | None = None,
) -> tuple[float, str]:
    """Entropy of one side and a tag naming the path that produced it.

    ``method="general"`` always enumerates. ``"auto"`` uses the closed forms
    for rank-1 and rank-2 row structures and enumerates otherwise.
    ``"closedform"`` additionally uses the K=1 and K=2 formulas and raises
    ``ValueError`` when no closed form applies. Vertices without cross edges
    each add ``H2(P)`` in the closed-form paths.
    """
    from . import closedform

    side = _check_side(side)
    P = _probability(P)
    if method not in ("auto", "general", "closedform"):
        raise ValueError(f"unknown method {method!r}")
    n_side = gab.n_rows if side == "A" else gab.n_cols

    if method != "general":
        if structure is None:
            structure = classify(gab, side)
        extra = structure.disconnected * binary_entropy(P)
        if structure.kind == "rank1":
            return closedform.f1(structure.counts[0], P) + extra, "rank1"
        if structure.kind == "rank2type1":
            n1, n2 = structure.counts
            return closedform.rank2_type1_entropy(n1, n2, P) + extra, "rank2type1"
        if structure.kind == "rank2type2":
            return closedform.f2(*structure.counts, P) + extra, "rank2type2"
        if structure.rank == 0:
            return extra, "trivial"

    if gen is None:
        gen = extract_generator_matrix(gab, side)
    if method == "closedform":
        if gen.K == 0:
            return float(n_side), "trivial"
        if gen.K == 1:
            return closedform.kA1_entropy(n_side, P, support=gen.nu), "kA1"
        if gen.K == 2:
            ov = closedform.overlap_from_generator(gen)
            return closedform.kA2_entropy(ov, n_side, P), "kA2"
        raise ValueError(
            f"no closed form for side {side} (K={gen.K}, structure {structure.kind})"
        )
    w = compute_weights(gen, P, max_nu=max_nu, max_k=max_k, n_jobs=n_jobs)
    return subsystem_entropy(w, n_side), "general"


def coherent_information(
    g: BipartiteGraphState | BitMatrix,
    P,
    method: str = "auto",
    *,
    max_nu: int = DEFAULT_MAX_NU,
    max_k: int = DEFAULT_MAX_K,
    n_jobs: int | None = None,
) -> CIResult:
    """Coherent informations ``I_A = H_A - H_AB`` and ``I_B = H_B - H_AB``.

    ``g`` may be a graph (local edges are ignored, they do not change any
    entropy) or its biadjacency matrix. ``H_AB = n H2(P)``.
    """
    gab = biadjacency(g) if isinstance(g, BipartiteGraphState) else g
    P = _probability(P)
    n_A, n_B = gab.shape
    r = rank(gab)
    H_AB = (n_A + n_B) * binary_entropy(P)
    kw = dict(max_nu=max_nu, max_k=max_k, n_jobs=n_jobs)
    H_A, tag_A = side_entropy(gab, "A", P, method, **kw)
    H_B, tag_B = side_entropy(gab, "B", P, method, **kw)
    label = "general" if method == "general" else f"{method}:{tag_A}/{tag_B}"
    return CIResult(
        H_A=H_A,
        H_B=H_B,
        H_AB=H_AB,
        I_A=H_A - H_AB,
        I_B=H_B - H_AB,
        rank=r,
        K_A=n_A - r,
        K_B=n_B - r,
        method=label,
    )
