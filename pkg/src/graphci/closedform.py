"""Closed-form subsystem entropies for low-rank and low-K structures.

All entropies are in bits. ``P`` is the probability that a qubit starts in
``|+>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from .entropy import GeneratorMatrix, WeightVector, binary_entropy, shannon_entropy
from .graphstate import equitable_split

__all__ = [
    "OverlapTriple",
    "f1",
    "rank1_ci",
    "rank2_type1_entropy",
    "rank2_type1_ci",
    "f2",
    "f2_weights",
    "rank2_type2_ci",
    "q",
    "kA1_entropy",
    "kA2_weights",
    "kA2_entropy",
    "overlap_from_generator",
    "optimal_type1",
    "optimal_type2",
]

_EXACT_BINOMIAL_MAX = 60
_LN2 = math.log(2)


def _log_binom(n: int, k: np.ndarray) -> np.ndarray:
    if n <= _EXACT_BINOMIAL_MAX:
        return np.log([float(math.comb(n, int(i))) for i in np.atleast_1d(k)])
    k = np.asarray(k, dtype=float)
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _is_endpoint(P: float) -> bool:
    return P == 0.0 or P == 1.0


def f1(n_side: int, P: float) -> float:
    """Entropy of an ``n_side``-qubit side whose rows are all identical.

    ``1 - sum_i C(n-1, i) Pbar_i log2 Pbar_i`` with
    ``Pbar_i = P^(n-i) (1-P)^i + P^i (1-P)^(n-i)``.
    """
    if n_side < 1:
        raise ValueError(f"n_side must be >= 1, got {n_side}")
    P = float(P)
    if _is_endpoint(P) or n_side == 1:
        return 1.0
    n = n_side
    Q = 1.0 - P
    if n <= _EXACT_BINOMIAL_MAX:
        total = 0.0
        for i in range(n):
            pbar = P ** (n - i) * Q**i + P**i * Q ** (n - i)
            if pbar > 0.0:
                total += math.comb(n - 1, i) * pbar * math.log2(pbar)
        return 1.0 - total
    # large n: stay in log space so the binomials and tiny Pbar_i don't overflow
    i = np.arange(n, dtype=float)
    lp, lq = math.log(P), math.log1p(-P)
    log_pbar = np.logaddexp((n - i) * lp + i * lq, i * lp + (n - i) * lq)
    log_c = _log_binom(n - 1, i)
    return 1.0 - float(np.sum(np.exp(log_c + log_pbar) * log_pbar)) / _LN2


def rank1_ci(n_A: int, n_B: int, P: float, side: str = "A") -> float:
    """Coherent information of the complete bipartite graph ``K(n_A, n_B)``."""
    n_side = n_A if side.upper() == "A" else n_B
    return f1(n_side, P) - (n_A + n_B) * binary_entropy(P)


def rank2_type1_entropy(n1: int, n2: int, P: float) -> float:
    return f1(n1, P) + f1(n2, P)


def rank2_type1_ci(n1: int, n2: int, n_B: int, P: float) -> float:
    return rank2_type1_entropy(n1, n2, P) - (n1 + n2 + n_B) * binary_entropy(P)


def f2_weights(n1: int, n2: int, n3: int, P: float):
    """Log-weights of the type-2 sign patterns and their multiplicities.

    Returns ``(log_c, log_w_plus, log_w_minus)`` as arrays over the grid of
    ``(n1+, n2+, n3+)``; ``log_c`` is the log of the product of binomials.
    ``w_plus`` (``w_minus``) is the probability of one pattern whose shared
    bracket is positive (negative). ``P`` must lie strictly inside (0, 1).
    """
    nA = n1 + n2 + n3
    a, b, c = np.meshgrid(
        np.arange(n1, dtype=float),
        np.arange(n2, dtype=float),
        np.arange(n3, dtype=float),
        indexing="ij",
    )
    lp, lq = math.log(P), math.log1p(-P)
    S = a + b + c

    def term(p_exp, q_exp):
        return p_exp * lp + q_exp * lq

    plus = np.stack([
        term(3 + S, nA - 3 - S),
        term(a + n2 - b + n3 - c - 1, 1 + n1 - a + b + c),
        term(n1 - a + b + n3 - c - 1, 1 + a + n2 - b + c),
        term(n1 - a + n2 - b + c - 1, 1 + a + b + n3 - c),
    ])
    minus = np.stack([
        term(nA - 3 - S, 3 + S),
        term(1 + n1 - a + b + c, a + n2 - b + n3 - c - 1),
        term(1 + a + n2 - b + c, n1 - a + b + n3 - c - 1),
        term(1 + a + b + n3 - c, n1 - a + n2 - b + c - 1),
    ])
    log_c = (
        _log_binom(n1 - 1, np.arange(n1))[:, None, None]
        + _log_binom(n2 - 1, np.arange(n2))[None, :, None]
        + _log_binom(n3 - 1, np.arange(n3))[None, None, :]
    )
    return log_c, logsumexp(plus, axis=0), logsumexp(minus, axis=0)


def f2(n1: int, n2: int, n3: int, P: float) -> float:
    """Entropy of a rank-2 side whose rows take three values summing to zero.

    ``n1, n2, n3`` are the class sizes. The result is
    ``2 - sum C(n1-1,a) C(n2-1,b) C(n3-1,c) (w+ log2 w+ + w- log2 w-)``.
    """
    if min(n1, n2, n3) < 1:
        raise ValueError(f"class sizes must be >= 1, got ({n1}, {n2}, {n3})")
    P = float(P)
    if _is_endpoint(P):
        return 2.0
    log_c, log_wp, log_wm = f2_weights(n1, n2, n3, P)
    total = np.sum(np.exp(log_c + log_wp) * log_wp + np.exp(log_c + log_wm) * log_wm)
    return 2.0 - float(total) / _LN2


def rank2_type2_ci(n1: int, n2: int, n3: int, n_B: int, P: float) -> float:
    return f2(n1, n2, n3, P) - (n1 + n2 + n3 + n_B) * binary_entropy(P)


def q(N: int, P: float) -> float:
    """Probability that a product of ``N`` independent +-1 signs, each +1 w.p. ``P``, is +1."""
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    return 0.5 * (1.0 + (2.0 * P - 1.0) ** N)


def kA1_entropy(n_side: int, P: float, support: int | None = None) -> float:
    """Entropy of a side with a single generator.

    ``support`` is the number of qubits the generator touches; it defaults to
    ``n_side``, the case where ``J`` is a single all-ones row.
    """
    if support is None:
        support = n_side
    if n_side < 1 or not 1 <= support <= n_side:
        raise ValueError(f"need 1 <= support <= n_side, got {support}, {n_side}")
    return binary_entropy(q(support, P)) + n_side - 1


@dataclass(frozen=True)
class OverlapTriple:
    """Supports of two generators: sizes ``r`` and ``s``, ``t`` shared qubits."""

    r: int
    s: int
    t: int

    def __post_init__(self):
        if self.r < 1 or self.s < 1 or not 0 <= self.t <= min(self.r, self.s):
            raise ValueError(f"invalid overlap triple {self}")

    @property
    def nu(self) -> int:
        return self.r + self.s - self.t


def kA2_weights(ov: OverlapTriple, P: float) -> WeightVector:
    """Weights ``[w00, w01, w10, w11]`` of a side with two generators."""
    qt, qr, qs = q(ov.t, P), q(ov.r - ov.t, P), q(ov.s - ov.t, P)
    w00 = qt * qr * qs + (1 - qt) * (1 - qr) * (1 - qs)
    w01 = qt * qr * (1 - qs) + (1 - qt) * (1 - qr) * qs
    w10 = qt * (1 - qr) * qs + (1 - qt) * qr * (1 - qs)
    w11 = qt * (1 - qr) * (1 - qs) + (1 - qt) * qr * qs
    return WeightVector(np.array([w00, w01, w10, w11]), 2)


def kA2_entropy(ov: OverlapTriple, n_side: int, P: float) -> float:
    if n_side < ov.nu:
        raise ValueError(f"n_side={n_side} smaller than the {ov.nu} qubits in the supports")
    return shannon_entropy(kA2_weights(ov, P).w) + n_side - 2


def overlap_from_generator(gen: GeneratorMatrix) -> OverlapTriple:
    if gen.K != 2:
        raise ValueError(f"overlap triple needs K=2, got K={gen.K}")
    row1, row2 = gen.J.rows
    return OverlapTriple(row1.bit_count(), row2.bit_count(), (row1 & row2).bit_count())


def optimal_type1(n_A: int) -> tuple[int, int]:
    """Equitable two-class split, ``(floor(n_A/2), ceil(n_A/2))``."""
    hi, lo = equitable_split(n_A, 2)
    return lo, hi


def optimal_type2(n_A: int) -> tuple[int, int, int]:
    """Equitable three-class split (largest classes first)."""
    return equitable_split(n_A, 3)
