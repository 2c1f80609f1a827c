"""Brute-force density-matrix reference for noisy graph states.

Nothing here touches the GF(2) machinery: states are built amplitude by
amplitude, reduced states come from explicit partial traces and entropies
from eigenvalues. Agreement with :mod:`graphci.entropy` is therefore an
independent check.

Basis convention: vertex ``i`` of an ``n``-vertex graph is bit ``n-1-i`` of
a computational basis index, so Alice's qubits are the leading tensor
factors.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .graphstate import BipartiteGraphState

__all__ = [
    "MAX_STATE_QUBITS",
    "MAX_REDUCED_QUBITS",
    "MAX_FULL_QUBITS",
    "modified_graph_state_vector",
    "config_probabilities",
    "config_states",
    "reduced_density",
    "noisy_reduced_density",
    "noisy_density_matrix",
    "von_neumann_entropy",
    "x_basis",
    "check_density",
    "oracle_ci",
]

MAX_STATE_QUBITS = 14
MAX_REDUCED_QUBITS = 12
MAX_FULL_QUBITS = 10

EIGEN_CUTOFF = 1e-12


def _check_size(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise ValueError(f"{what} limited to {cap} qubits, got {n}")


def _bits(n: int) -> np.ndarray:
    """``(2**n, n)`` table; entry ``[x, i]`` is the bit of vertex ``i`` in ``x``."""
    x = np.arange(1 << n)[:, None]
    shifts = np.arange(n - 1, -1, -1)[None, :]
    return ((x >> shifts) & 1).astype(np.int8)


def _edge_parity(g: BipartiteGraphState) -> np.ndarray:
    # number of edges with both ends set, mod 2; this is the CZ phase
    bits = _bits(g.n)
    par = np.zeros(1 << g.n, dtype=np.int8)
    for u, v in g.edges:
        par ^= bits[:, u] & bits[:, v]
    return par


def modified_graph_state_vector(g: BipartiteGraphState, config: Sequence[int]) -> np.ndarray:
    """Apply CZ along every edge (local ones too) to ``|+/->`` product states.

    ``config[i] == 1`` starts vertex ``i`` in ``|->``.
    """
    n = g.n
    _check_size(n, MAX_STATE_QUBITS, "state vector")
    config = np.asarray(config, dtype=np.int8)
    if config.shape != (n,):
        raise ValueError(f"config must have length {n}")
    bits = _bits(n)
    flips = (bits @ config.astype(np.int64)) & 1
    sign = 1 - 2 * ((flips + _edge_parity(g)) & 1)
    return sign / math.sqrt(1 << n)


def config_probabilities(n: int, P) -> np.ndarray:
    """Probability of every ``|+/->`` configuration; ``P`` may be per-vertex."""
    P = np.broadcast_to(np.asarray(P, dtype=float), (n,))
    bits = _bits(n)
    probs = np.where(bits == 1, 1.0 - P[None, :], P[None, :])
    return probs.prod(axis=1)


def config_states(g: BipartiteGraphState) -> np.ndarray:
    """All modified graph states, one row per configuration index."""
    n = g.n
    _check_size(n, MAX_REDUCED_QUBITS, "ensemble")
    idx = np.arange(1 << n, dtype=np.uint32)
    overlap = np.bitwise_count(np.bitwise_and.outer(idx, idx)) & 1
    sign = 1 - 2 * ((overlap + _edge_parity(g)[None, :]) & 1)
    return sign.astype(float) / math.sqrt(1 << n)


def reduced_density(
    probs: np.ndarray, states: np.ndarray, n: int, keep: Sequence[int]
) -> np.ndarray:
    """``sum_c probs[c] Tr_rest |psi_c><psi_c|`` over qubits ``keep`` (in that order)."""
    keep = list(keep)
    rest = [i for i in range(n) if i not in keep]
    amps = states.reshape((len(states),) + (2,) * n)
    amps = amps.transpose([0] + [1 + i for i in keep] + [1 + i for i in rest])
    amps = amps.reshape(len(states), 1 << len(keep), 1 << len(rest))
    weighted = amps * np.sqrt(probs)[:, None, None]
    return np.tensordot(weighted, weighted.conj(), axes=([0, 2], [0, 2]))


def noisy_reduced_density(g: BipartiteGraphState, P, side: str) -> np.ndarray:
    """Reduced state of Alice (``side="A"``) or Bob of the dephased graph state."""
    _check_size(g.n, MAX_REDUCED_QUBITS, "reduced density")
    side = side.upper()
    keep = range(g.n_A) if side == "A" else range(g.n_A, g.n)
    return reduced_density(config_probabilities(g.n, P), config_states(g), g.n, keep)


def noisy_density_matrix(g: BipartiteGraphState, P) -> np.ndarray:
    """Full ``2**n x 2**n`` density matrix."""
    _check_size(g.n, MAX_FULL_QUBITS, "full density matrix")
    probs = config_probabilities(g.n, P)
    states = config_states(g)
    return (states.T * probs) @ states


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in bits; eigenvalues below 1e-12 count as zero."""
    evals = np.linalg.eigvalsh(rho)
    evals = evals[evals > EIGEN_CUTOFF]
    return float(-np.sum(evals * np.log2(evals)))


def x_basis(rho: np.ndarray) -> np.ndarray:
    """Conjugate ``rho`` by a Hadamard on every qubit."""
    dim = rho.shape[0]
    k = dim.bit_length() - 1
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)
    Hk = np.ones((1, 1))
    for _ in range(k):
        Hk = np.kron(Hk, h)
    return Hk @ rho @ Hk.T


def check_density(rho: np.ndarray, tol: float = 1e-12) -> None:
    """Raise ``AssertionError`` unless ``rho`` is a valid density matrix."""
    if not np.allclose(rho, rho.conj().T, atol=tol, rtol=0):
        raise AssertionError("matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise AssertionError(f"trace is {tr!r}")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -1e-10 or evals.max() > 1 + 1e-10:
        raise AssertionError(f"eigenvalues outside [0, 1]: {evals.min()}, {evals.max()}")


def _h2(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def oracle_ci(g: BipartiteGraphState, P):
    """Coherent informations from explicit density matrices.

    ``H_AB`` is the analytic ``n H2(P)``; for ``n <= 10`` the full state is
    also diagonalised and reported as ``H_AB_direct``.
    """
    from .entropy import CIResult

    n = g.n
    _check_size(n, MAX_REDUCED_QUBITS, "oracle")
    P = float(P)
    probs = config_probabilities(n, P)
    states = config_states(g)
    rho_A = reduced_density(probs, states, n, range(g.n_A))
    rho_B = reduced_density(probs, states, n, range(g.n_A, n))
    H_A = von_neumann_entropy(rho_A)
    H_B = von_neumann_entropy(rho_B)
    H_AB = n * _h2(P)
    H_direct = None
    if n <= MAX_FULL_QUBITS:
        H_direct = von_neumann_entropy((states.T * probs) @ states)

    # noiseless entanglement = log2 of the Schmidt rank of the graph state
    psi = states[0].reshape(1 << g.n_A, 1 << g.n_B)
    sv = np.linalg.svd(psi, compute_uv=False)
    r = int(round(math.log2(int(np.sum(sv > 1e-9)))))
    return CIResult(
        H_A=H_A,
        H_B=H_B,
        H_AB=H_AB,
        I_A=H_A - H_AB,
        I_B=H_B - H_AB,
        rank=r,
        K_A=g.n_A - r,
        K_B=g.n_B - r,
        method="oracle",
        H_AB_direct=H_direct,
    )
