"""Repetition-code decoding of star graph states.

Alice holds the centre of a star graph and Bob holds ``n`` leaves. After a
Hadamard on each leaf, Bob's register is a repetition code in which every
dephasing error on a leaf shows up as a bit flip. Decoding by majority vote
leaves Alice and one Bob qubit in a Bell-diagonal state.

Here ``p`` is the probability that a qubit is *not* flipped, i.e. the same
role ``P`` plays elsewhere in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .entropy import binary_entropy
from .graphstate import star

__all__ = [
    "NOISE_CONVENTION",
    "MAX_SIMULATED_N",
    "BellDiagonalState",
    "rep_code_coefficients",
    "rep_code_state_bob_noise",
    "ci_bell",
    "decoded_state",
    "rep_code_ci_all_noise",
]

NOISE_CONVENTION = "p = probability that a qubit stays in |+> (no dephasing flip)"
MAX_SIMULATED_N = 9


@dataclass(frozen=True)
class BellDiagonalState:
    """Two-component Bell-diagonal state ``lambda_plus |phi> + lambda_minus |phi'>``."""

    lambda_plus: float
    lambda_minus: float

    def __post_init__(self):
        for v in (self.lambda_plus, self.lambda_minus):
            if not -1e-15 <= v <= 1 + 1e-15:
                raise ValueError(f"coefficient {v!r} outside [0, 1]")
        if abs(self.lambda_plus + self.lambda_minus - 1.0) > 1e-12:
            raise ValueError("coefficients must sum to 1")


def _check_odd(n: int) -> None:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"repetition code length must be odd and positive, got {n}")


def rep_code_coefficients(n: int, p):
    """``(lambda_plus, lambda_minus)`` after majority decoding, Bob-only noise.

    Works for floats and for symbolic ``p`` (e.g. a sympy symbol).
    """
    _check_odd(n)
    lam = sum(math.comb(n, k) * p ** (n - k) * (1 - p) ** k for k in range(n // 2 + 1))
    return lam, 1 - lam


def rep_code_state_bob_noise(n: int, p: float) -> BellDiagonalState:
    lam_plus, lam_minus = rep_code_coefficients(n, float(p))
    return BellDiagonalState(lam_plus, lam_minus)


def ci_bell(state: BellDiagonalState) -> float:
    """``1 - H2(lambda_plus)``: Bob's marginal is maximally mixed."""
    return 1.0 - binary_entropy(min(max(state.lambda_plus, 0.0), 1.0))


# -- circuit simulation --------------------------------------------------
#
# States are stored as arrays of shape (configs, 2, 2, ..., 2), one row per
# initial |+/-> configuration of the star graph, so a gate is an operation on
# one or more axes applied to every configuration at once.

_H = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2)


def _hadamard(amps: np.ndarray, q: int) -> np.ndarray:
    return np.moveaxis(np.tensordot(_H, amps, axes=([1], [q + 1])), 0, q + 1)


def _controlled_x(amps: np.ndarray, controls: dict[int, int], target: int) -> np.ndarray:
    """Flip ``target`` where each control qubit ``c`` equals ``controls[c]``."""
    out = amps.copy()
    sel = [slice(None)] * amps.ndim
    for c, val in controls.items():
        sel[c + 1] = val
    for t_val in (0, 1):
        src = list(sel)
        dst = list(sel)
        src[target + 1] = t_val
        dst[target + 1] = 1 - t_val
        out[tuple(dst)] = amps[tuple(src)]
    return out


def _cnot(amps: np.ndarray, control: int, target: int) -> np.ndarray:
    return _controlled_x(amps, {control: 1}, target)


def _initial_ensemble(n: int, p: float, alice_noisy: bool):
    g = star(1, n)
    probs = oracle.config_probabilities(g.n, [p if alice_noisy else 1.0] + [p] * n)
    states = oracle.config_states(g)
    return probs, states, g.n


def _majority_decode(amps: np.ndarray, n: int) -> np.ndarray:
    """Map Bob's register ``x`` to ``(maj(x), x_1^x_2, ..., x_1^x_n)``.

    This is a permutation of basis states; the first Bob qubit carries the
    decoded bit and the others the syndrome, which is discarded.
    """
    C = amps.shape[0]
    flat = amps.reshape(C, 2, 1 << n)
    x = np.arange(1 << n)
    bits = (x[:, None] >> np.arange(n - 1, -1, -1)[None, :]) & 1
    maj = (bits.sum(axis=1) > n // 2).astype(int)
    synd = bits[:, 1:] ^ bits[:, :1]
    y = maj << (n - 1)
    for k in range(n - 1):
        y |= synd[:, k] << (n - 2 - k)
    out = np.zeros_like(flat)
    out[:, :, y] = flat[:, :, x]
    return out.reshape(amps.shape)


def _gate_decode_n3(amps: np.ndarray) -> np.ndarray:
    """The n=3 ancilla circuit, qubit order (A, B1, B2, B3, P1, P2)."""
    C = amps.shape[0]
    ancillas = np.zeros((2, 2))
    ancillas[0, 0] = 1.0
    amps = np.einsum("c...,ij->c...ij", amps, ancillas)
    B1, B2, B3, P1, P2 = 1, 2, 3, 4, 5
    amps = _cnot(amps, B1, P1)
    amps = _cnot(amps, B2, P1)
    amps = _cnot(amps, B2, P2)
    amps = _cnot(amps, B3, P2)
    amps = _cnot(amps, P1, P2)
    # syndrome (P1, P2) = (B1^B2, B1^B3) names the flipped qubit
    amps = _controlled_x(amps, {P1: 1, P2: 1}, B1)
    amps = _controlled_x(amps, {P1: 1, P2: 0}, B2)
    amps = _controlled_x(amps, {P1: 0, P2: 1}, B3)
    # unencode so B2, B3 return to |0> before their Z measurement
    amps = _cnot(amps, B1, B2)
    amps = _cnot(amps, B1, B3)
    assert amps.shape == (C,) + (2,) * 6
    return amps


def decoded_state(
    n: int, p: float, alice_noisy: bool = True, decoder: str = "majority"
) -> np.ndarray:
    """Density matrix of (Alice, Bob's first qubit) after decoding.

    ``decoder="gates"`` runs the ancilla circuit (``n == 3`` only);
    ``"majority"`` applies the equivalent majority-vote permutation.
    """
    _check_odd(n)
    if n > MAX_SIMULATED_N:
        raise ValueError(f"simulation limited to n <= {MAX_SIMULATED_N}, got {n}")
    probs, states, n_qubits = _initial_ensemble(n, p, alice_noisy)
    amps = states.reshape((len(states),) + (2,) * n_qubits)
    for q in range(1, n + 1):
        amps = _hadamard(amps, q)
    if decoder == "majority":
        amps = _majority_decode(amps, n)
        total = n_qubits
    elif decoder == "gates":
        if n != 3:
            raise ValueError("the gate-level decoder is only defined for n = 3")
        amps = _gate_decode_n3(amps)
        total = n_qubits + 2
    else:
        raise ValueError(f"unknown decoder {decoder!r}")
    amps = _hadamard(amps, 1)
    flat = amps.reshape(len(amps), 1 << total)
    return oracle.reduced_density(probs, flat, total, keep=[0, 1])


def rep_code_ci_all_noise(n: int, p: float, decoder: str = "majority") -> float:
    """Coherent information after decoding with every qubit dephased."""
    rho = decoded_state(n, p, alice_noisy=True, decoder=decoder)
    rho_B = np.trace(rho.reshape(2, 2, 2, 2), axis1=0, axis2=2)
    return oracle.von_neumann_entropy(rho_B) - oracle.von_neumann_entropy(rho)
