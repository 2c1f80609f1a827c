import math

import numpy as np
import pytest

from graphci import oracle
from graphci.entropy import binary_entropy
from graphci.repcode import (
    MAX_SIMULATED_N,
    BellDiagonalState,
    ci_bell,
    decoded_state,
    rep_code_ci_all_noise,
    rep_code_coefficients,
    rep_code_state_bob_noise,
)


def test_coefficients_symbolic():
    sympy = pytest.importorskip("sympy")
    p = sympy.Symbol("p")
    lam, minus = rep_code_coefficients(3, p)
    assert sympy.expand(lam - (p**3 + 3 * p**2 * (1 - p))) == 0
    assert sympy.expand(minus - (3 * p * (1 - p) ** 2 + (1 - p) ** 3)) == 0
    assert sympy.Poly(lam, p).all_coeffs() == sympy.Poly(p**3 + 3 * p**2 * (1 - p), p).all_coeffs()


def test_coefficients_simple():
    assert rep_code_state_bob_noise(1, 0.8).lambda_plus == pytest.approx(0.8)
    for n in (1, 3, 5, 9, 21):
        assert rep_code_state_bob_noise(n, 1.0).lambda_plus == 1.0
    for n in (0, 2, 4):
        with pytest.raises(ValueError):
            rep_code_state_bob_noise(n, 0.9)


def test_bell_state_validation():
    with pytest.raises(ValueError):
        BellDiagonalState(0.7, 0.7)
    with pytest.raises(ValueError):
        BellDiagonalState(1.2, -0.2)


def test_ci_bell():
    assert ci_bell(BellDiagonalState(1.0, 0.0)) == 1.0
    assert ci_bell(BellDiagonalState(0.5, 0.5)) == pytest.approx(0.0)
    assert ci_bell(BellDiagonalState(0.89, 0.11)) == pytest.approx(1 - binary_entropy(0.89))


@pytest.mark.parametrize("p", [0.8, 0.9, 0.95])
def test_bob_only_monotone(p):
    vals = [ci_bell(rep_code_state_bob_noise(n, p)) for n in range(1, 10, 2)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    assert ci_bell(rep_code_state_bob_noise(101, p)) > 0.999


@pytest.mark.parametrize("n", [1, 3, 5])
def test_bob_only_simulation_matches_coefficients(n):
    p = 0.85
    rho = decoded_state(n, p, alice_noisy=False)
    lam = rep_code_state_bob_noise(n, p).lambda_plus
    evals = np.sort(np.linalg.eigvalsh(rho))[::-1]
    np.testing.assert_allclose(evals, [lam, 1 - lam, 0, 0], atol=1e-12)


def test_all_noise_n1():
    for p in (0.6, 0.8, 0.9, 0.99):
        assert rep_code_ci_all_noise(1, p) == pytest.approx(1 - 2 * binary_entropy(p), abs=1e-12)


def test_all_noise_noiseless():
    for n in (1, 3, 5):
        assert rep_code_ci_all_noise(n, 1.0) == pytest.approx(1.0, abs=1e-12)


def test_all_noise_bounded_by_bob_only():
    for n in (1, 3, 5, 7):
        for p in (0.7, 0.85, 0.95):
            assert rep_code_ci_all_noise(n, p) <= ci_bell(rep_code_state_bob_noise(n, p)) + 1e-12


def test_all_noise_improves_over_n1():
    assert rep_code_ci_all_noise(3, 0.9) > rep_code_ci_all_noise(1, 0.9)


def test_gate_decoder_equals_majority():
    for p in (0.6, 0.9, 1.0):
        np.testing.assert_allclose(decoded_state(3, p, decoder="gates"),
                                   decoded_state(3, p, decoder="majority"), atol=1e-10)
    with pytest.raises(ValueError):
        decoded_state(5, 0.9, decoder="gates")


def test_decoded_state_valid():
    oracle.check_density(decoded_state(5, 0.77))
    with pytest.raises(ValueError):
        decoded_state(MAX_SIMULATED_N + 2, 0.9)
