import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphci import oracle
from graphci.entropy import (
    CapExceeded,
    GeneratorMatrix,
    WeightVector,
    binary_entropy,
    coherent_information,
    compute_weights,
    compute_weights_reference,
    extract_generator_matrix,
    shannon_entropy,
    side_entropy,
    subsystem_entropy,
)
from graphci.gf2 import BitMatrix, rank, trim_zero_columns
from graphci.graphstate import biadjacency, from_biadjacency, random_graph, star

P_GRID = (0.1, 0.25, 0.5, 0.75, 0.9)


def random_gab(rng, n_A, n_B, density=0.5):
    return BitMatrix.from_array((rng.random((n_A, n_B)) < density).astype(int))


def gen_from_strings(strings, n_cols=None):
    J = BitMatrix.from_strings(strings, n_cols)
    trimmed, kept = trim_zero_columns(J)
    return GeneratorMatrix("A", J, trimmed, kept)


def test_binary_entropy():
    assert binary_entropy(0.0) == binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.11) == pytest.approx(-0.11 * math.log2(0.11) - 0.89 * math.log2(0.89))
    assert shannon_entropy([0.25] * 4) == pytest.approx(2.0)


def test_weight_vector_validation():
    WeightVector(np.array([0.5, 0.5]), 1)
    for w, K in [([1.0], 1), ([0.6, 0.6], 1), ([1.5, -0.5], 1)]:
        with pytest.raises(ValueError):
            WeightVector(np.array(w), K)


def test_six_qubit_generators(six_qubit):
    gab = biadjacency(six_qubit)
    ga = extract_generator_matrix(gab, "A")
    gb = extract_generator_matrix(gab, "B")
    assert ga.K == 0 and ga.J.n_rows == 0
    assert gb.K == 2
    assert gb.J.row_strings() == ["1110", "0101"]
    assert gb.nu == 4


@pytest.mark.parametrize("n_A, n_B", [(2, 1), (4, 3), (5, 2)])
def test_all_ones_generators(n_A, n_B):
    gen = extract_generator_matrix(BitMatrix.from_array(np.ones((n_A, n_B), dtype=int)), "A")
    assert gen.K == n_A - 1
    expected = {"1" + "".join("1" if k == j else "0" for k in range(1, n_A)) for j in range(1, n_A)}
    assert set(gen.J.row_strings()) == expected


def test_star_trim():
    gen = extract_generator_matrix(biadjacency(star(4, 1)), "A")
    assert gen.J.n_rows == 3 and gen.J.n_cols == 4
    assert gen.kept_cols == (0, 1, 2, 3) and gen.nu == 4


def test_generators_commute_with_other_side(rng):
    # each row of J, times G_AB, must vanish: the generator has no Z on the other side
    for _ in range(50):
        gab = random_gab(rng, int(rng.integers(1, 7)), int(rng.integers(1, 7)))
        for side, mat in (("A", gab), ("B", gab.T)):
            gen = extract_generator_matrix(gab, side)
            assert gen.K == mat.n_rows - rank(gab)
            if gen.K:
                assert (gen.J @ mat).is_zero()
                assert rank(gen.J) == gen.K


def test_weights_trivial_cases():
    empty = GeneratorMatrix("A", BitMatrix.zeros(0, 3), BitMatrix.zeros(0, 0), ())
    assert compute_weights(empty, 0.3).w.tolist() == [1.0]
    w = compute_weights(gen_from_strings(["11"]), 0.7).w
    assert w == pytest.approx([0.7**2 + 0.3**2, 2 * 0.7 * 0.3])


def test_weights_msb_first():
    # m_1 comes from the first row; a flip on column 0 only touches row 1
    gen = gen_from_strings(["10", "01"])
    w = compute_weights(gen, 0.9).w
    assert w == pytest.approx([0.81, 0.09, 0.09, 0.01])
    gen = gen_from_strings(["11", "01"])
    w = compute_weights(gen, 0.9).w
    # d=(1,0): m=(1,0) -> index 2; d=(0,1): m=(1,1) -> index 3
    assert w == pytest.approx([0.81, 0.01, 0.09, 0.09])


def test_weights_match_reference(rng):
    for _ in range(40):
        K = int(rng.integers(1, 6))
        n = int(rng.integers(K, 10))
        while True:
            J = BitMatrix.from_array(rng.integers(0, 2, size=(K, n)))
            if rank(J) == K:
                break
        trimmed, kept = trim_zero_columns(J)
        gen = GeneratorMatrix("A", J, trimmed, kept)
        P = float(rng.uniform())
        np.testing.assert_allclose(compute_weights(gen, P).w, compute_weights_reference(gen, P).w,
                                   atol=1e-14)


def test_weights_blocked_and_threaded():
    # nu above the low-bit table size exercises the high/low split and the thread merge
    rng = np.random.default_rng(7)
    J = BitMatrix.from_array(rng.integers(0, 2, size=(6, 22)))
    trimmed, kept = trim_zero_columns(J)
    gen = GeneratorMatrix("A", J, trimmed, kept)
    w1 = compute_weights(gen, 0.8, n_jobs=1).w
    w4 = compute_weights(gen, 0.8, n_jobs=4).w
    np.testing.assert_allclose(w1, w4, atol=1e-15)
    assert w1.sum() == pytest.approx(1.0, abs=1e-12)


def test_caps():
    gen = gen_from_strings(["1" * 12])
    with pytest.raises(CapExceeded):
        compute_weights(gen, 0.5, max_nu=10)
    gen = gen_from_strings(["10", "01"])
    with pytest.raises(CapExceeded):
        compute_weights(gen, 0.5, max_k=1)


def test_x_basis_diagonal_matches_weights(rng):
    """The reduced state is diagonal in the X basis with weights w times a uniform factor."""
    for _ in range(5):
        gab = random_gab(rng, 5, 3)
        g = from_biadjacency(gab)
        P = 0.3
        gen = extract_generator_matrix(gab, "A")
        w = compute_weights(gen, P).w
        diag = np.diag(oracle.x_basis(oracle.noisy_reduced_density(g, P, "A")))
        # a basis state |x> with x in the X basis has sign pattern J x
        x = np.arange(1 << 5)
        bits = (x[:, None] >> np.arange(4, -1, -1)[None, :]) & 1
        idx = np.zeros(len(x), dtype=int)
        for k, row in enumerate(gen.J.to_array()):
            idx = (idx << 1) | ((bits @ row) & 1)
        scale = 2 ** (5 - gen.K)
        np.testing.assert_allclose(diag * scale, w[idx], atol=1e-9)


def test_subsystem_entropy():
    w = WeightVector(np.array([0.5, 0.5]), 1)
    assert subsystem_entropy(w, 3) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        subsystem_entropy(WeightVector(np.ones(4) / 4, 2), 1)


def test_six_qubit_against_oracle(six_qubit):
    for P in (0.9, 0.3):
        got = coherent_information(six_qubit, P, "general")
        ref = oracle.oracle_ci(six_qubit, P)
        assert got.I_A == pytest.approx(ref.I_A, abs=1e-9)
        assert got.I_B == pytest.approx(ref.I_B, abs=1e-9)


def test_endpoints_are_rank(six_qubit):
    for P in (0.0, 1.0):
        res = coherent_information(six_qubit, P)
        assert res.I_A == res.I_B == 2


def test_method_labels(six_qubit):
    assert coherent_information(six_qubit, 0.7, "general").method == "general"
    assert coherent_information(six_qubit, 0.7).method == "auto:rank2type1/rank2type2"
    with pytest.raises(ValueError):
        coherent_information(six_qubit, 0.7, "bogus")
    with pytest.raises(ValueError):
        coherent_information(six_qubit, 1.3)


def test_closedform_raises_when_inapplicable():
    # rank 4 with K_A = 3 and more than three row classes
    gab = BitMatrix.from_strings(["1000", "0100", "0010", "0001", "1111", "1100", "0011"])
    with pytest.raises(ValueError):
        side_entropy(gab, "A", 0.7, "closedform")


def test_disconnected_vertex_adds_h2():
    base = BitMatrix.from_strings(["11", "11"])
    padded = BitMatrix.from_strings(["11", "11", "00"])
    P = 0.8
    for method in ("auto", "general"):
        h0, _ = side_entropy(base, "A", P, method)
        h1, _ = side_entropy(padded, "A", P, method)
        assert h1 - h0 == pytest.approx(binary_entropy(P), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**31 - 1), st.floats(0, 1))
def test_noise_symmetry(n_A, n_B, seed, P):
    rng = np.random.default_rng(seed)
    gab = random_gab(rng, n_A, n_B)
    a = coherent_information(gab, P, "general")
    b = coherent_information(gab, 1 - P, "general")
    assert abs(a.I_A - b.I_A) < 1e-12 and abs(a.I_B - b.I_B) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**31 - 1))
def test_local_edge_invariance(n_A, n_B, seed):
    rng = np.random.default_rng(seed)
    g = random_graph(n_A, n_B, rng)
    noisy = random_graph(n_A, n_B, rng, density=0.0, local_density=0.7)
    h = g.with_edges(noisy.edges)
    for P in (0.2, 0.85):
        assert coherent_information(g, P) == coherent_information(h, P)
        assert oracle.oracle_ci(h, P).H_A == pytest.approx(oracle.oracle_ci(g, P).H_A, abs=1e-10)
        assert oracle.oracle_ci(h, P).H_B == pytest.approx(oracle.oracle_ci(g, P).H_B, abs=1e-10)


def test_oracle_equivalence_sample(rng):
    for _ in range(30):
        n_A, n_B = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        g = random_graph(n_A, n_B, rng, local_density=0.3)
        for P in P_GRID:
            ref = oracle.oracle_ci(g, P)
            for method in ("general", "auto"):
                got = coherent_information(g, P, method)
                assert abs(got.H_A - ref.H_A) < 1e-9
                assert abs(got.H_B - ref.H_B) < 1e-9


def test_weights_blocked_against_vectorised_brute_force():
    # nu = 22 > 20 low bits: compare with a direct pass over every configuration
    rng = np.random.default_rng(3)
    J = BitMatrix.from_array(rng.integers(0, 2, size=(4, 22)))
    trimmed, kept = trim_zero_columns(J)
    gen = GeneratorMatrix("A", J, trimmed, kept)
    P = 0.62
    nu = gen.nu
    A = trimmed.to_array()
    d = np.arange(1 << nu, dtype=np.int64)
    m = np.zeros_like(d)
    n_minus = np.zeros_like(d)
    for j in range(nu):
        bit = (d >> j) & 1
        n_minus += bit
        col = 0
        for k in range(gen.K):
            col |= int(A[k, j]) << (gen.K - 1 - k)
        m ^= bit * col
    p = P ** (nu - n_minus) * (1 - P) ** n_minus
    expected = np.bincount(m, weights=p, minlength=1 << gen.K)
    np.testing.assert_allclose(compute_weights(gen, P, n_jobs=2).w, expected, atol=1e-13)
