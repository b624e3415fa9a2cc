import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import unitary_group

from oracles import eig_sym_2x2
from qsuff.exceptions import DomainError, InvalidInput, ResourceLimit
from qsuff.linalg import (
    eig_hermitian,
    matrix_function,
    rank_of_projection,
    spectral_split,
    tensor_power,
    trace_norm,
)

seeds = st.integers(0, 2 ** 32 - 1)


def random_hermitian(seed, dim):
    rng = np.random.default_rng(seed)
    G = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (G + G.conj().T) / 2


class TestEigHermitian:
    def test_diagonal(self):
        spec = eig_hermitian(np.diag([3.0, 1 / 3]))
        np.testing.assert_allclose(spec.eigenvalues, [1 / 3, 3])
        assert spec.multiplicities == (1, 1)

    def test_identity_is_one_cluster(self):
        spec = eig_hermitian(np.eye(2))
        np.testing.assert_allclose(spec.eigenvalues, [1.0])
        assert spec.multiplicities == (2,)
        np.testing.assert_allclose(spec.projections[0], np.eye(2))

    def test_against_closed_form(self):
        vals, vecs = eig_sym_2x2(0.5, 0.4, 0.5)
        spec = eig_hermitian(np.array([[0.5, 0.4], [0.4, 0.5]]))
        np.testing.assert_allclose(spec.eigenvalues, vals, atol=1e-14)
        for P, v in zip(spec.projections, vecs):
            np.testing.assert_allclose(P, np.outer(v, v), atol=1e-14)

    def test_near_degenerate_eigenvalues_merge(self):
        spec = eig_hermitian(np.diag([1.0, 1.0 + 1e-12, 2.0]))
        assert spec.multiplicities == (2, 1)

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvalidInput):
            eig_hermitian(np.array([[0, 1], [0, 0]]))

    @settings(max_examples=60, deadline=None)
    @given(seeds, st.integers(1, 8))
    def test_reconstruction(self, seed, dim):
        H = random_hermitian(seed, dim)
        spec = eig_hermitian(H)
        assert np.linalg.norm(spec.reconstruct() - H) <= 1e-10 * np.linalg.norm(H)
        assert sum(spec.multiplicities) == dim
        np.testing.assert_allclose(sum(spec.projections), np.eye(dim), atol=1e-12)
        for P in spec.projections:
            np.testing.assert_allclose(P @ P, P, atol=1e-12)


class TestMatrixFunction:
    def test_identity_function(self):
        H = random_hermitian(0, 3)
        np.testing.assert_allclose(matrix_function(H, lambda x: x), H, atol=1e-13)

    def test_sqrt_diagonal(self):
        np.testing.assert_allclose(matrix_function(np.diag([4.0, 9.0]), np.sqrt), np.diag([2, 3]))

    def test_scalar_function_accepted(self):
        out = matrix_function(np.diag([0.75, 0.25]), math.sqrt)
        np.testing.assert_allclose(np.diag(out).real, [math.sqrt(3) / 2, 0.5])

    @pytest.mark.parametrize("f", [np.log, math.log])
    def test_log_of_nonpositive_raises(self, f):
        with pytest.raises(DomainError):
            matrix_function(np.diag([1.0, 0.0]), f)

    @settings(max_examples=40, deadline=None)
    @given(seeds, st.integers(1, 6))
    def test_exp_log_roundtrip(self, seed, dim):
        H = random_hermitian(seed, dim)
        A = H @ H + 0.1 * np.eye(dim)
        back = matrix_function(matrix_function(A, np.log), np.exp)
        np.testing.assert_allclose(back, A, atol=1e-9 * np.linalg.norm(A))


class TestSpectralSplit:
    def test_pair_a_t1(self):
        sp = spectral_split(np.diag([-0.5, 0.5]))
        np.testing.assert_allclose(sp.positive_part, np.diag([0, 0.5]))
        np.testing.assert_allclose(sp.P_plus, np.diag([0, 1]))
        np.testing.assert_allclose(sp.P_zero, 0)

    def test_pair_a_t3(self):
        sp = spectral_split(np.diag([-2.0, 0.0]))
        np.testing.assert_allclose(sp.P_plus, 0)
        np.testing.assert_allclose(sp.P_minus, np.diag([1, 0]))
        np.testing.assert_allclose(sp.P_zero, np.diag([0, 1]))

    def test_zero_matrix(self):
        sp = spectral_split(np.zeros((3, 3)))
        np.testing.assert_allclose(sp.P_zero, np.eye(3))
        np.testing.assert_allclose(sp.positive_part, 0)
        np.testing.assert_allclose(sp.negative_part, 0)

    @settings(max_examples=50, deadline=None)
    @given(seeds, st.integers(1, 6))
    def test_split_consistency(self, seed, dim):
        H = random_hermitian(seed, dim)
        sp = spectral_split(H)
        np.testing.assert_allclose(sp.positive_part - sp.negative_part, H, atol=1e-12)
        np.testing.assert_allclose(sp.positive_part @ sp.negative_part, 0, atol=1e-12)
        np.testing.assert_allclose(sp.P_plus @ sp.P_minus, 0, atol=1e-12)
        np.testing.assert_allclose(sp.P_plus + sp.P_minus + sp.P_zero, np.eye(dim), atol=1e-12)
        assert np.linalg.eigvalsh(sp.positive_part)[0] >= -1e-12
        assert rank_of_projection(sp.P_plus) + rank_of_projection(sp.P_minus) \
            + rank_of_projection(sp.P_zero) == dim


class TestTraceNorm:
    @pytest.mark.parametrize("A, expected", [
        (np.eye(2), 2.0),
        (np.diag([-0.5, 0.5]), 1.0),
        (0.5 * np.diag([0.25, 0.75]) - 0.5 * np.diag([0.75, 0.25]), 0.5),
    ])
    def test_values(self, A, expected):
        assert trace_norm(A) == pytest.approx(expected, abs=1e-14)

    def test_non_hermitian_uses_singular_values(self):
        assert trace_norm(np.array([[0, 2], [0, 0]])) == pytest.approx(2.0)

    @settings(max_examples=40, deadline=None)
    @given(seeds, st.integers(2, 5))
    def test_triangle_and_unitary_invariance(self, seed, dim):
        A, B = random_hermitian(seed, dim), random_hermitian(seed + 1, dim)
        assert trace_norm(A + B) <= trace_norm(A) + trace_norm(B) + 1e-12
        U = unitary_group.rvs(dim, random_state=seed)
        assert trace_norm(U @ A @ U.conj().T) == pytest.approx(trace_norm(A), rel=1e-12)
        assert trace_norm(np.zeros((dim, dim))) == 0.0


class TestTensorPower:
    def test_n1(self):
        A = random_hermitian(3, 3)
        np.testing.assert_allclose(tensor_power(A, 1), A)

    def test_diagonal_square(self):
        a, b = 0.3, 0.7
        np.testing.assert_allclose(tensor_power(np.diag([a, b]), 2), np.diag([a * a, a * b, b * a, b * b]))

    def test_trace_multiplicative(self, states_a):
        rho0, _ = states_a
        assert np.trace(tensor_power(rho0.matrix, 3)).real == pytest.approx(1.0, abs=1e-14)

    def test_cap(self):
        with pytest.raises(ResourceLimit):
            tensor_power(np.eye(4), 7)
        with pytest.raises(ResourceLimit):
            tensor_power(np.eye(2), 3, cap=4)
