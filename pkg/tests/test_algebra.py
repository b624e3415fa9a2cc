import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsuff.algebra import (
    algebra_tensor_power,
    close_generators,
    conditional_expectation,
    contains,
    full_algebra,
    is_commutative,
    is_modular_invariant,
    restrict_state,
    superop_kron,
    trivial_algebra,
)
from qsuff.datasets import SIGMA_X, SIGMA_Z, block_ampliation_algebra, diagonal_algebra, random_generators
from qsuff.exceptions import InvalidInput, ResourceLimit
from qsuff.linalg import commutator

seeds = st.integers(0, 2 ** 32 - 1)


def random_matrix(rng, dim):
    return rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))


def random_algebra(seed):
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(2, 5))
    return close_generators(random_generators(dim, rng)), rng


class TestCloseGenerators:
    def test_diagonal(self):
        M0 = close_generators([np.diag([1, -1])])
        assert M0.linear_dim == 2
        assert is_commutative(M0)

    def test_paulis_generate_full_algebra(self):
        M0 = close_generators([SIGMA_X, SIGMA_Z])
        assert M0.linear_dim == 4
        gram = M0.basis.reshape(4, -1) @ M0.basis.reshape(4, -1).conj().T
        assert np.linalg.matrix_rank(gram) == 4

    def test_empty_gives_scalars(self):
        M0 = close_generators([], dim=3)
        assert M0.linear_dim == 1
        np.testing.assert_allclose(M0.project(np.diag([1.0, 2.0, 6.0])), 3 * np.eye(3))

    def test_non_hermitian_generator_adds_adjoint(self):
        # the nilpotent E12 generates all of M_2 together with its adjoint
        assert close_generators([np.array([[0, 1], [0, 0]])]).linear_dim == 4

    def test_ampliation(self):
        M0 = block_ampliation_algebra()
        assert M0.linear_dim == 4 and M0.dim == 4
        assert M0.contains(np.kron(np.eye(2), SIGMA_X))[0]
        assert not M0.contains(np.kron(SIGMA_X, np.eye(2)))[0]

    def test_errors(self):
        with pytest.raises(InvalidInput):
            close_generators([np.eye(2), np.eye(3)])
        with pytest.raises(InvalidInput):
            close_generators([])
        with pytest.raises(InvalidInput):
            close_generators([np.ones((2, 3))])

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_closed_under_products_and_adjoints(self, seed):
        M0, _ = random_algebra(seed)
        B = M0.basis
        assert M0.contains(np.eye(M0.dim))[0]
        for a in B:
            assert M0.contains(a.conj().T)[0]
            for b in B:
                assert M0.contains(a @ b)[0]

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_closure_idempotent(self, seed):
        M0, _ = random_algebra(seed)
        again = close_generators(list(M0.basis))
        assert again.linear_dim == M0.linear_dim
        for b in again.basis:
            assert M0.contains(b)[0]


class TestContains:
    def test_basis_elements(self, diag2):
        for b in diag2.basis:
            flag, dist = contains(diag2, b)
            assert flag and dist < 1e-14

    def test_sigma_x_not_diagonal(self, diag2):
        flag, dist = contains(diag2, SIGMA_X)
        assert not flag
        assert dist == pytest.approx(np.sqrt(2), abs=1e-14)

    @pytest.mark.parametrize("M0", [diagonal_algebra(3), full_algebra(3), trivial_algebra(3)])
    def test_identity(self, M0):
        assert contains(M0, np.eye(3))[0]


class TestConditionalExpectation:
    def test_pinching(self, diag2):
        X = np.array([[1, 2], [3, 4]])
        np.testing.assert_allclose(conditional_expectation(diag2, X), np.diag([1, 4]))

    def test_full_algebra_is_identity(self, rng):
        X = random_matrix(rng, 3)
        np.testing.assert_allclose(conditional_expectation(full_algebra(3), X), X, atol=1e-14)

    def test_normalised_trace(self):
        out = conditional_expectation(trivial_algebra(2), np.diag([0.75, 0.25]))
        np.testing.assert_allclose(out, 0.5 * np.eye(2))

    def test_wrong_shape(self, diag2):
        with pytest.raises(InvalidInput):
            conditional_expectation(diag2, np.eye(3))

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_properties(self, seed):
        M0, rng = random_algebra(seed)
        d = M0.dim
        X = random_matrix(rng, d)
        E = lambda Y: conditional_expectation(M0, Y)
        EX = E(X)
        # idempotent
        assert np.linalg.norm(E(EX) - EX) <= 1e-10
        # trace preserving, unital, *-preserving
        assert abs(np.trace(EX) - np.trace(X)) <= 1e-10
        np.testing.assert_allclose(E(np.eye(d)), np.eye(d), atol=1e-12)
        np.testing.assert_allclose(E(X.conj().T), EX.conj().T, atol=1e-12)
        # positive
        P = X @ X.conj().T
        assert np.linalg.eigvalsh(E(P))[0] >= -1e-10
        # module property on basis elements
        for A in M0.basis[:4]:
            for B in M0.basis[:4]:
                np.testing.assert_allclose(E(A @ X @ B), A @ EX @ B, atol=1e-10)


class TestRestrictState:
    def test_pair_b_pinching(self, diag2, states_b):
        np.testing.assert_allclose(restrict_state(diag2, states_b[1]).matrix, 0.5 * np.eye(2), atol=1e-15)

    def test_full_and_trivial(self, states_b):
        rho = states_b[1]
        np.testing.assert_allclose(restrict_state(full_algebra(2), rho).matrix, rho.matrix, atol=1e-15)
        np.testing.assert_allclose(restrict_state(trivial_algebra(2), rho).matrix, np.eye(2) / 2, atol=1e-15)


class TestModularInvariance:
    def test_diagonal_state(self, diag2, states_a):
        assert is_modular_invariant(diag2, states_a[0])

    def test_off_diagonal_state(self, diag2, states_b):
        assert not is_modular_invariant(diag2, states_b[1])

    def test_full_algebra(self, states_b):
        assert is_modular_invariant(full_algebra(2), states_b[1])

    def test_matches_unitary_group(self, rng):
        # rho^{it} b rho^{-it} stays in M0 for several t exactly when the criterion holds
        from qsuff.datasets import random_density
        for family in ("diagonal", "block", "full"):
            M0 = close_generators(random_generators(3, rng, family=family, rotate=False))
            rho = random_density(3, rng)
            w, V = np.linalg.eigh(rho.matrix)
            moved = []
            for t in (0.3, 1.7, -2.2):
                U = (V * np.exp(1j * t * np.log(w))) @ V.conj().T
                moved.append(all(M0.contains(U @ b @ U.conj().T)[0] for b in M0.basis))
            assert all(moved) == is_modular_invariant(M0, rho)


class TestCommutative:
    def test_cases(self, diag2):
        assert is_commutative(diag2)
        assert not is_commutative(full_algebra(2))
        assert is_commutative(trivial_algebra(2))
        assert not is_commutative(block_ampliation_algebra())


class TestTensorPower:
    def test_n1(self, diag2):
        assert algebra_tensor_power(diag2, 1) is diag2

    def test_diagonal_square(self, diag2):
        M2 = algebra_tensor_power(diag2, 2)
        assert M2.dim == 4 and M2.linear_dim == 4
        assert is_commutative(M2)
        assert M2.contains(np.diag([1.0, 2.0, 3.0, 4.0]))[0]
        assert not M2.contains(np.kron(SIGMA_X, np.eye(2)))[0]

    def test_trivial_cube(self):
        M3 = algebra_tensor_power(trivial_algebra(2), 3)
        assert M3.dim == 8 and M3.linear_dim == 1
        np.testing.assert_allclose(M3.project(np.diag(np.arange(8.0))), 3.5 * np.eye(8))

    def test_cap(self, diag2):
        with pytest.raises(ResourceLimit):
            algebra_tensor_power(diag2, 13)

    @settings(max_examples=20, deadline=None)
    @given(seeds, st.integers(2, 3))
    def test_factorwise_projection_matches_materialised_basis(self, seed, n):
        M0, rng = random_algebra(seed)
        if M0.dim ** n > 27:
            n = 2
        Mn = algebra_tensor_power(M0, n)
        X = random_matrix(rng, Mn.dim)
        vecs = Mn.basis.reshape(Mn.linear_dim, -1)
        direct = (vecs.T @ (vecs.conj() @ X.reshape(-1))).reshape(Mn.dim, Mn.dim)
        np.testing.assert_allclose(Mn.project(X), direct, atol=1e-10)
        np.testing.assert_allclose((Mn.projector @ X.reshape(-1)).reshape(Mn.dim, Mn.dim),
                                   direct, atol=1e-10)

    def test_product_of_members_is_member(self, rng):
        M0 = close_generators(random_generators(3, rng, family="block"))
        Mn = algebra_tensor_power(M0, 2)
        a, b = M0.basis[1], M0.basis[-1]
        assert Mn.contains(np.kron(a, b))[0]


def test_superop_kron_matches_direct_action(rng):
    A, B = random_matrix(rng, 2), random_matrix(rng, 3)
    SA, SB = np.kron(A, A.T), np.kron(B, B.T)  # Y -> A Y A on row-major vec
    S = superop_kron(SA, SB, 2, 3)
    X = np.kron(random_matrix(rng, 2), random_matrix(rng, 3))
    AB = np.kron(A, B)
    np.testing.assert_allclose((S @ X.reshape(-1)).reshape(6, 6), AB @ X @ AB, atol=1e-10)


def test_commutator_helper():
    assert np.linalg.norm(commutator(SIGMA_X, SIGMA_Z)) > 0
