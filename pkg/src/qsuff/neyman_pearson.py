"""Two-outcome tests of rho0 against rho1: Neyman-Pearson projections and Bayes errors.

A test is an operator ``0 <= M <= 1``; outcome "reject" has probability
``Tr rho M``. For a prior ``(lambda, 1 - lambda)`` the Bayes objective
``lambda*alpha + (1 - lambda)*beta`` is minimised by maximising
``Tr (rho1 - t rho0) M`` with ``t = lambda / (1 - lambda)``.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .algebra import restrict_state
from .exceptions import InternalInconsistency, InvalidInput
from .linalg import (
    check_hermitian,
    frobenius,
    rank_of_projection,
    spectral_split,
    trace_norm,
)
from .states import _check_pair, rn_derivative

TEST_TOL = 1e-9
CLUSTER_REL = 1e-8


def check_test_operator(M, tol=TEST_TOL):
    """Validate ``0 <= M <= 1`` within ``tol`` and clamp the spectrum into [0, 1]."""
    M = check_hermitian(M, name="test operator")
    w, V = np.linalg.eigh(M)
    if w[0] < -tol or w[-1] > 1 + tol:
        raise InvalidInput(f"test operator spectrum [{w[0]:.3g}, {w[-1]:.3g}] not within [0, 1]")
    return (V * np.clip(w, 0.0, 1.0)) @ V.conj().T


class ErrorPair(NamedTuple):
    alpha: float
    beta: float

    def bayes(self, lam):
        return lam * self.alpha + (1 - lam) * self.beta


def _clamp_prob(p, tol=TEST_TOL):
    if p < -tol or p > 1 + tol:
        raise InternalInconsistency(f"probability {p} outside [0, 1]")
    return float(min(max(p, 0.0), 1.0))


def error_pair(M, rho0, rho1):
    """``alpha = Tr rho0 M`` (first kind), ``beta = Tr rho1 (1 - M)`` (second kind)."""
    rho0, rho1 = _check_pair(rho0, rho1)
    M = check_test_operator(M)
    alpha = np.trace(rho0.matrix @ M).real
    beta = 1.0 - np.trace(rho1.matrix @ M).real
    return ErrorPair(_clamp_prob(alpha), _clamp_prob(beta))


@dataclass(frozen=True)
class NpDecomposition:
    """Support projections of ``rho1 - t rho0``.

    ``P_plus`` is the canonical Bayes optimal test; any ``P_plus + X`` with
    ``0 <= X <= P_zero`` is optimal as well.
    """

    t: float
    P_plus: np.ndarray
    P_minus: np.ndarray
    P_zero: np.ndarray
    zero_tol: float

    @property
    def rank_zero(self):
        return rank_of_projection(self.P_zero)

    @property
    def optimal_test(self):
        return self.P_plus


def np_zero_tol(rho0, rho1):
    """Kernel tolerance for ``rho1 - t rho0`` consistent with eigenvalue clustering of d.

    Eigenvalues of ``d`` within ``1e-8 ||d||`` of ``t`` map to eigenvalues of
    ``rho1 - t rho0`` bounded by that gap times ``||rho0||``.
    """
    rho0, rho1 = _check_pair(rho0, rho1)
    d_norm = np.linalg.eigvalsh(rn_derivative(rho0, rho1))[-1]
    return CLUSTER_REL * d_norm * rho0.eigenvalues[-1]


def np_decomposition(rho0, rho1, t, zero_tol=None):
    """Neyman-Pearson projections ``P_{t,+}``, ``P_{t,-}``, ``P_{t,0}`` at threshold t."""
    if t < 0:
        raise InvalidInput(f"t must be non-negative, got {t}")
    rho0, rho1 = _check_pair(rho0, rho1)
    if zero_tol is None:
        zero_tol = np_zero_tol(rho0, rho1)
    sp = spectral_split(rho1.matrix - t * rho0.matrix, zero_tol)
    return NpDecomposition(float(t), sp.P_plus, sp.P_minus, sp.P_zero, float(zero_tol))


def np_objective(M, rho0, rho1, t):
    return float(np.trace((rho1.matrix - t * rho0.matrix) @ M).real)


def is_bayes_optimal(M, rho0, rho1, t, tol=1e-8):
    """Is ``M`` a Bayes optimal test at threshold ``t``?

    Checks the structure ``M = P_plus + X`` with ``0 <= X <= P_zero`` and,
    independently, that the objective ``Tr (rho1 - t rho0) M`` reaches the
    optimum. The two criteria must agree.
    """
    rho0, rho1 = _check_pair(rho0, rho1)
    M = check_test_operator(M)
    dec = np_decomposition(rho0, rho1, t)
    n = M.shape[0]
    X = M - dec.P_plus
    structural = (
        frobenius(dec.P_minus @ M) <= tol
        and frobenius((np.eye(n) - M) @ dec.P_plus) <= tol
        and np.linalg.eigvalsh(X)[0] >= -tol
        and np.linalg.eigvalsh(dec.P_zero - X)[0] >= -tol
    )
    objective = abs(np_objective(M, rho0, rho1, t) - np_objective(dec.P_plus, rho0, rho1, t)) <= tol
    if structural != objective:
        raise InternalInconsistency(
            f"structural ({structural}) and objective ({objective}) optimality disagree at t={t}")
    return bool(structural)


def lambda_to_t(lam):
    if not 0.0 <= lam <= 1.0:
        raise InvalidInput(f"lambda must lie in [0, 1], got {lam}")
    return np.inf if lam == 1.0 else lam / (1.0 - lam)


def optimal_test(rho0, rho1, lam):
    """Canonical Bayes optimal test for prior ``lambda``; ``M = 0`` when ``lambda = 1``."""
    rho0, rho1 = _check_pair(rho0, rho1)
    t = lambda_to_t(lam)
    if np.isinf(t):
        return np.zeros((rho0.dim, rho0.dim), dtype=complex)
    return np_decomposition(rho0, rho1, t).P_plus


def bayes_error(rho0, rho1, lam):
    """Minimum Bayes error ``(1 - ||(1 - lambda) rho1 - lambda rho0||_1) / 2``."""
    rho0, rho1 = _check_pair(rho0, rho1)
    lambda_to_t(lam)
    return 0.5 * (1.0 - trace_norm((1 - lam) * rho1.matrix - lam * rho0.matrix))


def restricted_bayes_error(M0, rho0, rho1, lam):
    """Minimum Bayes error when only tests in ``M0`` are allowed."""
    rho0, rho1 = _check_pair(rho0, rho1)
    return bayes_error(restrict_state(M0, rho0), restrict_state(M0, rho1), lam)


def simulate_test(M, rho, shots, seed):
    """Sample ``shots`` outcomes of test ``M`` on state ``rho``.

    Uses numpy's PCG64 generator seeded with ``seed``; each shot rejects when
    a uniform draw falls below ``p = Tr rho M``.

    Returns
    -------
    rejections : int
    estimate : float
        ``rejections / shots``.
    """
    from .states import as_density

    rho = as_density(rho)
    if int(shots) != shots or shots < 1:
        raise InvalidInput(f"shots must be a positive integer, got {shots}")
    M = check_test_operator(M)
    p = _clamp_prob(np.trace(rho.matrix @ M).real)
    rng = np.random.Generator(np.random.PCG64(seed))
    rejections = int(np.count_nonzero(rng.random(int(shots)) < p))
    return rejections, rejections / shots


def kernel_ranks(rho0, rho1, cluster_tol=None):
    """For each clustered eigenvalue ``t`` of d, pair its multiplicity with ``rank P_{t,0}``.

    The two numbers coincide; ``P_{t,0}`` is non-zero exactly at eigenvalues of d.

    Returns
    -------
    list of (t, multiplicity, rank) tuples
    """
    from .linalg import eig_hermitian

    rho0, rho1 = _check_pair(rho0, rho1)
    spec = eig_hermitian(rn_derivative(rho0, rho1), cluster_tol)
    zero_tol = np_zero_tol(rho0, rho1)
    return [
        (float(t), m, np_decomposition(rho0, rho1, max(t, 0.0), zero_tol).rank_zero)
        for t, m in zip(spec.eigenvalues, spec.multiplicities)
    ]
