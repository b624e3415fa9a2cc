"""Geometry of a pair of invertible states relative to a subalgebra.

Radon-Nikodym derivative, generalized (Accardi-Cecchini) conditional
expectation, fixed points and multiplicative domain, Umegaki and
Belavkin-Staszewski relative entropies, and the quantum Chernoff distance.
All logarithms are natural.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import minimize_scalar

from .algebra import restrict_state, superop_kron
from .exceptions import InvalidInput, InvalidState, NumericalDegeneracy
from .linalg import TOL_HERM, as_matrix, frobenius, hermitian_part

INVERTIBILITY_TOL = 1e-12
TRACE_TOL = 1e-10
OPT_TOL = 1e-10


class DensityMatrix:
    """Positive-definite, unit-trace Hermitian matrix with a cached spectrum.

    Rejected as non-invertible when the smallest eigenvalue is at most
    ``1e-12`` times the largest. Use :func:`regularize` to repair a singular
    state explicitly; nothing here does it silently.
    """

    def __init__(self, matrix, *, trace_tol=TRACE_TOL, invertibility_tol=INVERTIBILITY_TOL):
        A = as_matrix(matrix, "density matrix")
        if frobenius(A - A.conj().T) > TOL_HERM * max(1.0, frobenius(A)):
            raise InvalidState("density matrix is not Hermitian")
        A = hermitian_part(A)
        tr = np.trace(A).real
        if abs(tr - 1.0) > trace_tol:
            raise InvalidState(f"density matrix has trace {tr:.12g}, expected 1")
        w, V = np.linalg.eigh(A)
        if w[-1] <= 0 or w[0] <= invertibility_tol * w[-1]:
            raise InvalidState(
                f"density matrix is not invertible (eigenvalues in [{w[0]:.3g}, {w[-1]:.3g}])")
        self.matrix = A
        self.eigenvalues = w
        self.eigenvectors = V
        self.matrix.setflags(write=False)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim})"

    @property
    def dim(self):
        return self.matrix.shape[0]

    def apply(self, f):
        """``f(rho)`` through the cached eigendecomposition."""
        V = self.eigenvectors
        return (V * f(self.eigenvalues)) @ V.conj().T

    def power(self, s):
        return self.apply(lambda w: w ** s)

    @cached_property
    def sqrt(self):
        return self.power(0.5)

    @cached_property
    def inv_sqrt(self):
        return self.power(-0.5)

    @cached_property
    def inv(self):
        return self.power(-1.0)

    def log(self):
        return self.apply(np.log)

    def __eq__(self, other):
        return isinstance(other, DensityMatrix) and np.array_equal(self.matrix, other.matrix)

    __hash__ = None


def as_density(rho):
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


def regularize(rho, eps):
    """``(rho + eps I) / (1 + eps dim)``; never applied implicitly."""
    A = as_matrix(rho)
    if eps < 0:
        raise InvalidInput("eps must be non-negative")
    n = A.shape[0]
    return DensityMatrix((A + eps * np.eye(n)) / (1 + eps * n))


def _check_pair(rho0, rho1):
    rho0, rho1 = as_density(rho0), as_density(rho1)
    if rho0.dim != rho1.dim:
        raise InvalidInput(f"states have different dimensions {rho0.dim} and {rho1.dim}")
    return rho0, rho1


def rho_inner(X, Y, rho):
    """``<X, Y>_rho = Tr X* rho^{1/2} Y rho^{1/2}``."""
    rho = as_density(rho)
    X, Y = as_matrix(X), as_matrix(Y)
    s = rho.sqrt
    return complex(np.trace(X.conj().T @ s @ Y @ s))


def rn_derivative(rho0, rho1):
    """Radon-Nikodym derivative ``d = rho0^{-1/2} rho1 rho0^{-1/2}`` of rho1 w.r.t. rho0."""
    rho0, rho1 = _check_pair(rho0, rho1)
    r = rho0.inv_sqrt
    return hermitian_part(r @ rho1.matrix @ r)


def _restricted_inv_sqrt(M0, rho):
    try:
        return restrict_state(M0, rho).inv_sqrt
    except InvalidInput as exc:
        raise NumericalDegeneracy(str(exc)) from exc


def gce_apply(M0, rho, X):
    """Generalized conditional expectation ``E_rho(X)``.

    ``E_rho(X) = E(rho)^{-1/2} E(rho^{1/2} X rho^{1/2}) E(rho)^{-1/2}``.
    """
    rho = as_density(rho)
    X = as_matrix(X)
    r = _restricted_inv_sqrt(M0, rho)
    s = rho.sqrt
    return r @ M0.project(s @ X @ s) @ r


@dataclass(frozen=True)
class Superoperator:
    """Linear map on ``dim x dim`` matrices acting on row-major ``vec(X)``."""

    matrix: np.ndarray
    dim: int

    def __call__(self, X):
        X = np.asarray(X, dtype=complex)
        return (self.matrix @ X.reshape(-1)).reshape(self.dim, self.dim)

    def kron(self, other):
        return Superoperator(superop_kron(self.matrix, other.matrix, self.dim, other.dim),
                             self.dim * other.dim)

    def distance(self, other):
        return frobenius(self.matrix - other.matrix)


def _conjugation(A):
    # vec(A Y A) = (A kron A^T) vec(Y) for row-major vec
    return np.kron(A, A.T)


def gce_superoperator(M0, rho):
    """Matrix representation of ``E_rho`` as a :class:`Superoperator`."""
    rho = as_density(rho)
    r = _restricted_inv_sqrt(M0, rho)
    s = rho.sqrt
    mat = _conjugation(r) @ M0.projector @ _conjugation(s)
    return Superoperator(mat, M0.dim)


def petz_recovery(M0, rho, Y):
    """Recovery map ``R(Y) = rho^{1/2} E(rho)^{-1/2} Y E(rho)^{-1/2} rho^{1/2}``.

    The trace-dual of ``E_rho``: completely positive, trace preserving on
    ``M0`` and ``R(E(rho)) = rho``.
    """
    rho = as_density(rho)
    r = _restricted_inv_sqrt(M0, rho)
    s = rho.sqrt
    return s @ r @ as_matrix(Y) @ r @ s


def in_fixed_points(M0, rho, X, tol=1e-8):
    """Is ``X`` a fixed point of ``E_rho``? Returns ``(flag, distance)``."""
    X = as_matrix(X)
    dist = frobenius(gce_apply(M0, rho, X) - X)
    return dist <= tol * max(1.0, frobenius(X)), dist


def in_multiplicative_domain(M0, rho, X, tol=1e-8):
    """Membership of ``X`` in ``rho^{1/2} M0 rho^{-1/2}`` and ``rho^{-1/2} M0 rho^{1/2}``."""
    rho = as_density(rho)
    X = as_matrix(X)
    s, r = rho.sqrt, rho.inv_sqrt
    left = M0.contains(r @ X @ s, tol)[0]
    right = M0.contains(s @ X @ r, tol)[0]
    return bool(left and right)


def umegaki_entropy(rho1, rho0):
    """``S(rho1, rho0) = Tr rho1 (log rho1 - log rho0)``."""
    rho0, rho1 = _check_pair(rho0, rho1)
    w1 = rho1.eigenvalues
    # Tr rho1 log rho0 via the overlap of the two eigenbases
    overlap = np.abs(rho1.eigenvectors.conj().T @ rho0.eigenvectors) ** 2
    cross = w1 @ overlap @ np.log(rho0.eigenvalues)
    return float(w1 @ np.log(w1) - cross)


def bs_entropy(rho1, rho0):
    """Belavkin-Staszewski entropy ``Tr rho0 d log d`` with ``d = d_{rho0, rho1}``."""
    rho0, rho1 = _check_pair(rho0, rho1)
    d = rn_derivative(rho0, rho1)
    w, V = np.linalg.eigh(d)
    w = np.clip(w, np.finfo(float).tiny, None)
    diag = np.real(np.einsum("ji,jk,ki->i", V.conj(), rho0.matrix, V))
    return float(diag @ (w * np.log(w)))


def renyi_trace(rho0, rho1, s):
    """``Tr rho0^{1-s} rho1^s`` for ``s`` in ``[0, 1]``.

    The orientation matches the Chernoff distance; use ``1 - s`` for
    ``Tr rho0^s rho1^{1-s}``.
    """
    if not 0.0 <= s <= 1.0:
        raise InvalidInput(f"s must lie in [0, 1], got {s}")
    rho0, rho1 = _check_pair(rho0, rho1)
    overlap = np.abs(rho0.eigenvectors.conj().T @ rho1.eigenvectors) ** 2
    return float(rho0.eigenvalues ** (1 - s) @ overlap @ rho1.eigenvalues ** s)


def chernoff_distance(rho0, rho1, opt_tol=OPT_TOL):
    """Quantum Chernoff distance ``-log min_s Tr rho0^{1-s} rho1^s``.

    Returns
    -------
    xi : float
        Chernoff distance in nats, non-negative.
    s_star : float
        Minimiser in ``[0, 1]``.
    """
    rho0, rho1 = _check_pair(rho0, rho1)
    overlap = np.abs(rho0.eigenvectors.conj().T @ rho1.eigenvectors) ** 2
    log_a, log_b = np.log(rho0.eigenvalues), np.log(rho1.eigenvalues)

    def log_q(s):
        return float(np.log(np.exp((1 - s) * log_a) @ overlap @ np.exp(s * log_b)))

    res = minimize_scalar(log_q, bounds=(0.0, 1.0), method="bounded",
                          options={"xatol": opt_tol})
    candidates = [(res.fun, float(res.x)), (log_q(0.0), 0.0), (log_q(1.0), 1.0)]
    fmin, s_star = min(candidates)
    return max(0.0, -fmin), s_star
