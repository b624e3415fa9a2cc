"""Spectral toolbox for complex Hermitian matrices.

Everything here works on plain ``numpy`` arrays. Eigenvalues that sit within
``cluster_tol`` of each other are merged into a single cluster so that
multiplicities survive floating-point splitting.
"""
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .exceptions import DomainError, InvalidInput, ResourceLimit

EPS = np.finfo(float).eps
TOL_HERM = 1e-10
DEFAULT_TENSOR_CAP = 4096


def as_matrix(A, name="matrix"):
    """Return ``A`` as a square complex array, raising InvalidInput otherwise."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InvalidInput(f"{name} must be a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInput(f"{name} has non-finite entries")
    return A.astype(complex)


def check_hermitian(H, tol=TOL_HERM, name="matrix"):
    H = as_matrix(H, name)
    scale = max(1.0, np.linalg.norm(H))
    if np.linalg.norm(H - H.conj().T) > tol * scale:
        raise InvalidInput(f"{name} is not Hermitian")
    return (H + H.conj().T) / 2


def hermitian_part(A):
    return (A + A.conj().T) / 2


def frobenius(A):
    return float(np.linalg.norm(A))


def commutator(A, B):
    return A @ B - B @ A


@dataclass(frozen=True)
class SpectralDecomposition:
    """Clustered spectral decomposition ``H = sum_i eigenvalues[i] * projections[i]``."""

    eigenvalues: np.ndarray
    projections: tuple
    multiplicities: tuple

    @property
    def dim(self):
        return sum(self.multiplicities)

    def reconstruct(self):
        return sum(lam * P for lam, P in zip(self.eigenvalues, self.projections))


def _cluster(values, cluster_tol):
    groups = [[0]]
    for k in range(1, len(values)):
        if values[k] - values[groups[-1][-1]] <= cluster_tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    return groups


def eig_hermitian(H, cluster_tol=None):
    """Eigen-decompose a Hermitian matrix with clustered eigenvalues.

    Parameters
    ----------
    H : array_like
        Hermitian matrix.
    cluster_tol : float, optional
        Consecutive (ascending) eigenvalues whose gap is at most this value
        are merged. Defaults to ``1e-8 * ||H||_2``.

    Returns
    -------
    SpectralDecomposition
        Ascending cluster means, eigenprojections and multiplicities.
    """
    H = check_hermitian(H)
    w, V = np.linalg.eigh(H)
    if cluster_tol is None:
        cluster_tol = 1e-8 * max(abs(w[0]), abs(w[-1]))
    if cluster_tol < 0:
        raise InvalidInput("cluster_tol must be non-negative")
    groups = _cluster(w, cluster_tol)
    eigenvalues = np.array([w[g].mean() for g in groups])
    projections = tuple(V[:, g] @ V[:, g].conj().T for g in groups)
    return SpectralDecomposition(eigenvalues, projections, tuple(len(g) for g in groups))


def matrix_function(H, f):
    """Apply a scalar function through the spectrum: ``sum f(lam) P``.

    ``f`` may be a numpy ufunc-style callable or a plain scalar function such
    as ``math.sqrt``. Non-finite outputs (log of zero, sqrt of a negative, ...)
    raise DomainError.
    """
    H = check_hermitian(H)
    w, V = np.linalg.eigh(H)
    with np.errstate(all="ignore"):
        try:
            fw = np.asarray(f(w), dtype=float)
        except TypeError:
            try:
                fw = np.array([f(x) for x in w], dtype=float)
            except (ValueError, ZeroDivisionError, OverflowError) as exc:
                raise DomainError(f"function undefined on spectrum {w}: {exc}") from exc
    if fw.shape != w.shape or not np.all(np.isfinite(fw)):
        raise DomainError(f"function undefined on spectrum {w}")
    return (V * fw) @ V.conj().T


def default_zero_tol(H):
    H = np.asarray(H)
    return H.shape[0] * EPS * max(np.linalg.norm(H, 2), EPS)


@dataclass(frozen=True)
class SpectralSplit:
    positive_part: np.ndarray
    negative_part: np.ndarray
    P_plus: np.ndarray
    P_minus: np.ndarray
    P_zero: np.ndarray


def spectral_split(H, zero_tol=None):
    """Jordan decomposition ``H = H_+ - H_-`` with support projections.

    Eigenvalues with ``|lam| <= zero_tol`` go to ``P_zero`` and contribute to
    neither part.
    """
    H = check_hermitian(H)
    if zero_tol is None:
        zero_tol = default_zero_tol(H)
    w, V = np.linalg.eigh(H)
    pos = w > zero_tol
    neg = w < -zero_tol
    zero = ~(pos | neg)

    def proj(mask, weights=None):
        Vm = V[:, mask]
        if weights is None:
            return Vm @ Vm.conj().T
        return (Vm * weights[mask]) @ Vm.conj().T

    return SpectralSplit(
        positive_part=proj(pos, w),
        negative_part=proj(neg, -w),
        P_plus=proj(pos),
        P_minus=proj(neg),
        P_zero=proj(zero),
    )


def rank_of_projection(P):
    return int(round(np.real(np.trace(P))))


def trace_norm(A):
    """Schatten 1-norm. Hermitian input goes through ``eigvalsh``."""
    A = as_matrix(A)
    if np.allclose(A, A.conj().T, rtol=0, atol=TOL_HERM * max(1.0, np.abs(A).max())):
        return float(np.abs(np.linalg.eigvalsh(hermitian_part(A))).sum())
    return float(np.linalg.svd(A, compute_uv=False).sum())


def check_tensor_dim(dim, n, cap=DEFAULT_TENSOR_CAP):
    if n < 1 or int(n) != n:
        raise InvalidInput(f"tensor power must be a positive integer, got {n}")
    if dim ** n > cap:
        raise ResourceLimit(f"dimension {dim}**{n} = {dim ** n} exceeds tensor cap {cap}")


def tensor_power(A, n, cap=DEFAULT_TENSOR_CAP):
    """n-fold Kronecker power of a square matrix."""
    A = as_matrix(A)
    check_tensor_dim(A.shape[0], n, cap)
    return reduce(np.kron, [A] * int(n))
