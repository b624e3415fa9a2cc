"""Unital *-subalgebras of matrices and their trace-preserving conditional expectation.

A subalgebra is stored as a Hilbert-Schmidt orthonormal basis. The
trace-preserving conditional expectation onto a unital *-subalgebra is the
HS-orthogonal projection onto that span, so no block decomposition is needed.

Tensor powers keep a reference to the single-copy algebra and apply the
projection factor by factor; the basis of ``M0^{(x)n}`` is only materialised
on request.
"""
from itertools import product

import numpy as np

from .exceptions import ClosureDiverged, InvalidInput, NumericalDegeneracy
from .linalg import DEFAULT_TENSOR_CAP, as_matrix, check_tensor_dim, commutator, frobenius

RANK_TOL = 1e-10
MAX_CLOSURE_ITER = 64
MATERIALIZE_CAP = 2 ** 22


def _orthonormalize(vectors, rank_tol=RANK_TOL):
    """Orthonormal basis (rows) of the span of the given row vectors."""
    vectors = np.asarray(vectors, dtype=complex)
    norms = np.linalg.norm(vectors, axis=1)
    keep = norms > rank_tol
    if not np.any(keep):
        return np.zeros((0, vectors.shape[1]), dtype=complex)
    V = vectors[keep] / norms[keep, None]
    _, s, Vh = np.linalg.svd(V, full_matrices=False)
    r = int(np.sum(s > rank_tol * s[0]))
    return Vh[:r]


class Subalgebra:
    """Unital *-subalgebra of ``B(C^dim)``.

    Build one with :func:`close_generators` or :func:`algebra_tensor_power`
    rather than calling the constructor directly.

    Attributes
    ----------
    dim : int
        Dimension of the ambient Hilbert space.
    generators : tuple of ndarray
        Generators the algebra was closed from, kept for reporting.
    """

    def __init__(self, basis, generators=(), *, factor=None, power=1):
        self.generators = tuple(generators)
        self._factor = factor
        self._power = power
        if factor is None:
            basis = np.asarray(basis, dtype=complex)
            self.dim = basis.shape[-1]
            self._basis = basis
            self._vecs = basis.reshape(len(basis), -1)
        else:
            self.dim = factor.dim ** power
            self._basis = None
            self._vecs = None

    def __repr__(self):
        return f"Subalgebra(dim={self.dim}, linear_dim={self.linear_dim})"

    @property
    def linear_dim(self):
        if self._factor is not None:
            return self._factor.linear_dim ** self._power
        return len(self._basis)

    @property
    def basis(self):
        """HS-orthonormal basis, shape ``(linear_dim, dim, dim)``."""
        if self._basis is None:
            size = self.linear_dim * self.dim ** 2
            if size > MATERIALIZE_CAP:
                raise InvalidInput(f"basis with {size} entries is too large to materialise")
            fb = self._factor.basis
            self._basis = np.array([
                _kron_all([fb[i] for i in idx])
                for idx in product(range(len(fb)), repeat=self._power)
            ])
            self._vecs = self._basis.reshape(len(self._basis), -1)
        return self._basis

    @property
    def projector(self):
        """Matrix of the conditional expectation acting on row-major ``vec(X)``."""
        if self._factor is not None:
            P1 = self._factor.projector
            P = P1
            for _ in range(self._power - 1):
                P = superop_kron(P, P1, int(round(np.sqrt(P.shape[0]))), self._factor.dim)
            return P
        return self._vecs.T @ self._vecs.conj()

    def project(self, X):
        """Hilbert-Schmidt orthogonal projection of ``X`` onto the span."""
        X = np.asarray(X, dtype=complex)
        if X.shape != (self.dim, self.dim):
            raise InvalidInput(f"expected a {self.dim}x{self.dim} matrix, got {X.shape}")
        if self._factor is None:
            coeffs = self._vecs.conj() @ X.reshape(-1)
            return (coeffs @ self._vecs).reshape(self.dim, self.dim)
        d, n = self._factor.dim, self._power
        P1 = self._factor.projector
        # axes (i1..in, j1..jn) -> (i1 j1, i2 j2, ...)
        T = X.reshape((d,) * (2 * n))
        order = [a for k in range(n) for a in (k, n + k)]
        T = T.transpose(order).reshape((d * d,) * n)
        for k in range(n):
            T = np.moveaxis(np.tensordot(P1, T, axes=([1], [k])), 0, k)
        T = T.reshape((d,) * (2 * n)).transpose(np.argsort(order))
        return T.reshape(self.dim, self.dim)

    def contains(self, X, tol=1e-8):
        """Membership test. Returns ``(is_member, distance)``.

        ``X`` is a member when ``||X - E(X)||_F <= tol * max(1, ||X||_F)``.
        """
        X = as_matrix(X)
        dist = frobenius(X - self.project(X))
        return dist <= tol * max(1.0, frobenius(X)), dist


def _kron_all(mats):
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def superop_kron(S1, S2, d1, d2):
    """Superoperator of ``Phi1 (x) Phi2`` from those of ``Phi1`` and ``Phi2``.

    Both inputs act on row-major vectorisations; the plain Kronecker product
    is re-indexed so the result acts on ``vec`` of a ``d1*d2`` square matrix.
    """
    K = np.kron(S1, S2).reshape((d1, d1, d2, d2) * 2)
    K = K.transpose(0, 2, 1, 3, 4, 6, 5, 7)
    D = d1 * d2
    return K.reshape(D * D, D * D)


def close_generators(generators, dim=None, tol_closure=RANK_TOL, max_iter=MAX_CLOSURE_ITER):
    """Smallest unital *-algebra containing the generators.

    Repeatedly appends adjoints and pairwise products of the current basis and
    re-orthonormalises (SVD rank cut at ``tol_closure``) until the span stops
    growing. The identity is always adjoined.

    Parameters
    ----------
    generators : sequence of array_like
        Square matrices of equal size. May be empty if ``dim`` is given.
    dim : int, optional
        Ambient dimension; required when ``generators`` is empty.
    """
    gens = [as_matrix(g, "generator") for g in generators]
    if gens:
        dims = {g.shape[0] for g in gens}
        if len(dims) != 1 or (dim is not None and dims != {dim}):
            raise InvalidInput(f"generators have mismatched dimensions {sorted(dims)}")
        dim = dims.pop()
    elif dim is None:
        raise InvalidInput("dim is required when no generators are given")

    seed = [np.eye(dim)] + gens + [g.conj().T for g in gens]
    B = _orthonormalize([m.reshape(-1) for m in seed], tol_closure)
    for _ in range(max_iter):
        mats = B.reshape(-1, dim, dim)
        prods = np.einsum("aij,bjk->abik", mats, mats).reshape(-1, dim * dim)
        cand = np.vstack([B, mats.conj().transpose(0, 2, 1).reshape(-1, dim * dim), prods])
        B_new = _orthonormalize(cand, tol_closure)
        if len(B_new) == len(B):
            return Subalgebra(B_new.reshape(-1, dim, dim), gens)
        B = B_new
    raise ClosureDiverged(f"closure did not stabilise after {max_iter} iterations")


def full_algebra(dim):
    """All of ``B(C^dim)``, spanned by the matrix units."""
    return Subalgebra(np.eye(dim * dim).reshape(dim * dim, dim, dim))


def trivial_algebra(dim):
    return close_generators([], dim=dim)


def contains(M0, X, tol=1e-8):
    return M0.contains(X, tol)


def conditional_expectation(M0, X):
    """Trace-preserving conditional expectation ``E(X)`` onto ``M0``."""
    return M0.project(as_matrix(X))


def restrict_state(M0, rho):
    """Restricted density ``E(rho)`` as a :class:`~qsuff.states.DensityMatrix`."""
    from .states import DensityMatrix, as_density

    rho = as_density(rho)
    out = M0.project(rho.matrix)
    try:
        return DensityMatrix(out)
    except InvalidInput as exc:
        raise NumericalDegeneracy(f"restricted density is degenerate: {exc}") from exc


def is_commutative(M0, tol=1e-10):
    if M0._factor is not None:
        return is_commutative(M0._factor, tol)
    B = M0.basis
    for i in range(len(B)):
        for j in range(i + 1, len(B)):
            if frobenius(commutator(B[i], B[j])) > tol:
                return False
    return True


def is_modular_invariant(M0, rho, tol=1e-8):
    """True iff ``rho^{it} M0 rho^{-it} = M0`` for every real t.

    Decided through the generator: ``[log rho, b]`` must lie in ``M0`` for
    every basis element ``b``.
    """
    from .states import as_density

    rho = as_density(rho)
    L = rho.log()
    return all(M0.contains(commutator(L, b), tol)[0] for b in M0.basis)


def algebra_tensor_power(M0, n, cap=DEFAULT_TENSOR_CAP):
    """``M0^{(x)n}`` acting on ``(C^dim)^{(x)n}``; linear dimension ``linear_dim**n``."""
    base = M0._factor if M0._factor is not None else M0
    total = M0._power * int(n) if M0._factor is not None else int(n)
    check_tensor_dim(base.dim, total, cap)
    if total == 1:
        return base
    return Subalgebra(None, base.generators, factor=base, power=total)
