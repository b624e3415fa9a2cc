"""Reference state pairs, algebras and a seeded random corpus.

The corpus mixes unconstrained random pairs (typically not sufficient) with
pairs built to be sufficient for the drawn algebra, so both verdicts are well
represented.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag
from scipy.stats import unitary_group

from .algebra import Subalgebra, close_generators
from .states import DensityMatrix

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def pair_a():
    """Commuting diagonal pair ``diag(3/4, 1/4)``, ``diag(1/4, 3/4)``."""
    return DensityMatrix(np.diag([0.75, 0.25])), DensityMatrix(np.diag([0.25, 0.75]))


def pair_b():
    """``diag(3/4, 1/4)`` against ``[[1/2, 2/5], [2/5, 1/2]]`` (eigenvalues 0.9, 0.1)."""
    return DensityMatrix(np.diag([0.75, 0.25])), DensityMatrix(np.array([[0.5, 0.4], [0.4, 0.5]]))


def diagonal_algebra(dim):
    return close_generators([np.diag(np.arange(dim, dtype=float))], dim=dim)


def block_ampliation_algebra():
    """Matrices ``diag(Y, Y)`` on C^4, i.e. ``I_2 (x) Y`` with ``Y`` in M_2."""
    return close_generators([np.kron(np.eye(2), SIGMA_X), np.kron(np.eye(2), SIGMA_Z)])


def c4_pair(rho_blocks, sigma, weights=(0.5, 0.5)):
    """Block-diagonal ``rho = diag(w1 r1, w2 r2)`` on C^4 against ``sigma``.

    ``rho_blocks`` are two positive 2x2 matrices (normalised here).
    """
    r1, r2 = (np.asarray(b, dtype=complex) / np.trace(b).real for b in rho_blocks)
    rho = block_diag(weights[0] * r1, weights[1] * r2)
    sigma = np.asarray(sigma, dtype=complex)
    return DensityMatrix(rho), DensityMatrix(sigma / np.trace(sigma).real)


def c4_examples():
    """Named instances of the C^4 block example with the algebra ``I (x) M_2``."""
    a = np.array([[0.7, 0.1], [0.1, 0.3]])
    b = np.array([[0.5, 0.2], [0.2, 0.5]])
    c = np.array([[0.6, 0.25], [0.25, 0.4]])
    fa = a @ a + 0.2 * a  # commutes with a
    out = {}
    # blocks proportional: rho^{it} M0 rho^{-it} = M0; matching weights make M0 sufficient
    out["proportional_sufficient"] = c4_pair((a, a), block_diag(0.3 * b, 0.7 * b),
                                              weights=(0.3, 0.7))
    out["proportional_insufficient"] = c4_pair((a, a), block_diag(0.5 * b, 0.5 * b),
                                                weights=(0.2, 0.8))
    # commuting blocks, sigma = rho (I (x) a): derivative lies in M0 and commutes with rho
    rho, _ = c4_pair((a, fa), np.eye(4))
    out["commuting_blocks"] = c4_pair((a, fa), rho.matrix @ np.kron(np.eye(2), a))
    out["non_block_sigma"] = c4_pair((a, c), np.kron(b, c) + 0.1 * np.eye(4))
    out["block_sigma"] = c4_pair((a, c), block_diag(b, c))
    return out


def _random_positive(rng, dim, floor=0.1):
    G = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    A = G @ G.conj().T
    A /= np.trace(A).real
    return (1 - floor) * A + floor * np.eye(dim) / dim


def random_density(dim, rng=None, floor=0.1):
    """Random full-rank state with minimum eigenvalue at least ``floor / dim``."""
    rng = np.random.default_rng(rng)
    return DensityMatrix(_random_positive(rng, dim, floor))


def _random_hermitian(rng, dim):
    G = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (G + G.conj().T) / 2


FAMILIES = ("diagonal", "block", "ampliation", "full")


def random_generators(dim, rng=None, n_generators=None, family=None, rotate=None):
    """1-3 random Hermitian generators drawn from a structured family.

    Families: ``diagonal``, ``block`` (block-diagonal on a random partition),
    ``ampliation`` (``I (x) Y`` or ``Y (x) I`` in dimension 4; ``block``
    elsewhere) and ``full``. Generators are optionally conjugated by a common
    Haar-random unitary.
    """
    rng = np.random.default_rng(rng)
    n_generators = n_generators or int(rng.integers(1, 4))
    family = family or FAMILIES[int(rng.integers(len(FAMILIES)))]
    rotate = bool(rng.integers(2)) if rotate is None else rotate
    if family == "ampliation" and dim != 4:
        family = "block"
    if family == "block" and dim == 2:
        family = "diagonal"

    gens = []
    if family == "block":
        cut = int(rng.integers(1, dim))
        sizes = [cut, dim - cut]
    left = bool(rng.integers(2))
    for _ in range(n_generators):
        if family == "diagonal":
            g = np.diag(rng.normal(size=dim)).astype(complex)
        elif family == "block":
            g = block_diag(*[_random_hermitian(rng, s) for s in sizes])
        elif family == "ampliation":
            y = _random_hermitian(rng, 2)
            g = np.kron(np.eye(2), y) if left else np.kron(y, np.eye(2))
        else:
            g = _random_hermitian(rng, dim)
        gens.append(g)
    if rotate:
        U = unitary_group.rvs(dim, random_state=rng)
        gens = [U @ g @ U.conj().T for g in gens]
    return gens


def _random_algebra_element(rng, M0):
    coeffs = rng.normal(size=M0.linear_dim) + 1j * rng.normal(size=M0.linear_dim)
    X = np.tensordot(coeffs, M0.basis, axes=1)
    return (X + X.conj().T) / 2


def sufficient_pair(M0, rng=None):
    """A random pair for which ``M0`` is sufficient.

    Picks a positive ``c`` in ``M0`` and a state ``rho0`` commuting with it,
    then sets ``rho1 proportional to c rho0``; the derivative is then ``c`` up
    to scale, a fixed point of the generalized conditional expectation.
    """
    rng = np.random.default_rng(rng)
    H = _random_algebra_element(rng, M0)
    w, V = np.linalg.eigh(H)
    ev = np.exp(0.6 * w / max(1.0, np.abs(w).max()))
    c = (V * ev) @ V.conj().T
    # eigenspaces of c; rounding absorbs floating noise in repeated eigenvalues
    vals, inv = np.unique(np.round(ev, 9), return_inverse=True)
    rho0 = np.zeros((M0.dim, M0.dim), dtype=complex)
    for k in range(len(vals)):
        Vk = V[:, inv == k]
        rho0 += Vk @ _random_positive(rng, Vk.shape[1], 0.3) @ Vk.conj().T * rng.uniform(0.5, 1.5)
    rho0 /= np.trace(rho0).real
    rho1 = c @ rho0
    rho1 = (rho1 + rho1.conj().T) / 2
    return DensityMatrix(rho0), DensityMatrix(rho1 / np.trace(rho1).real)


def commuting_pair(dim, rng=None):
    rng = np.random.default_rng(rng)
    U = unitary_group.rvs(dim, random_state=rng)
    p = rng.dirichlet(np.ones(dim)) * 0.8 + 0.2 / dim
    q = rng.dirichlet(np.ones(dim)) * 0.8 + 0.2 / dim
    return (DensityMatrix((U * p) @ U.conj().T), DensityMatrix((U * q) @ U.conj().T))


def algebra_pair(M0, rng=None):
    """Both states drawn inside ``M0``; restriction leaves them untouched."""
    rng = np.random.default_rng(rng)
    out = []
    for _ in range(2):
        H = _random_algebra_element(rng, M0)
        w, V = np.linalg.eigh(H)
        A = (V * np.exp(w / max(1.0, np.abs(w).max()))) @ V.conj().T
        out.append(DensityMatrix(A / np.trace(A).real))
    return tuple(out)


@dataclass
class Instance:
    kind: str
    algebra: Subalgebra
    rho0: DensityMatrix
    rho1: DensityMatrix


KINDS = ("random", "sufficient", "in_algebra", "commuting")


def make_corpus(n_instances=200, seed=0, dims=(2, 3, 4)):
    """Deterministic randomized corpus of (algebra, rho0, rho1) instances."""
    rng = np.random.default_rng(seed)
    out = []
    for k in range(n_instances):
        dim = int(dims[k % len(dims)])
        kind = KINDS[(k // len(dims)) % len(KINDS)]
        M0 = close_generators(random_generators(dim, rng))
        if kind == "sufficient":
            rho0, rho1 = sufficient_pair(M0, rng)
        elif kind == "in_algebra":
            rho0, rho1 = algebra_pair(M0, rng)
        elif kind == "commuting":
            rho0, rho1 = commuting_pair(dim, rng)
        else:
            rho0, rho1 = random_density(dim, rng), random_density(dim, rng)
        out.append(Instance(kind, M0, rho0, rho1))
    return out
