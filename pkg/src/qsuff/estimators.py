"""scikit-learn style front end.

``ConditionalExpectation`` is a transformer: ``fit`` closes a set of
generators into a *-algebra, ``transform`` projects matrices onto it.
``SufficiencyClassifier`` labels state pairs (arrays of shape
``(n_pairs, 2, dim, dim)``) as sufficient / 2-sufficient for that algebra.
``NeymanPearsonTest`` fits the canonical Bayes optimal test of a pair.
"""
import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .algebra import RANK_TOL, close_generators
from .exceptions import InvalidInput
from .linalg import DEFAULT_TENSOR_CAP
from .neyman_pearson import (
    bayes_error,
    error_pair,
    lambda_to_t,
    np_decomposition,
    optimal_test,
    simulate_test,
)
from .states import DensityMatrix
from .sufficiency import (
    DEFAULT_LAMBDA_GRID,
    DEFAULT_TOL,
    check_2n_sufficiency,
    check_sufficiency,
    classify_case,
)


def check_matrix_stack(X, dim=None):
    """Coerce to a complex array of shape ``(n, dim, dim)``; a single matrix is promoted."""
    X = np.asarray(X, dtype=complex)
    if X.ndim == 2:
        X = X[None]
    if X.ndim != 3 or X.shape[1] != X.shape[2]:
        raise InvalidInput(f"expected square matrices, got array of shape {X.shape}")
    if dim is not None and X.shape[1] != dim:
        raise InvalidInput(f"expected {dim}x{dim} matrices, got {X.shape[1]}x{X.shape[2]}")
    if not np.all(np.isfinite(X)):
        raise InvalidInput("input contains non-finite entries")
    return X


def check_state_pairs(X, dim=None):
    """Coerce to ``(n_pairs, 2, dim, dim)``; a single ``(2, dim, dim)`` pair is promoted."""
    X = np.asarray(X, dtype=complex)
    if X.ndim == 3:
        X = X[None]
    if X.ndim != 4 or X.shape[1] != 2 or X.shape[2] != X.shape[3]:
        raise InvalidInput(f"expected state pairs of shape (n, 2, d, d), got {X.shape}")
    if dim is not None and X.shape[2] != dim:
        raise InvalidInput(f"expected {dim}x{dim} states, got {X.shape[2]}x{X.shape[3]}")
    return X


class ConditionalExpectation(TransformerMixin, BaseEstimator):
    """Trace-preserving conditional expectation onto a generated *-algebra.

    Parameters
    ----------
    tol_closure : float
        Rank tolerance used while closing the generators.

    Attributes
    ----------
    algebra_ : Subalgebra
    dim_ : int
    """

    def __init__(self, tol_closure=RANK_TOL):
        self.tol_closure = tol_closure

    def fit(self, X, y=None):
        X = np.asarray(X, dtype=complex)
        if not (X.ndim == 3 and len(X) == 0):  # (0, dim, dim) means "no generators"
            X = check_matrix_stack(X)
        dim = X.shape[-1]
        self.algebra_ = close_generators(list(X), dim=dim, tol_closure=self.tol_closure)
        self.dim_ = dim
        return self

    def transform(self, X):
        check_is_fitted(self, "algebra_")
        X = check_matrix_stack(X, self.dim_)
        return np.array([self.algebra_.project(x) for x in X])

    def contains(self, X, tol=1e-8):
        """Boolean membership for each matrix in ``X``."""
        check_is_fitted(self, "algebra_")
        X = check_matrix_stack(X, self.dim_)
        return np.array([self.algebra_.contains(x, tol)[0] for x in X])


class SufficiencyClassifier(ClassifierMixin, BaseEstimator):
    """Classify state pairs by whether a fixed subalgebra is sufficient for them.

    Parameters
    ----------
    generators : array_like of shape (k, dim, dim)
        Generators of the subalgebra; the identity is adjoined.
    criterion : {"sufficiency", "2-sufficiency"}
    tol : float
    lambda_grid_size : int
        Prior grid used by the 2-sufficiency check.
    n_copies : int
        With ``criterion="2-sufficiency"``, test ``M0^{(x)n}`` on n-fold tensor powers.
    tensor_cap : int
    """

    def __init__(self, generators=None, criterion="sufficiency", tol=DEFAULT_TOL,
                 lambda_grid_size=DEFAULT_LAMBDA_GRID, n_copies=1,
                 tensor_cap=DEFAULT_TENSOR_CAP):
        self.generators = generators
        self.criterion = criterion
        self.tol = tol
        self.lambda_grid_size = lambda_grid_size
        self.n_copies = n_copies
        self.tensor_cap = tensor_cap

    def fit(self, X=None, y=None):
        """Build the algebra. ``X`` only fixes the dimension when no generators are given."""
        if self.criterion not in ("sufficiency", "2-sufficiency"):
            raise InvalidInput(f"unknown criterion {self.criterion!r}")
        if self.generators is not None and len(self.generators):
            gens = check_matrix_stack(self.generators)
            self.algebra_ = close_generators(list(gens))
        elif X is not None:
            self.algebra_ = close_generators([], dim=check_state_pairs(X).shape[-1])
        else:
            raise InvalidInput("either generators or X is required to fix the dimension")
        self.dim_ = self.algebra_.dim
        self.classes_ = np.array([False, True])
        return self

    def _pairs(self, X):
        check_is_fitted(self, "algebra_")
        return [(DensityMatrix(p[0]), DensityMatrix(p[1]))
                for p in check_state_pairs(X, self.dim_)]

    def _verdict(self, rho0, rho1):
        if self.criterion == "sufficiency":
            return check_sufficiency(self.algebra_, rho0, rho1, self.tol).verdict
        return check_2n_sufficiency(self.algebra_, rho0, rho1, self.n_copies, self.tol,
                                    self.lambda_grid_size, self.tensor_cap).verdict

    def predict(self, X):
        return np.array([self._verdict(r0, r1) for r0, r1 in self._pairs(X)])

    def decision_function(self, X):
        """Negative relative-entropy loss under restriction; ~0 for sufficient pairs."""
        return np.array([-check_sufficiency(self.algebra_, r0, r1, self.tol, strict=False).entropy_gap
                         for r0, r1 in self._pairs(X)])

    def cases(self, X):
        """Special-case labels for each pair (see :func:`classify_case`)."""
        return [classify_case(self.algebra_, r0, r1, self.tol) for r0, r1 in self._pairs(X)]


class NeymanPearsonTest(BaseEstimator):
    """Canonical Bayes optimal test of ``rho0`` against ``rho1`` for a fixed prior.

    Parameters
    ----------
    prior : float
        Prior weight ``lambda`` of the null hypothesis ``rho0``.

    Attributes
    ----------
    test_operator_ : ndarray
        Projection ``P_{t,+}`` with ``t = prior / (1 - prior)``.
    error_pair_ : ErrorPair
    bayes_error_ : float
    """

    def __init__(self, prior=0.5):
        self.prior = prior

    def fit(self, X, y=None):
        pairs = check_state_pairs(X)
        if len(pairs) != 1:
            raise InvalidInput(f"expected exactly one state pair, got {len(pairs)}")
        pair = pairs[0]
        rho0, rho1 = DensityMatrix(pair[0]), DensityMatrix(pair[1])
        t = lambda_to_t(self.prior)
        self.threshold_ = t
        self.decomposition_ = None if np.isinf(t) else np_decomposition(rho0, rho1, t)
        self.test_operator_ = optimal_test(rho0, rho1, self.prior)
        self.error_pair_ = error_pair(self.test_operator_, rho0, rho1)
        self.bayes_error_ = bayes_error(rho0, rho1, self.prior)
        self.dim_ = rho0.dim
        return self

    def rejection_probability(self, X):
        """``Tr rho M`` for each state in ``X``."""
        check_is_fitted(self, "test_operator_")
        X = check_matrix_stack(X, self.dim_)
        return np.array([np.trace(x @ self.test_operator_).real for x in X])

    def sample(self, rho, shots, seed):
        check_is_fitted(self, "test_operator_")
        return simulate_test(self.test_operator_, rho, shots, seed)
