"""Sufficiency and 2-sufficiency verdicts for a subalgebra and a pair of states.

Sufficiency is decided by five theoretically equivalent criteria that are all
evaluated; any disagreement is surfaced as :class:`InternalInconsistency`
instead of being voted away.

2-sufficiency ("the subalgebra contains Bayes optimal tests for every prior")
is certified on finite grids. A negative verdict is conclusive. A positive
verdict holds up to grid resolution, backed by the exact algebraic necessary
condition ``rho1 rho0^{-1} in M0``.
"""
from dataclasses import asdict, dataclass, field

import numpy as np

from .algebra import algebra_tensor_power, is_commutative, is_modular_invariant, restrict_state
from .exceptions import InternalInconsistency
from .linalg import DEFAULT_TENSOR_CAP, eig_hermitian, frobenius, tensor_power
from .neyman_pearson import bayes_error, np_decomposition, np_zero_tol
from .states import (
    DensityMatrix,
    _check_pair,
    chernoff_distance,
    gce_superoperator,
    in_fixed_points,
    in_multiplicative_domain,
    petz_recovery,
    renyi_trace,
    rn_derivative,
    umegaki_entropy,
)

DEFAULT_TOL = 1e-8
DEFAULT_LAMBDA_GRID = 101

CONDITIONS = ("recovery", "entropy", "renyi", "state_preservation", "gce_equal", "fixed_point")

MODULAR_INVARIANT, COMMUTATIVE, COMMUTING_STATES = 1, 2, 3
CASE_NAMES = {
    MODULAR_INVARIANT: "modular_invariant",
    COMMUTATIVE: "commutative_algebra",
    COMMUTING_STATES: "commuting_states",
}


@dataclass
class SufficiencyReport:
    verdict: bool
    entropy_gap: float
    renyi_gap_at_half: float
    gce_distance: float
    fixed_point_distance: float
    state_preservation_residual: float
    recovery_residual: float
    per_condition: dict
    tol: float

    @property
    def consistent(self):
        return len(set(self.per_condition.values())) == 1

    def to_dict(self):
        return asdict(self)


@dataclass
class GridPoint:
    t: float
    plus_distance: float
    zero_distance: float
    rank_P_zero: int
    rank_Q_zero: int

    @property
    def matches(self):
        return self.rank_P_zero == self.rank_Q_zero


@dataclass
class TwoSufficiencyReport:
    verdict: bool
    necessary_condition: bool
    necessary_condition_swapped: bool
    derivative_in_multiplicative_domain: bool
    projections_match: bool
    errors_match: bool
    max_error_gap: float
    grid: list = field(repr=False)
    lambda_grid: list = field(repr=False)
    tol: float = DEFAULT_TOL

    def to_dict(self):
        out = asdict(self)
        out["grid"] = [asdict(g) for g in self.grid]
        out["lambda_grid"] = [list(row) for row in self.lambda_grid]
        return out


def check_sufficiency(M0, rho0, rho1, tol=DEFAULT_TOL, strict=True):
    """Decide whether ``M0`` is sufficient for ``{rho0, rho1}``.

    Evaluated criteria (all equivalent in exact arithmetic):

    * ``recovery`` -- the Petz map of ``rho0`` recovers ``rho1`` from ``E(rho1)``;
    * ``entropy`` -- relative entropy is preserved by restriction;
    * ``renyi`` -- ``Tr rho0^{1/2} rho1^{1/2}`` is preserved;
    * ``state_preservation`` -- ``Tr E_{rho0}(X) rho1 = Tr X rho1`` on all matrix units;
    * ``gce_equal`` -- ``E_{rho0} = E_{rho1}`` as superoperators;
    * ``fixed_point`` -- ``d_{rho0,rho1}`` is a fixed point of ``E_{rho0}``.

    The Petz map always recovers ``rho0``, so it is a recovery map for the
    pair exactly when it also recovers ``rho1``.

    Raises
    ------
    InternalInconsistency
        If ``strict`` and the criteria disagree at ``tol``.
    """
    rho0, rho1 = _check_pair(rho0, rho1)
    E0, E1 = restrict_state(M0, rho0), restrict_state(M0, rho1)

    entropy_gap = umegaki_entropy(rho1, rho0) - umegaki_entropy(E1, E0)
    renyi_gap = renyi_trace(E0, E1, 0.5) - renyi_trace(rho0, rho1, 0.5)

    S0, S1 = gce_superoperator(M0, rho0), gce_superoperator(M0, rho1)
    gce_distance = S0.distance(S1)
    # Tr(Y rho1) = vec(Y) . vec(rho1^T); columns of S0 are E_{rho0}(matrix units)
    r = rho1.matrix.T.reshape(-1)
    residual = float(np.abs(r @ S0.matrix - r).max())

    recovery = frobenius(petz_recovery(M0, rho0, E1.matrix) - rho1.matrix)
    fixed, fixed_dist = in_fixed_points(M0, rho0, rn_derivative(rho0, rho1), tol)

    per_condition = {
        "recovery": bool(recovery <= tol),
        "entropy": bool(entropy_gap <= tol),
        "renyi": bool(renyi_gap <= tol),
        "state_preservation": bool(residual <= tol),
        "gce_equal": bool(gce_distance <= tol * max(1.0, frobenius(S0.matrix))),
        "fixed_point": bool(fixed),
    }
    report = SufficiencyReport(
        verdict=all(per_condition.values()),
        entropy_gap=float(entropy_gap),
        renyi_gap_at_half=float(renyi_gap),
        gce_distance=gce_distance,
        fixed_point_distance=fixed_dist,
        state_preservation_residual=residual,
        recovery_residual=float(recovery),
        per_condition=per_condition,
        tol=tol,
    )
    if strict and not report.consistent:
        raise InternalInconsistency(f"sufficiency criteria disagree: {per_condition}")
    return report


def _cluster_values(values, rel=1e-8):
    values = np.sort(np.asarray(values, dtype=float))
    scale = max(1.0, np.abs(values).max())
    out = [values[0]]
    for v in values[1:]:
        if v - out[-1] > rel * scale:
            out.append(v)
    return np.array(out)


def threshold_grid(d, d0):
    """Eigenvalues of both derivatives, midpoints between them, ``0`` and ``1.1 * max``."""
    eigs = np.concatenate([eig_hermitian(d).eigenvalues, eig_hermitian(d0).eigenvalues])
    anchors = _cluster_values(np.clip(eigs, 0.0, None))
    mids = (anchors[1:] + anchors[:-1]) / 2
    return _cluster_values(np.concatenate([anchors, mids, [0.0, 1.1 * anchors[-1]]]))


def check_2sufficiency(M0, rho0, rho1, tol=DEFAULT_TOL, lambda_grid_size=DEFAULT_LAMBDA_GRID):
    """Decide whether ``M0`` contains Bayes optimal tests for every prior.

    Combines (a) the exact necessary condition ``rho1 rho0^{-1} in M0``,
    (b) equality of the Neyman-Pearson projections of the full and restricted
    pairs on an eigenvalue-anchored threshold grid, and (c) equality of full
    and restricted minimum Bayes errors on a uniform prior grid.
    """
    rho0, rho1 = _check_pair(rho0, rho1)
    E0, E1 = restrict_state(M0, rho0), restrict_state(M0, rho1)
    d, d0 = rn_derivative(rho0, rho1), rn_derivative(E0, E1)

    necessary = M0.contains(rho1.matrix @ rho0.inv, tol)[0]
    swapped = M0.contains(rho0.matrix @ rho1.inv, tol)[0]
    in_domain = in_multiplicative_domain(M0, rho0, d, tol)

    zP, zQ = np_zero_tol(rho0, rho1), np_zero_tol(E0, E1)
    grid = []
    for t in threshold_grid(d, d0):
        P = np_decomposition(rho0, rho1, t, zP)
        Q = np_decomposition(E0, E1, t, zQ)
        grid.append(GridPoint(
            t=float(t),
            plus_distance=frobenius(P.P_plus - Q.P_plus),
            zero_distance=frobenius(P.P_zero - Q.P_zero),
            rank_P_zero=P.rank_zero,
            rank_Q_zero=Q.rank_zero,
        ))
    projections_match = all(
        g.matches and g.plus_distance <= tol and g.zero_distance <= tol for g in grid)

    lambda_grid = []
    for lam in np.linspace(0.0, 1.0, lambda_grid_size):
        lambda_grid.append((float(lam), bayes_error(rho0, rho1, lam), bayes_error(E0, E1, lam)))
    max_gap = max(abs(r - f) for _, f, r in lambda_grid)
    errors_match = max_gap <= tol

    return TwoSufficiencyReport(
        verdict=bool(necessary and projections_match and errors_match),
        necessary_condition=bool(necessary),
        necessary_condition_swapped=bool(swapped),
        derivative_in_multiplicative_domain=in_domain,
        projections_match=bool(projections_match),
        errors_match=bool(errors_match),
        max_error_gap=float(max_gap),
        grid=grid,
        lambda_grid=lambda_grid,
        tol=tol,
    )


def classify_case(M0, rho0, rho1, tol=DEFAULT_TOL):
    """Which of the special cases where 2-sufficiency implies sufficiency apply.

    Returns a set drawn from ``{MODULAR_INVARIANT, COMMUTATIVE, COMMUTING_STATES}``.
    Modular invariance is accepted for either state.
    """
    rho0, rho1 = _check_pair(rho0, rho1)
    cases = set()
    if is_modular_invariant(M0, rho0, tol) or is_modular_invariant(M0, rho1, tol):
        cases.add(MODULAR_INVARIANT)
    if is_commutative(M0, tol):
        cases.add(COMMUTATIVE)
    a, b = rho0.matrix, rho1.matrix
    if frobenius(a @ b - b @ a) <= tol:
        cases.add(COMMUTING_STATES)
    return cases


def tensor_states(rho0, rho1, n, cap=DEFAULT_TENSOR_CAP):
    rho0, rho1 = _check_pair(rho0, rho1)
    if n == 1:
        return rho0, rho1
    return (DensityMatrix(tensor_power(rho0.matrix, n, cap)),
            DensityMatrix(tensor_power(rho1.matrix, n, cap)))


def check_2n_sufficiency(M0, rho0, rho1, n, tol=DEFAULT_TOL,
                         lambda_grid_size=DEFAULT_LAMBDA_GRID, cap=DEFAULT_TENSOR_CAP):
    """2-sufficiency of ``M0^{(x)n}`` for ``{rho0^{(x)n}, rho1^{(x)n}}``."""
    Mn = algebra_tensor_power(M0, n, cap)
    r0, r1 = tensor_states(rho0, rho1, n, cap)
    return check_2sufficiency(Mn, r0, r1, tol, lambda_grid_size)


def chernoff_gap(M0, rho0, rho1):
    """Loss of Chernoff distance under restriction; non-negative by monotonicity."""
    rho0, rho1 = _check_pair(rho0, rho1)
    xi, _ = chernoff_distance(rho0, rho1)
    xi0, _ = chernoff_distance(restrict_state(M0, rho0), restrict_state(M0, rho1))
    return xi - xi0
