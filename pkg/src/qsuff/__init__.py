"""Sufficient and 2-sufficient subalgebras for pairs of invertible quantum states."""
from .algebra import (
    Subalgebra,
    algebra_tensor_power,
    close_generators,
    conditional_expectation,
    contains,
    full_algebra,
    is_commutative,
    is_modular_invariant,
    restrict_state,
    trivial_algebra,
)
from .estimators import ConditionalExpectation, NeymanPearsonTest, SufficiencyClassifier
from .exceptions import (
    ClosureDiverged,
    DomainError,
    InternalInconsistency,
    InvalidInput,
    InvalidState,
    NumericalDegeneracy,
    ParseError,
    QsuffError,
    ResourceLimit,
)
from .linalg import eig_hermitian, matrix_function, spectral_split, tensor_power, trace_norm
from .neyman_pearson import (
    bayes_error,
    error_pair,
    is_bayes_optimal,
    kernel_ranks,
    np_decomposition,
    optimal_test,
    restricted_bayes_error,
    simulate_test,
)
from .states import (
    DensityMatrix,
    Superoperator,
    bs_entropy,
    chernoff_distance,
    gce_apply,
    gce_superoperator,
    in_fixed_points,
    in_multiplicative_domain,
    petz_recovery,
    regularize,
    renyi_trace,
    rho_inner,
    rn_derivative,
    umegaki_entropy,
)
from .sufficiency import (
    SufficiencyReport,
    TwoSufficiencyReport,
    check_2n_sufficiency,
    check_2sufficiency,
    check_sufficiency,
    chernoff_gap,
    classify_case,
)

__version__ = "0.1.0"
