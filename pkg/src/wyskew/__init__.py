"""Wigner-Yanase skew information, skew-information uncertainty bounds and
local-uncertainty entanglement witnesses."""

from .bounds import (
    BoundReport,
    chen_bound,
    corollary_bound,
    evaluate_all,
    pairwise_diff_bound,
    pairwise_sum_bound,
    parallelogram_identity,
    sum_skew,
    theorem1_bound,
    weighted_relation,
)
from .catalog import BlochVector, bell_states, bloch_state, figure_family, pauli, spin1_J, spin1_state
from .entanglement import (
    ProductDecomposition,
    WitnessVerdict,
    check_additivity,
    check_monotonicity,
    lur_witness,
    optimal_constant,
    sum_observable,
    verify_q_convexity,
)
from .linalg import (
    DensityMatrix,
    DimensionMismatchError,
    HermitianOperator,
    ObservableSet,
    ValidationError,
    commutator,
    frobenius_norm,
    partial_trace,
    psd_sqrt,
    spectral_decompose,
    tensor,
)
from .skewinfo import ObservableBasis, gell_mann_basis, q_total, q_total_closed_form, skew_information, variance

__version__ = "0.1.0"
