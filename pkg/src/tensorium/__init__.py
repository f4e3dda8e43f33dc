"""Exact-arithmetic toolkit for tensor rank experiments.

Sparse rational tensors, flattenings and unfoldings, cloning, slice
adjoining, affine slice-modification spaces, certified rank bounds, the
structured generator sets, and the certificate battery that machine-checks
every finite claim behind the order-6 rank / symmetric-rank gap.
"""

from .errors import (
    BadLength,
    CoefficientIdentityFails,
    DegreeMismatch,
    DenominatorDivisibleByP,
    DimensionMismatch,
    GeneratorNotRankOne,
    GeneratorNotSymmetric,
    IndexOutOfRange,
    InconsistentInputs,
    InvalidPartition,
    LambdasNotDistinct,
    NonCubicalTensor,
    NotBinary,
    NotSymmetric,
    NTooSmall,
    OddDegree,
    ParameterShapeMismatch,
    PatternViolated,
    SpanFailure,
    SumMismatch,
    TensoriumError,
)
from .exact_linalg import (
    MERSENNE61,
    PrimeFieldMatrix,
    RatMatrix,
    format_rational,
    gram_power_matrix,
    in_span,
    is_probable_prime,
    kernel_vector,
    parse_rational,
    rank_exact,
    rank_mod_p,
    solve_rational,
)
from .tensor_core import (
    PolyForm,
    Tensor,
    clone,
    flatten,
    indicator_tensor,
    is_clone,
    is_rank_one,
    is_symmetric,
    monomial_indicator,
    multi_slice,
    ones_tensor,
    poly_to_tensor,
    restrict,
    slice,
    sym_power,
    symmetrize,
    tensor_add,
    tensor_scale,
    tensor_sub,
    tensor_to_poly,
    unfold,
)
from .constructions import (
    AdjoinSpec,
    ModSpace,
    SubstitutionFamily,
    adjoin,
    mod_space_contains,
    mod_space_sample,
    sadjoin,
    substitution_family,
    sym_mod_space,
)
from .rank_bounds import (
    RankOneWitness,
    SliceSpaceBasis,
    SpanningCertificate,
    SymDecomposition,
    binary_sym_rank_one_in_modspace,
    drk_unfolding,
    monomial_decomposition,
    monomial_decomposition_target,
    slice_space_basis,
    sylvester_bound,
    tensor_to_vector,
    verify_spanning_certificate,
    verify_sym_decomposition,
)
from .wset_builder import (
    WSet,
    WVector,
    alpha,
    build_w_order4,
    build_w_order6,
    order6_family_sizes,
    pi_permute,
    w1_count_formula,
)
from .certificates import (
    Certificate,
    ImplicitCounterexample,
    assemble_counterexample,
    condition3_residual,
    pattern_violations,
    run_battery,
    truncated_instance,
    verify_condition3,
    verify_counts,
    verify_forced_ones,
    verify_independence,
    verify_oracle_equivalence,
    verify_worked_examples,
    verify_zero_patterns,
)

__version__ = "0.1.0"
