"""detloci: closed-form invariants and exact graded linear algebra for
determinantal loci W(b;a;r) in Hilbert schemes."""

from .gfpoly import (
    Echelon,
    GradedPieceMap,
    Multigrading,
    MultiPoly,
    PolyRing,
    PrimeField,
    kernel_basis,
    monomials,
    mul_map,
    random_homogeneous,
    rank,
    row_space_complement,
    solve,
)
from .invariants import (
    BettiTable,
    DegreeData,
    DimPrediction,
    K,
    K_prime,
    binom_trunc,
    br_betti,
    check_conditions,
    dim_MI,
    ell,
    ell_prime,
    en_betti,
    h,
    h_prime,
    hf_from_betti,
    kapp_betti,
    kappa_1,
    kappa_prime,
    lambda_c,
    mdg,
    mdr,
    predict_dim,
    s_r,
    transpose_data,
)
from .detschemes import (
    Flag,
    HomMatrix,
    MinorsIdeal,
    build_flag,
    delete_last_column,
    dimension_estimate,
    generic_matrix,
    minors,
    power_matrix,
    random_matrix,
)
from .gradedhom import (
    CokerView,
    IdealView,
    QuotientView,
    SubquotientView,
    SyzygyBlock,
    coker_kernel_dim,
    coker_tensor_dim,
    ext1_MI_dim,
    hf_quotient,
    hom_dim,
    ideal_piece,
    minimal_generators,
    subquotient_piece,
    syzygy_generators,
)
from .verifier import CaseReport, MatrixSpec, run_case, verify_catalog

__version__ = "0.1.0"
