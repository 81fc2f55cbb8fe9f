"""Positivity structure of Toeplitz and block Toeplitz matrix cones."""

from .block_cones import (
    MinPositivityCertificate,
    SeparableDecomposition,
    TwoLevelToeplitz,
    build_min_neq_max_element,
    certify_two_level_min_positive,
    equivalence_suite,
    min_neq_max_demo,
    min_psd_block,
    schur_pairing_check,
    separable_decompose,
    witness_for_nonpositivity,
)
from .duality import (
    AtomicMeasure,
    DualFunctional,
    atom_functional,
    caratheodory_decompose,
    dual_basis_eval,
    pair,
    truncate_symbol,
)
from .entanglement import (
    CHOI_MASK,
    EntanglementCertificate,
    XiMatrix,
    build_xi,
    certify_entangled,
    choi_map,
    choi_map_demo,
    purity_perturbation_search,
    purity_split_check,
    refute_decomposition,
)
from .fejer_riesz import (
    FejerRieszFactor,
    convolution_check,
    factor_matrix,
    factor_scalar,
    factorize,
)
from .hardy import (
    CircleMinimum,
    TruncatedToeplitzOp,
    circle_minimum,
    hardy_trend_report,
    spectral_floor_trend,
    truncation,
)
from .trig_core import (
    DEFAULT_TOL,
    BlockToeplitz,
    BlockTrigPoly,
    PsdReport,
    Tolerance,
    ToeplitzMat,
    TrigPoly,
    basis_r,
    circle_grid,
    eval_on_circle,
    fourier_coeff_via_roots,
    is_psd,
    pure_atom,
    schur_isometry,
    schur_product,
    shift_unitaries,
    transpose_similarity,
    unit_circle_point,
    unit_circle_points,
)

__all__ = [
    "AtomicMeasure",
    "BlockToeplitz",
    "BlockTrigPoly",
    "CHOI_MASK",
    "CircleMinimum",
    "DEFAULT_TOL",
    "DualFunctional",
    "EntanglementCertificate",
    "FejerRieszFactor",
    "MinPositivityCertificate",
    "PsdReport",
    "SeparableDecomposition",
    "ToeplitzMat",
    "Tolerance",
    "TrigPoly",
    "TruncatedToeplitzOp",
    "TwoLevelToeplitz",
    "XiMatrix",
    "atom_functional",
    "basis_r",
    "build_min_neq_max_element",
    "build_xi",
    "caratheodory_decompose",
    "certify_entangled",
    "certify_two_level_min_positive",
    "choi_map",
    "choi_map_demo",
    "circle_grid",
    "circle_minimum",
    "convolution_check",
    "dual_basis_eval",
    "equivalence_suite",
    "eval_on_circle",
    "factor_matrix",
    "factor_scalar",
    "factorize",
    "fourier_coeff_via_roots",
    "hardy_trend_report",
    "is_psd",
    "min_neq_max_demo",
    "min_psd_block",
    "pair",
    "pure_atom",
    "purity_perturbation_search",
    "purity_split_check",
    "refute_decomposition",
    "schur_isometry",
    "schur_pairing_check",
    "schur_product",
    "separable_decompose",
    "shift_unitaries",
    "spectral_floor_trend",
    "transpose_similarity",
    "truncate_symbol",
    "truncation",
    "unit_circle_point",
    "unit_circle_points",
    "witness_for_nonpositivity",
]

__version__ = "0.1.0"
