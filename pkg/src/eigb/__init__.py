"""Spectra of Hermitian x PSD products and eigenvalue-sum bound verification."""

from .bounds import (
    BoundReport,
    IndexSequence,
    Inertia,
    OstrowskiReport,
    SplitPair,
    compare_split_vs_main,
    count_selected_nonnegative,
    gap_bound,
    inertia_of,
    main_bound_report,
    main_bounds,
    ostrowski_ratios,
    pair_bounds,
    psd_product_bounds,
    selected_sum,
    spectral_split,
    splitting_upper_bound,
    stable_bounds,
    trace_bounds,
    wielandt_sum_bounds,
)
from .harness import (
    CampaignConfig,
    CampaignReport,
    GeneratorSpec,
    Tolerances,
    VerificationRecord,
    check_instance,
    enumerate_index_sequences,
    gen_hermitian,
    gen_psd,
    run_campaign,
)
from .linalg import (
    EigenDecomposition,
    HermitianMatrix,
    PSDMatrix,
    Spectrum,
    frobenius_norm,
    hermitian_eig,
    matrix_product,
    product_spectrum,
    psd_sqrt,
    trace,
    validate_hermitian,
    validate_psd,
)
from .matfile import parse_matrix, write_matrix

__all__ = [
    "BoundReport",
    "CampaignConfig",
    "CampaignReport",
    "EigenDecomposition",
    "GeneratorSpec",
    "HermitianMatrix",
    "IndexSequence",
    "Inertia",
    "OstrowskiReport",
    "PSDMatrix",
    "SplitPair",
    "Spectrum",
    "Tolerances",
    "VerificationRecord",
    "check_instance",
    "compare_split_vs_main",
    "count_selected_nonnegative",
    "enumerate_index_sequences",
    "frobenius_norm",
    "gap_bound",
    "gen_hermitian",
    "gen_psd",
    "hermitian_eig",
    "inertia_of",
    "main_bound_report",
    "main_bounds",
    "matrix_product",
    "ostrowski_ratios",
    "pair_bounds",
    "parse_matrix",
    "product_spectrum",
    "psd_product_bounds",
    "psd_sqrt",
    "run_campaign",
    "selected_sum",
    "spectral_split",
    "splitting_upper_bound",
    "stable_bounds",
    "trace",
    "trace_bounds",
    "validate_hermitian",
    "validate_psd",
    "wielandt_sum_bounds",
    "write_matrix",
]
