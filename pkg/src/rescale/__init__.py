"""Self-similar scaling toolkit for copy-count resource data.

Checks whether candidate many-copy measures respect tensor-product
regrouping, transports truncated series coefficients up copy lattices by
composition, extrapolates two-variable linear growth through
Fibonacci-polynomial recurrences with propagated uncertainties, evaluates
the large-N square-root growth closed forms, and ships a dense
density-matrix oracle for brute-force cross-checks at small copy number.
"""

__version__ = "0.1.0"

from .comb import binomial, compositions, eval_poly, fibonacci_poly, fibonacci_poly_coeffs
from .errors import (
    DegenerateDenominator,
    DegenerateReference,
    DimensionGuard,
    DomainError,
    DomainEscape,
    EigensolverFailure,
    MissingPoint,
    NegativePredictionWarning,
    NonPositiveLeadingCoeff,
    NonPositiveX,
    NotOnLattice,
    OutOfRange,
    ParseError,
    RescaleError,
    SingularFit,
    TruncationError,
    UnknownSelector,
)
from .oracle import (
    AdditivityReport,
    DensityMatrix,
    additivity_probe,
    bell_diagonal_state,
    isotropic_state,
    log_negativity,
    partial_transpose,
    random_state,
    tensor_power,
)
from .osd import (
    BellDiagonalParams,
    RegroupReport,
    SqrtNMeasure,
    binary_entropy,
    check_sqrtn_scalable,
    inv_normal_cdf,
    normal_cdf,
    osd_bell,
    osd_positivity,
    sqrtn_2e_form,
)
from .scal1 import (
    Check1SReport,
    Measure1SFn,
    SeriesPoly1S,
    additive_family,
    check_1s,
    compose_chain_1s,
    default_e_grid,
    first_order_exponent,
    maclaurin_coeffs,
    multiplicative_family,
    second_order_closed_form,
    triangular_family,
)
from .scal2 import (
    FibFormReport,
    QSComposer,
    SuperactivationReport,
    TwoSModel,
    compose_qs,
    extrapolate_2s,
    fib_form_check,
    fit_2s,
    superactivation_check,
    xy_recurrence,
)
from .types import (
    CopyLattice,
    ResourceSeries,
    UncertainValue,
    lattice_index,
    per_copy,
    total_from_per_copy,
)

__all__ = [
    "AdditivityReport",
    "BellDiagonalParams",
    "Check1SReport",
    "CopyLattice",
    "DegenerateDenominator",
    "DegenerateReference",
    "DensityMatrix",
    "DimensionGuard",
    "DomainError",
    "DomainEscape",
    "EigensolverFailure",
    "FibFormReport",
    "Measure1SFn",
    "MissingPoint",
    "NegativePredictionWarning",
    "NonPositiveLeadingCoeff",
    "NonPositiveX",
    "NotOnLattice",
    "OutOfRange",
    "ParseError",
    "QSComposer",
    "RegroupReport",
    "RescaleError",
    "ResourceSeries",
    "SeriesPoly1S",
    "SingularFit",
    "SqrtNMeasure",
    "SuperactivationReport",
    "TruncationError",
    "TwoSModel",
    "UncertainValue",
    "UnknownSelector",
    "additive_family",
    "additivity_probe",
    "bell_diagonal_state",
    "binary_entropy",
    "binomial",
    "check_1s",
    "check_sqrtn_scalable",
    "compose_chain_1s",
    "compose_qs",
    "compositions",
    "default_e_grid",
    "eval_poly",
    "extrapolate_2s",
    "fib_form_check",
    "fibonacci_poly",
    "fibonacci_poly_coeffs",
    "first_order_exponent",
    "fit_2s",
    "inv_normal_cdf",
    "isotropic_state",
    "lattice_index",
    "log_negativity",
    "maclaurin_coeffs",
    "multiplicative_family",
    "normal_cdf",
    "osd_bell",
    "osd_positivity",
    "partial_transpose",
    "per_copy",
    "random_state",
    "second_order_closed_form",
    "sqrtn_2e_form",
    "superactivation_check",
    "tensor_power",
    "total_from_per_copy",
    "triangular_family",
    "xy_recurrence",
]
