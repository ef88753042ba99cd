"""Generalized Cesaro averaging operators on truncated Taylor series.

A library plus CLI for the one-parameter family of averaging operators
C_t (0 <= t <= 1) acting on coefficient vectors of analytic functions on
the unit disc: coefficient-level application, integral-form quadrature
cross-checks, the exact inverse, weighted sup-norm estimation, eigenpairs,
closed-form resolvents, finite-section spectra, infinite-product growth
envelopes, power-boundedness certificates and ergodic-mean traces.
"""

from .series import (
    DEFAULT_TRUNCATION,
    DiscPoint,
    TaylorSeries,
    antiderivative,
    cauchy_product,
    constant_one,
    differentiate,
    evaluate,
    evaluate_many,
    from_pairs,
    geometric_series,
    log_one_minus_series,
    max_coeff_diff,
    monomial,
    random_series,
    to_pairs,
    zero_series,
)
from .operators import (
    CesaroOperator,
    InverseOperator,
    apply,
    apply_integral,
    apply_inverse,
    cesaro_coefficients,
    classical_c1_log_image,
    operator_matrix,
)
from .weights import (
    NormEstimate,
    Weight,
    circle_max,
    frechet_norm,
    gamma_norm_bound,
    norm_upper_bound,
    operator_norm_witness,
    q_r_norm,
    radial_grid,
    weighted_sup_norm,
)
from .spectral import (
    LAMBDA_TOL,
    EigenPair,
    ProductBoundReport,
    ResolventQuery,
    eigenpair,
    eigenvalues,
    finite_section_spectrum,
    product_bound_scan,
    resolvent_apply,
    resolvent_equicontinuity_scan,
    spectrum_distance,
)
from .dynamics import (
    ErgodicTrace,
    PowerBoundReport,
    cesaro_mean,
    ergodic_limit_projection,
    ergodic_trace,
    power_apply,
    power_bound_certificate,
    range_preimage,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TRUNCATION",
    "LAMBDA_TOL",
    "CesaroOperator",
    "DiscPoint",
    "EigenPair",
    "ErgodicTrace",
    "InverseOperator",
    "NormEstimate",
    "PowerBoundReport",
    "ProductBoundReport",
    "ResolventQuery",
    "TaylorSeries",
    "Weight",
    "antiderivative",
    "apply",
    "apply_integral",
    "apply_inverse",
    "cauchy_product",
    "cesaro_coefficients",
    "cesaro_mean",
    "circle_max",
    "classical_c1_log_image",
    "constant_one",
    "differentiate",
    "eigenpair",
    "eigenvalues",
    "ergodic_limit_projection",
    "ergodic_trace",
    "evaluate",
    "evaluate_many",
    "finite_section_spectrum",
    "frechet_norm",
    "from_pairs",
    "gamma_norm_bound",
    "geometric_series",
    "log_one_minus_series",
    "max_coeff_diff",
    "monomial",
    "norm_upper_bound",
    "operator_matrix",
    "operator_norm_witness",
    "power_apply",
    "power_bound_certificate",
    "product_bound_scan",
    "q_r_norm",
    "radial_grid",
    "random_series",
    "range_preimage",
    "resolvent_apply",
    "resolvent_equicontinuity_scan",
    "spectrum_distance",
    "to_pairs",
    "weighted_sup_norm",
    "zero_series",
]
