"""The generalized Cesaro averaging operators on coefficient vectors.

For a parameter ``t`` in [0, 1] the operator sends coefficients ``x`` to

    (C_t x)[n] = (t**n x[0] + t**(n-1) x[1] + ... + x[n]) / (n + 1).

``t = 0`` is the Hardy averaging operator ``x[n] -> x[n]/(n+1)``; ``t = 1``
is the classical arithmetic-mean operator.  On functions this is

    (C_t f)(z) = (1/z) * integral_0^z f(u)/(1 - t u) du,      C_t f(0) = f(0),

and the two realizations agree coefficient by coefficient.  Because the
coefficient matrix is lower triangular, applying the operator to a degree-N
truncation reproduces the first N+1 coefficients of the exact image.

For ``t < 1`` the operator is invertible on coefficient space; the inverse
acts as ``f -> (1 - t z) (z f)'`` and is also lower triangular (bidiagonal).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .series import TaylorSeries, cauchy_product, evaluate_many, log_one_minus_series

_STRATEGIES = ("recurrence", "matrix", "quadrature")

#: Sample points used by the quadrature self-check strategy.
_CHECK_RADII = (0.3, 0.6, 0.9)
_CHECK_TOL = 1e-8


@dataclass(frozen=True)
class CesaroOperator:
    """Averaging operator with parameter ``t`` and an apply strategy.

    ``recurrence`` is the O(N) production path.  ``matrix`` materializes the
    lower-triangular coefficient matrix (O(N^2), for validation and finite
    sections).  ``quadrature`` applies the recurrence and then cross-checks
    the result against the integral form at a few sample points.

    ``t = 1`` is allowed: the operator is well defined on coefficient space.
    Weighted-norm routines, not this class, refuse ``t = 1``.
    """

    t: float
    strategy: str = "recurrence"

    def __post_init__(self):
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"operator parameter must lie in [0, 1], got {self.t}")
        if self.strategy not in _STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}; expected one of {_STRATEGIES}")


@dataclass(frozen=True)
class InverseOperator:
    """The exact inverse ``f -> (1 - t z)(z f)'``, defined for ``t`` in [0, 1)."""

    t: float

    def __post_init__(self):
        if not 0.0 <= self.t < 1.0:
            raise ValueError(f"inverse parameter must lie in [0, 1), got {self.t}")


def cesaro_coefficients(t: float, coeffs: np.ndarray) -> np.ndarray:
    """Raw-array fast path: prefix recurrence s[n] = t*s[n-1] + x[n], out = s/(n+1)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    prefix = lfilter([1.0], [1.0, -float(t)], coeffs)
    return prefix / np.arange(1, len(coeffs) + 1)


def operator_matrix(t: float, size: int) -> np.ndarray:
    """The size x size lower-triangular section M[n, k] = t**(n-k) / (n+1), k <= n."""
    if size < 1:
        raise ValueError("matrix section needs size >= 1")
    n = np.arange(size)
    shift = np.subtract.outer(n, n)
    with np.errstate(invalid="ignore"):
        powers = np.where(shift >= 0, float(t) ** np.clip(shift, 0, None), 0.0)
    return powers / (n[:, None] + 1.0)


def apply(op: CesaroOperator, f: TaylorSeries) -> TaylorSeries:
    """Apply the operator; the full output prefix is exact (lower triangularity)."""
    if op.strategy == "matrix":
        out = operator_matrix(op.t, len(f.coeffs)) @ f.coeffs
    else:
        out = cesaro_coefficients(op.t, f.coeffs)
    result = TaylorSeries(out)
    if op.strategy == "quadrature":
        _quadrature_self_check(op, f, result)
    return result


def _quadrature_self_check(op, f, result):
    if op.t >= 1.0:
        return  # integral form needs t|z| < 1 with margin; coefficient path stands alone
    # The integral form sees the full image; the series side must be evaluated
    # at a truncation long enough that the image tail is below the check
    # tolerance at the outermost check radius.
    padded = apply(CesaroOperator(op.t), f.padded(max(f.degree, 512)))
    for r in _CHECK_RADII:
        z = complex(r, 0.0)
        direct = complex(np.polynomial.polynomial.polyval(z, padded.coeffs))
        quad = apply_integral(op, f, z, quad_nodes=96)
        scale = max(1.0, abs(direct))
        if abs(direct - quad) > _CHECK_TOL * scale:
            raise RuntimeError(
                f"quadrature cross-check failed at z={z}: series {direct}, integral {quad}"
            )


def apply_integral(op: CesaroOperator, f: TaylorSeries, z: complex, quad_nodes: int = 64) -> complex:
    """Value of the image at ``z`` via Gauss-Legendre quadrature of the integral form.

    Integrates ``f(s z)/(1 - s t z)`` over ``s`` in [0, 1].  The integrand is
    analytic on the segment whenever ``t |z| < 1``, so the node count buys
    exponential accuracy; 64 nodes are ample for degree <= 128 inputs.
    """
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"evaluation point must satisfy |z| < 1, got |z| = {abs(z)}")
    if op.t * abs(z) >= 1.0:
        raise ValueError("integral form needs t*|z| < 1")
    if quad_nodes < 2:
        raise ValueError("quad_nodes must be >= 2")
    if z == 0:
        return complex(f.coeffs[0])  # the defining convention: image(0) = f(0)
    nodes, wts = np.polynomial.legendre.leggauss(quad_nodes)
    s = 0.5 * (nodes + 1.0)
    values = evaluate_many(f, s * z) / (1.0 - s * op.t * z)
    return complex(np.sum(0.5 * wts * values))


def apply_inverse(inv: InverseOperator, f: TaylorSeries) -> TaylorSeries:
    """Coefficients of ``(1 - t z)(z f)'``: out[n] = (n+1) f[n] - t n f[n-1].

    Exact on the truncation prefix; the convention f[-1] = 0 makes row 0 read
    out[0] = f[0].
    """
    c = f.coeffs
    n = np.arange(len(c))
    out = (n + 1.0) * c
    out[1:] -= inv.t * n[1:] * c[:-1]
    return TaylorSeries(out)


def classical_c1_log_image(n: int, truncation: int) -> tuple[TaylorSeries, TaylorSeries]:
    """Input/image pair for the t = 1 averaging of ``(log(1-z))**n``.

    Returns the degree-``truncation`` coefficients of ``f = (log(1-z))**n``
    (built by repeated Cauchy products of the log series) together with the
    image of ``f`` under the t = 1 operator.  The image's exact closed form
    is ``-(log(1-z))**(n+1) / ((n+1) z)``; tests hold the returned image to
    that within 1e-10.
    """
    if n < 1:
        raise ValueError("log-power exponent must be >= 1")
    base = log_one_minus_series(truncation)
    power = base
    for _ in range(n - 1):
        power = cauchy_product(power, base, max_degree=truncation)
    image = apply(CesaroOperator(1.0), power)
    return power, image
