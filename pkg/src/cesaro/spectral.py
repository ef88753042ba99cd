"""Eigenpairs, resolvents and finite sections of the averaging operators.

The coefficient matrix of the parameter-t operator is lower triangular with
diagonal 1/(n+1), so every finite section has eigenvalues {1, 1/2, ..., 1/N}
regardless of t, and the full operator's point spectrum is the ladder
Lambda = {1/(m+1)}.  Its closure Lambda_0 = Lambda + {0} is where resolvent
computations break down; everything here measures distances to that set.

The eigenvector recurrence x[n] (n - m) = t n x[n-1] (with x[m] = 1) is the
authoritative construction; the binomial closed form C(n, m) t**(n-m) is
validated against it in the tests, never assumed.

The resolvent solve uses the coefficientwise closed form

    a[0] = c[0] / (1 - nu),
    a[n] = c[n] / (1/(n+1) - nu)
           - (1/nu**2) sum_h t**h c[n-h] / ((n+1) prod_{j=n-h+1}^{n+1} (1 - 1/(j nu))),

evaluated through running prefix ratios in O(N) total.  An independent
triangular forward-substitution oracle cross-checks it in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .operators import operator_matrix
from .series import TaylorSeries, random_series
from .weights import frechet_norm

#: Distance to Lambda_0 below which resolvent queries are refused.  Closer
#: than this the triangular system's conditioning (which grows like the
#: reciprocal distance) makes answers silent garbage.
LAMBDA_TOL = 1e-6

_MAX_INDEX = float(2**62)


def eigenvalues(count: int) -> np.ndarray:
    """The first ``count`` points of the eigenvalue ladder: 1/(m+1)."""
    return 1.0 / (np.arange(count) + 1.0)


def spectrum_distance(nu: complex) -> float:
    """Distance from ``nu`` to the closed spectrum {0} + {1/(m+1) : m >= 0}.

    The ladder points nearest Re(nu) bracket the candidates; 0 covers the
    accumulation end.
    """
    nu = complex(nu)
    best = abs(nu)
    best = min(best, abs(nu - 1.0))
    x = nu.real
    if x > 0.0:
        m_real = min(max(1.0 / x - 1.0, 0.0), _MAX_INDEX)
        for m in {math.floor(m_real), math.ceil(m_real)}:
            best = min(best, abs(nu - 1.0 / (m + 1.0)))
    return best


# -- eigenpairs ---------------------------------------------------------------


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue 1/(m+1) with its normalized eigenfunction (coefficient m is 1)."""

    m: int
    eigenvalue: float
    series: TaylorSeries


def eigenpair(t: float, m: int, truncation: int) -> EigenPair:
    """Solve the kernel recurrence for the index-m eigenfunction.

    x[n] = 0 below n = m, x[m] = 1, and x[n] = t n x[n-1] / (n - m) above.
    The pair satisfies ``operator(x) = x / (m+1)`` exactly on the truncation
    prefix.  For t = 0 this collapses to the basis vector e_m.
    """
    if not 0.0 <= t < 1.0:
        raise ValueError("eigenpairs are computed for t in [0, 1)")
    if m < 0:
        raise ValueError("eigenvalue index must be >= 0")
    if m >= truncation:
        raise ValueError(f"index m={m} must be smaller than the truncation {truncation}")
    x = np.zeros(truncation + 1, dtype=complex)
    x[m] = 1.0
    for n in range(m + 1, truncation + 1):
        x[n] = t * n * x[n - 1] / (n - m)
    return EigenPair(m, 1.0 / (m + 1.0), TaylorSeries(x))


# -- resolvent ----------------------------------------------------------------


@dataclass(frozen=True)
class ResolventQuery:
    """A resolvent evaluation request: the shift ``nu`` and the right-hand side.

    ``truncation`` defaults to the degree of the right-hand side; ``tol`` is
    the refusal distance to the closed spectrum.
    """

    nu: complex
    rhs: TaylorSeries
    truncation: int | None = None
    tol: float = LAMBDA_TOL

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        dist = spectrum_distance(self.nu)
        if dist < self.tol:
            raise ValueError(
                f"nu={self.nu} is a (near-)spectral point: distance {dist:.3e} "
                f"to the eigenvalue ladder is below {self.tol:.1e}"
            )

    @property
    def degree(self) -> int:
        return self.rhs.degree if self.truncation is None else self.truncation


def resolvent_apply(query: ResolventQuery, t: float) -> TaylorSeries:
    """The unique coefficient solution ``a`` of (operator - nu I) a = rhs.

    Implements the closed form through the running ratio
    V[n] = sum_k t**(n-k) c[k] Q[k]/Q[n] with Q[n] = prod_{j<=n} (1 - 1/(j nu)),
    updated as V[n] = t (V[n-1] + c[n-1]) / (1 - 1/(n nu)); then

        a[n] = c[n]/(1/(n+1) - nu) - V[n] / (nu**2 (n+1) (1 - 1/((n+1) nu))).

    O(1) work per coefficient and no raw products that could under/overflow.
    """
    if not 0.0 <= t < 1.0:
        raise ValueError("resolvent is computed for t in [0, 1)")
    nu = complex(query.nu)
    deg = query.degree
    c = query.rhs.padded(deg).coeffs if query.rhs.degree < deg else query.rhs.coeffs[: deg + 1]
    a = np.empty(deg + 1, dtype=complex)
    a[0] = c[0] / (1.0 - nu)
    v = 0.0 + 0.0j
    for n in range(1, deg + 1):
        v = t * (v + c[n - 1]) / (1.0 - 1.0 / (n * nu))
        a[n] = c[n] / (1.0 / (n + 1.0) - nu) - v / (nu * nu * (n + 1.0) * (1.0 - 1.0 / ((n + 1.0) * nu)))
    return TaylorSeries(a)


# -- finite sections ------------------------------------------------------------


def finite_section_spectrum(t: float, size: int, cross_check: bool = False) -> np.ndarray:
    """Eigenvalues of the size x size coefficient section: exactly {1/(n+1)}.

    The section is lower triangular, so the spectrum is its diagonal and does
    not depend on t.  With ``cross_check`` (capped at size 64 to stay cheap) a
    dense eigensolver must reproduce the ladder within 1e-8.
    """
    if size < 1:
        raise ValueError("section size must be >= 1")
    if not 0.0 <= t <= 1.0:
        raise ValueError("parameter t must lie in [0, 1]")
    diagonal = eigenvalues(size)
    if cross_check:
        if size > 64:
            raise ValueError("dense eigensolver cross-check is capped at size 64")
        dense = np.linalg.eigvals(operator_matrix(t, size))
        dense = np.sort_complex(dense)[::-1]
        if np.max(np.abs(dense - diagonal)) > 1e-8:
            raise RuntimeError("dense eigensolver disagrees with the triangular diagonal")
    return diagonal


# -- infinite product growth ----------------------------------------------------


@dataclass(frozen=True)
class ProductBoundReport:
    """Scan of p_n = prod_{k<=n} |1 - 1/(k nu)| against the n**(-alpha) envelope.

    ``scaled`` is p_n * n**alpha with alpha = Re(1/nu); boundedness of the
    scaled sequence between positive constants is the two-sided envelope the
    resolvent estimates rest on.  ``d_hat``/``D_hat`` are its min/max over
    n >= 10, and ``tail_slope`` the log-log trend over the last decade (a
    stabilized scan shows no trend).
    """

    nu: complex
    alpha: float
    n_values: np.ndarray
    p_values: np.ndarray
    scaled: np.ndarray
    d_hat: float
    D_hat: float
    tail_slope: float


def product_bound_scan(nu: complex, n_max: int) -> ProductBoundReport:
    """Accumulate the products in log space and report the scaled envelope.

    Log-space accumulation (a cumulative sum of log |1 - 1/(k nu)|) keeps the
    scan safe out to n ~ 1e4 even when n**alpha alone would under/overflow.
    """
    nu = complex(nu)
    if n_max < 100:
        raise ValueError("n_max must be >= 100")
    if spectrum_distance(nu) < 1e-9:
        raise ValueError(f"nu={nu} is too close to the eigenvalue ladder for the product scan")
    k = np.arange(1, n_max + 1, dtype=float)
    log_p = np.cumsum(np.log(np.abs(1.0 - 1.0 / (k * nu))))
    alpha = (1.0 / nu).real
    log_scaled = log_p + alpha * np.log(k)
    scaled = np.exp(log_scaled)
    p = np.exp(log_p)
    window = k >= 10
    d_hat = float(np.min(scaled[window]))
    big_d = float(np.max(scaled[window]))
    tail = k >= max(10, n_max // 10)
    slope = float(np.polyfit(np.log(k[tail]), log_scaled[tail], 1)[0])
    return ProductBoundReport(nu, alpha, k.astype(int), p, scaled, d_hat, big_d, slope)


# -- resolvent equicontinuity over balls ----------------------------------------


def resolvent_equicontinuity_scan(
    mu: complex,
    delta: float,
    t: float,
    k: int = 2,
    samples: int = 64,
    degree: int = 32,
    rng: np.random.Generator | None = None,
) -> float:
    """Largest resolvent norm ratio seen over a ball avoiding the spectrum.

    Samples ``nu`` uniformly from the open ball B(mu, delta) and random test
    functions g, returning max ||resolvent(g)||_k / ||g||_k in the sum-flavor
    coefficient norm.  A finite, sample-stable result is the numerical
    shadow of equicontinuity of the resolvent family on the ball.

    Rejects balls whose closure meets the eigenvalue ladder or 0.
    """
    if delta <= 0:
        raise ValueError("ball radius must be positive")
    clearance = spectrum_distance(mu) - delta
    if clearance <= 0:
        raise ValueError(
            f"closed ball B({mu}, {delta}) meets the eigenvalue ladder "
            f"(center distance {spectrum_distance(mu):.3e})"
        )
    if samples < 1:
        raise ValueError("need at least one sample")
    if rng is None:
        rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(samples):
        radius = delta * math.sqrt(rng.random())
        angle = 2.0 * math.pi * rng.random()
        nu = mu + radius * complex(math.cos(angle), math.sin(angle))
        g = random_series(degree, rng)
        query = ResolventQuery(nu, g)
        image = resolvent_apply(query, t)
        worst = max(worst, frechet_norm(image, k) / frechet_norm(g, k))
    return worst
