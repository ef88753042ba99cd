"""Radial weights and the norms they induce on analytic functions.

A weight is a continuous, non-increasing, strictly positive function ``v``
on [0, 1), extended radially to the disc by ``v(z) = v(|z|)``.  Supported
families:

* ``unit``            -- v(r) = 1 (the plain sup-norm),
* ``standard_gamma``  -- v(r) = (1 - r)**gamma for gamma > 0,
* ``log_power``       -- v(r) = log(e/(1 - r))**(-n) for integer n >= 1,
* ``table``           -- linear interpolation of sampled values.

The weighted sup-norm ``sup_z v(z) |f(z)|`` is estimated on grids: a radial
grid geometrically clustered toward the boundary (r_j = 1 - 2**(-j/4)) and a
uniform angle grid evaluated by FFT.  Grid estimates are one-sided: they are
honest lower bounds of the true supremum and converge from below as grids
refine.  An optional golden-section polish along the radius tightens the
bound; it only ever evaluates the function, so the one-sided semantics
survive (no extrapolation).

Also here: the compact-set norms q_r(f) = sup_{|z|<=r} |f(z)|, the norm
families sum_n |f[n]| r_k**n and sup_n |f[n]| r_k**n with r_k = 1 - 1/k,
and witness-based lower bounds for operator norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .operators import CesaroOperator, apply
from .series import TaylorSeries

#: Default grid sizes for weighted-norm estimation.
DEFAULT_RADII = 64
DEFAULT_ANGLES = 1024

_MONOTONE_SLACK = 1e-12


class Weight:
    """A radial weight with vectorized evaluation ``v(r)``.

    Construct through the factory classmethods (:meth:`unit`,
    :meth:`standard`, :meth:`log_power`, :meth:`from_table`) or parse a CLI
    spec string with :meth:`from_spec`.  Construction samples the evaluator
    and rejects weights that fail positivity or monotonicity.
    """

    def __init__(self, kind: str, label: str, evaluator, boundary_limit_zero: bool):
        self.kind = kind
        self.label = label
        self._evaluator = evaluator
        self.boundary_limit_zero = boundary_limit_zero
        self._check_shape()

    # -- factories ---------------------------------------------------------

    @classmethod
    def unit(cls) -> "Weight":
        return cls("unit", "unit", lambda r: np.ones_like(np.asarray(r, dtype=float)), False)

    @classmethod
    def standard(cls, gamma: float) -> "Weight":
        """v(r) = (1 - r)**gamma."""
        if gamma <= 0:
            raise ValueError("gamma must be positive")
        gamma = float(gamma)
        ev = lambda r: (1.0 - np.asarray(r, dtype=float)) ** gamma
        w = cls("standard_gamma", f"gamma:{gamma:g}", ev, True)
        w.gamma = gamma
        return w

    @classmethod
    def log_power(cls, n: int) -> "Weight":
        """v(r) = log(e/(1 - r))**(-n), i.e. (1 - log(1 - r))**(-n)."""
        n = int(n)
        if n < 1:
            raise ValueError("log-power exponent must be a positive integer")
        ev = lambda r: (1.0 - np.log1p(-np.asarray(r, dtype=float))) ** (-float(n))
        w = cls("log_power", f"logpow:{n}", ev, True)
        w.power = n
        return w

    @classmethod
    def from_table(cls, radii, values) -> "Weight":
        """Linear interpolation of sampled (r, v(r)); monotonicity-checked at load."""
        radii = np.asarray(radii, dtype=float)
        values = np.asarray(values, dtype=float)
        if radii.ndim != 1 or radii.shape != values.shape or len(radii) < 2:
            raise ValueError("table weight needs matching 1-d arrays of length >= 2")
        if np.any(radii < 0) or np.any(radii >= 1) or np.any(np.diff(radii) <= 0):
            raise ValueError("table radii must be strictly increasing inside [0, 1)")
        if np.any(values <= 0):
            raise ValueError("table weight values must be strictly positive")
        if np.any(np.diff(values) > _MONOTONE_SLACK):
            raise ValueError("table weight values must be non-increasing")
        ev = lambda r: np.interp(np.asarray(r, dtype=float), radii, values)
        vanishes = values[-1] <= 1e-3 * values[0]
        return cls("table", "table", ev, bool(vanishes))

    @classmethod
    def from_spec(cls, spec: str) -> "Weight":
        """Parse ``unit``, ``gamma:<float>``, ``logpow:<int>`` or ``table:<path.csv>``."""
        spec = spec.strip()
        if spec == "unit":
            return cls.unit()
        if spec.startswith("gamma:"):
            return cls.standard(float(spec.split(":", 1)[1]))
        if spec.startswith("logpow:"):
            return cls.log_power(int(spec.split(":", 1)[1]))
        if spec.startswith("table:"):
            path = spec.split(":", 1)[1]
            rows = np.loadtxt(path, delimiter=",", ndmin=2)
            return cls.from_table(rows[:, 0], rows[:, 1])
        raise ValueError(f"unrecognized weight spec {spec!r}")

    # -- evaluation --------------------------------------------------------

    def __call__(self, r):
        return self._evaluator(r)

    def _check_shape(self):
        rs = 1.0 - 2.0 ** (-np.linspace(0.0, 20.0, 257))
        vals = np.asarray(self(rs), dtype=float)
        if np.any(vals <= 0) or not np.all(np.isfinite(vals)):
            raise ValueError("weight must be finite and strictly positive on [0, 1)")
        if np.any(np.diff(vals) > _MONOTONE_SLACK * vals[0]):
            raise ValueError("weight must be non-increasing on [0, 1)")

    def __repr__(self) -> str:
        return f"Weight({self.label})"


@dataclass(frozen=True)
class NormEstimate:
    """A norm value with one-sided semantics and the grid that produced it.

    ``direction`` is ``"grid_estimate"`` for sup-norm grid maxima (a lower
    bound of the true supremum) or ``"lower_witness"`` for witness-ratio
    operator-norm bounds.
    """

    value: float
    direction: str
    radii: int
    angles: int
    truncation: int
    refined: bool = False


# -- circle and disc maxima --------------------------------------------------


def circle_max(f: TaylorSeries, r: float, angles: int) -> float:
    """Max of |f| over ``angles`` equispaced points of the circle |z| = r.

    Folds the r-scaled coefficients modulo the grid size and takes one FFT,
    which reproduces the grid maximum exactly (the uniform grid is closed
    under the FFT's angle sign convention).  Accepts r = 0.
    """
    if not 0.0 <= r < 1.0:
        raise ValueError(f"radius must lie in [0, 1), got {r}")
    if angles < 1:
        raise ValueError("angle count must be >= 1")
    scaled = f.coeffs * (r ** np.arange(len(f.coeffs)))
    if r == 0.0:
        return float(abs(scaled[0]))
    width = int(math.ceil(len(scaled) / angles)) * angles
    buf = np.zeros(width, dtype=complex)
    buf[: len(scaled)] = scaled
    folded = buf.reshape(-1, angles).sum(axis=0)
    return float(np.max(np.abs(np.fft.fft(folded))))


def q_r_norm(f: TaylorSeries, r: float, angles: int = DEFAULT_ANGLES) -> float:
    """The compact-set norm sup_{|z| <= r} |f(z)|, sampled on the circle |z| = r.

    By the maximum principle the sup over the closed disc of radius r is
    attained on its boundary circle, so an angle grid on the circle is the
    whole story.  Monotone non-decreasing in r.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"q_r radius must lie in (0, 1), got {r}")
    return circle_max(f, r, angles)


def radial_grid(count: int) -> np.ndarray:
    """r_j = 1 - 2**(-j/4): geometric clustering toward the boundary.

    Weighted sup-norms are typically attained near |z| = 1; uniform radial
    grids systematically under-estimate them.
    """
    if count < 1:
        raise ValueError("radial grid needs count >= 1")
    return 1.0 - 2.0 ** (-np.arange(count) / 4.0)


def weighted_sup_norm(
    f: TaylorSeries,
    v: Weight,
    radii: int = DEFAULT_RADII,
    angles: int = DEFAULT_ANGLES,
    refine: bool = True,
) -> NormEstimate:
    """Grid estimate (a lower bound) of sup_z v(z) |f(z)|.

    Takes the max of ``v(r) * circle_max(f, r)`` over the clustered radial
    grid; with ``refine`` a golden-section polish of the radius around the
    grid argmax tightens the estimate.  Both passes only evaluate the
    function, so the result never exceeds the true supremum.
    """
    if radii < 8 or angles < 8:
        raise ValueError("weighted norm grids need at least 8 radii and 8 angles")
    rs = radial_grid(radii)
    weighted = lambda r: float(v(r)) * circle_max(f, float(r), angles)
    vals = np.array([weighted(r) for r in rs])
    j = int(np.argmax(vals))
    best = float(vals[j])
    if refine:
        lo = rs[j - 1] if j > 0 else rs[j]
        hi = rs[j + 1] if j + 1 < len(rs) else min(1.0 - 0.25 * (1.0 - rs[j]), 1.0 - 1e-12)
        best = max(best, _golden_max(weighted, lo, hi))
    return NormEstimate(best, "grid_estimate", radii, angles, f.degree, refined=refine)


def _golden_max(fn, lo: float, hi: float, iterations: int = 40) -> float:
    """Golden-section search for a maximum; returns the best sampled value."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fn(c), fn(d)
    best = max(fc, fd)
    for _ in range(iterations):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fn(d)
        best = max(best, fc, fd)
    return best


# -- coefficient norm families -----------------------------------------------


def frechet_norm(f: TaylorSeries, k: int, flavor: str = "sum") -> float:
    """Coefficient norm with ratio r_k = 1 - 1/k, for k >= 2.

    ``sum`` flavor: sum_n |f[n]| r_k**n.  ``sup`` flavor: max_n |f[n]| r_k**n.
    Either family generates the compact-open topology; see the inequality
    suite in the tests for the k**2 equivalence constants.
    """
    if k < 2:
        raise ValueError("norm index k must be >= 2")
    if flavor not in ("sum", "sup"):
        raise ValueError("flavor must be 'sum' or 'sup'")
    r_k = 1.0 - 1.0 / k
    terms = np.abs(f.coeffs) * r_k ** np.arange(len(f.coeffs))
    return float(np.sum(terms) if flavor == "sum" else np.max(terms))


# -- operator norm bounds ------------------------------------------------------


def gamma_norm_bound(gamma: float, samples: int = 20001) -> float:
    """The bound M_gamma / gamma with M_gamma = sup_{s in [0,1]} (1-(1-s)**gamma)/s.

    Maximizes on a fine grid of [0, 1] with the continuous-extension value
    gamma at s = 0.  For gamma >= 1 the returned bound is <= 1; for
    gamma in (0, 1), M_gamma itself is <= 1.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    s = np.linspace(0.0, 1.0, samples)[1:]
    phi = (1.0 - (1.0 - s) ** gamma) / s
    m_gamma = max(float(np.max(phi)), float(gamma))
    return m_gamma / gamma


def norm_upper_bound(t: float, v: Weight) -> float:
    """Proven upper bound for the operator norm on the weighted space of ``v``.

    Every weight admits -log(1-t)/t.  Standard weights sharpen this: the norm
    equals 1 for gamma >= 1, and min(-log(1-t)/t, 1/gamma) bounds it for
    gamma in (0, 1).
    """
    if not 0.0 <= t < 1.0:
        raise ValueError("norm bounds are available for t in [0, 1) only")
    generic = 1.0 if t == 0.0 else -math.log1p(-t) / t
    if v.kind == "standard_gamma":
        if v.gamma >= 1.0:
            return 1.0
        return min(generic, 1.0 / v.gamma)
    return generic


def operator_norm_witness(
    t: float,
    v: Weight,
    witnesses: list[TaylorSeries],
    radii: int = DEFAULT_RADII,
    angles: int = DEFAULT_ANGLES,
    refine: bool = True,
) -> NormEstimate:
    """Witness-based lower bound for the operator norm on the weighted space.

    Returns the largest ratio ``|image of w| / |w|`` of weighted sup-norm
    grid estimates over the witness list.  Rejects t = 1: the averaging
    operator does not act on the weighted sup-norm spaces at t = 1 (its image
    of a bounded function need not be bounded), so no norm is defined there.
    """
    if not 0.0 <= t < 1.0:
        raise ValueError("weighted operator norms are defined for t in [0, 1) only")
    if not witnesses:
        raise ValueError("witness list must be non-empty")
    op = CesaroOperator(t)
    best = 0.0
    max_degree = 0
    for w in witnesses:
        denom = weighted_sup_norm(w, v, radii, angles, refine).value
        if denom <= 0.0:
            raise ValueError("every witness must have positive weighted norm")
        numer = weighted_sup_norm(apply(op, w), v, radii, angles, refine).value
        best = max(best, numer / denom)
        max_degree = max(max_degree, w.degree)
    return NormEstimate(best, "lower_witness", radii, angles, max_degree, refined=refine)
