"""Truncated complex power series on the unit disc.

Everything else in this package manipulates one data structure: a finite
coefficient vector ``c`` standing for the analytic function

    f(z) = c[0] + c[1]*z + c[2]*z**2 + ... + c[N]*z**N,   |z| < 1.

All the averaging operators implemented here are lower triangular on
coefficients, so truncating at degree N and applying an operator commutes
with applying the operator and then truncating: the first N+1 output
coefficients are exact, not approximate.  Operations document which output
prefix is exact.

Coefficients are complex double precision throughout; there is no
arbitrary-precision path in the library itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Default truncation degree for experiment-level helpers.
DEFAULT_TRUNCATION = 512


@dataclass(frozen=True)
class DiscPoint:
    """A point of the open unit disc in polar form, z = r * exp(i theta)."""

    r: float
    theta: float

    def __post_init__(self):
        if not 0.0 <= self.r < 1.0:
            raise ValueError(f"disc radius must lie in [0, 1), got {self.r}")

    @property
    def z(self) -> complex:
        return self.r * complex(math.cos(self.theta), math.sin(self.theta))


class TaylorSeries:
    """A truncated power series, held as an immutable complex coefficient vector.

    ``TaylorSeries([1, 0.5, 0.25])`` represents ``1 + 0.5 z + 0.25 z**2``.
    Coefficient ``n`` is the n-th Taylor coefficient of the function the
    series truncates.  Two series are equal iff their coefficient vectors
    agree after stripping trailing zeros.

    The coefficient array is read-only; operations return new instances.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        arr = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite (no NaN/Inf)")
        arr.setflags(write=False)
        self.coeffs = arr

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __call__(self, z):
        return evaluate(self, z)

    def padded(self, degree: int) -> "TaylorSeries":
        """Same function, coefficient vector extended with zeros to ``degree``."""
        if degree < self.degree:
            raise ValueError("padded() cannot shrink a series; use truncated()")
        out = np.zeros(degree + 1, dtype=complex)
        out[: len(self.coeffs)] = self.coeffs
        return TaylorSeries(out)

    def truncated(self, degree: int) -> "TaylorSeries":
        """Drop coefficients above ``degree`` (pads if the series is shorter)."""
        if degree >= self.degree:
            return self.padded(degree)
        return TaylorSeries(self.coeffs[: degree + 1])

    def trimmed(self) -> "TaylorSeries":
        """Strip trailing zero coefficients (keeping at least the constant term)."""
        arr = np.trim_zeros(self.coeffs, "b")
        if arr.size == 0:
            arr = np.zeros(1, dtype=complex)
        return TaylorSeries(arr)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        a = self.trimmed().coeffs
        b = other.trimmed().coeffs
        return len(a) == len(b) and bool(np.all(a == b))

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        n = min(len(self.coeffs), len(other.coeffs))
        return TaylorSeries(self.coeffs[:n] + other.coeffs[:n])

    def __sub__(self, other):
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        n = min(len(self.coeffs), len(other.coeffs))
        return TaylorSeries(self.coeffs[:n] - other.coeffs[:n])

    def __mul__(self, scalar):
        if isinstance(scalar, TaylorSeries):
            return cauchy_product(self, scalar)
        return TaylorSeries(self.coeffs * complex(scalar))

    def __rmul__(self, scalar):
        return self.__mul__(scalar)

    def __neg__(self):
        return TaylorSeries(-self.coeffs)

    def __repr__(self) -> str:
        head = np.array2string(self.coeffs[:4], precision=6, separator=", ")
        tail = ", ..." if len(self.coeffs) > 4 else ""
        return f"TaylorSeries(degree={self.degree}, coeffs={head[:-1]}{tail}])"


def evaluate(f: TaylorSeries, z: complex | DiscPoint) -> complex:
    """Evaluate ``f`` at a point of the open unit disc by Horner's scheme.

    Rejects ``|z| >= 1``: the truncation is only a faithful stand-in for the
    underlying function inside the disc.
    """
    z = z.z if isinstance(z, DiscPoint) else complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"evaluation point must satisfy |z| < 1, got |z| = {abs(z)}")
    return complex(np.polynomial.polynomial.polyval(z, f.coeffs))


def evaluate_many(f: TaylorSeries, zs) -> np.ndarray:
    """Vectorized :func:`evaluate` over an array of points, all with ``|z| < 1``."""
    zs = np.asarray(zs, dtype=complex)
    if zs.size and np.max(np.abs(zs)) >= 1.0:
        raise ValueError("all evaluation points must satisfy |z| < 1")
    return np.polynomial.polynomial.polyval(zs, f.coeffs)


def cauchy_product(f: TaylorSeries, g: TaylorSeries, max_degree: int | None = None) -> TaylorSeries:
    """Coefficientwise product: ``h[n] = sum_k f[k] * g[n-k]``.

    The result carries the full convolution degree ``deg f + deg g`` unless
    ``max_degree`` caps it.  Whatever the cap, the retained prefix is exact
    for the product of the two truncations.
    """
    h = np.convolve(f.coeffs, g.coeffs)
    if max_degree is not None:
        h = h[: max_degree + 1]
    return TaylorSeries(h)


def differentiate(f: TaylorSeries) -> TaylorSeries:
    """Termwise derivative: coefficient ``n`` of the output is ``(n+1)*f[n+1]``.

    A degree-0 input returns the zero series.
    """
    if f.degree == 0:
        return TaylorSeries([0.0])
    n = np.arange(1, len(f.coeffs))
    return TaylorSeries(n * f.coeffs[1:])


def antiderivative(f: TaylorSeries) -> TaylorSeries:
    """Termwise antiderivative vanishing at 0: ``F[n+1] = f[n]/(n+1)``."""
    out = np.zeros(len(f.coeffs) + 1, dtype=complex)
    out[1:] = f.coeffs / np.arange(1, len(f.coeffs) + 1)
    return TaylorSeries(out)


def max_coeff_diff(f: TaylorSeries, g: TaylorSeries) -> float:
    """Max-abs coefficient difference after aligning lengths with zero padding."""
    n = max(len(f.coeffs), len(g.coeffs))
    a = np.zeros(n, dtype=complex)
    b = np.zeros(n, dtype=complex)
    a[: len(f.coeffs)] = f.coeffs
    b[: len(g.coeffs)] = g.coeffs
    return float(np.max(np.abs(a - b)))


def zero_series(degree: int = 0) -> TaylorSeries:
    return TaylorSeries(np.zeros(degree + 1, dtype=complex))


def constant_one(degree: int = 0) -> TaylorSeries:
    """The constant function 1, optionally padded to a working truncation."""
    out = np.zeros(degree + 1, dtype=complex)
    out[0] = 1.0
    return TaylorSeries(out)


def monomial(n: int, degree: int | None = None) -> TaylorSeries:
    """The basis function ``z**n``."""
    if n < 0:
        raise ValueError("monomial exponent must be >= 0")
    out = np.zeros((degree if degree is not None else n) + 1, dtype=complex)
    if n >= len(out):
        raise ValueError("degree too small to hold the requested monomial")
    out[n] = 1.0
    return TaylorSeries(out)


def geometric_series(ratio: complex, degree: int) -> TaylorSeries:
    """Truncation of ``1/(1 - ratio*z)``: coefficients ``ratio**n``."""
    return TaylorSeries(np.asarray(ratio, dtype=complex) ** np.arange(degree + 1))


def log_one_minus_series(degree: int) -> TaylorSeries:
    """Truncation of ``log(1-z)``: coefficient 0 is 0, coefficient k is ``-1/k``."""
    out = np.zeros(degree + 1, dtype=complex)
    out[1:] = -1.0 / np.arange(1, degree + 1)
    return TaylorSeries(out)


def random_series(degree: int, rng: np.random.Generator) -> TaylorSeries:
    """Random test function: coefficients uniform on the complex unit square."""
    return TaylorSeries(rng.random(degree + 1) + 1j * rng.random(degree + 1))


# --- serialization: JSON arrays of [re, im] pairs -------------------------


def to_pairs(f: TaylorSeries) -> list[list[float]]:
    """Series as a plain list of ``[re, im]`` pairs (the JSON wire form)."""
    return [[float(c.real), float(c.imag)] for c in f.coeffs]


def from_pairs(pairs) -> TaylorSeries:
    """Inverse of :func:`to_pairs`; also accepts bare real number lists."""
    coeffs = []
    for item in pairs:
        if isinstance(item, (int, float)):
            coeffs.append(complex(item))
        else:
            re, im = item
            coeffs.append(complex(re, im))
    return TaylorSeries(coeffs)
