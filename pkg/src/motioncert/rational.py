"""Factored rational maps on the extended plane and their critical data.

Maps are stored as zeros and poles with integer multiplicities plus a
scale, never as coefficient ratios, so zero/pole counts are exact integer
bookkeeping and pole hits are exact dispatches rather than root-finding
artifacts.  Every factor is kept as a linear form (alpha*z + beta); the
disk-swapping map z(z-a)/(1-az) keeps its denominator in the (1-az) shape,
which makes the fixed-point identity at z=1 hold bit-exactly.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, EvaluationError

__all__ = [
    "INF",
    "is_infinite",
    "FactoredRational",
    "ShiftedRational",
    "CriticalData",
    "blaschke_map",
    "power_compose",
    "critical_data",
    "eval_extended",
    "shifted_map",
    "reciprocal_symmetry_check",
]

#: Point at infinity of the extended plane.  Produced only by exact pole
#: hits and by limits; never fed back into finite arithmetic.
INF = complex(math.inf, math.inf)


def is_infinite(z) -> bool:
    """True for the point at infinity (either component infinite)."""
    return cmath.isinf(complex(z))


class FactoredRational:
    """A rational map as zeros/poles with multiplicities and a scale.

    ``den_factors`` optionally supplies the linear form (alpha, beta) used
    for each pole's denominator factor; the default is (1, -p).  Instances
    are immutable and safe to share between threads.
    """

    def __init__(self, zeros, poles, scale=1.0, den_factors=None):
        self.zeros = tuple((complex(z), int(m)) for z, m in zeros)
        self.poles = tuple((complex(p), int(m)) for p, m in poles)
        self.scale = complex(scale)
        if self.scale == 0:
            raise DomainError("scale must be nonzero")
        if any(m < 1 for _, m in self.zeros) or any(m < 1 for _, m in self.poles):
            raise DomainError("multiplicities must be positive integers")
        zlocs = {z for z, _ in self.zeros}
        plocs = {p for p, _ in self.poles}
        if zlocs & plocs:
            raise DomainError("a location appears as both zero and pole")
        if den_factors is None:
            den_factors = [(1.0, -p) for p, _ in self.poles]
        if len(den_factors) != len(self.poles):
            raise DomainError("den_factors must match poles one-to-one")
        self._num_ab = np.array([(1.0, -z) for z, _ in self.zeros], dtype=np.complex128).reshape(-1, 2)
        self._num_m = np.array([m for _, m in self.zeros], dtype=np.int64)
        self._den_ab = np.array([(a, b) for a, b in den_factors], dtype=np.complex128).reshape(-1, 2)
        self._den_m = np.array([m for _, m in self.poles], dtype=np.int64)

    @property
    def zero_multiplicity(self) -> int:
        return int(self._num_m.sum())

    @property
    def pole_multiplicity(self) -> int:
        return int(self._den_m.sum())

    @property
    def degree(self) -> int:
        return max(self.zero_multiplicity, self.pole_multiplicity)

    def __call__(self, z):
        """Finite-arithmetic evaluation at a complex scalar or array.

        Listed poles come out as inf (division by an exactly-zero factor);
        use :func:`eval_extended` for the extended-plane contract.
        """
        arr = np.ascontiguousarray(np.atleast_1d(np.asarray(z, dtype=np.complex128)))
        out = _kernels.eval_factors(arr.ravel(), self._num_ab, self._num_m, self._den_ab, self._den_m, self.scale)
        if np.ndim(z) == 0:
            return complex(out[0])
        return out.reshape(np.shape(z))

    def _parts_at(self, z: complex) -> tuple[complex, complex]:
        """Separately accumulated numerator and denominator at a scalar."""
        num = self.scale
        for j in range(self._num_ab.shape[0]):
            num *= (self._num_ab[j, 0] * z + self._num_ab[j, 1]) ** int(self._num_m[j])
        den = 1.0 + 0.0j
        for j in range(self._den_ab.shape[0]):
            den *= (self._den_ab[j, 0] * z + self._den_ab[j, 1]) ** int(self._den_m[j])
        return num, den

    def value_at_infinity(self):
        """Limit at z=infinity by comparing total zero and pole multiplicity.

        The implicit zero/pole at infinity is the degree deficit of the
        stored factors, so the comparison needs no extra bookkeeping.
        """
        zm, pm = self.zero_multiplicity, self.pole_multiplicity
        if zm > pm:
            return INF
        if zm < pm:
            return 0.0 + 0.0j
        lead = self.scale
        for j in range(self._den_ab.shape[0]):
            alpha = self._den_ab[j, 0]
            lead /= alpha ** int(self._den_m[j])
        return lead

    def extended_at(self, z):
        if is_infinite(z):
            return self.value_at_infinity()
        z = complex(z)
        for p, _ in self.poles:
            if z == p:
                return INF
        num, den = self._parts_at(z)
        if den == 0:
            if num == 0:
                raise EvaluationError(f"indeterminate 0/0 at z={z!r}")
            return INF
        return num / den

    def __repr__(self):
        return f"FactoredRational(zeros={self.zeros!r}, poles={self.poles!r}, scale={self.scale!r})"


class ShiftedRational:
    """h(z) = base(z) - shift.

    The shift moves every value but no pole, and the zeros of the result
    are deliberately not stored: they are unknown by construction and are
    only ever counted through contour certificates.
    """

    def __init__(self, base: FactoredRational, shift):
        self.base = base
        self.shift = complex(shift)

    @property
    def poles(self):
        return self.base.poles

    def __call__(self, z):
        return self.base(z) - self.shift

    def extended_at(self, z):
        v = self.base.extended_at(z)
        if is_infinite(v):
            return INF
        return v - self.shift

    def __repr__(self):
        return f"ShiftedRational(base={self.base!r}, shift={self.shift!r})"


@dataclass(frozen=True)
class CriticalData:
    """Critical points and values of the disk-swapping map, plus the
    critical-value angle in turns (theta in (0, 1/2))."""

    c1: complex
    c2: complex
    v1: complex
    v2: complex
    theta: float


def blaschke_map(a: float) -> FactoredRational:
    """The degree-2 circle-preserving map z(z-a)/(1-az) for real a > 1.

    Zeros at 0 and a, pole at 1/a (and one at infinity via the degree
    deficit); fixes 0, 1 and infinity.
    """
    a = float(a)
    if not a > 1.0:
        raise DomainError("blaschke_map requires a > 1")
    return FactoredRational(
        zeros=[(0.0, 1), (a, 1)],
        poles=[(1.0 / a, 1)],
        scale=1.0,
        den_factors=[(-a, 1.0)],
    )


def power_compose(f: FactoredRational, n: int) -> FactoredRational:
    """Compose with the power map w -> w**n by scaling multiplicities.

    Locations are untouched: (f)**n has the same zeros/poles with every
    multiplicity times n and the scale raised to the n-th power.
    """
    n = int(n)
    if n < 1:
        raise DomainError("power_compose requires n >= 1")
    if n == 1:
        return f
    den_factors = [(complex(f._den_ab[j, 0]), complex(f._den_ab[j, 1])) for j in range(f._den_ab.shape[0])]
    return FactoredRational(
        zeros=[(z, m * n) for z, m in f.zeros],
        poles=[(p, m * n) for p, m in f.poles],
        scale=f.scale**n,
        den_factors=den_factors,
    )


def critical_data(a: float) -> CriticalData:
    """Critical points/values of the disk-swapping map, in closed form.

    Both critical points sit on the unit circle and are conjugate; the
    critical values are e^(-+2*pi*i*theta) with theta(a) in (0, 1/2)
    strictly decreasing in a.
    """
    a = float(a)
    if not a > 1.0:
        raise DomainError("critical_data requires a > 1")
    s = math.sqrt(a * a - 1.0)
    c1 = complex(1.0 / a, s / a)
    v1 = complex(1.0 - 2.0 / (a * a), -2.0 * s / (a * a))
    v2 = v1.conjugate()
    theta = math.atan2(v2.imag, v2.real) / (2.0 * math.pi)
    return CriticalData(c1=c1, c2=c1.conjugate(), v1=v1, v2=v2, theta=theta)


def eval_extended(f, z):
    """Evaluate on the extended plane: exact poles and the infinity limit.

    Works for FactoredRational, ShiftedRational, and any object exposing
    ``extended_at``.
    """
    return f.extended_at(z)


def shifted_map(g: FactoredRational, z0) -> ShiftedRational:
    """The map g(z) - z0 with z0 finite."""
    z0 = complex(z0)
    if is_infinite(z0) or not (math.isfinite(z0.real) and math.isfinite(z0.imag)):
        raise DomainError("shift must be finite")
    return ShiftedRational(g, z0)


def reciprocal_symmetry_check(g, samples: int, seed: int = 20260810) -> float:
    """Max deviation of |g(w) * g(1/w) - 1| over random sample points.

    Points are drawn in the annulus 0.5 < |w| < 2; samples landing on a
    zero or pole of either factor are skipped.
    """
    samples = int(samples)
    if samples < 1:
        raise DomainError("samples must be positive")
    rng = np.random.default_rng(seed)
    w = rng.uniform(0.5, 2.0, samples) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, samples))
    special = np.array(
        [loc for loc, _ in tuple(g.zeros) + tuple(g.poles)], dtype=np.complex128
    )
    keep = np.ones(samples, dtype=bool)
    for s in special:
        keep &= np.abs(w - s) > 1e-9
        keep &= np.abs(1.0 / w - s) > 1e-9
    w = w[keep]
    prod = g(w) * g(1.0 / w)
    return float(np.max(np.abs(prod - 1.0)))
