"""Certified curve sampling, winding numbers, and modulus bounds.

A ClosedCurve is an immutable snapshot of samples (theta_k, z_k) of a
1-periodic parametrization; refining inserts parameter midpoints and never
moves existing samples.  A winding integer is *certified* once every chord
is shorter than both endpoint distances to the base point (each discrete
argument step is then below pi/2, so the lifting cannot skip a branch) and
the accumulated turn count sits within 1e-6 of an integer.  The argument
principle is evaluated as the winding of the image curve about 0, never by
quadrature of f'/f.

Modulus extrema are sampled, not rigorous; certified integers only consume
them through strict-inequality margins scaled by a 0.9 safety factor.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels
from .errors import CertificationError, DomainError, PointOnCurveError, PoleOnCurveError

__all__ = [
    "ClosedCurve",
    "WindingReport",
    "circle_curve",
    "constant_curve",
    "map_curve",
    "reversed_curve",
    "winding_number",
    "zero_pole_count",
    "rouche_certificate",
    "modulus_extrema",
]


def _wrap(thetas):
    return thetas - np.floor(thetas)


def _as_array_map(f) -> Callable[[np.ndarray], np.ndarray]:
    if not callable(f):
        raise DomainError(f"not an evaluable map: {f!r}")

    def fn(z):
        return np.asarray(f(np.asarray(z, dtype=np.complex128)), dtype=np.complex128)

    return fn


class ClosedCurve:
    """Immutable sampled closed curve with midpoint-insertion refinement.

    ``parametrization`` maps wrapped parameters in [0, 1) to complex
    values (vectorized); closure z_0 == z_N holds exactly because theta=1
    wraps to theta=0 before evaluation.
    """

    def __init__(self, parametrization, thetas, values, refinement_depth: int = 0):
        thetas = np.asarray(thetas, dtype=np.float64)
        values = np.asarray(values, dtype=np.complex128)
        if thetas.ndim != 1 or thetas.shape != values.shape:
            raise DomainError("thetas and values must be matching 1-D arrays")
        if thetas.size < 2 or np.any(np.diff(thetas) <= 0):
            raise DomainError("thetas must be strictly increasing")
        if values[0] != values[-1]:
            raise DomainError("curve is not closed: first and last samples differ")
        self.parametrization = parametrization
        self.thetas = thetas
        self.values = values
        self.refinement_depth = int(refinement_depth)

    @classmethod
    def from_parametrization(cls, fn, samples: int = 1024) -> "ClosedCurve":
        samples = int(samples)
        if samples < 2:
            raise DomainError("need at least 2 samples")
        thetas = np.linspace(0.0, 1.0, samples + 1)
        values = np.asarray(fn(_wrap(thetas)), dtype=np.complex128)
        return cls(fn, thetas, values)

    @property
    def segment_count(self) -> int:
        return self.thetas.size - 1

    def point(self, theta):
        """Evaluate the parametrization at arbitrary (wrapped) parameters."""
        arr = np.atleast_1d(np.asarray(theta, dtype=np.float64))
        out = np.asarray(self.parametrization(_wrap(arr)), dtype=np.complex128)
        if np.ndim(theta) == 0:
            return complex(out[0])
        return out

    def _with_inserted(self, new_thetas) -> "ClosedCurve":
        if new_thetas.size == 0:
            return self
        new_values = np.asarray(self.parametrization(_wrap(new_thetas)), dtype=np.complex128)
        thetas = np.concatenate([self.thetas, new_thetas])
        values = np.concatenate([self.values, new_values])
        order = np.argsort(thetas, kind="mergesort")
        return ClosedCurve(self.parametrization, thetas[order], values[order], self.refinement_depth + 1)

    def refined_global(self) -> "ClosedCurve":
        mids = 0.5 * (self.thetas[:-1] + self.thetas[1:])
        return self._with_inserted(mids)

    def refined_at(self, segment_mask) -> "ClosedCurve":
        mask = np.asarray(segment_mask, dtype=bool)
        mids = 0.5 * (self.thetas[:-1][mask] + self.thetas[1:][mask])
        return self._with_inserted(mids)

    def shifted_parameter(self, offset: float) -> "ClosedCurve":
        """Same geometric curve with parameter origin moved by ``offset``."""
        base = self.parametrization
        off = float(offset)

        def fn(th):
            return base(_wrap(th + off))

        values = np.asarray(fn(_wrap(self.thetas)), dtype=np.complex128)
        return ClosedCurve(fn, self.thetas.copy(), values, self.refinement_depth)


@dataclass(frozen=True)
class WindingReport:
    """Winding integer with its certification status."""

    winding: int
    certified: bool
    samples_used: int
    min_distance_to_point: float


def circle_curve(center, radius: float, initial_samples: int = 1024) -> ClosedCurve:
    """Counter-clockwise circle center + radius * e^(2*pi*i*theta)."""
    if not radius > 0.0:
        raise DomainError("radius must be positive")
    center = complex(center)
    radius = float(radius)
    initial_samples = int(initial_samples)
    if initial_samples < 16:
        raise DomainError("initial_samples must be at least 16")

    def fn(th):
        return center + radius * np.exp(2j * np.pi * th)

    return ClosedCurve.from_parametrization(fn, initial_samples)


def constant_curve(value, samples: int = 16) -> ClosedCurve:
    """Degenerate closed curve sitting at one point."""
    value = complex(value)

    def fn(th):
        return np.full(np.shape(th), value, dtype=np.complex128)

    return ClosedCurve.from_parametrization(fn, samples)


def map_curve(f, c: ClosedCurve) -> ClosedCurve:
    """Pushforward of a curve under an evaluable map.

    Refining the result refines the source parameter: the composed
    parametrization is stored, not just the mapped samples.
    """
    fn = _as_array_map(f)
    values = fn(c.values)
    finite = np.isfinite(values.real) & np.isfinite(values.imag)
    if not finite.all():
        k = int(np.flatnonzero(~finite)[0])
        raise PoleOnCurveError(c.thetas[k])
    src = c.parametrization

    def composed(th):
        return fn(np.asarray(src(th), dtype=np.complex128))

    return ClosedCurve(composed, c.thetas.copy(), values, c.refinement_depth)


def reversed_curve(c: ClosedCurve) -> ClosedCurve:
    """The same circuit traversed backwards."""
    src = c.parametrization

    def fn(th):
        return src(_wrap(1.0 - th))

    return ClosedCurve.from_parametrization(fn, c.segment_count)


def winding_number(
    c: ClosedCurve,
    p,
    max_depth: int = 16,
    integer_tol: float = 1e-6,
    min_samples: int = 1024,
    distance_tol: float = 1e-9,
) -> WindingReport:
    """Certified winding number of a closed curve about a point.

    Refines adaptively (midpoints of failing segments) until the chord
    criterion holds everywhere and the turn total is within
    ``integer_tol`` of an integer.  An uncertified integer is never
    rounded silently: the report carries certified=False instead.
    """
    p = complex(p)
    cur = c
    while cur.segment_count < min_samples:
        cur = cur.refined_global()
    total = math.nan
    mind = math.inf
    for depth in range(max_depth + 1):
        vals = np.ascontiguousarray(cur.values)
        if not np.all(np.isfinite(vals.real) & np.isfinite(vals.imag)):
            raise DomainError("winding_number requires a finite curve")
        total, bad, mind = _kernels.wind_scan(vals, p)
        if mind == 0.0:
            raise PointOnCurveError(f"curve passes through base point {p!r}")
        turns = total / (2.0 * math.pi)
        nearest = round(turns)
        if not bad.any() and abs(turns - nearest) <= integer_tol:
            return WindingReport(int(nearest), True, cur.segment_count, float(mind))
        if depth < max_depth:
            cur = cur.refined_at(bad) if bad.any() else cur.refined_global()
    if mind < distance_tol:
        raise PointOnCurveError(
            f"curve stays within {mind:.3e} of base point {p!r} after {max_depth} refinements"
        )
    return WindingReport(int(round(total / (2.0 * math.pi))), False, cur.segment_count, float(mind))


def zero_pole_count(f, c: ClosedCurve, max_depth: int = 16, min_samples: int = 1024) -> int:
    """Zeros minus poles of f enclosed by c, counted with multiplicity.

    Computed as the certified winding of the image curve about 0; refuses
    to return an uncertified integer.
    """
    report = winding_number(map_curve(f, c), 0.0, max_depth=max_depth, min_samples=min_samples)
    if not report.certified:
        raise CertificationError(
            f"argument-principle count uncertified after {report.samples_used} samples"
        )
    return report.winding


def rouche_certificate(g, h, c: ClosedCurve, rtol: float = 1e-8, max_rounds: int = 12):
    """Margin min(|g| - |h - g|) over the refined curve samples.

    Returns (holds, margin) with holds = margin > 0: strictly positive
    margin means g and h enclose equally many zeros.
    """
    gfn = _as_array_map(g)
    hfn = _as_array_map(h)
    cur = c
    margin = None
    for _ in range(max_rounds):
        gv = gfn(cur.values)
        hv = hfn(cur.values)
        both = np.concatenate([gv, hv])
        if not np.all(np.isfinite(both.real) & np.isfinite(both.imag)):
            raise PoleOnCurveError(cur.thetas[0], "pole on Rouche contour")
        new_margin = float(np.min(np.abs(gv) - np.abs(hv - gv)))
        if margin is not None and abs(new_margin - margin) <= rtol * max(1.0, abs(new_margin)):
            margin = new_margin
            break
        margin = new_margin
        cur = cur.refined_global()
    return margin > 0.0, margin


def modulus_extrema(f, c: ClosedCurve, rtol: float = 1e-8, max_rounds: int = 14):
    """Sampled (min, max, samples_used) of |f| over a curve.

    Refines globally until one more doubling moves both extrema by a
    relative amount below rtol.  Heuristic by construction; consumers
    derate the minimum by 0.9 before using it as a lower bound.
    """
    fn = _as_array_map(f)
    cur = c
    mn = mx = None
    for _ in range(max_rounds):
        fv = fn(cur.values)
        if not np.all(np.isfinite(fv.real) & np.isfinite(fv.imag)):
            raise PoleOnCurveError(cur.thetas[0], "pole on modulus contour")
        mags = np.abs(fv)
        new_mn, new_mx = float(mags.min()), float(mags.max())
        if mn is not None:
            ok_mn = abs(new_mn - mn) <= rtol * max(abs(new_mn), 1e-300)
            ok_mx = abs(new_mx - mx) <= rtol * max(abs(new_mx), 1e-300)
            if ok_mn and ok_mx:
                mn, mx = new_mn, new_mx
                break
        mn, mx = new_mn, new_mx
        cur = cur.refined_global()
    return mn, mx, cur.segment_count
