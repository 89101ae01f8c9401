"""Hot numeric kernels: factored-rational evaluation and winding scans.

The two inner loops that dominate runtime are (a) evaluating a product of
linear factors at every sample of a contour and (b) the certified winding
scan over consecutive samples.  Both ship in two implementations: a numba
``@njit`` version (default) and a vectorized pure-numpy fallback.  Set
``MOTIONCERT_PURE_NUMPY=1`` to force the numpy path; it is also selected
automatically when numba is not importable.  ``benchmarks/bench_kernels.py``
compares the two.

Numerator and denominator products are accumulated separately so that
structurally identical factor values cancel exactly in the quotient; the
basepoint identity g(1) == 1 relies on this.
"""

import math
import os

import numpy as np

__all__ = [
    "USING_NUMBA",
    "eval_factors",
    "wind_scan",
    "eval_factors_numpy",
    "wind_scan_numpy",
    "eval_factors_numba",
    "wind_scan_numba",
]


def eval_factors_numpy(z, num_ab, num_m, den_ab, den_m, scale):
    """Evaluate scale * prod((a*z+b)**m) / prod((c*z+d)**k) elementwise.

    ``num_ab``/``den_ab`` are (nfac, 2) complex arrays of linear-factor
    coefficients; ``num_m``/``den_m`` the integer multiplicities.
    """
    num = np.full(z.shape, scale, dtype=np.complex128)
    for j in range(num_ab.shape[0]):
        num = num * (num_ab[j, 0] * z + num_ab[j, 1]) ** int(num_m[j])
    den = np.ones(z.shape, dtype=np.complex128)
    for j in range(den_ab.shape[0]):
        den = den * (den_ab[j, 0] * z + den_ab[j, 1]) ** int(den_m[j])
    with np.errstate(divide="ignore", invalid="ignore"):
        return num / den


def wind_scan_numpy(values, p):
    """One certification pass over a closed sample chain.

    Returns (total argument increment in radians, per-segment failure mask,
    minimum sample distance to p).  A segment fails certification when its
    chord is not shorter than both endpoint distances to p.
    """
    w = values - p
    d = np.abs(w)
    with np.errstate(divide="ignore", invalid="ignore"):
        incr = np.angle(w[1:] / w[:-1])
    chord = np.abs(values[1:] - values[:-1])
    bad = chord >= np.minimum(d[:-1], d[1:])
    total = float(np.sum(incr)) if d.min() > 0.0 else math.nan
    return total, bad, float(d.min())


def _eval_factors_loop(z, num_ab, num_m, den_ab, den_m, scale):
    n = z.shape[0]
    out = np.empty(n, np.complex128)
    for i in range(n):
        zi = z[i]
        num = scale
        for j in range(num_ab.shape[0]):
            fac = num_ab[j, 0] * zi + num_ab[j, 1]
            for _ in range(num_m[j]):
                num *= fac
        den = 1.0 + 0.0j
        for j in range(den_ab.shape[0]):
            fac = den_ab[j, 0] * zi + den_ab[j, 1]
            for _ in range(den_m[j]):
                den *= fac
        out[i] = num / den
    return out


def _wind_scan_loop(values, p):
    n = values.shape[0]
    bad = np.zeros(n - 1, dtype=np.bool_)
    total = 0.0
    mind = abs(values[0] - p)
    hit = mind == 0.0
    for i in range(n - 1):
        w0 = values[i] - p
        w1 = values[i + 1] - p
        d0 = abs(w0)
        d1 = abs(w1)
        if d1 < mind:
            mind = d1
        chord = abs(values[i + 1] - values[i])
        dmin = d0 if d0 < d1 else d1
        if chord >= dmin:
            bad[i] = True
        if d0 == 0.0 or d1 == 0.0:
            hit = True
        else:
            r = w1 / w0
            total += math.atan2(r.imag, r.real)
    if hit:
        total = math.nan
    return total, bad, mind


def _want_pure_numpy() -> bool:
    return os.environ.get("MOTIONCERT_PURE_NUMPY", "").strip().lower() in {"1", "true", "yes"}


USING_NUMBA = False
eval_factors_numba = None
wind_scan_numba = None

try:
    from numba import njit

    eval_factors_numba = njit(cache=True)(_eval_factors_loop)
    wind_scan_numba = njit(cache=True)(_wind_scan_loop)
except ImportError:
    pass

if eval_factors_numba is not None and not _want_pure_numpy():
    eval_factors = eval_factors_numba
    wind_scan = wind_scan_numba
    USING_NUMBA = True
else:
    eval_factors = eval_factors_numpy
    wind_scan = wind_scan_numpy
