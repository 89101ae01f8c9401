"""Parameter solving and certification for the shifted-power construction.

Builds, for each n >= 2, the degree-2n map g = (z(z-a)/(1-az))**n with the
critical-value angle pinned at 1/(2n) turns, then selects an annulus
A = {1/R < |z| < R} whose image under g stays clear of the disk
D = {|z| < r}, and a shift 0 < z0 < m with Rouche margin to spare.

The region bound on |g| over the closed annulus reduces to its boundary:
g has no zeros in the closed annulus for R < a (they sit at 0 and a) and
its only pole there is absent too (1/a < 1/R), so the minimum-modulus
principle puts the minimum of |g| on the boundary circles.  Sampled
boundary minima are derated by 0.9 wherever they feed a certificate.
"""

import math
from dataclasses import dataclass

import numpy as np

from .contour import circle_curve, modulus_extrema, rouche_certificate, zero_pole_count
from .errors import ConstraintViolation, ConstructionInfeasible, DomainError
from .rational import FactoredRational, ShiftedRational, blaschke_map, critical_data, power_compose, shifted_map

__all__ = [
    "ConstructionParams",
    "CheckItem",
    "CertificateReport",
    "solve_a",
    "select_parameters",
    "check_invariants",
    "certify_construction",
]

#: Sampled boundary minima are multiplied by this before feeding any
#: strict-inequality certificate.
SAFETY = 0.9

#: Grid step for the admissible-R search.
R_STEP = 0.01

#: Selection demands the derated boundary minimum exceed r by this factor.
R_MARGIN = 1.1

#: Rouche margins below this are flagged fragile (still passing).
FRAGILE_MARGIN = 1e-3


@dataclass(frozen=True)
class ConstructionParams:
    """The tuple (n, a_n, R, r, m, z0) plus the assembled maps.

    ``boundary_min_g``/``boundary_max_g`` are the sampled extrema of |g|
    over both annulus boundary circles (raw, not derated).
    """

    n: int
    a_n: float
    R: float
    r: float
    m_est: float
    z0: float
    g: FactoredRational
    h: ShiftedRational
    boundary_min_g: float
    boundary_max_g: float


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    value: float


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of every construction certificate, with margins."""

    rouche_holds: bool
    rouche_margin: float
    rouche_fragile: bool
    zeros_of_h_in_disk: int
    net_count_inside_unit_circle: int
    counts_expected: tuple[int, int]
    unit_circle_deviation: float
    invariants: tuple[CheckItem, ...]

    @property
    def counts_pass(self) -> bool:
        return (self.zeros_of_h_in_disk, self.net_count_inside_unit_circle) == self.counts_expected

    @property
    def unit_circle_pass(self) -> bool:
        return self.unit_circle_deviation <= 1e-9

    @property
    def passed(self) -> bool:
        return (
            self.rouche_holds
            and self.counts_pass
            and self.unit_circle_pass
            and all(item.passed for item in self.invariants)
        )


def solve_a(n: int) -> float:
    """Parameter a > 1 whose critical-value angle is 1/(2n) turns.

    From cos(2*pi*theta(a)) = 1 - 2/a**2 the condition theta = 1/(2n)
    inverts in closed form to a = 1/sin(pi/(2n)).
    """
    n = int(n)
    if n < 2:
        raise DomainError("solve_a requires n >= 2")
    return 1.0 / math.sin(math.pi / (2.0 * n))


def _annulus_extrema(g, R: float, samples: int, rtol: float):
    mns, mxs = [], []
    for radius in (1.0 / R, R):
        mn, mx, _ = modulus_extrema(g, circle_curve(0.0, radius, samples), rtol=rtol)
        mns.append(mn)
        mxs.append(mx)
    return min(mns), max(mxs)


def _power_of_two_at_most(x: float) -> float:
    return 2.0 ** math.floor(math.log2(x))


def select_parameters(
    n: int,
    R: float | None = None,
    r: float | None = None,
    z0: float | None = None,
    samples: int = 1024,
    rtol: float = 1e-8,
) -> ConstructionParams:
    """Solve for a_n and pick certified (R, r, m, z0) defaults.

    Defaults: r = 0.3 when that sits inside the pole radius, else 0.8/a_n;
    R = the largest grid value 1 + k*0.01 below min(a_n, 2) whose derated
    boundary certificate clears r with margin; z0 = the largest power of
    two at most 0.45 * m_est (a power of two keeps the basepoint and chart
    scalings of the motion exact in binary64).  Overrides are validated
    individually, then the full invariant list runs; the first failure
    raises ConstraintViolation naming the predicate.
    """
    n = int(n)
    a = solve_a(n)
    f = blaschke_map(a)
    g = power_compose(f, n)

    if R is not None and not (1.0 < R < a):
        raise ConstraintViolation("1 < R < a_n", f"R={R} outside (1, {a})")
    if r is not None and not (0.0 < r < 1.0 / a):
        raise ConstraintViolation("0 < r < 1/a_n", f"r={r} outside (0, {1.0 / a})")
    if z0 is not None and not z0 > 0.0:
        raise ConstraintViolation("z0 > 0", f"z0={z0}")

    if r is None:
        r = 0.3 if 0.3 < 1.0 / a else 0.8 / a

    if R is None:
        limit = min(a, 2.0)
        k_max = int(math.ceil((limit - 1.0) / R_STEP)) + 1
        chosen = None
        for k in range(k_max, 0, -1):
            cand = 1.0 + R_STEP * k
            if not cand < limit:
                continue
            mn, _ = _annulus_extrema(g, cand, samples, rtol)
            if SAFETY * mn > R_MARGIN * r:
                chosen = cand
                break
        if chosen is None:
            raise ConstructionInfeasible(
                f"no R on the grid below {limit} satisfies {SAFETY}*min|g| > {R_MARGIN}*r={R_MARGIN * r}"
            )
        R = chosen

    mn_dA, mx_dA = _annulus_extrema(g, R, samples, rtol)

    disk_min, _, _ = modulus_extrema(g, circle_curve(0.0, r, samples), rtol=rtol)
    m_est = min(1.0, disk_min)

    if z0 is None:
        z0 = _power_of_two_at_most(0.5 * SAFETY * m_est)

    params = ConstructionParams(
        n=n,
        a_n=a,
        R=float(R),
        r=float(r),
        m_est=float(m_est),
        z0=float(z0),
        g=g,
        h=shifted_map(g, z0),
        boundary_min_g=float(mn_dA),
        boundary_max_g=float(mx_dA),
    )
    for item in check_invariants(params):
        if not item.passed:
            raise ConstraintViolation(item.name, f"{item.name} failed with value {item.value}")
    return params


def check_invariants(p: ConstructionParams) -> list[CheckItem]:
    """Evaluate every ConstructionParams predicate with its witness value."""
    theta_residual = abs(critical_data(p.a_n).theta - 1.0 / (2.0 * p.n))
    return [
        CheckItem("theta(a_n) = 1/(2n)", theta_residual <= 1e-12, theta_residual),
        CheckItem("1 < R < a_n", 1.0 < p.R < p.a_n, p.R),
        CheckItem("0 < r < 1/a_n < 1", 0.0 < p.r < 1.0 / p.a_n < 1.0, p.r),
        CheckItem("0 < z0 < 0.9*m_est", 0.0 < p.z0 < SAFETY * p.m_est, p.z0),
        CheckItem("z0 < r", p.z0 < p.r, p.z0),
        CheckItem(
            "0.9*min|g| on annulus boundary > r",
            SAFETY * p.boundary_min_g > p.r,
            SAFETY * p.boundary_min_g,
        ),
    ]


def certify_construction(
    p: ConstructionParams,
    samples: int = 1024,
    max_depth: int = 16,
    rtol: float = 1e-8,
    inner_radius: float = 0.999,
) -> CertificateReport:
    """Run every zero-count and margin certificate for assembled params.

    Checks, in order: the Rouche margin on the disk boundary, the count of
    zeros of h inside the disk (must be n), the net count just inside the
    unit circle (n zeros against the order-n pole, must be 0), the
    unit-circle image deviation of g, and the parameter invariants.
    """
    disk = circle_curve(0.0, p.r, samples)
    holds, margin = rouche_certificate(p.g, p.h, disk, rtol=rtol)
    zeros_in_disk = zero_pole_count(p.h, disk, max_depth=max_depth, min_samples=samples)
    net_inside = zero_pole_count(
        p.h, circle_curve(0.0, inner_radius, samples), max_depth=max_depth, min_samples=samples
    )

    import numpy as np

    th = np.linspace(0.0, 1.0, 4096, endpoint=False)
    dev = float(np.max(np.abs(np.abs(p.g(np.exp(2j * np.pi * th))) - 1.0)))

    return CertificateReport(
        rouche_holds=holds,
        rouche_margin=margin,
        rouche_fragile=margin < FRAGILE_MARGIN,
        zeros_of_h_in_disk=zeros_in_disk,
        net_count_inside_unit_circle=net_inside,
        counts_expected=(p.n, 0),
        unit_circle_deviation=dev,
        invariants=tuple(check_invariants(p)),
    )
