"""Empirical asymptotic-measure tools for the positive-curvature regime.

Long orbits of the inverse-quadratic systems equidistribute with respect
to Lebesgue measure on the cylinder; this module bins such orbits,
quantifies their uniformity, verifies the inverse-branch Jacobian identity
that makes Lebesgue measure invariant, and computes time averages of a few
named test functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cylinder import CylinderSystem, CylPoint, base_orbit_angles
from .errors import DomainError, PreconditionError, WrongFamilyError
from .fiber import INVERSE_KAN, KAN

DEFAULT_BURN_IN = 1000

#: named test functions chi(x, y) for Birkhoff averages
TEST_FUNCTIONS = {
    "y": lambda x, y: y,
    "y_squared": lambda x, y: y * y,
    "cos_x": lambda x, y: np.cos(2.0 * np.pi * x),
    "y_cos_x": lambda x, y: y * np.cos(2.0 * np.pi * x),
}


@dataclass(frozen=True)
class Histogram2D:
    """Occupation counts of an orbit segment on a [0,1) x [0,1] grid."""

    bins_x: int
    bins_y: int
    counts: np.ndarray  # int64, shape (bins_x, bins_y)
    total: int
    burn_in: int


@dataclass(frozen=True)
class UniformityReport:
    chi_square: float
    dof: int
    max_rel_dev: float


def orbit_points(sys: CylinderSystem, p0: CylPoint, n: int,
                 seed=None) -> tuple[np.ndarray, np.ndarray]:
    """Arrays of the first n orbit points (x_i, y_i), i = 0..n-1.

    Angles come from :func:`cylmaps.cylinder.base_orbit_angles`; the heights
    always follow the true fiber maps driven by those angles.
    """
    if not 0.0 < p0.y < 1.0:
        raise DomainError("orbit statistics need an interior starting height")
    xs = base_orbit_angles(sys.k, p0.x, n, seed=seed)
    ys = np.empty(n, dtype=float)
    if n == 0:
        return xs, ys
    a = np.asarray(sys.family.displacement(xs), dtype=float).tolist()
    y = p0.y
    kind = sys.family.kind
    sqrt = math.sqrt
    if kind == KAN:
        for i in range(n):
            ys[i] = y
            ai = a[i]
            y = y + ai * y * (1.0 - y)
    elif kind == INVERSE_KAN:
        for i in range(n):
            ys[i] = y
            s = 1.0 + a[i]
            y = 2.0 * y / (s + sqrt(s * s - 4.0 * a[i] * y))
    else:
        ec = np.exp(np.asarray(a)).tolist()
        em = np.expm1(np.asarray(a)).tolist()
        for i in range(n):
            ys[i] = y
            y = ec[i] * y / (1.0 + em[i] * y)
    return xs, ys


def orbit_histogram(sys: CylinderSystem, p0: CylPoint, n: int, bins_x: int,
                    bins_y: int, burn_in: int = DEFAULT_BURN_IN,
                    seed=None) -> Histogram2D:
    """Bin the orbit points with index >= burn_in; total = n - burn_in."""
    if bins_x < 1 or bins_y < 1:
        raise PreconditionError("bin counts must be >= 1")
    if burn_in < 0 or n <= burn_in:
        raise PreconditionError("need n > burn_in >= 0")
    xs, ys = orbit_points(sys, p0, n, seed=seed)
    counts, _, _ = np.histogram2d(xs[burn_in:], ys[burn_in:],
                                  bins=[bins_x, bins_y],
                                  range=[[0.0, 1.0], [0.0, 1.0]])
    return Histogram2D(bins_x=bins_x, bins_y=bins_y,
                       counts=counts.astype(np.int64),
                       total=n - burn_in, burn_in=burn_in)


def uniformity_stats(hist: Histogram2D) -> UniformityReport:
    """Chi-square and max relative deviation against the uniform expectation."""
    if hist.total <= 0:
        raise PreconditionError("histogram is empty")
    expected = hist.total / (hist.bins_x * hist.bins_y)
    dev = hist.counts / expected - 1.0
    chi2 = float(np.sum(dev * dev) * expected)
    return UniformityReport(chi_square=chi2,
                            dof=hist.bins_x * hist.bins_y - 1,
                            max_rel_dev=float(np.abs(dev).max()))


def jacobian_branch_sum(sys: CylinderSystem, p: CylPoint) -> float:
    """Sum of the k inverse-branch Jacobians of F at p; identically 1.

    Each inverse branch of the inverse-quadratic system sends (x, y) to
    ((x+j)/k, y + eps*cos(2 pi (x+j)/k) y (1-y)) and contributes the
    Jacobian (1 + eps*cos(2 pi (x+j)/k)(1-2y))/k.  The k cosines sum to
    zero, so the total is 1: Lebesgue measure is invariant.
    """
    if sys.family.kind != INVERSE_KAN:
        raise WrongFamilyError("the branch-Jacobian identity applies to the inverse-quadratic family")
    eps = sys.family.epsilon
    k = sys.k
    return math.fsum(
        (1.0 + eps * math.cos(2.0 * math.pi * (p.x + j) / k) * (1.0 - 2.0 * p.y)) / k
        for j in range(k)
    )


def birkhoff_average(sys: CylinderSystem, chi: str, p0: CylPoint, n: int,
                     burn_in: int = DEFAULT_BURN_IN, seed=None) -> float:
    """Orbit mean of the named test function after the burn-in prefix."""
    if chi not in TEST_FUNCTIONS:
        raise PreconditionError(
            f"unknown test function {chi!r}; choose from {sorted(TEST_FUNCTIONS)}")
    if burn_in < 0 or n <= burn_in:
        raise PreconditionError("need n > burn_in >= 0")
    xs, ys = orbit_points(sys, p0, n, seed=seed)
    return float(np.mean(TEST_FUNCTIONS[chi](xs[burn_in:], ys[burn_in:])))


def histogram_csv(hist: Histogram2D) -> str:
    """CSV rows (bin_x, bin_y, count) under a single header line."""
    lines = ["bin_x,bin_y,count"]
    for ix in range(hist.bins_x):
        for iy in range(hist.bins_y):
            lines.append(f"{ix},{iy},{int(hist.counts[ix, iy])}")
    return "\n".join(lines) + "\n"
