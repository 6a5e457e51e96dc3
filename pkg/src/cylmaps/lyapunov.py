"""Transverse Lyapunov exponents of the two boundary circles.

The exponent along the invariant circle {y = iota} is the circle average
of log f'_x(iota).  For the smooth cosine-driven families the composite
trapezoid rule on the periodic integrand converges spectrally; step
profiles are integrated exactly as finite means.  A Birkhoff-average
estimator along base orbits is provided as the dynamical counterpart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cylinder import CylinderSystem, base_orbit_angles
from .errors import DomainError, PreconditionError
from .fiber import FRACTIONAL_LINEAR, KAN, FiberFamily, StepProfile

#: |lyap0 + lyap1| below this counts as a vanishing exponent sum
SUM_SIGN_TOL = 1e-12


@dataclass(frozen=True)
class ExponentReport:
    """Both boundary exponents (nats per iterate) with method metadata."""

    lyap0: float
    lyap1: float
    method: str
    resolution: int
    sum_sign: int


def _log_boundary_derivative(family: FiberFamily, boundary: int, x) -> np.ndarray:
    """log f'_x(boundary) for an array of angles, in closed form.

    Quadratic family: f'(0) = 1+a, f'(1) = 1-a with a = eps*cos(2 pi x);
    the inverse family reciprocates both; Moebius fibers give exactly +-c.
    """
    if boundary not in (0, 1):
        raise PreconditionError(f"boundary must be 0 or 1, got {boundary}")
    a = family.displacement(x)
    if family.kind == FRACTIONAL_LINEAR:
        return a if boundary == 0 else -a
    signed = a if boundary == 0 else -a
    if np.any(1.0 + signed <= 0.0):
        raise DomainError("fiber derivative is not positive at the boundary")
    val = np.log1p(signed)
    return val if family.kind == KAN else -val


def transverse_exponent_quadrature(family: FiberFamily, boundary: int,
                                   nodes: int) -> float:
    """Circle average of log f'_x(boundary) by the periodic trapezoid rule."""
    if nodes < 16:
        raise PreconditionError(f"need at least 16 quadrature nodes, got {nodes}")
    if family.kind == FRACTIONAL_LINEAR and isinstance(family.profile, StepProfile):
        # piecewise-constant integrand: the mean of the step values is exact
        mean = family.profile.mean()
        return mean if boundary == 0 else -mean
    x = np.arange(nodes, dtype=float) / nodes
    return float(np.mean(_log_boundary_derivative(family, boundary, x)))


def transverse_exponent_birkhoff(sys: CylinderSystem, boundary: int, x0: float,
                                 n: int, seed=None) -> float:
    """(1/n) sum of log f'_{x_i}(boundary) along the base orbit of x0.

    Uses :func:`cylmaps.cylinder.base_orbit_angles`, so angles beyond the
    exact float prefix are drawn i.i.d. uniform; exactly fixed x0 stays put,
    which reproduces exceptional periodic-orbit averages.
    """
    if n < 1:
        raise PreconditionError("Birkhoff averages need n >= 1")
    angles = base_orbit_angles(sys.k, x0, n, seed=seed)
    return float(np.mean(_log_boundary_derivative(sys.family, boundary, angles)))


def exponent_report(sys: CylinderSystem, nodes: int) -> ExponentReport:
    """Quadrature exponents for both boundaries plus the sign of their sum."""
    l0 = transverse_exponent_quadrature(sys.family, 0, nodes)
    l1 = transverse_exponent_quadrature(sys.family, 1, nodes)
    total = l0 + l1
    sign = 0 if abs(total) < SUM_SIGN_TOL else (1 if total > 0.0 else -1)
    return ExponentReport(lyap0=l0, lyap1=l1, method="quadrature",
                          resolution=nodes, sum_sign=sign)


def kan_exponent_closed_form(epsilon: float) -> float:
    """log((1 + sqrt(1 - eps^2))/2), the exact circle average of
    log(1 + eps*cos(2 pi x)); the oracle for the quadrature tests."""
    if not 0.0 < epsilon < 1.0:
        raise PreconditionError("epsilon must lie in (0, 1)")
    return math.log((1.0 + math.sqrt(1.0 - epsilon * epsilon)) / 2.0)
