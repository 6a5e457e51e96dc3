"""Interval-diffeomorphism families on [0, 1].

Three families of orientation-preserving diffeomorphisms f_x of the unit
interval, indexed by an angle x on the circle R/Z, one per curvature regime:

* ``kan``               -- quadratic maps  q_a(y) = y + a*y*(1-y)  with
  a = epsilon*cos(2*pi*x); curvature invariant negative wherever a != 0.
* ``inverse_kan``       -- the inverses q_a^{-1}; curvature invariant
  positive wherever a != 0.
* ``fractional_linear`` -- Moebius maps g_c(y) = e^c*y / (1 + (e^c-1)*y)
  with c = p(x) given by a displacement profile; curvature invariant is
  identically zero, so in the coordinate t(y) = log(y/(1-y)) every fiber
  acts as the translation t -> t + c.

The curvature invariant is the third-order expression
S f = f'''/f' - (3/2)(f''/f')^2, computed here in closed form per family
and by finite differences for arbitrary callables.  Its sign controls
whether a fiber map increases, decreases or preserves cross-ratios.

All evaluators accept floats or numpy arrays and never move the endpoints:
f_x(0) = 0 and f_x(1) = 1 exactly, with no rounding drift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import DegenerateQuadrupleError, DomainError, PreconditionError

KAN = "kan"
INVERSE_KAN = "inverse_kan"
FRACTIONAL_LINEAR = "fractional_linear"

_KINDS = (KAN, INVERSE_KAN, FRACTIONAL_LINEAR)


# ---------------------------------------------------------------------------
# displacement profiles p(x)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CosineProfile:
    """p(x) = amplitude * cos(2*pi*x); zero mean."""

    amplitude: float

    def __post_init__(self):
        if not math.isfinite(self.amplitude):
            raise PreconditionError("cosine amplitude must be finite")

    def displacement(self, x):
        return self.amplitude * np.cos(2.0 * np.pi * np.asarray(x, dtype=float))

    def mean(self) -> float:
        return 0.0


@dataclass(frozen=True)
class StepProfile:
    """p(x) constant on each interval [j/k, (j+1)/k), j = 0..k-1."""

    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise PreconditionError("step profile needs at least one value")
        if not all(math.isfinite(v) for v in vals):
            raise PreconditionError("step values must be finite")
        object.__setattr__(self, "values", vals)

    @property
    def k(self) -> int:
        return len(self.values)

    def displacement(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.minimum((x * self.k).astype(int), self.k - 1)
        return np.asarray(self.values, dtype=float)[idx]

    def mean(self) -> float:
        return math.fsum(self.values) / self.k


DisplacementProfile = Union[CosineProfile, StepProfile]


# ---------------------------------------------------------------------------
# fiber families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiberFamily:
    """A one-parameter family x -> f_x of interval diffeomorphisms.

    For the quadratic kinds the driving parameter is a = epsilon*cos(2*pi*x)
    with 0 < epsilon < 1, which keeps every q_a a diffeomorphism. The
    fractional-linear kind instead carries a displacement profile and uses
    c = p(x) as the translation length in the t coordinate.
    """

    kind: str
    epsilon: float = 0.0
    profile: DisplacementProfile | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise PreconditionError(f"unknown fiber kind {self.kind!r}")
        if self.kind in (KAN, INVERSE_KAN):
            if not 0.0 < self.epsilon < 1.0:
                raise PreconditionError(
                    f"epsilon must lie in (0, 1), got {self.epsilon}")
            if self.profile is not None:
                raise PreconditionError("quadratic kinds take no profile")
        else:
            if self.profile is None:
                raise PreconditionError("fractional_linear needs a profile")

    def displacement(self, x):
        """Driving parameter at angle x: a for quadratic kinds, c for Moebius."""
        if self.kind == FRACTIONAL_LINEAR:
            return self.profile.displacement(x)
        return self.epsilon * np.cos(2.0 * np.pi * np.asarray(x, dtype=float))


def kan_family(epsilon: float) -> FiberFamily:
    return FiberFamily(KAN, epsilon=epsilon)


def inverse_kan_family(epsilon: float) -> FiberFamily:
    return FiberFamily(INVERSE_KAN, epsilon=epsilon)


def fractional_linear_family(profile: DisplacementProfile) -> FiberFamily:
    return FiberFamily(FRACTIONAL_LINEAR, profile=profile)


@dataclass(frozen=True)
class MoebiusMap:
    """g_c(y) = e^c*y / (1 + (e^c - 1)*y); g_0 is the identity."""

    c: float

    def __call__(self, y):
        return moebius_eval(self, y)


# ---------------------------------------------------------------------------
# pointwise kernels (float or ndarray in, same shape out)
# ---------------------------------------------------------------------------

def _kan_apply(a, y):
    # y + a*y*(1-y) is exact at y = 0 and y = 1 for every a
    return y + a * y * (1.0 - y)


def _kan_derivative(a, y):
    return (1.0 + a) - 2.0 * a * y


def _kan_invert(a, y):
    # cancellation-stable root of a*u^2 - (1+a)*u + y = 0; both summands of
    # the denominator are positive for |a| < 1, so no subtraction occurs and
    # the a -> 0 limit degrades gracefully to u = y
    s = 1.0 + a
    return 2.0 * y / (s + np.sqrt(s * s - 4.0 * a * y))


def _moebius_apply(c, y):
    return np.exp(c) * y / (1.0 + np.expm1(c) * y)


def _moebius_derivative(c, y):
    d = 1.0 + np.expm1(c) * y
    return np.exp(c) / (d * d)


def _check_unit(y, what="y"):
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"{what} must lie in [0, 1], got {y}")


# ---------------------------------------------------------------------------
# scalar fiber operations
# ---------------------------------------------------------------------------

def eval_fiber(family: FiberFamily, x: float, y: float) -> float:
    """f_x(y). Endpoints are returned exactly."""
    _check_unit(y)
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 1.0
    a = float(family.displacement(x))
    if family.kind == KAN:
        return float(_kan_apply(a, y))
    if family.kind == INVERSE_KAN:
        return float(_kan_invert(a, y))
    return float(_moebius_apply(a, y))


def fiber_derivative(family: FiberFamily, x: float, y: float) -> float:
    """d f_x / dy, strictly positive on [0, 1]."""
    _check_unit(y)
    a = float(family.displacement(x))
    if family.kind == KAN:
        return float(_kan_derivative(a, y))
    if family.kind == INVERSE_KAN:
        u = float(_kan_invert(a, y))
        return 1.0 / float(_kan_derivative(a, u))
    return float(_moebius_derivative(a, y))


def invert_fiber(family: FiberFamily, x: float, y_image: float) -> float:
    """The unique y with f_x(y) = y_image."""
    _check_unit(y_image, "y_image")
    if y_image == 0.0:
        return 0.0
    if y_image == 1.0:
        return 1.0
    a = float(family.displacement(x))
    if family.kind == KAN:
        return float(_kan_invert(a, y_image))
    if family.kind == INVERSE_KAN:
        return float(_kan_apply(a, y_image))
    return float(_moebius_apply(-a, y_image))


def schwarzian_analytic(family: FiberFamily, x: float, y: float) -> float:
    """Closed-form S f_x(y): -6a^2/(q_a')^2, its sign flip for the inverse
    family (evaluated at the preimage), identically 0 for Moebius fibers."""
    _check_unit(y)
    a = float(family.displacement(x))
    if family.kind == KAN:
        d = float(_kan_derivative(a, y))
        return -6.0 * a * a / (d * d)
    if family.kind == INVERSE_KAN:
        u = float(_kan_invert(a, y))
        d = float(_kan_derivative(a, u))
        return 6.0 * a * a / (d * d * d * d)
    return 0.0


def schwarzian_numeric(f: Callable[[float], float], y: float,
                       h: float = 1e-3) -> float:
    """Finite-difference S f(y) from 5-point central stencils.

    The derivatives f', f'', f''' are estimated on the stencil
    y - 2h .. y + 2h, so y must be at least 2h away from both endpoints.
    """
    if h <= 0.0:
        raise PreconditionError("stencil step h must be positive")
    if y - 2.0 * h < 0.0 or y + 2.0 * h > 1.0:
        raise DomainError(f"stencil [y-2h, y+2h] leaves [0, 1] at y={y}, h={h}")
    f0 = f(y)
    fp1, fp2 = f(y + h), f(y + 2.0 * h)
    fm1, fm2 = f(y - h), f(y - 2.0 * h)
    d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h)
    d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h)
    d3 = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h * h * h)
    return d3 / d1 - 1.5 * (d2 / d1) ** 2


# ---------------------------------------------------------------------------
# cross-ratio and the hyperbolic coordinate
# ---------------------------------------------------------------------------

def cross_ratio(y0: float, y1: float, y2: float, y3: float) -> float:
    """rho = (y2-y0)(y3-y1) / ((y1-y0)(y3-y2)); > 1 on ordered quadruples."""
    if len({y0, y1, y2, y3}) < 4:
        raise DegenerateQuadrupleError(
            f"cross-ratio needs pairwise distinct points, got {(y0, y1, y2, y3)}")
    return (y2 - y0) * (y3 - y1) / ((y1 - y0) * (y3 - y2))


def poincare_coord(y: float) -> float:
    """t(y) = log(y/(1-y)), the coordinate in which Moebius fibers translate."""
    if not 0.0 < y < 1.0:
        raise DomainError(f"poincare coordinate needs 0 < y < 1, got {y}")
    return math.log(y) - math.log1p(-y)


def poincare_coord_inv(t: float) -> float:
    """Inverse of the arclength coordinate, y = e^t/(1+e^t), overflow-safe."""
    if t >= 0.0:
        return 1.0 / (1.0 + math.exp(-t))
    e = math.exp(t)
    return e / (1.0 + e)


def poincare_distance(y1: float, y2: float) -> float:
    """|t(y2) - t(y1)|, the hyperbolic distance inside (0, 1)."""
    return abs(poincare_coord(y2) - poincare_coord(y1))


def moebius_eval(m: MoebiusMap, y: float) -> float:
    """g_c(y); shifts the coordinate t by exactly c, endpoints fixed."""
    _check_unit(y)
    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 1.0
    return float(_moebius_apply(m.c, y))
