"""Generating curves of spherical catenoids in the warped half-disk.

The catenary ``sigma_a`` sits at distance ``a`` from the rotation axis. In the
warped metric ``ds^2 = cosh(y)^2 dx^2 + dy^2`` it is the graph

    x = rho(a, y) = int_a^y sinh(2a) / (cosh(t) sqrt(sinh(2t)^2 - sinh(2a)^2)) dt,

or, in arc length ``s``, the pair ``(x_of(a, s), y_of(a, s))``. The half
width ``varrho(a) = rho(a, inf)`` has a single maximum at ``a_c``.

All integrals are taken in the shifted variable ``tau = t - a``, where
``sinh(2t)^2 - sinh(2a)^2 = sinh(2 tau) sinh(4a + 2 tau)`` has no cancellation.
"""
from __future__ import annotations

import math
import warnings
from typing import NamedTuple, Sequence

import numpy as np

from . import _backend as kb
from .models import DomainError
from .quad import SMOOTH, SQRT_LO, SQRT_LO_TAIL, TAIL, Tolerance

__all__ = [
    "A_MAX",
    "NearDegenerateWarning",
    "CatenaryPoint",
    "check_a",
    "rho",
    "varrho",
    "varrho_prime",
    "varrho_second",
    "arclength",
    "x_of",
    "y_of",
    "sin_theta",
    "catenary_point",
    "catenary_curve",
]

A_MAX = 50.0
NEAR_DEGENERATE_A = 1e-4


class NearDegenerateWarning(UserWarning):
    """The neck parameter is so small that the two singular scales merge."""


class CatenaryPoint(NamedTuple):
    s: float
    x: float
    y: float
    sin_theta: float


def check_a(a) -> float:
    """Validate a neck parameter; 0 < a <= 50."""
    a = float(a)
    if not 0.0 < a <= A_MAX:
        raise DomainError(f"neck parameter a = {a!r} must satisfy 0 < a <= {A_MAX:g}")
    return a


def _acosh1p(d: float) -> float:
    """acosh(1 + d) for d >= 0 without losing digits near 0 or overflowing."""
    if d > 1e150:
        return math.log(2.0) + math.log(d)
    return math.log1p(d + math.sqrt(d * (2.0 + d)))


def _log_cosh(z: float) -> float:
    z = abs(z)
    return z + math.log1p(math.exp(-2.0 * z)) - math.log(2.0)


def rho(a, t, tol: Tolerance | None = None) -> float:
    """Horizontal coordinate of ``sigma_a`` at height ``t >= a``.

    ``t = inf`` is accepted and gives ``varrho(a)``.
    """
    a = check_a(a)
    t = float(t)
    if t < a:
        raise DomainError(f"rho(a, t) needs t >= a, got a={a!r}, t={t!r}")
    if math.isinf(t):
        return varrho(a, tol)
    return kb.integrate_kernel(kb.RHO, a, 0.0, t - a, SQRT_LO, tol).value


def varrho(a, tol: Tolerance | None = None) -> float:
    """Half the distance between the planes spanned by the boundary circles of ``C_a``."""
    a = check_a(a)
    if a < NEAR_DEGENERATE_A:
        warnings.warn(
            f"varrho at a = {a:.3g}: near-degenerate, the singular scales of the integrand merge",
            NearDegenerateWarning,
            stacklevel=2,
        )
    return kb.integrate_kernel(kb.RHO, a, 0.0, 0.0, SQRT_LO_TAIL, tol).value


def varrho_prime(a, tol: Tolerance | None = None) -> float:
    """First derivative of ``varrho``, by differentiating under the integral."""
    a = check_a(a)
    return kb.integrate_kernel(kb.DRHO, a, 0.0, 0.0, SQRT_LO_TAIL, tol).value


def varrho_second(a, tol: Tolerance | None = None) -> float:
    """Second derivative of ``varrho``; the integrand carries the polynomial ``psi``."""
    a = check_a(a)
    return kb.integrate_kernel(kb.D2RHO, a, 0.0, 0.0, SQRT_LO_TAIL, tol).value


def arclength(a, t) -> float:
    """Arc length along ``sigma_a`` from the neck to height ``t``: ``acosh(cosh 2t / cosh 2a) / 2``."""
    a = check_a(a)
    t = float(t)
    if t < a:
        raise DomainError(f"arclength(a, t) needs t >= a, got a={a!r}, t={t!r}")
    if t + a < 300.0:
        # cosh 2t / cosh 2a - 1 = 2 sinh(t - a) sinh(t + a) / cosh 2a
        return 0.5 * _acosh1p(2.0 * math.sinh(t - a) * math.sinh(t + a) / math.cosh(2.0 * a))
    log_ratio = _log_cosh(2.0 * t) - _log_cosh(2.0 * a)
    return 0.5 * (math.log(2.0) + log_ratio)


def y_of(a, s) -> float:
    """Height of ``sigma_a`` at arc length ``s``: ``acosh(cosh 2a cosh 2s) / 2``. Even in ``s``."""
    a = check_a(a)
    s = abs(float(s))
    if math.isinf(s):
        return math.inf
    if a + s < 300.0:
        # cosh 2a cosh 2s - 1 = sinh(a+s)^2 + sinh(a-s)^2
        return 0.5 * _acosh1p(math.sinh(a + s) ** 2 + math.sinh(a - s) ** 2)
    return 0.5 * (math.log(2.0) + _log_cosh(2.0 * a) + _log_cosh(2.0 * s))


def x_of(a, s, tol: Tolerance | None = None) -> float:
    """Axial coordinate of ``sigma_a`` at arc length ``s``. Odd in ``s``; ``x_of(a, inf) = varrho(a)``."""
    a = check_a(a)
    s = float(s)
    sign = -1.0 if s < 0.0 else 1.0
    s = abs(s)
    if math.isinf(s):
        return sign * kb.integrate_kernel(kb.XS, a, 0.0, 0.0, TAIL, tol).value
    return sign * kb.integrate_kernel(kb.XS, a, 0.0, s, SMOOTH, tol).value


def sin_theta(a, y) -> float:
    """Sine of the angle between ``sigma_a`` and the direction ``d/dy`` at height ``y``."""
    a = check_a(a)
    y = float(y)
    if y < a:
        # y_of(a, 0) may land one ulp under a
        if a - y > 1e-12 * a:
            raise DomainError(f"sin_theta(a, y) needs y >= a, got a={a!r}, y={y!r}")
        y = a
    if math.isinf(y):
        return 0.0
    return math.exp(2.0 * a - 2.0 * y) * math.expm1(-4.0 * a) / math.expm1(-4.0 * y)


def catenary_point(a, s, tol: Tolerance | None = None) -> CatenaryPoint:
    y = y_of(a, s)
    return CatenaryPoint(float(s), x_of(a, s, tol), y, sin_theta(a, y))


def catenary_curve(a, s_values: Sequence[float], tol: Tolerance | None = None) -> np.ndarray:
    """Sample ``sigma_a`` at the given arc lengths.

    Returns an array with columns ``s, x, y, sin_theta``. The axial
    coordinate is accumulated panel by panel over the sorted ``|s|``.
    """
    a = check_a(a)
    s_arr = np.asarray(s_values, dtype=float)
    if s_arr.ndim != 1:
        raise ValueError("s_values must be one-dimensional")
    if not np.all(np.isfinite(s_arr)):
        raise ValueError("s_values must be finite")
    mags = np.abs(s_arr)
    order = np.argsort(mags, kind="stable")
    xs = np.empty_like(s_arr)
    prev, acc = 0.0, 0.0
    for i in order:
        m = float(mags[i])
        if m > prev:
            acc += kb.integrate_kernel(kb.XS, a, prev, m, SMOOTH, tol).value
            prev = m
        xs[i] = math.copysign(acc, s_arr[i]) if m > 0.0 else 0.0
    ys = np.array([y_of(a, v) for v in s_arr])
    st = np.array([sin_theta(a, v) for v in ys])
    return np.column_stack([s_arr, xs, ys, st])
