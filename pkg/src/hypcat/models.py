"""Models of hyperbolic 3-space and the warped chart on the half-disk.

Three models are used:

* the hyperboloid ``<x, x> = -1, x1 > 0`` in Lorentz space with signature
  (-, +, +, +),
* the Poincare ball,
* the upper half space ``{(z, t) : t > 0}`` with ``z = zx + i zy``.

The ball's rotation axis for catenoids is the ``u``-axis. The helicoid axis
is the ``w``-axis, which the ball-to-upper-half map sends to the ``t``-axis.
"""
from __future__ import annotations

import math
from typing import NamedTuple

__all__ = [
    "DomainError",
    "LorentzVec",
    "BallPoint",
    "UpperHalfPoint",
    "WarpedPoint",
    "lorentz_inner",
    "hyperboloid_to_ball",
    "ball_to_hyperboloid",
    "ball_to_upperhalf",
    "upperhalf_to_ball",
    "warped_from_halfdisk",
    "halfdisk_from_warped",
    "ball_distance",
    "lorentz_distance",
    "upperhalf_distance",
]

# 1 - |p|^2 below this is treated as the sphere at infinity
BOUNDARY_EPS = 1e-14


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class LorentzVec(NamedTuple):
    x1: float
    x2: float
    x3: float
    x4: float


class BallPoint(NamedTuple):
    u: float
    v: float
    w: float


class UpperHalfPoint(NamedTuple):
    zx: float
    zy: float
    t: float


class WarpedPoint(NamedTuple):
    """Signed distance ``x`` along the axis and distance ``y >= 0`` from it."""

    x: float
    y: float


def lorentz_inner(p, q) -> float:
    """Lorentzian product ``-p1 q1 + p2 q2 + p3 q3 + p4 q4``."""
    return -p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3]


def _check_hyperboloid(p):
    if p[0] < 1.0 - 1e-12:
        raise DomainError(f"x1 = {p[0]!r} < 1: not on the upper sheet")
    res = lorentz_inner(p, p) + 1.0
    if abs(res) > 1e-10 * max(1.0, p[0] * p[0]):
        raise DomainError(f"point not on the hyperboloid (<x,x> + 1 = {res:.3g})")


def _check_ball(p):
    r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2]
    if 1.0 - r2 < BOUNDARY_EPS:
        raise DomainError(f"|p|^2 = {r2!r} is at or beyond the unit sphere")
    return r2


def hyperboloid_to_ball(p) -> BallPoint:
    """Stereographic projection from ``(-1, 0, 0, 0)``.

    Axes are arranged as ``(u, v, w) = (x3, x4, x2) / (1 + x1)``, so the
    hyperboloid helicoid lands on the ball helicoid chart.
    """
    _check_hyperboloid(p)
    d = 1.0 + p[0]
    return BallPoint(p[2] / d, p[3] / d, p[1] / d)


def ball_to_hyperboloid(p) -> LorentzVec:
    r2 = _check_ball(p)
    d = 1.0 - r2
    return LorentzVec((1.0 + r2) / d, 2.0 * p[2] / d, 2.0 * p[0] / d, 2.0 * p[1] / d)


def ball_to_upperhalf(p) -> UpperHalfPoint:
    """Isometry sending the origin to ``(0, 0, 1)`` and the ``w``-axis to the ``t``-axis.

    The pole ``(0, 0, 1)`` of the ball goes to infinity.
    """
    r2 = _check_ball(p)
    u, v, w = p
    d = u * u + v * v + (1.0 - w) * (1.0 - w)
    return UpperHalfPoint(2.0 * u / d, 2.0 * v / d, (1.0 - r2) / d)


def upperhalf_to_ball(p) -> BallPoint:
    zx, zy, t = p
    if not t > 0.0:
        raise DomainError(f"height t = {t!r} must be positive")
    d = zx * zx + zy * zy + (1.0 + t) * (1.0 + t)
    return BallPoint(2.0 * zx / d, 2.0 * zy / d, (zx * zx + zy * zy + t * t - 1.0) / d)


def warped_from_halfdisk(u: float, v: float) -> WarpedPoint:
    """Warped coordinates of a point of the closed upper half-disk."""
    if v < 0.0:
        raise DomainError(f"v = {v!r} < 0 is outside the half-disk")
    r2 = u * u + v * v
    if 1.0 - r2 < BOUNDARY_EPS:
        raise DomainError(f"u^2 + v^2 = {r2!r} is at or beyond the unit circle")
    return WarpedPoint(math.atanh(2.0 * u / (1.0 + r2)), math.asinh(2.0 * v / (1.0 - r2)))


def halfdisk_from_warped(p) -> tuple[float, float]:
    x, y = p
    if y < 0.0:
        raise DomainError(f"y = {y!r} must be nonnegative")
    d = 1.0 + math.cosh(x) * math.cosh(y)
    return math.sinh(x) * math.cosh(y) / d, math.sinh(y) / d


def ball_distance(p, q) -> float:
    """Hyperbolic distance in the ball, ``2 asinh(|p - q| / sqrt((1-|p|^2)(1-|q|^2)))``."""
    rp = _check_ball(p)
    rq = _check_ball(q)
    dd = sum((a - b) * (a - b) for a, b in zip(p, q))
    return 2.0 * math.asinh(math.sqrt(dd / ((1.0 - rp) * (1.0 - rq))))


def lorentz_distance(p, q) -> float:
    """Hyperbolic distance on the hyperboloid, ``acosh(-<p, q>)``.

    Written through ``<p - q, p - q> = 2(-<p,q> - 1)`` so nearby points keep
    full relative accuracy.
    """
    diff = [a - b for a, b in zip(p, q)]
    half = 0.5 * max(lorentz_inner(diff, diff), 0.0)
    return math.log1p(half + math.sqrt(half * (2.0 + half)))


def upperhalf_distance(p, q) -> float:
    if not (p[2] > 0.0 and q[2] > 0.0):
        raise DomainError("heights must be positive")
    dd = (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 + (p[2] - q[2]) ** 2
    return 2.0 * math.asinh(0.5 * math.sqrt(dd / (p[2] * q[2])))
