"""Jacobi fields on spherical catenoids and the stability threshold.

Two radial Jacobi fields live on ``C_a``. The vertical field ``zeta`` comes
from translations along the rotation axis. The variation field ``xi`` comes
from moving ``a``. ``xi`` is even with ``xi(a, 0) = 1``. It has a positive
zero ``z(a)`` exactly when ``E(a) = d/da x(a, inf) > 0``, that is when
``a < a_c``. The zero marks the boundary of the maximal weakly stable piece
of ``C_a``.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import brentq

from . import _backend as kb
from .catenary import check_a, rho, varrho, varrho_prime, x_of, y_of
from .models import DomainError
from .quad import SMOOTH, TAIL, Tolerance

__all__ = [
    "BracketError",
    "CatenoidKind",
    "StabilityClassCatenoid",
    "EnvelopePoint",
    "f_coef",
    "I_integrand",
    "partials",
    "zeta",
    "zeta_closed",
    "xi",
    "xi_form2",
    "xi_profile",
    "tangency",
    "E_of",
    "E_via_varrho",
    "find_a_c",
    "find_z",
    "classify_catenoid",
    "intersect_catenaries",
    "catenary_height_at",
    "envelope_point",
]

SQRT2 = math.sqrt(2.0)
Z_START = 0.5
Z_LIMIT = 100.0
Z_XTOL = 1e-10


class BracketError(RuntimeError):
    """No sign change was found while expanding a root bracket."""


class CatenoidKind(str, enum.Enum):
    UNSTABLE_INDEX_ONE = "UnstableIndexOne"
    GLOBALLY_STABLE = "GloballyStable"


@dataclass(frozen=True)
class StabilityClassCatenoid:
    a: float
    kind: CatenoidKind
    least_area: bool
    z: Optional[float]
    E: float

    def as_dict(self) -> dict:
        return {"a": self.a, "kind": self.kind.value, "least_area": self.least_area,
                "z": self.z, "E": self.E}


class EnvelopePoint(NamedTuple):
    a: float
    x: float
    y: float
    tangency_residual: float


def _xm1(a, s):
    return math.sinh(a + s) ** 2 + math.sinh(a - s) ** 2


def f_coef(a, s) -> float:
    """``sinh(2a)^2 cosh(2s) / (cosh(2a)^2 cosh(2s)^2 - 1)``; even in ``s`` with ``f(a, 0) = 1``."""
    a = check_a(a)
    s = abs(float(s))
    xm1 = _xm1(a, s)
    return math.sinh(2.0 * a) ** 2 * math.cosh(2.0 * s) / (xm1 * (xm1 + 2.0))


def I_integrand(a, t) -> float:
    """``n(A, T) / d(A, T)`` with ``A = cosh 2a`` and ``T = cosh 2t``."""
    return kb.evaluate(kb.JACOBI_I, check_a(a), float(t))


def partials(a, s, tol: Tolerance | None = None) -> tuple[float, float, float, float]:
    """``(x_a, x_s, y_a, y_s)`` of the arc-length chart at ``(a, s)``.

    ``x_a`` differentiates under the integral sign. The other three are closed form.
    """
    a = check_a(a)
    s = float(s)
    sign = -1.0 if s < 0.0 else 1.0
    m = abs(s)
    x_a = sign * kb.integrate_kernel(kb.XA, a, 0.0, m, SMOOTH, tol).value
    x_s = kb.evaluate(kb.XS, a, m)
    xm1 = _xm1(a, m)
    root = math.sqrt(xm1 * (xm1 + 2.0))  # sqrt(X^2 - 1)
    y_a = math.sinh(2.0 * a) * math.cosh(2.0 * m) / root
    y_s = sign * math.cosh(2.0 * a) * math.sinh(2.0 * m) / root
    return x_a, x_s, y_a, y_s


def zeta(a, s) -> float:
    """Vertical Jacobi field ``sqrt(2) cosh(y) y_s``; odd in ``s``."""
    a = check_a(a)
    s = float(s)
    xm1 = _xm1(a, s)
    y_s = math.cosh(2.0 * a) * math.sinh(2.0 * s) / math.sqrt(xm1 * (xm1 + 2.0))
    return SQRT2 * math.cosh(y_of(a, s)) * y_s


def zeta_closed(a, s) -> float:
    """Simplified form ``cosh(2a) sinh(2s) / sqrt(cosh(2a) cosh(2s) - 1)``."""
    a = check_a(a)
    s = float(s)
    return math.cosh(2.0 * a) * math.sinh(2.0 * s) / math.sqrt(_xm1(a, s))


def tangency(a, s, tol: Tolerance | None = None) -> float:
    """Determinant ``x_a y_s - x_s y_a``; it vanishes where ``sigma_a`` touches the envelope."""
    x_a, x_s, y_a, y_s = partials(a, s, tol)
    return x_a * y_s - x_s * y_a


def xi(a, s, tol: Tolerance | None = None) -> float:
    """Variation Jacobi field ``-cosh(y) (x_a y_s - x_s y_a)``; even in ``s``."""
    s = abs(float(s))
    return -math.cosh(y_of(a, s)) * tangency(a, s, tol)


def xi_form2(a, s, tol: Tolerance | None = None) -> float:
    """Cross-check form ``f(a, s) - zeta(a, s) int_0^s I(a, t) dt``."""
    a = check_a(a)
    s = abs(float(s))
    integral = kb.integrate_kernel(kb.JACOBI_I, a, 0.0, s, SMOOTH, tol).value
    return f_coef(a, s) - zeta(a, s) * integral


def xi_profile(a, s_values, tol: Tolerance | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``zeta`` and ``xi`` on a grid of arc lengths, accumulating ``x_a`` panel by panel."""
    a = check_a(a)
    s_arr = np.asarray(s_values, dtype=float)
    mags = np.abs(s_arr)
    order = np.argsort(mags, kind="stable")
    xa_abs = np.empty_like(s_arr)
    prev, acc = 0.0, 0.0
    for i in order:
        m = float(mags[i])
        if m > prev:
            acc += kb.integrate_kernel(kb.XA, a, prev, m, SMOOTH, tol).value
            prev = m
        xa_abs[i] = acc
    zetas = np.empty_like(s_arr)
    xis = np.empty_like(s_arr)
    for i, s in enumerate(s_arr):
        m = float(mags[i])
        xm1 = _xm1(a, m)
        root = math.sqrt(xm1 * (xm1 + 2.0))
        y_a = math.sinh(2.0 * a) * math.cosh(2.0 * m) / root
        y_s = math.cosh(2.0 * a) * math.sinh(2.0 * m) / root
        ch = math.cosh(y_of(a, m))
        # even/odd parts: xi uses |s|, zeta keeps the sign of s
        xis[i] = -ch * (xa_abs[i] * y_s - kb.evaluate(kb.XS, a, m) * y_a)
        zetas[i] = math.copysign(SQRT2 * ch * y_s, s) if m > 0.0 else 0.0
    return zetas, xis


def E_of(a, tol: Tolerance | None = None) -> float:
    """``E(a) = sqrt(2) int_0^inf I(a, t) dt = d/da x(a, inf)``.

    Since ``x(a, inf) = varrho(a)`` this coincides with ``varrho'(a)``.
    """
    a = check_a(a)
    return SQRT2 * kb.integrate_kernel(kb.JACOBI_I, a, 0.0, 0.0, TAIL, tol).value


def E_via_varrho(a, tol: Tolerance | None = None) -> float:
    """The relation ``E = varrho' / sqrt(2)`` as it is usually quoted.

    Off from :func:`E_of` by a factor ``sqrt(2)``; kept for comparison.
    """
    return varrho_prime(a, tol) / SQRT2


@functools.lru_cache(maxsize=None)
def find_a_c() -> float:
    """The unique zero of ``varrho'`` in [0.4, 0.6], where ``varrho`` peaks."""
    lo, hi = 0.4, 0.6
    flo, fhi = varrho_prime(lo), varrho_prime(hi)
    if not (flo > 0.0 > fhi):
        raise BracketError(f"varrho' has no sign change on [{lo}, {hi}]: {flo:.3g}, {fhi:.3g}")
    return brentq(varrho_prime, lo, hi, xtol=1e-13, rtol=1e-15)


def _bisect(g, lo, hi, glo, xtol):
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            return mid
        if (gm > 0.0) == (glo > 0.0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def find_z(a, tol: Tolerance | None = None, check_domain: bool = True) -> float:
    """Positive zero of ``xi(a, .)``, which exists for ``0 < a < a_c``.

    The bracket starts at ``s = 0.5`` and doubles. A :class:`BracketError`
    is raised if no sign change shows up by ``s = 100``. With
    ``check_domain=False`` the sign test on ``E(a)`` is skipped.
    """
    a = check_a(a)
    if check_domain:
        e = E_of(a, tol)
        if e <= 0.0:
            raise DomainError(f"E({a:.6g}) = {e:.3g} <= 0: xi has no zero and C_a is stable")
    lo, glo = 0.0, 1.0
    s = Z_START
    while True:
        g = xi(a, s, tol)
        if g <= 0.0:
            break
        if s >= Z_LIMIT:
            raise BracketError(f"xi(a={a:.6g}, s) stays positive up to s = {Z_LIMIT:g}")
        lo, glo = s, g
        s = min(2.0 * s, Z_LIMIT)
    if g == 0.0:
        return s
    return _bisect(lambda v: xi(a, v, tol), lo, s, glo, Z_XTOL)


def classify_catenoid(a, tol: Tolerance | None = None) -> StabilityClassCatenoid:
    """Unstable with Morse index one below ``a_c``, globally stable from ``a_c`` on."""
    from .leastarea import a_l_const

    a = check_a(a)
    E = E_of(a, tol)
    if a < find_a_c():
        return StabilityClassCatenoid(a, CatenoidKind.UNSTABLE_INDEX_ONE, False,
                                      find_z(a, tol, check_domain=False), E)
    return StabilityClassCatenoid(a, CatenoidKind.GLOBALLY_STABLE, a >= a_l_const(), None, E)


def intersect_catenaries(a1, a2, tol: Tolerance | None = None) -> Optional[tuple[float, float]]:
    """Intersection ``(x, y)`` with ``x >= 0`` of ``sigma_a1`` and ``sigma_a2`` for ``a1 < a2``.

    Returns None when ``varrho(a1) >= varrho(a2)``, where the curves are disjoint.
    """
    a1 = check_a(a1)
    a2 = check_a(a2)
    if not a1 < a2:
        raise DomainError(f"need a1 < a2, got {a1!r}, {a2!r}")
    if varrho(a1, tol) >= varrho(a2, tol):
        return None
    base = rho(a1, a2, tol)

    def delta(t):
        # rho(a2, t) - rho(a1, t), with the [a1, a2] piece of rho(a1, .) reused
        inner = kb.integrate_kernel(kb.RHO, a1, a2 - a1, t - a1, SMOOTH, tol).value
        return rho(a2, t, tol) - base - inner

    step = 0.5
    lo, hi = a2, a2 + step
    while delta(hi) <= 0.0:
        lo = hi
        step *= 2.0
        hi = a2 + step
        if step > 256.0:
            raise BracketError(f"catenaries a={a1:.6g}, {a2:.6g}: no crossing found below y = {hi:.4g}")
    t_star = brentq(delta, lo, hi, xtol=1e-13, rtol=1e-15)
    return rho(a1, t_star, tol), t_star


def catenary_height_at(a, x, tol: Tolerance | None = None) -> float:
    """Height ``y >= a`` of ``sigma_a`` above axial position ``x``; needs ``|x| < varrho(a)``."""
    a = check_a(a)
    x = abs(float(x))
    if x == 0.0:
        return a
    if x >= varrho(a, tol):
        raise DomainError(f"|x| = {x:.6g} is not below varrho({a:.6g})")
    hi = a + 1.0
    while rho(a, hi, tol) < x:
        hi = a + 2.0 * (hi - a)
    return brentq(lambda t: rho(a, t, tol) - x, a, hi, xtol=1e-13, rtol=1e-15)


def envelope_point(a, tol: Tolerance | None = None) -> EnvelopePoint:
    """Point where ``sigma_a`` touches the envelope of the unstable family, at ``s = z(a)``."""
    a = check_a(a)
    z = find_z(a, tol)
    return EnvelopePoint(a, x_of(a, z, tol), y_of(a, z), tangency(a, z, tol))
