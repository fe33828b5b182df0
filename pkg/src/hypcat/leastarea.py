"""Area comparisons behind the least-area threshold ``a_l``.

``area_deficit(a)`` is the finite difference between the area of a half
catenoid and that of the flat annulus it is asymptotic to. It stays below
``K cosh(a)``, with

    K = int_0^1 x^-2 (1 / sqrt(1 - x^4) - 1) dx ~ 0.40093.

So for ``cosh(a) >= 1 / (1 - K)`` a catenoid band is cheaper than the pair of
totally geodesic disks with the same boundary.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from . import _backend as kb
from .catenary import check_a, rho, varrho
from .models import DomainError
from .quad import SQRT_LO, SQRT_LO_TAIL, Tolerance

__all__ = [
    "AreaComparison",
    "area_deficit",
    "K_const",
    "a_l_const",
    "band_area",
    "disk_pair_area",
    "compare_areas",
    "oliveira_soret_delta",
]


@dataclass(frozen=True)
class AreaComparison:
    a: float
    y1: float
    x1: float
    band_area: float
    disks_area: float
    band_smaller: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def area_deficit(a, tol: Tolerance | None = None) -> float:
    """``int_a^inf sinh t (sinh 2t / sqrt(sinh^2 2t - sinh^2 2a) - 1) dt``."""
    a = check_a(a)
    return kb.integrate_kernel(kb.DEFICIT, a, 0.0, 0.0, SQRT_LO_TAIL, tol).value


@functools.lru_cache(maxsize=None)
def K_const() -> float:
    """The constant K, integrated in ``v = 1 - x`` to expose the square-root endpoint."""
    return kb.integrate_kernel(kb.KCONST, 0.0, 0.0, 1.0, SQRT_LO).value


def a_l_const() -> float:
    """``acosh(1 / (1 - K))``: catenoids with ``a >= a_l`` are least area."""
    return math.acosh(1.0 / (1.0 - K_const()))


def band_area(a, y1, tol: Tolerance | None = None) -> float:
    """Area of the part of ``C_a`` within distance ``y1`` of the axis (both halves).

    Coarea along the axis: ``int_a^y1 4 pi sinh t sinh 2t / sqrt(sinh^2 2t - sinh^2 2a) dt``.
    """
    a = check_a(a)
    y1 = float(y1)
    if not y1 > a:
        raise DomainError(f"band_area needs y1 > a, got a={a!r}, y1={y1!r}")
    return kb.integrate_kernel(kb.BAND, a, 0.0, y1 - a, SQRT_LO, tol).value


def disk_pair_area(y1) -> float:
    """Two totally geodesic disks of radius ``y1``: ``4 pi (cosh y1 - 1)``."""
    y1 = float(y1)
    if y1 < 0.0:
        raise DomainError(f"radius y1 = {y1!r} must be nonnegative")
    return 8.0 * math.pi * math.sinh(0.5 * y1) ** 2


def compare_areas(a, y1, tol: Tolerance | None = None) -> AreaComparison:
    """Band of ``C_a`` cut at height ``y1`` versus the two disks it bounds."""
    band = band_area(a, y1, tol)
    disks = disk_pair_area(y1)
    return AreaComparison(float(a), float(y1), rho(a, y1, tol), band, disks, band < disks)


def oliveira_soret_delta() -> float:
    """``cosh(varrho(a_c)) - 1``."""
    from .jacobi import find_a_c

    return math.cosh(varrho(find_a_c())) - 1.0
