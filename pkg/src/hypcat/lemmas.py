"""Grid verification of the sign lemmas used in the stability proofs.

The closed-form inequalities

    phi(a, t) = sqrt(5) cosh(a + t) - cosh(3a + t) <= 0      on [A3, inf) x [0, inf)
    psi(a, t) < 0                                            on [0, A4] x [0, inf)
    w(a, t) >= sinh(6a)                                      for t >= a > 0

feed the signs of the partial derivatives of ``rho``:

    d rho / da < 0     on R3 = {t >= a >= A3}
    d2 rho / da2 < 0   on R4 = {0 < a <= A4, t >= a}.

These checks sample the regions on a grid. They are regression evidence for
the formulas, not proofs. Unbounded ``t`` ranges are truncated at 30 (or
``a + 30``); past that point the leading exponential term fixes each sign.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _backend as kb
from .catenary import rho
from .quad import SMOOTH, SQRT_LO, QuadratureError, Tolerance

__all__ = [
    "RegionVerdict",
    "Region",
    "A3_const",
    "A4_const",
    "phi_fn",
    "psi_fn",
    "w_fn",
    "drho_da",
    "d2rho_da2",
    "verify_region",
    "LEMMAS",
    "verify_lemma",
    "verify_all",
]

T_SPAN = 30.0
TAU_MIN = 1e-3
FD_STEP = 1e-4
# non-strict signs tolerate rounding where the bound is attained
ROUNDING_SLACK = 1e-12

_SQRT5 = math.sqrt(5.0)


@dataclass
class RegionVerdict:
    name: str
    grid_size: int
    worst_value: float
    worst_point: tuple
    holds: bool
    violations: int = 0
    notes: list = field(default_factory=list)
    cross_check: Optional[float] = None

    def as_dict(self) -> dict:
        return {"name": self.name, "grid_size": self.grid_size,
                "worst_value": self.worst_value,
                "worst_point": {"a": self.worst_point[0], "t": self.worst_point[1]},
                "holds": self.holds, "violations": self.violations,
                "cross_check": self.cross_check, "notes": list(self.notes)}


@dataclass(frozen=True)
class Region:
    """Rectangle in ``a`` and ``t``.

    With ``shifted=True`` the ``t`` bounds are offsets from ``a``. The ``t``
    axis is sampled geometrically when ``t_lo > 0``, uniformly otherwise.
    """

    a_lo: float
    a_hi: float
    t_lo: float
    t_hi: float
    shifted: bool = False

    def a_grid(self, n):
        return np.linspace(self.a_lo, self.a_hi, n)

    def t_offsets(self, n):
        if self.t_lo > 0.0:
            return np.geomspace(self.t_lo, self.t_hi, n)
        return np.linspace(self.t_lo, self.t_hi, n)


def A3_const() -> float:
    """``acosh(sqrt(3 + sqrt 5) / 2)``: root of ``sqrt(5) cosh a = cosh 3a``."""
    return math.acosh(math.sqrt(3.0 + _SQRT5) / 2.0)


def A4_const() -> float:
    """``acosh((35 + sqrt 1241) / 8) / 4``: root of ``4 cosh(4a)^2 - 35 cosh(4a) - 1``."""
    return 0.25 * math.acosh((35.0 + math.sqrt(1241.0)) / 8.0)


def _out(v):
    return float(v) if np.ndim(v) == 0 else v


def phi_fn(a, t):
    return _out(_SQRT5 * np.cosh(np.add(a, t)) - np.cosh(np.multiply(3.0, a) + t))


_PSI = ((76.0, 2.0, 0.0), (-22.0, 0.0, 2.0), (29.0, 4.0, 2.0), (1.0, 8.0, 2.0),
        (-26.0, 6.0, 4.0), (-6.0, 10.0, 4.0), (-25.0, 8.0, 6.0), (1.0, 12.0, 6.0))


def psi_fn(a, t):
    """The eight-term combination ``sum c sinh(m a + n t)`` in the second derivative of ``rho``."""
    a = np.asarray(a, dtype=float)
    t = np.asarray(t, dtype=float)
    return _out(sum(c * np.sinh(m * a + n * t) for c, m, n in _PSI))


def w_fn(a, t):
    """Numerator of the boundary term of the second derivative of ``rho``."""
    a = np.asarray(a, dtype=float)
    t = np.asarray(t, dtype=float)
    a2 = 2.0 * a
    out = (-5.0 * np.sinh(a2) + np.sinh(6.0 * a) - 7.0 * np.sinh(a2 - 4.0 * t)
           - 12.0 * np.sinh(a2 - 2.0 * t) + 4.0 * np.sinh(a2 + 2.0 * t) + np.sinh(a2 + 4.0 * t))
    return _out(out)


def _boundary1(a, t):
    tau = t - a
    return math.sinh(2.0 * a) / (math.cosh(t) * math.sqrt(math.sinh(2.0 * tau) * math.sinh(2.0 * (t + a))))


def _boundary2(a, t):
    # cosh 4t - cosh 4a = 2 sinh(2t + 2a) sinh(2t - 2a)
    gap = 2.0 * math.sinh(2.0 * (t + a)) * math.sinh(2.0 * (t - a))
    return math.sinh(t) * w_fn(a, t) / (math.sqrt(2.0) * math.cosh(t) ** 2 * gap ** 1.5)


def _check_at(a, t):
    a = float(a)
    t = float(t)
    if not (a > 0.0 and t > a):
        raise ValueError(f"need t > a > 0, got a={a!r}, t={t!r}")
    return a, t


def drho_da(a, t, tol: Tolerance | None = None) -> float:
    """``d rho / da`` at fixed ``t > a``: the differentiated integral minus the endpoint term."""
    a, t = _check_at(a, t)
    integral = kb.integrate_kernel(kb.DRHO, a, 0.0, t - a, SQRT_LO, tol).value
    return integral - _boundary1(a, t)


def d2rho_da2(a, t, tol: Tolerance | None = None) -> float:
    """``d2 rho / da2`` at fixed ``t > a``."""
    a, t = _check_at(a, t)
    integral = kb.integrate_kernel(kb.D2RHO, a, 0.0, t - a, SQRT_LO, tol).value
    return integral - _boundary2(a, t)


def _cumulative(kind, a, taus, tol):
    """Integrals of a kernel over ``[0, tau_k]`` for increasing ``taus``."""
    out = np.empty(len(taus))
    acc = kb.integrate_kernel(kind, a, 0.0, taus[0], SQRT_LO, tol).value
    out[0] = acc
    for k in range(1, len(taus)):
        acc += kb.integrate_kernel(kind, a, taus[k - 1], taus[k], SMOOTH, tol).value
        out[k] = acc
    return out


def _drho_row(a, taus):
    t = a + taus
    return _cumulative(kb.DRHO, a, taus, None) - np.array([_boundary1(a, v) for v in t])


def _d2rho_row(a, taus):
    t = a + taus
    return _cumulative(kb.D2RHO, a, taus, None) - np.array([_boundary2(a, v) for v in t])


_SIGNS = {
    "<": (lambda v, s: v < 0.0, max),
    "<=": (lambda v, s: v <= s, max),
    ">": (lambda v, s: v > 0.0, min),
    ">=": (lambda v, s: v >= -s, min),
}


def verify_region(name: str, fn: Callable, region: Region, sign: str,
                  grid_size: int = 200) -> RegionVerdict:
    """Check ``fn(a, t) <sign> 0`` on a ``grid_size x grid_size`` sample of ``region``.

    ``fn`` receives a scalar ``a`` and an array of ``t`` values and returns an
    array. Quadrature failures inside ``fn`` produce a verdict that does not
    hold, with the failure recorded in ``notes``.
    """
    if sign not in _SIGNS:
        raise ValueError(f"sign must be one of {sorted(_SIGNS)}")
    grid_size = int(grid_size)
    if grid_size < 100:
        raise ValueError("grid_size must be at least 100 per axis")
    ok, pick = _SIGNS[sign]
    slack = ROUNDING_SLACK if sign in ("<=", ">=") else 0.0
    offsets = region.t_offsets(grid_size)
    worst_val = None
    worst_pt = (math.nan, math.nan)
    bad = 0
    notes = []
    for a in region.a_grid(grid_size):
        a = float(a)
        ts = a + offsets if region.shifted else offsets
        try:
            vals = np.asarray(fn(a, ts), dtype=float)
        except QuadratureError as exc:
            notes.append(f"quadrature failed at a={a:.6g}: {exc}")
            return RegionVerdict(name, grid_size, math.nan, (a, math.nan), False, -1, notes)
        good = ok(vals, slack) & np.isfinite(vals)
        bad += int(np.count_nonzero(~good))
        k = int(np.nanargmax(vals) if pick is max else np.nanargmin(vals))
        if worst_val is None or pick(vals[k], worst_val) != worst_val:
            worst_val = float(vals[k])
            worst_pt = (a, float(ts[k]))
    t_desc = f"a + [{region.t_lo:g}, {region.t_hi:g}]" if region.shifted else f"[{region.t_lo:g}, {region.t_hi:g}]"
    notes.append(f"grid evidence on a in [{region.a_lo:.9g}, {region.a_hi:.9g}], t in {t_desc}")
    return RegionVerdict(name, grid_size, worst_val, worst_pt, bad == 0, bad, notes)


def _fd_first(a, t, h=FD_STEP):
    tol = Tolerance(1e-14, 1e-14)
    return (rho(a + h, t, tol) - rho(a - h, t, tol)) / (2.0 * h)


def _fd_second(a, t, h=FD_STEP):
    tol = Tolerance(1e-15, 1e-15)
    return (rho(a + h, t, tol) - 2.0 * rho(a, t, tol) + rho(a - h, t, tol)) / (h * h)


def _cross_check(analytic, fd, region: Region, n=4) -> float:
    """Largest relative gap between the analytic partial and a central difference of ``rho``.

    Sample points keep ``t - a >= 0.1`` and ``a >= 0.05`` so the stencil is
    small against both length scales of ``rho``.
    """
    worst = 0.0
    for a in np.linspace(max(region.a_lo, 0.05), region.a_hi, n):
        for tau in (0.1, 0.5, 2.0, 8.0):
            a = float(a)
            t = a + tau
            x, y = analytic(a, t), fd(a, t)
            worst = max(worst, abs(x - y) / max(1.0, abs(x)))
    return worst


def _lemma_table():
    A3, A4 = A3_const(), A4_const()
    return {
        "phi": ("phi(a, t) <= 0", lambda a, t: phi_fn(a, t), Region(A3, A3 + 5.0, 0.0, T_SPAN), "<="),
        "psi": ("psi(a, t) < 0", lambda a, t: psi_fn(a, t), Region(TAU_MIN, A4, TAU_MIN, T_SPAN), "<"),
        "w": ("w(a, t) - sinh(6a) >= 0",
              lambda a, t: w_fn(a, t) - np.sinh(6.0 * a), Region(TAU_MIN, 3.0, 0.0, T_SPAN, True), ">="),
        "drho": ("d rho / da < 0 on R3", _drho_row, Region(A3, A3 + 5.0, TAU_MIN, T_SPAN, True), "<"),
        "d2rho": ("d2 rho / da2 < 0 on R4", _d2rho_row, Region(TAU_MIN, A4, TAU_MIN, T_SPAN, True), "<"),
    }


LEMMAS = ("phi", "psi", "w", "drho", "d2rho")

FD_AGREEMENT = 1e-4


def verify_lemma(key: str, grid_size: int = 200) -> RegionVerdict:
    """Run one of the named checks in ``LEMMAS``."""
    table = _lemma_table()
    if key not in table:
        raise KeyError(f"unknown lemma {key!r}; choose from {', '.join(LEMMAS)}")
    name, fn, region, sign = table[key]
    verdict = verify_region(name, fn, region, sign, grid_size)
    if key in ("drho", "d2rho") and verdict.violations >= 0:
        analytic, fd = (drho_da, _fd_first) if key == "drho" else (d2rho_da2, _fd_second)
        gap = _cross_check(analytic, fd, region)
        verdict.cross_check = gap
        verdict.notes.append(f"finite-difference cross-check, step {FD_STEP:g}: max relative gap {gap:.3g}")
        if gap > FD_AGREEMENT:
            verdict.holds = False
            verdict.notes.append("finite-difference cross-check failed")
    return verdict


def verify_all(grid_size: int = 200) -> list:
    return [verify_lemma(k, grid_size) for k in LEMMAS]
