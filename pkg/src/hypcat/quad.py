"""Adaptive Gauss-Kronrod quadrature for the three integral shapes used here.

* smooth integrands on a finite interval,
* integrands with an inverse-square-root blowup at the lower endpoint
  (removed by ``x = lo + u**2``),
* exponentially decaying integrands on ``[lo, inf)`` (mapped onto ``(0, 1]``
  by ``x = lo - log(v)``).

All shapes share one global-adaptive G7/K15 kernel. The compiled core in
:mod:`hypcat._kernels` runs the same algorithm over built-in integrands.
"""
from __future__ import annotations

import contextlib
import contextvars
import heapq
import math
import os
from dataclasses import dataclass
from typing import Callable

__all__ = [
    "Tolerance",
    "QuadResult",
    "using_tolerance",
    "QuadratureError",
    "BudgetExhausted",
    "DivergenceError",
    "IntegrandError",
    "integrate_smooth",
    "integrate_sqrt_singular_lo",
    "integrate_semi_infinite",
]

# Modes shared with the compiled core.
SMOOTH, SQRT_LO, TAIL, SQRT_LO_TAIL = 0, 1, 2, 3
# Status codes shared with the compiled core.
OK, BUDGET, NONFINITE, DIVERGED, ROUNDOFF = 0, 1, 2, 3, 4

# Kronrod abscissae and weights (15 points) with the embedded 7-point Gauss rule.
XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

DEFAULT_MAX_EVALS = 1_000_000
SNAP_START = 960


class QuadratureError(RuntimeError):
    """Base class for quadrature failures."""


class BudgetExhausted(QuadratureError):
    pass


class DivergenceError(QuadratureError):
    pass


class IntegrandError(QuadratureError):
    """The integrand produced NaN or an infinity."""


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_evals: int = DEFAULT_MAX_EVALS

    def __post_init__(self):
        if not 0.0 < self.abs_tol < 1.0 or not 0.0 < self.rel_tol < 1.0:
            raise ValueError("abs_tol and rel_tol must lie in (0, 1)")
        if self.max_evals < 100:
            raise ValueError("max_evals must be at least 100")

    @classmethod
    def default(cls) -> "Tolerance":
        """Default tolerance; ``HYPCAT_MAX_EVALS`` overrides the budget.

        Inside :func:`using_tolerance` the installed tolerance is returned instead.
        """
        override = _OVERRIDE.get()
        if override is not None:
            return override
        env = os.environ.get("HYPCAT_MAX_EVALS")
        if not env:
            return cls()
        try:
            budget = int(env)
        except ValueError:
            raise ValueError(f"HYPCAT_MAX_EVALS={env!r} is not an integer") from None
        return cls(max_evals=budget)

    def tightened(self, factor: float) -> "Tolerance":
        return Tolerance(self.abs_tol * factor, self.rel_tol * factor, self.max_evals)


_OVERRIDE: contextvars.ContextVar = contextvars.ContextVar("hypcat_tolerance", default=None)


@contextlib.contextmanager
def using_tolerance(tol: Tolerance):
    """Make ``tol`` the default for every integral computed in the block."""
    token = _OVERRIDE.set(tol)
    try:
        yield tol
    finally:
        _OVERRIDE.reset(token)


@dataclass(frozen=True)
class QuadResult:
    """Integral value, error estimate and number of integrand evaluations.

    ``evals`` is 0 only for an empty interval, where nothing is evaluated.
    """

    value: float
    err_estimate: float
    evals: int

    def __float__(self) -> float:
        return self.value


def _gk15(g, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fc = g(c)
    resk = fc * WGK[7]
    resg = fc * WG[3]
    for j in range(7):
        dx = h * XGK[j]
        fsum = g(c - dx) + g(c + dx)
        resk += WGK[j] * fsum
        if j & 1:
            resg += WG[j >> 1] * fsum
    return resk * h, abs((resk - resg) * h)


def _adaptive(g, lo, hi, abs_tol, rel_tol, max_evals, track_growth=False):
    """Global adaptive G7/K15 on ``[lo, hi]``; returns (value, err, evals, status).

    With ``track_growth`` the running value is sampled at doubling evaluation
    counts; a failed run whose value grew by more than its error estimate
    since half the work was done is reported as divergent, and so is an
    infinite (not NaN) panel sum.
    """
    r, e = _gk15(g, lo, hi)
    evals = 15
    if not math.isfinite(r):
        return r, math.inf, evals, NONFINITE
    heap = [(-e, lo, hi, r)]
    frozen = []
    total_r, total_e = r, e
    snaps = []
    next_snap = SNAP_START
    status = OK
    while True:
        if total_e <= max(abs_tol, rel_tol * abs(total_r)):
            # incremental sums drift; confirm with exact sums before stopping
            total_r = math.fsum([x[3] for x in heap] + [x[3] for x in frozen])
            total_e = math.fsum([-x[0] for x in heap] + [-x[0] for x in frozen])
            if total_e <= max(abs_tol, rel_tol * abs(total_r)):
                break
        if not heap:
            status = ROUNDOFF
            break
        if evals + 30 > max_evals:
            status = BUDGET
            break
        if evals >= next_snap:
            snaps.append((evals, total_r))
            next_snap *= 2
        ne, a, b, ri = heapq.heappop(heap)
        m = 0.5 * (a + b)
        if not a < m < b:
            frozen.append((ne, a, b, ri))
            continue
        r1, e1 = _gk15(g, a, m)
        r2, e2 = _gk15(g, m, b)
        evals += 30
        if not (math.isfinite(r1) and math.isfinite(r2)):
            bad = r1 + r2
            if track_growth and not math.isnan(bad):
                # an infinity deep in the mapped tail means no decay
                return bad, math.inf, evals, DIVERGED
            return bad, math.inf, evals, NONFINITE
        heapq.heappush(heap, (-e1, a, m, r1))
        heapq.heappush(heap, (-e2, m, b, r2))
        total_r += r1 + r2 - ri
        total_e += e1 + e2 + ne
    pieces = sorted(heap + frozen, key=lambda x: x[1])
    value = math.fsum([x[3] for x in pieces])
    err = math.fsum([-x[0] for x in pieces])
    if status != OK and track_growth:
        earlier = [v for n, v in snaps if 2 * n <= evals]
        if earlier and abs(value) - abs(earlier[-1]) > max(err, abs_tol):
            status = DIVERGED
    return value, err, evals, status


def integrate_mode(f, lo, hi, mode, abs_tol, rel_tol, max_evals):
    """Integrate ``f`` in one of the four modes; returns the raw 4-tuple.

    ``hi`` is ignored for the semi-infinite modes.
    """
    if mode == SMOOTH:
        if hi == lo:
            return 0.0, 0.0, 0, OK
        return _adaptive(f, lo, hi, abs_tol, rel_tol, max_evals)
    if mode == SQRT_LO:
        if hi == lo:
            return 0.0, 0.0, 0, OK
        return _adaptive(
            lambda u: 2.0 * u * f(lo + u * u),
            0.0, math.sqrt(hi - lo), abs_tol, rel_tol, max_evals,
        )
    if mode == TAIL:
        return _adaptive(
            lambda v: f(lo - math.log(v)) / v,
            0.0, 1.0, abs_tol, rel_tol, max_evals, track_growth=True,
        )
    if mode == SQRT_LO_TAIL:
        v1, e1, n1, s1 = integrate_mode(f, lo, lo + 1.0, SQRT_LO, 0.5 * abs_tol, rel_tol, max_evals)
        if s1 != OK:
            return v1, e1, n1, s1
        v2, e2, n2, s2 = integrate_mode(f, lo + 1.0, 0.0, TAIL, 0.5 * abs_tol, rel_tol, max_evals - n1)
        return v1 + v2, e1 + e2, n1 + n2, s2
    raise ValueError(f"unknown quadrature mode {mode!r}")


def check_status(value, err, evals, status, what="integral") -> QuadResult:
    """Turn a raw 4-tuple into a :class:`QuadResult`, raising on failure."""
    if status == OK:
        return QuadResult(value, err, evals)
    if status == BUDGET:
        raise BudgetExhausted(f"{what}: budget of evaluations exhausted after {evals} (err~{err:.3g})")
    if status == DIVERGED:
        raise DivergenceError(
            f"{what}: value keeps growing under refinement ({value:.6g}); "
            "the integral diverges or the tail does not decay exponentially"
        )
    if status == NONFINITE:
        raise IntegrandError(f"{what}: integrand returned a non-finite value")
    raise QuadratureError(f"{what}: roundoff prevents reaching the tolerance (err~{err:.3g})")


def _run(f, lo, hi, mode, tol):
    tol = tol or Tolerance.default()
    return check_status(*integrate_mode(f, lo, hi, mode, tol.abs_tol, tol.rel_tol, tol.max_evals))


def integrate_smooth(f: Callable[[float], float], lo: float, hi: float,
                     tol: Tolerance | None = None) -> QuadResult:
    """Integrate a smooth ``f`` over ``[lo, hi]``."""
    if hi < lo:
        raise ValueError("integrate_smooth requires lo <= hi")
    return _run(f, lo, hi, SMOOTH, tol)


def integrate_sqrt_singular_lo(f: Callable[[float], float], lo: float, hi: float,
                               tol: Tolerance | None = None) -> QuadResult:
    """Integrate ``f`` over ``[lo, hi]`` when ``f ~ (x - lo)**-0.5`` near ``lo``.

    ``f`` is never evaluated at ``lo`` itself.
    """
    if hi < lo:
        raise ValueError("integrate_sqrt_singular_lo requires lo <= hi")
    return _run(f, lo, hi, SQRT_LO, tol)


def integrate_semi_infinite(f: Callable[[float], float], lo: float,
                            tol: Tolerance | None = None,
                            singular_lo: bool = False) -> QuadResult:
    """Integrate an exponentially decaying ``f`` over ``[lo, inf)``.

    With ``singular_lo`` the piece ``[lo, lo + 1]`` goes through the
    square-root substitution and only the remainder is log-mapped.
    """
    return _run(f, lo, 0.0, SQRT_LO_TAIL if singular_lo else TAIL, tol)
