"""Brute-force quadrature oracles.

Every integral is recomputed with the midpoint rule on a graded mesh
``x = lo + (hi - lo) u^p`` followed by one Richardson step. The integrands
are the raw textbook forms, vectorized with numpy and independent of the
package kernels. Integrands receive the offset ``d`` from the graded
endpoint rather than the abscissa, because nodes as close as 1e-20 to the
endpoint would otherwise round onto it. Only the exact identities

    sinh(2t)^2 - sinh(2a)^2 = sinh(2d) sinh(4a + 2d),   t = a + d
    1 - x^4 = d (2 - d) (1 + x^2),                      x = 1 - d

are used to form the differences.
"""
import math

import numpy as np

N_DEFAULT = 1 << 14
TAIL_SPAN = 40.0


def _midpoint(f, d0, length, n, p):
    u = (np.arange(n) + 0.5) / n
    d = d0 + length * u ** p
    w = length * p * u ** (p - 1) / n
    return float(np.sum(f(d) * w))


def graded(f, d0, d1, n=N_DEFAULT, p=4):
    """Richardson-extrapolated midpoint rule for ``int_d0^d1 f(d) dd``, graded toward ``d0``.

    ``f`` is a function of the offset ``d``.
    """
    if d1 == d0:
        return 0.0
    coarse = _midpoint(f, d0, d1 - d0, n, p)
    fine = _midpoint(f, d0, d1 - d0, 2 * n, p)
    return (4.0 * fine - coarse) / 3.0


def uniform(f, d0, d1, n=N_DEFAULT):
    return graded(f, d0, d1, n, p=1)


def with_tail(f, span=TAIL_SPAN, n=N_DEFAULT):
    """``int_0^span f(d) dd`` with a square-root endpoint at 0; the rest is negligible."""
    return graded(f, 0.0, 1.0, n) + uniform(f, 1.0, span, n)


# ---------------------------------------------------------------- integrands
# functions of the offset d = t - a unless noted

def _root(a, d):
    return np.sqrt(np.sinh(2 * d) * np.sinh(4 * a + 2 * d))


def rho_integrand(a):
    return lambda d: math.sinh(2 * a) / (np.cosh(a + d) * _root(a, d))


def drho_integrand(a):
    def f(d):
        b = a + d
        num = np.sinh(b) * (5 * np.cosh(b) ** 2 - np.cosh(3 * a + d) ** 2)
        return num / (np.cosh(b) ** 2 * np.sqrt(np.sinh(2 * d) * np.sinh(4 * a + 2 * d) ** 3))
    return f


_PSI = ((76, 2, 0), (-22, 0, 2), (29, 4, 2), (1, 8, 2), (-26, 6, 4), (-6, 10, 4), (-25, 8, 6), (1, 12, 6))


def d2rho_integrand(a):
    def f(d):
        psi = sum(c * np.sinh(m * a + n * d) for c, m, n in _PSI)
        den = 16 * np.cosh(a + d) ** 3 * np.sqrt(np.sinh(2 * d) * np.sinh(4 * a + 2 * d) ** 5)
        return psi / den
    return f


def xs_integrand(a):
    # variable t itself (smooth integrand)
    A = math.cosh(2 * a)
    return lambda t: (math.sqrt(2) * math.sinh(2 * a) * np.sqrt(A * np.cosh(2 * t) - 1)
                      / (A * A * np.cosh(2 * t) ** 2 - 1))


def jacobi_I_integrand(a):
    # variable t itself
    A = math.cosh(2 * a)

    def f(t):
        T = np.cosh(2 * t)
        n = A * (3 - A * A) * T * T + (A * A - 1) * T - 2 * A
        return n / ((A * T + 1) ** 2 * (A * T - 1) ** 1.5)
    return f


def band_integrand(a):
    return lambda d: 4 * math.pi * np.sinh(a + d) * np.sinh(2 * (a + d)) / _root(a, d)


def deficit_integrand(a):
    return lambda d: np.sinh(a + d) * (np.sinh(2 * (a + d)) / _root(a, d) - 1.0)


def k_integrand(d):
    # d = 1 - x
    x = 1 - d
    return (1 / np.sqrt(d * (2 - d) * (1 + x * x)) - 1) / (x * x)


# ---------------------------------------------------------------- quantities

def rho(a, t):
    return graded(rho_integrand(a), 0.0, t - a)


def varrho(a):
    return with_tail(rho_integrand(a))


def varrho_prime(a):
    return with_tail(drho_integrand(a), span=30.0)


def varrho_second(a):
    return with_tail(d2rho_integrand(a), span=30.0)


def x_of(a, s):
    return math.copysign(uniform(xs_integrand(a), 0.0, abs(s)), s) if s else 0.0


def E(a):
    return math.sqrt(2) * uniform(jacobi_I_integrand(a), 0.0, TAIL_SPAN, n=1 << 16)


def K():
    return graded(k_integrand, 0.0, 1.0)


def band_area(a, y1):
    return graded(band_integrand(a), 0.0, y1 - a)


def area_deficit(a):
    # the naive parenthesis loses digits like e^t; the integrand is below 1e-17 by a + 15
    return with_tail(deficit_integrand(a), span=15.0)


def find_root(g, lo, hi, xtol=1e-12):
    """Plain bisection on a sign change."""
    glo = g(lo)
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi = mid
    return 0.5 * (lo + hi)
