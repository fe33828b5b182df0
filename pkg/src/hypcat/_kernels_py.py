"""Pure-Python reference implementation of the built-in integrands.

Mirrors ``_kernels.pyx`` operation for operation, so both backends return
the same floating point values. Each kernel is written in the variable that
the corresponding integral is taken over; for the catenary family that is the
shifted variable ``tau = t - a``.

Large arguments are handled by rewriting quotients of hyperbolic functions
as exponentials of differences, so no kernel overflows for ``0 < a <= 50``.
"""
import math

from .quad import integrate_mode

RHO = 0
DRHO = 1
D2RHO = 2
JACOBI_I = 3
XS = 4
XA = 5
BAND = 6
DEFICIT = 7
KCONST = 8
N_KINDS = 9

SQRT2 = math.sqrt(2.0)
BACKEND = "python"

# (coefficient, a multiplier, tau multiplier) for the eight sinh terms of psi
PSI_TERMS = (
    (76.0, 2.0, 0.0),
    (-22.0, 0.0, 2.0),
    (29.0, 4.0, 2.0),
    (1.0, 8.0, 2.0),
    (-26.0, 6.0, 4.0),
    (-6.0, 10.0, 4.0),
    (-25.0, 8.0, 6.0),
    (1.0, 12.0, 6.0),
)


def sinh_ratio(x, y):
    """sinh(x)/sinh(y) for x, y > 0 without overflow."""
    return math.exp(x - y) * (-math.expm1(-2.0 * x)) / (-math.expm1(-2.0 * y))


def _sq(x):
    # x * x rather than x ** 2: the latter goes through libm pow
    return x * x


def _xm1(a, t):
    # cosh(2a)cosh(2t) - 1 without cancellation
    return _sq(math.sinh(a + t)) + _sq(math.sinh(a - t))


def _rq(a, tau):
    s = 2.0 * a + 2.0 * tau
    r = sinh_ratio(2.0 * a, s)
    q = math.sqrt(sinh_ratio(2.0 * tau, s) * sinh_ratio(4.0 * a + 2.0 * tau, s))
    return r, q


def k_rho(a, tau):
    r, q = _rq(a, tau)
    return r / (math.cosh(a + tau) * q)


def k_drho(a, tau):
    b = a + tau
    s = 2.0 * b
    c31 = math.exp(2.0 * a) * (1.0 + math.exp(-2.0 * (3.0 * a + tau))) / (1.0 + math.exp(-2.0 * b))
    den = 4.0 * math.sinh(b) * _sq(math.cosh(b))
    den *= math.sqrt(sinh_ratio(2.0 * tau, s)) * sinh_ratio(4.0 * a + 2.0 * tau, s) ** 1.5
    return (5.0 - c31 * c31) / den


def psi_scaled(a, tau):
    """psi(a, tau) * exp(-(12a + 6tau))."""
    m = 12.0 * a + 6.0 * tau
    acc = 0.0
    for c, pa, pt in PSI_TERMS:
        p = pa * a + pt * tau
        acc += c * 0.5 * (math.exp(p - m) - math.exp(-p - m))
    return acc


def k_d2rho(a, tau):
    b = a + tau
    c = 0.5 * (1.0 + math.exp(-2.0 * b))
    s1 = -0.5 * math.expm1(-4.0 * tau)
    s2 = -0.5 * math.expm1(-8.0 * a - 4.0 * tau)
    den = 16.0 * c * c * c * math.sqrt(s1) * s2 ** 2.5
    return psi_scaled(a, tau) * math.exp(-a - 3.0 * tau) / den


def k_jacobi_i(a, t):
    if 2.0 * a + 2.0 * t > 700.0:
        return 0.0
    A = math.cosh(2.0 * a)
    T = math.cosh(2.0 * t)
    X = A * T
    if X < 1e80:
        # numerator expanded in A - 1 and T - 1 so the constant terms cancel exactly
        al = 2.0 * _sq(math.sinh(a))
        be = 2.0 * _sq(math.sinh(t))
        n = 4.0 * be + 2.0 * be * be + 2.0 * al * be + al * al * be + al * al
        n -= (3.0 * al * al + al * al * al) * _sq(1.0 + be)
        d = _sq(X + 1.0) * _xm1(a, t) ** 1.5
        return n / d
    num = (3.0 - A * A) / A * X ** -1.5 + (A * A - 1.0) / A * X ** -2.5 - 2.0 * A * X ** -3.5
    return num / (_sq(1.0 + 1.0 / X) * (1.0 - 1.0 / X) ** 1.5)


def k_xs(a, t):
    if 2.0 * a + 2.0 * t > 700.0:
        return 0.0
    X = math.cosh(2.0 * a) * math.cosh(2.0 * t)
    return SQRT2 * math.sinh(2.0 * a) / ((X + 1.0) * math.sqrt(_xm1(a, t)))


def k_xa(a, t):
    if 2.0 * a + 2.0 * t > 700.0:
        return 0.0
    A = math.cosh(2.0 * a)
    C = math.cosh(2.0 * t)
    X = A * C
    xm1 = _xm1(a, t)
    g = 1.0 / ((X + 1.0) * math.sqrt(xm1))
    if X < 1e40:
        al = 2.0 * _sq(math.sinh(a))
        ga = 2.0 * _sq(math.sinh(t))
        n = 4.0 * ga + 2.0 * ga * ga + 2.0 * al * ga
        n -= al * al * (2.0 + 5.0 * ga + 3.0 * ga * ga) + al * al * al * _sq(1.0 + ga)
        return SQRT2 * g * n / ((X + 1.0) * xm1)
    return SQRT2 * g * (2.0 * A - (A * A - 1.0) * (C / (X + 1.0)) * ((3.0 * X - 1.0) / xm1))


def k_band(a, tau):
    r, q = _rq(a, tau)
    return 4.0 * math.pi * math.sinh(a + tau) / q


def k_deficit(a, tau):
    r, q = _rq(a, tau)
    # sinh(a + tau) * r == sinh(2a) / (2 cosh(a + tau))
    return 0.5 * math.sinh(2.0 * a) / math.cosh(a + tau) * r / (q * (1.0 + q))


def k_kconst(a, v):
    # a is unused; integrand in v = 1 - x
    x = 1.0 - v
    q = math.sqrt(v * (1.0 + x) * (1.0 + x * x))
    return x * x / (q * (1.0 + q))


_TABLE = (k_rho, k_drho, k_d2rho, k_jacobi_i, k_xs, k_xa, k_band, k_deficit, k_kconst)


def evaluate(kind, a, x):
    """Value of kernel ``kind`` at parameter ``a`` and abscissa ``x``."""
    return _TABLE[kind](a, x)


def integrate(kind, a, lo, hi, mode, abs_tol, rel_tol, max_evals):
    """Integrate kernel ``kind``; returns (value, err, evals, status)."""
    k = _TABLE[kind]
    return integrate_mode(lambda x: k(a, x), lo, hi, mode, abs_tol, rel_tol, int(max_evals))
