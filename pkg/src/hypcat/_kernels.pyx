# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integrands and adaptive G7/K15 driver.

Same algorithm, same operation order and same libm calls as the pure-Python
pair ``quad._adaptive`` / ``_kernels_py``, so both backends agree to the bit
on IEEE hardware without fused multiply-add.
"""
import math

from libc.math cimport sinh, cosh, exp, expm1, log, sqrt, pow, fabs, isnan, isfinite, M_PI
from libc.stdlib cimport malloc, realloc, free

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
BACKEND = "compiled"

DEF OK = 0
DEF BUDGET = 1
DEF NONFINITE = 2
DEF DIVERGED = 3
DEF ROUNDOFF = 4
DEF SNAP_START = 960

cdef double SQRT2 = sqrt(2.0)

cdef double XGK[8]
cdef double WGK[8]
cdef double WG[4]
XGK[:] = [0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
          0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
          0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
          0.207784955007898467600689403773245, 0.0]
WGK[:] = [0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
          0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
          0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
          0.204432940075298892414161999234649, 0.209482141084727828012999174891714]
WG[:] = [0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
         0.381830050505118944950369775488975, 0.417959183673469387755102040816327]

cdef double PSI_C[8]
cdef double PSI_A[8]
cdef double PSI_T[8]
PSI_C[:] = [76.0, -22.0, 29.0, 1.0, -26.0, -6.0, -25.0, 1.0]
PSI_A[:] = [2.0, 0.0, 4.0, 8.0, 6.0, 10.0, 8.0, 12.0]
PSI_T[:] = [0.0, 2.0, 2.0, 2.0, 4.0, 4.0, 6.0, 6.0]


cdef inline double sq(double x) nogil:
    return x * x


cdef inline double sinh_ratio(double x, double y) nogil:
    return exp(x - y) * (-expm1(-2.0 * x)) / (-expm1(-2.0 * y))


cdef inline double xm1(double a, double t) nogil:
    return sq(sinh(a + t)) + sq(sinh(a - t))


cdef inline double q_of(double a, double tau) nogil:
    cdef double s = 2.0 * a + 2.0 * tau
    return sqrt(sinh_ratio(2.0 * tau, s) * sinh_ratio(4.0 * a + 2.0 * tau, s))


cdef double k_rho(double a, double tau) nogil:
    cdef double s = 2.0 * a + 2.0 * tau
    cdef double r = sinh_ratio(2.0 * a, s)
    return r / (cosh(a + tau) * q_of(a, tau))


cdef double k_drho(double a, double tau) nogil:
    cdef double b = a + tau
    cdef double s = 2.0 * b
    cdef double c31 = exp(2.0 * a) * (1.0 + exp(-2.0 * (3.0 * a + tau))) / (1.0 + exp(-2.0 * b))
    cdef double den = 4.0 * sinh(b) * sq(cosh(b))
    den *= sqrt(sinh_ratio(2.0 * tau, s)) * pow(sinh_ratio(4.0 * a + 2.0 * tau, s), 1.5)
    return (5.0 - c31 * c31) / den


cdef double psi_scaled(double a, double tau) nogil:
    cdef double m = 12.0 * a + 6.0 * tau
    cdef double acc = 0.0, p
    cdef int i
    for i in range(8):
        p = PSI_A[i] * a + PSI_T[i] * tau
        acc += PSI_C[i] * 0.5 * (exp(p - m) - exp(-p - m))
    return acc


cdef double k_d2rho(double a, double tau) nogil:
    cdef double b = a + tau
    cdef double c = 0.5 * (1.0 + exp(-2.0 * b))
    cdef double s1 = -0.5 * expm1(-4.0 * tau)
    cdef double s2 = -0.5 * expm1(-8.0 * a - 4.0 * tau)
    cdef double den = 16.0 * c * c * c * sqrt(s1) * pow(s2, 2.5)
    return psi_scaled(a, tau) * exp(-a - 3.0 * tau) / den


cdef double k_jacobi_i(double a, double t) nogil:
    cdef double A, T, X, al, be, n, d, num
    if 2.0 * a + 2.0 * t > 700.0:
        return 0.0
    A = cosh(2.0 * a)
    T = cosh(2.0 * t)
    X = A * T
    if X < 1e80:
        al = 2.0 * sq(sinh(a))
        be = 2.0 * sq(sinh(t))
        n = 4.0 * be + 2.0 * be * be + 2.0 * al * be + al * al * be + al * al
        n -= (3.0 * al * al + al * al * al) * sq(1.0 + be)
        d = sq(X + 1.0) * pow(xm1(a, t), 1.5)
        return n / d
    num = (3.0 - A * A) / A * pow(X, -1.5) + (A * A - 1.0) / A * pow(X, -2.5) - 2.0 * A * pow(X, -3.5)
    return num / (sq(1.0 + 1.0 / X) * pow(1.0 - 1.0 / X, 1.5))


cdef double k_xs(double a, double t) nogil:
    cdef double X
    if 2.0 * a + 2.0 * t > 700.0:
        return 0.0
    X = cosh(2.0 * a) * cosh(2.0 * t)
    return SQRT2 * sinh(2.0 * a) / ((X + 1.0) * sqrt(xm1(a, t)))


cdef double k_xa(double a, double t) nogil:
    cdef double A, C, X, m1, g, al, ga, n
    if 2.0 * a + 2.0 * t > 700.0:
        return 0.0
    A = cosh(2.0 * a)
    C = cosh(2.0 * t)
    X = A * C
    m1 = xm1(a, t)
    g = 1.0 / ((X + 1.0) * sqrt(m1))
    if X < 1e40:
        al = 2.0 * sq(sinh(a))
        ga = 2.0 * sq(sinh(t))
        n = 4.0 * ga + 2.0 * ga * ga + 2.0 * al * ga
        n -= al * al * (2.0 + 5.0 * ga + 3.0 * ga * ga) + al * al * al * sq(1.0 + ga)
        return SQRT2 * g * n / ((X + 1.0) * m1)
    return SQRT2 * g * (2.0 * A - (A * A - 1.0) * (C / (X + 1.0)) * ((3.0 * X - 1.0) / m1))


cdef double k_band(double a, double tau) nogil:
    return 4.0 * M_PI * sinh(a + tau) / q_of(a, tau)


cdef double k_deficit(double a, double tau) nogil:
    cdef double s = 2.0 * a + 2.0 * tau
    cdef double r = sinh_ratio(2.0 * a, s)
    cdef double q = q_of(a, tau)
    return 0.5 * sinh(2.0 * a) / cosh(a + tau) * r / (q * (1.0 + q))


cdef double k_kconst(double a, double v) nogil:
    cdef double x = 1.0 - v
    cdef double q = sqrt(v * (1.0 + x) * (1.0 + x * x))
    return x * x / (q * (1.0 + q))


ctypedef double (*kernel_t)(double, double) nogil

cdef kernel_t TABLE[9]
TABLE[0] = k_rho
TABLE[1] = k_drho
TABLE[2] = k_d2rho
TABLE[3] = k_jacobi_i
TABLE[4] = k_xs
TABLE[5] = k_xa
TABLE[6] = k_band
TABLE[7] = k_deficit
TABLE[8] = k_kconst


cdef struct Ctx:
    kernel_t k
    double a
    double lo
    int mode


cdef inline double geval(Ctx* c, double x) nogil:
    if c.mode == 0:
        return c.k(c.a, x)
    if c.mode == 1:
        return 2.0 * x * c.k(c.a, c.lo + x * x)
    return c.k(c.a, c.lo - log(x)) / x


cdef void gk15(Ctx* c, double a, double b, double* res, double* err) nogil:
    cdef double cen = 0.5 * (a + b)
    cdef double h = 0.5 * (b - a)
    cdef double fc = geval(c, cen)
    cdef double resk = fc * WGK[7]
    cdef double resg = fc * WG[3]
    cdef double dx, fs
    cdef int j
    for j in range(7):
        dx = h * XGK[j]
        fs = geval(c, cen - dx) + geval(c, cen + dx)
        resk += WGK[j] * fs
        if j & 1:
            resg += WG[j >> 1] * fs
    res[0] = resk * h
    err[0] = fabs((resk - resg) * h)


cdef struct Panel:
    double nerr
    double lo
    double hi
    double r


cdef inline bint before(Panel* x, Panel* y) nogil:
    # tuple order (-err, lo, hi, r) as in heapq
    if x.nerr != y.nerr:
        return x.nerr < y.nerr
    if x.lo != y.lo:
        return x.lo < y.lo
    if x.hi != y.hi:
        return x.hi < y.hi
    return x.r < y.r


cdef void heap_push(Panel* h, Py_ssize_t n, Panel p) nogil:
    cdef Py_ssize_t i = n, parent
    h[i] = p
    while i > 0:
        parent = (i - 1) >> 1
        if before(&h[i], &h[parent]):
            h[i], h[parent] = h[parent], h[i]
            i = parent
        else:
            break


cdef Panel heap_pop(Panel* h, Py_ssize_t n) nogil:
    cdef Panel top = h[0]
    cdef Py_ssize_t i = 0, l, r, m
    n -= 1
    h[0] = h[n]
    while True:
        l = 2 * i + 1
        r = l + 1
        m = i
        if l < n and before(&h[l], &h[m]):
            m = l
        if r < n and before(&h[r], &h[m]):
            m = r
        if m == i:
            break
        h[i], h[m] = h[m], h[i]
        i = m
    return top


cdef tuple exact_totals(Panel* h, Py_ssize_t nh, Panel* fz, Py_ssize_t nf):
    cdef Py_ssize_t i
    rs = []
    es = []
    for i in range(nh):
        rs.append(h[i].r)
        es.append(-h[i].nerr)
    for i in range(nf):
        rs.append(fz[i].r)
        es.append(-fz[i].nerr)
    return math.fsum(rs), math.fsum(es)


cdef tuple adaptive(Ctx* c, double lo, double hi, double abs_tol, double rel_tol,
                    long max_evals, bint track_growth):
    cdef double r, e, r1, e1, r2, e2, total_r, total_e, m, value, err, bad
    cdef long evals = 15
    cdef long next_snap = SNAP_START
    cdef int status = OK
    cdef Py_ssize_t cap = 64, nh = 0, nf = 0, fcap = 16
    cdef Panel p
    cdef Panel* heap
    cdef Panel* frozen
    gk15(c, lo, hi, &r, &e)
    if not isfinite(r):
        return r, math.inf, evals, NONFINITE
    heap = <Panel*> malloc(cap * sizeof(Panel))
    frozen = <Panel*> malloc(fcap * sizeof(Panel))
    if heap == NULL or frozen == NULL:
        free(heap)
        free(frozen)
        raise MemoryError()
    snap_n = []
    snap_v = []
    try:
        p.nerr = -e
        p.lo = lo
        p.hi = hi
        p.r = r
        heap_push(heap, nh, p)
        nh += 1
        total_r = r
        total_e = e
        while True:
            if total_e <= max(abs_tol, rel_tol * fabs(total_r)):
                total_r, total_e = exact_totals(heap, nh, frozen, nf)
                if total_e <= max(abs_tol, rel_tol * fabs(total_r)):
                    break
            if nh == 0:
                status = ROUNDOFF
                break
            if evals + 30 > max_evals:
                status = BUDGET
                break
            if evals >= next_snap:
                snap_n.append(evals)
                snap_v.append(total_r)
                next_snap *= 2
            p = heap_pop(heap, nh)
            nh -= 1
            m = 0.5 * (p.lo + p.hi)
            if not (p.lo < m < p.hi):
                if nf == fcap:
                    fcap *= 2
                    frozen = <Panel*> realloc(frozen, fcap * sizeof(Panel))
                    if frozen == NULL:
                        raise MemoryError()
                frozen[nf] = p
                nf += 1
                continue
            gk15(c, p.lo, m, &r1, &e1)
            gk15(c, m, p.hi, &r2, &e2)
            evals += 30
            if not (isfinite(r1) and isfinite(r2)):
                bad = r1 + r2
                if track_growth and not isnan(bad):
                    return bad, math.inf, evals, DIVERGED
                return bad, math.inf, evals, NONFINITE
            if nh + 2 > cap:
                cap *= 2
                heap = <Panel*> realloc(heap, cap * sizeof(Panel))
                if heap == NULL:
                    raise MemoryError()
            heap_push(heap, nh, Panel(-e1, p.lo, m, r1))
            nh += 1
            heap_push(heap, nh, Panel(-e2, m, p.hi, r2))
            nh += 1
            total_r += r1 + r2 - p.r
            total_e += e1 + e2 + p.nerr
        value, err = exact_totals(heap, nh, frozen, nf)
    finally:
        free(heap)
        free(frozen)
    if status != OK and track_growth:
        earlier = [v for n, v in zip(snap_n, snap_v) if 2 * n <= evals]
        if earlier and fabs(value) - fabs(earlier[-1]) > max(err, abs_tol):
            status = DIVERGED
    return value, err, evals, status


cdef tuple run_mode(kernel_t k, double a, double lo, double hi, int mode,
                    double abs_tol, double rel_tol, long max_evals):
    cdef Ctx c
    c.k = k
    c.a = a
    c.lo = lo
    if mode == 0:
        if hi == lo:
            return 0.0, 0.0, 0, OK
        c.mode = 0
        return adaptive(&c, lo, hi, abs_tol, rel_tol, max_evals, False)
    if mode == 1:
        if hi == lo:
            return 0.0, 0.0, 0, OK
        c.mode = 1
        return adaptive(&c, 0.0, sqrt(hi - lo), abs_tol, rel_tol, max_evals, False)
    if mode == 2:
        c.mode = 2
        return adaptive(&c, 0.0, 1.0, abs_tol, rel_tol, max_evals, True)
    if mode == 3:
        v1, e1, n1, s1 = run_mode(k, a, lo, lo + 1.0, 1, 0.5 * abs_tol, rel_tol, max_evals)
        if s1 != OK:
            return v1, e1, n1, s1
        v2, e2, n2, s2 = run_mode(k, a, lo + 1.0, 0.0, 2, 0.5 * abs_tol, rel_tol, max_evals - n1)
        return v1 + v2, e1 + e2, n1 + n2, s2
    raise ValueError(f"unknown quadrature mode {mode!r}")


def evaluate(int kind, double a, double x):
    """Value of kernel ``kind`` at parameter ``a`` and abscissa ``x``."""
    if not 0 <= kind < N_KINDS:
        raise ValueError(f"unknown kernel {kind}")
    return TABLE[kind](a, x)


def integrate(int kind, double a, double lo, double hi, int mode,
              double abs_tol, double rel_tol, long max_evals):
    """Integrate kernel ``kind``; returns (value, err, evals, status)."""
    if not 0 <= kind < N_KINDS:
        raise ValueError(f"unknown kernel {kind}")
    return run_mode(TABLE[kind], a, lo, hi, mode, abs_tol, rel_tol, max_evals)
