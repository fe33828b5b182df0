"""Surface sampling, numerical fundamental forms and mesh export.

Meshes are built from analytic charts. Normals come from analytic tangents,
so they are orthogonal to the surface up to rounding. The mean curvature
oracle works for any chart into the ball or the upper half space. Both
metrics are conformal to the Euclidean one, ``g = e^(2 omega) g_euc``, and
the hyperbolic mean curvature is

    H = e^(-omega) (H_euc - 2 d omega / dn),

where ``H_euc = h11 + h22`` uses ``h_ij = <X_ij, n>`` for the Euclidean
unit normal ``n``.

Hyperboloid meshes store the spatial part ``(x2, x3, x4)`` of each point;
``x1 = sqrt(1 + |x|^2)`` is implied.
"""
from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

from . import _backend as kb
from .catenary import check_a, x_of, y_of
from .helicoid import check_pitch
from .models import (
    DomainError,
    LorentzVec,
    ball_to_hyperboloid,
    ball_to_upperhalf,
)
from .quad import Tolerance, integrate_smooth

__all__ = [
    "Model",
    "SurfaceMesh",
    "FundamentalForms",
    "SingularChartError",
    "CurveKind",
    "catenoid_ball_chart",
    "helicoid_chart",
    "catenoid_mesh",
    "helicoid_mesh",
    "lorentz_catenoid_frame",
    "lorentz_catenoid_curve",
    "first_fundamental_form",
    "mean_curvature",
    "export_obj",
    "export_csv",
    "read_obj",
]


class Model(str, enum.Enum):
    BALL = "ball"
    UPPER = "upper"
    HYPERBOLOID = "hyperboloid"

    @classmethod
    def parse(cls, value) -> "Model":
        if isinstance(value, cls):
            return value
        key = str(value).lower()
        aliases = {"ball": cls.BALL, "upper": cls.UPPER, "upperhalf": cls.UPPER,
                   "upper_half": cls.UPPER, "hyperboloid": cls.HYPERBOLOID}
        if key not in aliases:
            raise DomainError(f"unknown model {value!r}; use ball, upper or hyperboloid")
        return aliases[key]


class SingularChartError(DomainError):
    """The chart is not an immersion at the requested parameters."""


@dataclass
class SurfaceMesh:
    vertices: np.ndarray
    normals: np.ndarray
    faces: np.ndarray
    model: Model

    def __post_init__(self):
        self.vertices = np.asarray(self.vertices, dtype=float).reshape(-1, 3)
        self.normals = np.asarray(self.normals, dtype=float).reshape(-1, 3)
        self.faces = np.asarray(self.faces, dtype=np.int64).reshape(-1, 3)
        self.model = Model.parse(self.model)
        n = len(self.vertices)
        if len(self.normals) != n:
            raise ValueError("one normal per vertex is required")
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= n):
            raise ValueError("face index out of range")
        if not np.all(np.isfinite(self.vertices)):
            raise DomainError("mesh has non-finite vertices; shrink the parameter ranges")
        if self.model is Model.BALL and np.any(np.einsum("ij,ij->i", self.vertices, self.vertices) >= 1.0):
            raise DomainError("ball mesh reaches the unit sphere; shrink the parameter ranges")
        if self.model is Model.UPPER and np.any(self.vertices[:, 2] <= 0.0):
            raise DomainError("upper half space mesh reaches t = 0; shrink the parameter ranges")


class FundamentalForms(NamedTuple):
    E: float
    F: float
    G: float
    H: float
    at: tuple


# ---------------------------------------------------------------- charts

def _uv_partials(x, y):
    """``(u, v)`` of the half-disk point with warped coordinates ``(x, y)``, and the Jacobian."""
    cx, sx, cy, sy = math.cosh(x), math.sinh(x), math.cosh(y), math.sinh(y)
    d = 1.0 + cx * cy
    d2 = d * d
    u = sx * cy / d
    v = sy / d
    return u, v, (cy * (cx + cy) / d2, sx * sy / d2, -sx * sy * cy / d2, (cx + cy) / d2)


def _catenary_speed(a, s):
    """``(x_s, y_s)`` for the arc-length parametrization of ``sigma_a``."""
    xs = kb.evaluate(kb.XS, a, abs(s))
    y = y_of(a, s)
    if s == 0.0:
        return xs, 0.0
    ys = math.cosh(2.0 * a) * math.sinh(2.0 * s) / math.sinh(2.0 * y)
    return xs, ys


def catenoid_ball_chart(a, tol: Tolerance | None = None) -> Callable:
    """``Y(s, theta) = (u, v cos theta, v sin theta)`` for ``C_a`` in the ball."""
    a = check_a(a)
    tol = tol or Tolerance(1e-13, 1e-13)

    def chart(s, theta):
        u, v, _ = _uv_partials(x_of(a, s, tol), y_of(a, s))
        return np.array([u, v * math.cos(theta), v * math.sin(theta)])

    return chart


def _helicoid_ball_tangents(abar, u, v):
    cu, su, cv, sv = math.cosh(u), math.sinh(u), math.cosh(v), math.sinh(v)
    c, s = math.cos(abar * v), math.sin(abar * v)
    d = 1.0 + cu * cv
    num = np.array([su * c, su * s, cu * sv])
    num_u = np.array([cu * c, cu * s, su * sv])
    num_v = np.array([-abar * su * s, abar * su * c, cu * cv])
    p = num / d
    return p, (num_u - p * (su * cv)) / d, (num_v - p * (cu * sv)) / d


def _helicoid_upper_tangents(abar, u, v):
    ev, th, sh = math.exp(v), math.tanh(u), 1.0 / math.cosh(u)
    c, s = math.cos(abar * v), math.sin(abar * v)
    p = np.array([ev * th * c, ev * th * s, ev * sh])
    pu = np.array([ev * sh * sh * c, ev * sh * sh * s, -ev * sh * th])
    pv = np.array([ev * th * (c - abar * s), ev * th * (s + abar * c), ev * sh])
    return p, pu, pv


def _helicoid_hyp_tangents(abar, u, v):
    cu, su, cv, sv = math.cosh(u), math.sinh(u), math.cosh(v), math.sinh(v)
    c, s = math.cos(abar * v), math.sin(abar * v)
    p = np.array([cu * sv, su * c, su * s])
    pu = np.array([su * sv, cu * c, cu * s])
    pv = np.array([cu * cv, -abar * su * s, abar * su * c])
    return p, pu, pv


_HELICOID_TANGENTS = {
    Model.BALL: _helicoid_ball_tangents,
    Model.UPPER: _helicoid_upper_tangents,
    Model.HYPERBOLOID: _helicoid_hyp_tangents,
}


def helicoid_chart(abar, model="ball") -> Callable:
    """Chart ``(u, v) -> point`` of the helicoid in the given model (3-vectors)."""
    abar = check_pitch(abar)
    fn = _HELICOID_TANGENTS[Model.parse(model)]
    return lambda u, v: fn(abar, u, v)[0]


def _ball_to_model(model):
    if model is Model.BALL:
        return lambda p: np.asarray(p, dtype=float)
    if model is Model.UPPER:
        return lambda p: np.array(ball_to_upperhalf(p))
    return lambda p: np.array(ball_to_hyperboloid(p)[1:])


def _push(f, p, t, eps=1e-7):
    """Directional derivative of the model map ``f`` at ``p`` along ``t``."""
    scale = eps / max(float(np.linalg.norm(t)), 1e-300)
    return (f(p + scale * t) - f(p - scale * t)) / (2.0 * scale)


def _unit(n):
    norm = float(np.linalg.norm(n))
    if not norm > 0.0:
        raise SingularChartError("degenerate tangent plane")
    return n / norm


def _grid_faces(verts, n1, n2, wrap2=False):
    """Triangulate the ``n1 x n2`` vertex grid, splitting each quad along its shorter diagonal.

    Vertex ``(i, j)`` has index ``i * n2 + j``. Triangles are counterclockwise
    when seen from the side of ``d/dp1 x d/dp2``.
    """
    faces = []
    cols = n2 if wrap2 else n2 - 1
    for i in range(n1 - 1):
        for j in range(cols):
            jn = (j + 1) % n2
            p00, p10 = i * n2 + j, (i + 1) * n2 + j
            p11, p01 = (i + 1) * n2 + jn, i * n2 + jn
            d1 = np.linalg.norm(verts[p00] - verts[p11])
            d2 = np.linalg.norm(verts[p10] - verts[p01])
            if d1 <= d2:
                faces.append((p00, p10, p11))
                faces.append((p00, p11, p01))
            else:
                faces.append((p00, p10, p01))
                faces.append((p10, p11, p01))
    return np.array(faces, dtype=np.int64).reshape(-1, 3)


def _check_resolution(name, n, least):
    n = int(n)
    if n < least:
        raise DomainError(f"{name} = {n} is below the minimum {least}")
    return n


def catenoid_mesh(a, s_max, n_s, n_theta, model="ball") -> SurfaceMesh:
    """Sample ``C_a`` for ``s`` in ``[-s_max, s_max]`` and ``theta`` in ``[0, 2 pi)``.

    The normal is ``(v_s, -u_s cos theta, -u_s sin theta)`` normalized. Other
    models are reached through the model isometries.
    """
    a = check_a(a)
    s_max = float(s_max)
    if not s_max > 0.0:
        raise DomainError(f"s_max = {s_max!r} must be positive")
    n_s = _check_resolution("n_s", n_s, 2)
    n_theta = _check_resolution("n_theta", n_theta, 3)
    model = Model.parse(model)
    to_model = _ball_to_model(model)
    s_vals = np.linspace(-s_max, s_max, n_s)
    # accumulate x(a, s) panel by panel from the neck
    from .catenary import catenary_curve

    prof = catenary_curve(a, s_vals)
    thetas = 2.0 * math.pi * np.arange(n_theta) / n_theta
    verts = np.empty((n_s * n_theta, 3))
    norms = np.empty_like(verts)
    k = 0
    for i, s in enumerate(s_vals):
        u, v, (ux, uy, vx, vy) = _uv_partials(prof[i, 1], prof[i, 2])
        xs, ys = _catenary_speed(a, float(s))
        us, vs = ux * xs + uy * ys, vx * xs + vy * ys
        for th in thetas:
            c, sn = math.cos(th), math.sin(th)
            p = np.array([u, v * c, v * sn])
            if model is Model.BALL:
                verts[k] = p
                norms[k] = _unit(np.array([vs, -us * c, -us * sn]))
            else:
                t1 = _push(to_model, p, np.array([us, vs * c, vs * sn]))
                t2 = _push(to_model, p, np.array([0.0, -v * sn, v * c]))
                verts[k] = to_model(p)
                norms[k] = _unit(np.cross(t1, t2))
            k += 1
    return SurfaceMesh(verts, norms, _grid_faces(verts, n_s, n_theta, wrap2=True), model)


def helicoid_mesh(abar, model="ball", u_max=2.0, v_max=2.0, n_u=33, n_v=33) -> SurfaceMesh:
    """Sample the helicoid over ``[-u_max, u_max] x [-v_max, v_max]`` in the given model."""
    abar = check_pitch(abar)
    model = Model.parse(model)
    u_max, v_max = float(u_max), float(v_max)
    if not (u_max > 0.0 and v_max > 0.0):
        raise DomainError("u_max and v_max must be positive")
    n_u = _check_resolution("n_u", n_u, 2)
    n_v = _check_resolution("n_v", n_v, 2)
    fn = _HELICOID_TANGENTS[model]
    verts = np.empty((n_u * n_v, 3))
    norms = np.empty_like(verts)
    k = 0
    for u in np.linspace(-u_max, u_max, n_u):
        for v in np.linspace(-v_max, v_max, n_v):
            p, pu, pv = fn(abar, float(u), float(v))
            verts[k] = p
            norms[k] = _unit(np.cross(pu, pv))
            k += 1
    return SurfaceMesh(verts, norms, _grid_faces(verts, n_u, n_v), model)


# ---------------------------------------------------------------- Lorentz curves

class CurveKind(str, enum.Enum):
    SPHERICAL = "Spherical"
    HYPERBOLIC = "Hyperbolic"
    PARABOLIC = "Parabolic"


class FramePoint(NamedTuple):
    """Generating-curve coordinates in the adapted basis ``e1..e4`` (``x2 = 0``)."""

    x1: float
    x3: float
    x4: float
    phi: float


def _check_curve_kind(kind, atilde):
    kind = CurveKind(kind) if not isinstance(kind, CurveKind) else kind
    if kind is CurveKind.PARABOLIC:
        return kind, None
    if atilde is None or not float(atilde) > 0.5:
        raise DomainError(f"{kind.value} catenoid needs atilde > 1/2, got {atilde!r}")
    return kind, float(atilde)


def _odd_integral(f, s, tol):
    """``int_0^s f`` for an even integrand ``f``."""
    if s == 0.0:
        return 0.0
    return math.copysign(integrate_smooth(f, 0.0, abs(s), tol).value, s)


def lorentz_catenoid_frame(kind, s, atilde=None, tol: Tolerance | None = None) -> FramePoint:
    """Generating curve in the adapted basis.

    Spherical: ``x1^2 + x3^2 - x4^2 = -1`` with ``e4`` timelike.
    Hyperbolic: ``-x1^2 + x3^2 + x4^2 = -1`` with ``e1`` timelike.
    Parabolic: ``e1, e3`` null with ``<e1, e3> = 1``; the third coordinate
    ``x3 = -(1 + x4^2) / (2 x1)`` lies on the hyperboloid only with this sign.
    For the parabolic curve ``phi`` is the integral ``int_0^s cosh(2 sigma)^(-3/2)``.
    """
    kind, at = _check_curve_kind(kind, atilde)
    s = float(s)
    c2 = math.cosh(2.0 * s)
    if kind is CurveKind.PARABOLIC:
        phi = _odd_integral(lambda z: math.cosh(2.0 * z) ** -1.5, s, tol)
        x1 = math.sqrt(c2)
        x4 = x1 * phi
        return FramePoint(x1, -(1.0 + x4 * x4) / (2.0 * x1), x4, phi)
    k = math.sqrt(at * at - 0.25)
    sgn = 1.0 if kind is CurveKind.SPHERICAL else -1.0

    def dphi(z):
        q = at * math.cosh(2.0 * z)
        return k / ((q + 0.5 * sgn) * math.sqrt(q - 0.5 * sgn))

    phi = _odd_integral(dphi, s, tol)
    x1 = math.sqrt(at * c2 - 0.5 * sgn)
    if kind is CurveKind.SPHERICAL:
        r = math.sqrt(x1 * x1 + 1.0)
        return FramePoint(x1, r * math.sinh(phi), r * math.cosh(phi), phi)
    r = math.sqrt(x1 * x1 - 1.0)
    return FramePoint(x1, r * math.sin(phi), r * math.cos(phi), phi)


_SQRT_HALF = math.sqrt(0.5)


def lorentz_catenoid_curve(kind, s, atilde=None, tol: Tolerance | None = None) -> LorentzVec:
    """Generating curve of a catenoid in standard hyperboloid coordinates.

    Basis changes (standard ``E1`` timelike):

    * Spherical: ``e1 = E4``, ``e3 = E3``, ``e4 = E1``. The rotation axis is
      the ``x3`` geodesic, which the ball map sends to the ``u`` axis.
    * Hyperbolic: the identity.
    * Parabolic: ``e1 = (E1 + E3) / sqrt 2``, ``e3 = (E3 - E1) / sqrt 2``,
      ``e2 = E2``, ``e4 = E4``.
    """
    f = lorentz_catenoid_frame(kind, s, atilde, tol)
    kind = CurveKind(kind)
    if kind is CurveKind.SPHERICAL:
        return LorentzVec(f.x4, 0.0, f.x3, f.x1)
    if kind is CurveKind.HYPERBOLIC:
        return LorentzVec(f.x1, 0.0, f.x3, f.x4)
    return LorentzVec(_SQRT_HALF * (f.x1 - f.x3), 0.0, _SQRT_HALF * (f.x1 + f.x3), f.x4)


# ---------------------------------------------------------------- geometry

def _omega(model, p):
    """Conformal exponent and its Euclidean gradient."""
    if model is Model.BALL:
        r2 = float(p @ p)
        if not r2 < 1.0:
            raise DomainError("chart point outside the ball")
        return math.log(2.0 / (1.0 - r2)), 2.0 * p / (1.0 - r2)
    if not p[2] > 0.0:
        raise DomainError("chart point outside the upper half space")
    return -math.log(p[2]), np.array([0.0, 0.0, -1.0 / p[2]])


def _d1(f, h):
    # five-point stencils; f holds the values at -2h, -h, +h, +2h
    return (f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h)


def _d2(f, f0, h):
    return (-f[0] + 16.0 * f[1] - 30.0 * f0 + 16.0 * f[2] - f[3]) / (12.0 * h * h)


def _mixed(X, p1, p2, h):
    return (X(p1 + h, p2 + h) - X(p1 + h, p2 - h) - X(p1 - h, p2 + h) + X(p1 - h, p2 - h)) / (4.0 * h * h)


def first_fundamental_form(chart: Callable, p1, p2, h=1e-3, model="ball") -> FundamentalForms:
    """First fundamental form and mean curvature of ``chart`` at ``(p1, p2)``.

    Derivatives use fourth-order central differences with step ``h``; the
    mixed derivative is Richardson-extrapolated from steps ``h`` and ``2h``.
    ``model`` is ``ball`` or ``upper``; hyperboloid charts are pushed into
    the ball first.
    """
    h = float(h)
    if not 1e-5 <= h <= 1e-2:
        raise ValueError(f"step h = {h!r} must lie in [1e-5, 1e-2]")
    model = Model.parse(model)
    if model is Model.HYPERBOLOID:
        from .models import hyperboloid_to_ball

        def pushed(a, b, _c=chart):
            q = np.asarray(_c(a, b), dtype=float)
            x1 = math.sqrt(1.0 + float(q @ q)) if len(q) == 3 else q[0]
            full = (x1, *q) if len(q) == 3 else tuple(q)
            return np.array(hyperboloid_to_ball(full))

        return first_fundamental_form(pushed, p1, p2, h, Model.BALL)

    def X(a, b):
        return np.asarray(chart(a, b), dtype=float)

    p1, p2 = float(p1), float(p2)
    x0 = X(p1, p2)
    a1 = [X(p1 + k * h, p2) for k in (-2, -1, 1, 2)]
    a2 = [X(p1, p2 + k * h) for k in (-2, -1, 1, 2)]
    X1 = _d1(a1, h)
    X2 = _d1(a2, h)
    X11 = _d2(a1, x0, h)
    X22 = _d2(a2, x0, h)
    X12 = (4.0 * _mixed(X, p1, p2, h) - _mixed(X, p1, p2, 2.0 * h)) / 3.0
    e11, e12, e22 = X1 @ X1, X1 @ X2, X2 @ X2
    det = e11 * e22 - e12 * e12
    omega, grad = _omega(model, x0)
    scale = math.exp(2.0 * omega)
    if det * scale * scale < 1e-12:
        raise SingularChartError(f"EG - F^2 = {det * scale * scale:.3g} at ({p1}, {p2})")
    n = np.cross(X1, X2) / math.sqrt(det)
    b11, b12, b22 = X11 @ n, X12 @ n, X22 @ n
    H_euc = (b11 * e22 - 2.0 * b12 * e12 + b22 * e11) / det
    H = math.exp(-omega) * (H_euc - 2.0 * float(grad @ n))
    return FundamentalForms(scale * e11, scale * e12, scale * e22, H, (p1, p2))


def mean_curvature(chart: Callable, p1, p2, h=1e-3, model="ball") -> float:
    return first_fundamental_form(chart, p1, p2, h, model).H


# ---------------------------------------------------------------- export

def _fmt(x) -> str:
    return "%.17g" % x


def _open_out(path):
    try:
        return open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc


def write_obj(mesh: SurfaceMesh, fh) -> None:
    fh.write(f"# model {mesh.model.value}\n")
    for v in mesh.vertices:
        fh.write("v " + " ".join(_fmt(c) for c in v) + "\n")
    for n in mesh.normals:
        fh.write("vn " + " ".join(_fmt(c) for c in n) + "\n")
    for f in mesh.faces + 1:
        fh.write("f " + " ".join(f"{i}//{i}" for i in f) + "\n")


def export_obj(mesh: SurfaceMesh, path) -> None:
    """Write ``v``/``vn``/``f`` records; faces are 1-indexed and share vertex and normal indices."""
    with _open_out(path) as fh:
        write_obj(mesh, fh)


def write_csv(header: Sequence[str], rows: Iterable[Sequence[float]], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(x) if isinstance(x, (float, np.floating)) else x for x in row])


def export_csv(header: Sequence[str], rows: Iterable[Sequence[float]], path) -> None:
    """CSV with a header row and floats at 17 significant digits."""
    with _open_out(path) as fh:
        write_csv(header, rows, fh)


def read_obj(path):
    """Minimal reader for the files written by ``export_obj``: (vertices, normals, faces)."""
    vs, ns, fs = [], [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            if parts[0] == "v":
                vs.append([float(x) for x in parts[1:4]])
            elif parts[0] == "vn":
                ns.append([float(x) for x in parts[1:4]])
            elif parts[0] == "f":
                fs.append([int(x.split("/")[0]) - 1 for x in parts[1:]])
    return np.array(vs), np.array(ns), np.array(fs, dtype=np.int64)
