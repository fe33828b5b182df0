"""Selects the kernel backend at import time.

The compiled extension is used when it is importable, unless the environment
variable ``HYPCAT_PURE_PYTHON=1`` is set. Both backends expose the same
``integrate``/``evaluate`` pair and produce identical numbers.
"""
import os
from contextlib import contextmanager

from . import _kernels_py
from .quad import Tolerance, check_status

_compiled = None
if os.environ.get("HYPCAT_PURE_PYTHON") != "1":
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

_active = _compiled if _compiled is not None else _kernels_py

RHO = _kernels_py.RHO
DRHO = _kernels_py.DRHO
D2RHO = _kernels_py.D2RHO
JACOBI_I = _kernels_py.JACOBI_I
XS = _kernels_py.XS
XA = _kernels_py.XA
BAND = _kernels_py.BAND
DEFICIT = _kernels_py.DEFICIT
KCONST = _kernels_py.KCONST

_NAMES = ("catenary profile", "derivative of the width", "second derivative of the width",
          "Jacobi integrand", "chart x_s", "chart x_a", "band area", "area deficit",
          "constant K")


def backend_name() -> str:
    return _active.BACKEND


def compiled_available() -> bool:
    return _compiled is not None


@contextmanager
def use_backend(name: str):
    """Temporarily switch to ``"python"`` or ``"compiled"`` kernels."""
    global _active
    if name == "python":
        new = _kernels_py
    elif name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available in this installation")
        new = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")
    old, _active = _active, new
    try:
        yield
    finally:
        _active = old


def evaluate(kind: int, a: float, x: float) -> float:
    return _active.evaluate(kind, a, x)


def integrate_kernel(kind, a, lo, hi, mode, tol=None):
    """Integrate a built-in kernel and raise on any failure status."""
    tol = tol or Tolerance.default()
    raw = _active.integrate(kind, float(a), float(lo), float(hi), mode,
                            tol.abs_tol, tol.rel_tol, tol.max_evals)
    return check_status(*raw, what=f"{_NAMES[kind]} integral (a={a:.6g})")
