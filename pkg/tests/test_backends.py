import math
import os
import subprocess
import sys

import numpy as np
import pytest

from hypcat import _backend as kb
from hypcat import (
    E_of,
    K_const,
    area_deficit,
    band_area,
    backend_name,
    compiled_available,
    rho,
    use_backend,
    varrho,
    varrho_prime,
    varrho_second,
    x_of,
    xi,
)
from hypcat.quad import BudgetExhausted, Tolerance

KINDS = [kb.RHO, kb.DRHO, kb.D2RHO, kb.JACOBI_I, kb.XS, kb.XA, kb.BAND, kb.DEFICIT, kb.KCONST]

# values are computed once per backend and compared bit for bit
QUANTITIES = {
    "varrho": lambda: [varrho(a) for a in (0.1, 0.4958, 1.3)],
    "varrho_prime": lambda: [varrho_prime(a) for a in (0.1, 0.7)],
    "varrho_second": lambda: [varrho_second(a) for a in (0.2, 0.9)],
    "rho": lambda: [rho(1.2, 2.4), rho(0.3, 5.0)],
    "x_of": lambda: [x_of(0.5, s) for s in (0.3, 2.0, 7.0)],
    "xi": lambda: [xi(0.3, s) for s in (0.5, 2.0)],
    "E": lambda: [E_of(a) for a in (0.3, 0.7)],
    "band": lambda: [band_area(1.2, 2.4)],
    "deficit": lambda: [area_deficit(a) for a in (0.5, 2.0)],
}


def test_backend_reports_name(backend):
    assert backend_name() == backend


@pytest.mark.parametrize("name", sorted(QUANTITIES))
def test_backends_bit_identical(name):
    if not compiled_available():
        pytest.skip("compiled kernels not built")
    with use_backend("python"):
        py = QUANTITIES[name]()
    with use_backend("compiled"):
        c = QUANTITIES[name]()
    assert py == c


def test_point_evaluations_identical():
    if not compiled_available():
        pytest.skip("compiled kernels not built")
    from hypcat import _kernels, _kernels_py

    for kind in KINDS:
        for a in (0.05, 0.5, 2.0):
            for x in (1e-9, 0.3, 4.0):
                if kind == kb.KCONST and x > 1:
                    continue
                assert _kernels.evaluate(kind, a, x) == _kernels_py.evaluate(kind, a, x)


def test_budget_failure_on_both(backend):
    with pytest.raises(BudgetExhausted):
        kb.integrate_kernel(kb.RHO, 0.3, 0.0, 0.0, 3, Tolerance(1e-15, 1e-15, 100))


def test_K_same(backend):
    K = kb.integrate_kernel(kb.KCONST, 0.0, 0.0, 1.0, 1).value
    assert K == pytest.approx(K_const(), abs=1e-15)


def test_unknown_backend():
    with pytest.raises(ValueError):
        with use_backend("fortran"):
            pass


def test_pure_python_env():
    code = "import hypcat; print(hypcat.backend_name(), repr(hypcat.varrho(0.4)))"
    env = dict(os.environ, HYPCAT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    name, value = out.stdout.split()
    assert name == "python"
    assert float(value) == varrho(0.4)


def test_finite_everywhere(backend):
    for a in np.linspace(0.05, 5.0, 12):
        assert math.isfinite(varrho(a)) and math.isfinite(varrho_prime(a))
