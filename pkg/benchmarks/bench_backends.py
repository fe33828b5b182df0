"""Time the compiled kernels against the pure-Python fallback.

Run with ``python benchmarks/bench_backends.py``. Each workload is timed
under both backends and the speedup is printed; results are also checked
to agree bit for bit.
"""

import argparse
import time

import numpy as np

import hypcat
from hypcat import E_of, compiled_available, use_backend, varrho, varrho_prime
from hypcat.lemmas import verify_lemma


def _varrho_sweep():
    return [varrho(a) for a in np.linspace(0.05, 3.0, 2000)]


def _varrho_prime_sweep():
    return [varrho_prime(a) for a in np.linspace(0.05, 3.0, 1000)]


def _E_sweep():
    return [E_of(a) for a in np.linspace(0.1, 1.5, 200)]


def _lemma_rows():
    v = verify_lemma("drho", 100)
    return [v.worst_value]


WORKLOADS = {
    "varrho x2000": _varrho_sweep,
    "varrho' x1000": _varrho_prime_sweep,
    "E x200": _E_sweep,
    "lemma drho grid 100": _lemma_rows,
}


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if not compiled_available():
        print("compiled kernels are not built; only the Python backend is available")
        return 1
    print(f"hypcat {hypcat.__version__}, best of {args.repeat}")
    print(f"{'workload':<22}{'python [s]':>12}{'compiled [s]':>14}{'speedup':>10}  identical")
    for name, fn in WORKLOADS.items():
        with use_backend("python"):
            tp, rp = _time(fn, args.repeat)
        with use_backend("compiled"):
            tc, rc = _time(fn, args.repeat)
        print(f"{name:<22}{tp:>12.4f}{tc:>14.4f}{tp / tc:>10.1f}  {rp == rc}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
