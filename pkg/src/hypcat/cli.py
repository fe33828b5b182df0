"""Command-line front end: ``hypcat <subcommand> [options]``.

Scalars are written as JSON (12 significant digits), curves as CSV (17
significant digits) and meshes as OBJ. Exit status is 0 on success, 2 for
usage and domain errors and 1 when a computation or a write fails.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .models import DomainError
from .quad import QuadratureError, Tolerance, using_tolerance

__all__ = ["RunConfig", "build_parser", "run", "main"]

REFS = {
    "constants": "named constants of the stability, least-area and helicoid theorems",
    "a_c": "critical neck a_c: the unique maximum of varrho, stability threshold",
    "varrho_a_c": "maximal half-width varrho(a_c) (theorem of Gomes)",
    "two_varrho_a_c": "largest distance 2 varrho(a_c) between the boundary planes (theorem of Gomes)",
    "K": "constant K of the area-deficit lemma",
    "a_l": "least-area threshold a_l = acosh(1 / (1 - K))",
    "two_varrho_a_l": "distance 2 varrho(a_l) in the least-area corollary",
    "abar_c": "critical helicoid pitch coth(a_c)",
    "A3": "constant A3 bounding the region of the phi lemma",
    "A4": "constant A4 bounding the region of the psi lemma",
    "delta": "de Oliveira-Soret gap cosh(varrho(a_c)) - 1",
    "classify-catenoid": "stability classification of spherical catenoids via the Jacobi field xi",
    "classify-helicoid": "helicoid stability through the conjugate pitch abar = coth(a)",
    "rho-curve": "Gomes function varrho(a) and its derivatives",
    "catenary-curve": "catenary sigma_a in arc length (x(a, s), y(a, s))",
    "jacobi-profile": "Jacobi fields zeta and xi along sigma_a with the first zero z(a)",
    "envelope": "envelope of the unstable catenaries at s = z(a)",
    "intersect": "intersection of two catenaries, existing iff varrho(a1) < varrho(a2)",
    "area": "coarea comparison of a catenoid band with the two spanning geodesic disks",
    "mesh": "catenoid and helicoid parametrizations",
    "lemmas-verify": "grid evidence for the sign lemmas on phi, psi, w and the partials of rho",
}


@dataclass
class RunConfig:
    subcommand: str
    params: dict
    output: Optional[str] = None
    format: str = "json"
    tol: Optional[Tolerance] = None
    extra: dict = field(default_factory=dict)


_FORMATS = {
    "constants": "json", "classify-catenoid": "json", "classify-helicoid": "json",
    "intersect": "json", "area": "json", "lemmas-verify": "json",
    "rho-curve": "csv", "catenary-curve": "csv", "jacobi-profile": "csv", "envelope": "csv",
    "mesh": "obj",
}


# ---------------------------------------------------------------- formatting

def _round(obj):
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float("%.12g" % x)
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_round(obj), indent=2) + "\n"


# ---------------------------------------------------------------- subcommands

def _samples(n):
    n = int(n)
    if n < 2:
        raise DomainError(f"--samples must be at least 2, got {n}")
    return n


def _interval(lo, hi, what):
    if not lo < hi:
        raise DomainError(f"{what}: need min < max, got {lo!r} >= {hi!r}")


def cmd_constants(args):
    from .catenary import varrho
    from .helicoid import abar_c
    from .jacobi import find_a_c
    from .leastarea import K_const, a_l_const, oliveira_soret_delta
    from .lemmas import A3_const, A4_const

    a_c = find_a_c()
    a_l = a_l_const()
    vals = {
        "a_c": a_c,
        "varrho_a_c": varrho(a_c),
        "two_varrho_a_c": 2.0 * varrho(a_c),
        "K": K_const(),
        "a_l": a_l,
        "two_varrho_a_l": 2.0 * varrho(a_l),
        "abar_c": abar_c(),
        "A3": A3_const(),
        "A4": A4_const(),
        "delta": oliveira_soret_delta(),
    }
    out = {"constants": {k: {"value": v, "paper_ref": REFS[k]} for k, v in vals.items()},
           "paper_ref": REFS["constants"]}
    return dumps(out)


def cmd_classify_catenoid(args):
    from .jacobi import classify_catenoid

    out = classify_catenoid(args.a).as_dict()
    out["paper_ref"] = REFS["classify-catenoid"]
    return dumps(out)


def cmd_classify_helicoid(args):
    from .helicoid import classify_helicoid

    out = classify_helicoid(args.pitch).as_dict()
    out["paper_ref"] = REFS["classify-helicoid"]
    return dumps(out)


def cmd_rho_curve(args):
    from .catenary import varrho, varrho_prime, varrho_second
    from .surface import write_csv

    _interval(args.a_min, args.a_max, "rho-curve")
    fn, name = {0: (varrho, "varrho"), 1: (varrho_prime, "varrho_prime"),
                2: (varrho_second, "varrho_second")}[args.derivative]
    grid = np.linspace(args.a_min, args.a_max, _samples(args.samples))
    buf = io.StringIO()
    write_csv(["a", name], ((float(a), fn(a)) for a in grid), buf)
    return buf.getvalue()


def cmd_catenary_curve(args):
    from .catenary import catenary_curve
    from .surface import write_csv

    if not args.s_max > 0.0:
        raise DomainError("--s-max must be positive")
    s = np.linspace(-args.s_max, args.s_max, _samples(args.samples))
    buf = io.StringIO()
    write_csv(["s", "x", "y", "sin_theta"], (tuple(map(float, r)) for r in catenary_curve(args.a, s)), buf)
    return buf.getvalue()


def cmd_jacobi_profile(args):
    from .jacobi import classify_catenoid, xi_profile
    from .surface import write_csv

    if not args.s_max > 0.0:
        raise DomainError("--s-max must be positive")
    s = np.linspace(0.0, args.s_max, _samples(args.samples))
    zetas, xis = xi_profile(args.a, s)
    cls = classify_catenoid(args.a)
    buf = io.StringIO()
    write_csv(["s", "zeta", "xi"], ((float(a), float(b), float(c)) for a, b, c in zip(s, zetas, xis)), buf)
    footer = {"a": cls.a, "kind": cls.kind.value, "E": cls.E}
    if cls.z is not None:
        footer["z"] = cls.z
    footer["paper_ref"] = REFS["jacobi-profile"]
    buf.write("# " + json.dumps(_round(footer)) + "\n")
    return buf.getvalue()


def cmd_envelope(args):
    from .jacobi import envelope_point, find_a_c
    from .surface import write_csv

    _interval(args.a_min, args.a_max, "envelope")
    if not args.a_max < find_a_c():
        raise DomainError(f"envelope points exist only for a < a_c = {find_a_c():.6f}")
    grid = np.linspace(args.a_min, args.a_max, _samples(args.samples))
    buf = io.StringIO()
    write_csv(["a", "x", "y", "tangency_residual"],
              (tuple(map(float, envelope_point(a))) for a in grid), buf)
    return buf.getvalue()


def cmd_intersect(args):
    from .jacobi import intersect_catenaries

    hit = intersect_catenaries(args.a1, args.a2)
    out = {"a1": args.a1, "a2": args.a2, "intersects": hit is not None,
           "x": hit[0] if hit else None, "y": hit[1] if hit else None,
           "paper_ref": REFS["intersect"]}
    return dumps(out)


def cmd_area(args):
    from .leastarea import compare_areas

    out = compare_areas(args.a, args.y1).as_dict()
    out["paper_ref"] = REFS["area"]
    return dumps(out)


def cmd_mesh(args):
    from .surface import catenoid_mesh, helicoid_mesh, write_obj

    if args.surface == "catenoid":
        mesh = catenoid_mesh(args.param, args.s_max, args.n1, args.n2, args.model)
    else:
        mesh = helicoid_mesh(args.param, args.model, args.u_max, args.v_max, args.n1, args.n2)
    buf = io.StringIO()
    buf.write(f"# {args.surface} param={args.param:.12g}: {REFS['mesh']}\n")
    write_obj(mesh, buf)
    return buf.getvalue()


def cmd_lemmas_verify(args):
    from .lemmas import A3_const, A4_const, verify_all

    verdicts = verify_all(args.grid)
    out = {"A3": A3_const(), "A4": A4_const(),
           "verdicts": [v.as_dict() for v in verdicts],
           "all_hold": all(v.holds for v in verdicts),
           "evidence": "grid sampling, not a proof",
           "paper_ref": REFS["lemmas-verify"]}
    if any(v.violations < 0 for v in verdicts):
        raise QuadratureError("quadrature failed during lemma verification:\n" + dumps(out))
    return dumps(out)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", default=None, help="output file (default: standard output)")
    common.add_argument("--abs-tol", type=float, default=None, help="absolute quadrature tolerance")
    common.add_argument("--rel-tol", type=float, default=None, help="relative quadrature tolerance")
    common.add_argument("--max-evals", type=int, default=None,
                        help="integrand evaluation budget per integral (default: $HYPCAT_MAX_EVALS or 1000000)")

    p = argparse.ArgumentParser(prog="hypcat", description="Spherical catenoids and helicoids in hyperbolic space.")
    p.add_argument("--version", action="version", version=f"hypcat {__version__}")
    sub = p.add_subparsers(dest="subcommand", metavar="SUBCOMMAND", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("constants", cmd_constants, "all named constants as JSON")
    sp.add_argument("--json", action="store_true", help="JSON output (the only format)")

    sp = add("classify-catenoid", cmd_classify_catenoid, "stability class of C_a")
    sp.add_argument("--a", type=float, required=True)

    sp = add("classify-helicoid", cmd_classify_helicoid, "stability class of the helicoid with pitch abar")
    sp.add_argument("--pitch", type=float, required=True)

    sp = add("rho-curve", cmd_rho_curve, "varrho or a derivative on a grid of a, as CSV")
    sp.add_argument("--a-min", type=float, required=True)
    sp.add_argument("--a-max", type=float, required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--derivative", type=int, choices=(0, 1, 2), default=0)

    sp = add("catenary-curve", cmd_catenary_curve, "sigma_a sampled on s in [-s_max, s_max], as CSV")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--s-max", type=float, required=True)
    sp.add_argument("--samples", type=int, required=True)

    sp = add("jacobi-profile", cmd_jacobi_profile, "zeta and xi on s in [0, s_max], as CSV with a JSON footer")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--s-max", type=float, required=True)
    sp.add_argument("--samples", type=int, required=True)

    sp = add("envelope", cmd_envelope, "envelope points for a in [a_min, a_max] below a_c, as CSV")
    sp.add_argument("--a-min", type=float, required=True)
    sp.add_argument("--a-max", type=float, required=True)
    sp.add_argument("--samples", type=int, required=True)

    sp = add("intersect", cmd_intersect, "intersection point of sigma_a1 and sigma_a2, as JSON")
    sp.add_argument("--a1", type=float, required=True)
    sp.add_argument("--a2", type=float, required=True)

    sp = add("area", cmd_area, "band area against the disk pair, as JSON")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--y1", type=float, required=True)

    sp = add("mesh", cmd_mesh, "catenoid or helicoid mesh, as OBJ")
    sp.add_argument("--surface", choices=("catenoid", "helicoid"), required=True)
    sp.add_argument("--model", choices=("ball", "upper", "hyperboloid"), default="ball")
    sp.add_argument("--param", type=float, required=True, help="neck a (catenoid) or pitch abar (helicoid)")
    sp.add_argument("--s-max", type=float, default=2.5, help="catenoid arc-length range")
    sp.add_argument("--u-max", type=float, default=2.0, help="helicoid u range")
    sp.add_argument("--v-max", type=float, default=2.0, help="helicoid v range")
    sp.add_argument("--n1", type=int, default=48, help="samples along s (catenoid) or u (helicoid)")
    sp.add_argument("--n2", type=int, default=32, help="samples along theta (catenoid) or v (helicoid)")

    sp = add("lemmas-verify", cmd_lemmas_verify, "grid verification of the sign lemmas, as JSON")
    sp.add_argument("--grid", type=int, default=200)
    return p


def _config(args) -> RunConfig:
    base = Tolerance.default()
    tol = None
    if args.abs_tol is not None or args.rel_tol is not None or args.max_evals is not None:
        tol = Tolerance(args.abs_tol if args.abs_tol is not None else base.abs_tol,
                        args.rel_tol if args.rel_tol is not None else base.rel_tol,
                        args.max_evals if args.max_evals is not None else base.max_evals)
    params = {k: v for k, v in vars(args).items()
              if k not in ("func", "subcommand", "output", "abs_tol", "rel_tol", "max_evals")}
    return RunConfig(args.subcommand, params, args.output, _FORMATS[args.subcommand], tol)


def _write(text: str, path: Optional[str]) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def run(argv=None) -> int:
    """Parse ``argv``, run the subcommand and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
    except ValueError as exc:
        print(f"hypcat: error: {exc}", file=sys.stderr)
        return 2
    try:
        if cfg.tol is not None:
            with using_tolerance(cfg.tol):
                text = args.func(args)
        else:
            text = args.func(args)
    except DomainError as exc:
        print(f"hypcat: domain error: {exc}", file=sys.stderr)
        return 2
    except (QuadratureError, RuntimeError, ArithmeticError) as exc:
        print(f"hypcat: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"hypcat: error: {exc}", file=sys.stderr)
        return 2
    try:
        _write(text, cfg.output)
    except OSError as exc:
        print(f"hypcat: cannot write {cfg.output}: {exc.strerror or exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
