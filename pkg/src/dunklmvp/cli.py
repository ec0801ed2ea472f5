"""Command-line front end.

Every subcommand reads the root system from ``--config`` (TOML) and/or
``--d``/``--k`` (flags win), prints JSON lines with floats at 17 significant
digits, and exits with

    0  success
    1  internal error (e.g. quadrature failure)
    2  validation error (bad flag, config, polynomial text, geometry)
    3  verify-mvp found failing samples
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import warnings
from fractions import Fraction

import numpy as np

from . import functions
from .core import (BlackBoxFunction, config_from_mapping, dunkl_laplacian_poly, dunkl_op,
                   green_check, load_config)
from .errors import DunklError, QuadratureError
from .harmonic import (FundamentalSolution, build_counterexample, fundamental_check,
                       gen_dunkl_harmonic, newton_potential_1d)
from .intertwining import dunkl_kernel, translate_poly, vk_inverse_poly, vk_poly
from .meanvalue import (ddt_identity_residual, mollify, parse_domain, radial_lemma_residual,
                        spherical_mean_numeric, spherical_mean_poly, verify_mvp)
from .polyalg import Polynomial, format_poly, laplacian, parse_poly, partial_derivative, reflect
from .rank1 import translate_1d
from .serialize import dumps, dumps_lines

EXIT_OK, EXIT_INTERNAL, EXIT_VALIDATION, EXIT_MVP_FAIL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    """Raise instead of exiting so run_cli owns the exit code."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise DunklError(f"not a rational number: {text!r}") from None


def _point(text: str) -> list:
    """Comma-separated rationals, e.g. ``1/2,-3``."""
    return [_rational(v) for v in text.split(",")]


def _floats(text: str) -> list:
    return [float(_rational(v)) for v in text.split(",")]


def parse_function(text: str, d: int) -> BlackBoxFunction:
    """Built-in black-box functions.

    ``bump:c,r[,h]``, ``plateau:a,b,width[,value]``, ``indicator:a,b`` (d = 1)
    and ``gaussian`` (radial, any d).
    """
    kind, _, rest = text.partition(":")
    args = _floats(rest) if rest else []
    try:
        if kind == "gaussian" and not args:
            return functions.gaussian_profile().as_function(d)
        if d != 1:
            raise DunklError(f"function {kind!r} is defined on R (d = 1)")
        if kind == "bump" and len(args) in (2, 3):
            return functions.bump(*args)
        if kind == "plateau" and len(args) in (3, 4):
            return functions.plateau(*args)
        if kind == "indicator" and len(args) == 2:
            return functions.indicator(*args)
    except ValueError as exc:
        raise DunklError(str(exc)) from None
    raise DunklError(f"unknown function spec {text!r}; expected bump:c,r[,h], "
                     "plateau:a,b,width[,value], indicator:a,b or gaussian")


def _config(args):
    data = {}
    if args.config:
        base = load_config(args.config)
        data = {"d": base.d, "k": [str(v) for v in base.k], "quad_rel_tol": base.quad_rel_tol,
                "quad_max_depth": base.quad_max_depth, "gamma_precision": base.gamma_precision}
    if args.d is not None:
        data["d"] = args.d
    if args.k is not None:
        data["k"] = args.k.split(",")
    if "d" not in data and "k" in data:
        data["d"] = len(data["k"])
    if "k" in data and len(data["k"]) == 1 and data.get("d", 1) > 1:
        data["k"] = data["k"] * data["d"]
    if "d" not in data or "k" not in data:
        raise DunklError("a root system is required: pass --config FILE or --d/--k")
    return config_from_mapping(data)


def _target(args, cfg):
    """The function a subcommand acts on: a polynomial or a black box."""
    if getattr(args, "poly", None) is not None:
        return parse_poly(args.poly, cfg.d)
    if getattr(args, "func", None) is not None:
        return parse_function(args.func, cfg.d)
    raise DunklError("pass --poly TEXT or --func SPEC")


def _rows_out(args, rows: list) -> str:
    if getattr(args, "csv", False):
        buf = io.StringIO()
        keys = list(rows[0].keys()) if rows else []
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for row in rows:
            w.writerow([_csv_cell(row[k]) for k in keys])
        return buf.getvalue()
    return dumps_lines(rows)


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(_csv_cell(u) for u in v)
    if isinstance(v, (float, np.floating, Fraction)):
        return format(float(v), ".17g")
    return v


def _text(v) -> str:
    return str(v) if isinstance(v, Fraction) else v


# ---------------------------------------------------------------------------
# subcommands


def cmd_info(args, cfg):
    return dumps({"d": cfg.d, "k": [str(v) for v in cfg.k], "gamma": str(cfg.gamma),
                  "lambda": str(cfg.lam), "c_k": cfg.c_k, "d_k": cfg.d_k,
                  "quad_rel_tol": cfg.quad_rel_tol, "quad_max_depth": cfg.quad_max_depth}) + "\n"


def cmd_apply(args, cfg):
    p = parse_poly(args.poly, cfg.d)
    op = args.op
    if op in ("dunkl", "partial", "reflect") and args.index is None:
        raise DunklError(f"--op {op} needs --index")
    if op == "laplacian":
        out = dunkl_laplacian_poly(cfg, p)
    elif op == "euclidean-laplacian":
        out = laplacian(p)
    elif op == "dunkl":
        out = dunkl_op(cfg, args.index, p)
    elif op == "partial":
        out = partial_derivative(p, args.index)
    else:
        out = reflect(p, args.index)
    return _poly_result(args, {"op": op, "poly": format_poly(p)}, out)


def _poly_result(args, record: dict, out: Polynomial) -> str:
    if args.text:
        return format_poly(out) + "\n"
    record["result"] = format_poly(out)
    return dumps(record) + "\n"


def cmd_vk(args, cfg):
    p = parse_poly(args.poly, cfg.d)
    return _poly_result(args, {"poly": format_poly(p)}, vk_poly(cfg, p))


def cmd_vk_inv(args, cfg):
    p = parse_poly(args.poly, cfg.d)
    return _poly_result(args, {"poly": format_poly(p)}, vk_inverse_poly(cfg, p))


def cmd_translate(args, cfg):
    if args.func is not None:
        if args.x is None or args.y is None:
            raise DunklError("numeric translation needs --x and --y")
        f = parse_function(args.func, cfg.d)
        rows = []
        for y in _floats(args.y):
            val, err = translate_1d(cfg, f, float(_rational(args.x)), y, full_output=True)
            rows.append({"x": float(_rational(args.x)), "y": y, "value": val, "err_est": err})
        return _rows_out(args, rows)
    p = _target(args, cfg)
    u = translate_poly(cfg, p)
    if args.x is None and args.y is None:
        return _poly_result(args, {"poly": format_poly(p), "variables": "x1..xd then y1..yd"}, u)
    if args.x is None or args.y is None:
        raise DunklError("pass both --x and --y to evaluate the translate")
    x, y = _point(args.x), _point(args.y)
    if len(x) != cfg.d or len(y) != cfg.d:
        raise DunklError(f"--x and --y need {cfg.d} coordinates")
    val = u(x + y)
    return dumps({"x": x, "y": y, "value": val, "exact": _text(val)}) + "\n"


def cmd_kernel(args, cfg):
    x, y = _floats(args.x), _floats(args.y)
    return dumps({"x": x, "y": y, "E_k": dunkl_kernel(cfg, x, y, tol=args.tol)}) + "\n"


def cmd_mean(args, cfg):
    f = _target(args, cfg)
    rows = []
    if isinstance(f, Polynomial):
        x = _point(args.x)
        for r in args.r.split(","):
            r = _rational(r)
            val = spherical_mean_poly(cfg, f, x, r)
            rows.append({"x": x, "r": r, "mean": val, "exact": _text(val), "err_est": 0.0})
    else:
        x = _floats(args.x)
        for r in _floats(args.r):
            val, err = spherical_mean_numeric(cfg, f, x, r, approx_degree=args.approx_degree,
                                              full_output=True)
            rows.append({"x": x, "r": r, "mean": val, "err_est": err})
    return _rows_out(args, rows)


def cmd_ddt_check(args, cfg):
    p = parse_poly(args.poly, cfg.d)
    x = _floats(args.x)
    rows = []
    for t in _floats(args.t):
        lhs, rhs, res = ddt_identity_residual(cfg, p, x, t)
        rows.append({"x": x, "t": t, "lhs": lhs, "rhs": rhs, "residual": res})
    return _rows_out(args, rows)


def cmd_mollify(args, cfg):
    f = _target(args, cfg)
    x = _floats(args.x)
    domain = parse_domain(args.domain, cfg.d) if args.domain else None
    rows = [{"n": n, "x": x, "value": mollify(cfg, f, n, x, domain=domain)}
            for n in (int(v) for v in args.n.split(","))]
    return _rows_out(args, rows)


def cmd_radial_check(args, cfg):
    if args.profile == "gaussian":
        phi = functions.gaussian_profile()
    elif args.profile.startswith("bump:"):
        phi = functions.bump_profile(float(_rational(args.profile[5:])))
    else:
        raise DunklError("--profile is gaussian or bump:R")
    region = tuple(_floats(args.region)) if args.region else None
    if region is not None and len(region) != 2:
        raise DunklError("--region is a,b")
    out = radial_lemma_residual(cfg, phi, _floats(args.x), region)
    return dumps({"profile": args.profile, "x": _floats(args.x),
                  "region": list(region) if region else "R^d", **out}) + "\n"


def cmd_green_check(args, cfg):
    f = _target(args, cfg)
    if isinstance(f, Polynomial):
        f = BlackBoxFunction.from_polynomial(f)
    rows = [{"t": t, **green_check(cfg, f, t)} for t in _floats(args.t)]
    return _rows_out(args, rows)


def cmd_gen_harmonic(args, cfg):
    rows = [{"degree": args.degree, "index": j, "poly": format_poly(h)}
            for j, h in enumerate(gen_dunkl_harmonic(cfg, args.degree))]
    return _rows_out(args, rows)


def cmd_verify_mvp(args, cfg):
    f = _target(args, cfg)
    domain = parse_domain(args.domain, cfg.d)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore" if args.quiet else "default")
        report = verify_mvp(cfg, f, domain, args.samples, args.tol, args.seed, path=args.path,
                            approx_degree=args.approx_degree, jobs=args.jobs)
    rows = [r.as_dict() for r in report]
    if args.csv:
        text = _rows_out(args, rows)
    else:
        text = report.to_jsonl()
    return text, (EXIT_OK if report.all_pass else EXIT_MVP_FAIL)


def cmd_potential(args, cfg):
    v = parse_function(args.func, cfg.d)
    if v.support_radius is None:
        raise DunklError("the source term must have compact support")
    rows = [{"z": z, "psi": newton_potential_1d(cfg, v, z)} for z in _floats(args.z)]
    return _rows_out(args, rows)


def cmd_fundamental_check(args, cfg):
    phi = parse_function(args.func, cfg.d)
    g = FundamentalSolution.for_config(cfg)
    out = fundamental_check(cfg, phi)
    return dumps({"func": args.func, "g_constant": g.constant,
                  "exponent": -2 * float(cfg.lam), **out}) + "\n"


def cmd_counterexample(args, cfg):
    U = _floats(args.U)
    if len(U) != 2:
        raise DunklError("--U is a,b")
    t_grid = _floats(args.t) if args.t else None
    report = build_counterexample(cfg, U, float(_rational(args.x)), float(_rational(args.r)),
                                  tol=args.tol, t_grid=t_grid)
    return report.to_json() + "\n"


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("root system")
    g.add_argument("--config", help="TOML file with keys d, k, quad_rel_tol, quad_max_depth, gamma_precision")
    g.add_argument("--d", type=int, help="dimension (overrides the config)")
    g.add_argument("--k", help="comma-separated multiplicities, e.g. 1 or 1/2,3/2 (overrides the config)")
    g.add_argument("--output", "-o", help="write to this file instead of stdout")
    g.add_argument("--seed", type=int, default=0, help="random seed (default 0)")

    parser = _Parser(prog="dunklmvp", description="Dunkl analysis on Z_2^d and the mean value property.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(handler=func)
        return p

    def poly_or_func(p, func_ok=True):
        p.add_argument("--poly", help='polynomial text, e.g. "3/2 x1^2 x2 + -1 x2"')
        if func_ok:
            p.add_argument("--func", help="black box: bump:c,r[,h] | plateau:a,b,w[,v] | indicator:a,b | gaussian")

    def tabular(p):
        p.add_argument("--csv", action="store_true", help="CSV instead of JSON lines")

    def text_flag(p):
        p.add_argument("--text", action="store_true", help="print the bare polynomial")

    add("info", cmd_info, "print the root-system constants gamma, lambda, c_k, d_k")

    p = add("apply", cmd_apply, "apply an exact operator to a polynomial")
    p.add_argument("--op", required=True,
                   choices=["laplacian", "dunkl", "partial", "reflect", "euclidean-laplacian"])
    p.add_argument("--index", type=int, help="coordinate index i (1-based) for dunkl/partial/reflect")
    p.add_argument("--poly", required=True, help="polynomial text")
    text_flag(p)

    for name, func, help_text in (("vk", cmd_vk, "apply the intertwining operator V_k"),
                                  ("vk-inv", cmd_vk_inv, "apply the inverse of V_k")):
        p = add(name, func, help_text)
        p.add_argument("--poly", required=True, help="polynomial text")
        text_flag(p)

    p = add("translate", cmd_translate,
            "Dunkl translate tau_x p(y) (exact) or tau_x f(y) for a d = 1 black box")
    poly_or_func(p)
    p.add_argument("--x", help="point x (comma-separated rationals)")
    p.add_argument("--y", help="point y; with --func a comma-separated list of values")
    text_flag(p)
    tabular(p)

    p = add("kernel", cmd_kernel, "Dunkl kernel E_k(x, y) by its power series")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--tol", type=float, default=1e-12, help="series tail bound")

    p = add("mean", cmd_mean, "spherical mean M_{x,r}(f)")
    poly_or_func(p)
    p.add_argument("--x", required=True)
    p.add_argument("--r", required=True, help="radius or comma-separated radii")
    p.add_argument("--approx-degree", type=int, default=8, help="Chebyshev degree (d >= 2 black boxes)")
    tabular(p)

    p = add("ddt-check", cmd_ddt_check, "residual of the radial derivative identity for M_{x,t}")
    p.add_argument("--poly", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--t", required=True, help="comma-separated radii")
    tabular(p)

    p = add("mollify", cmd_mollify, "mollified value f_n(x)")
    poly_or_func(p)
    p.add_argument("--x", required=True)
    p.add_argument("--n", required=True, help="index or comma-separated indices")
    p.add_argument("--domain", help="check that the closed ball B(x, 1/n) lies in this domain")
    tabular(p)

    p = add("radial-check", cmd_radial_check, "both sides of the radial integration lemma")
    p.add_argument("--profile", default="gaussian", help="gaussian | bump:R")
    p.add_argument("--x", required=True)
    p.add_argument("--region", help="interval a,b (d = 1); default the whole space")

    p = add("green-check", cmd_green_check, "Green formula residual on [-t, t] (d = 1)")
    poly_or_func(p)
    p.add_argument("--t", required=True, help="comma-separated radii")
    tabular(p)

    p = add("gen-harmonic", cmd_gen_harmonic, "basis of Dunkl-harmonic homogeneous polynomials")
    p.add_argument("--degree", type=int, required=True)
    tabular(p)

    p = add("verify-mvp", cmd_verify_mvp, "test M_{x,r}(f) = f(x) on seeded admissible (x, r)")
    poly_or_func(p)
    p.add_argument("--domain", required=True,
                   help="ball:R[:c1,c2] | annulus:R1:R2 | intervals:a,b;c,e | halfline:a")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--path", choices=["auto", "exact", "numeric"], default="auto")
    p.add_argument("--approx-degree", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1, help="worker threads (output order is fixed)")
    p.add_argument("--quiet", action="store_true", help="suppress the non-W-invariant domain warning")
    tabular(p)

    p = add("potential", cmd_potential, "Newton potential psi(z) with Delta_k psi = -v (d = 1)")
    p.add_argument("--func", required=True, help="compactly supported source v")
    p.add_argument("--z", required=True, help="comma-separated evaluation points")
    tabular(p)

    p = add("fundamental-check", cmd_fundamental_check,
            "residual of the fundamental-solution identity for a test function (d = 1)")
    p.add_argument("--func", required=True, help="compactly supported test function, e.g. bump:0,1")

    p = add("counterexample", cmd_counterexample,
            "harmonic function on a non-symmetric interval that fails the mean value property")
    p.add_argument("--U", default="1,3", help="interval a,b with 0 outside")
    p.add_argument("--x", default="2")
    p.add_argument("--r", default="1/2")
    p.add_argument("--t", help="comma-separated radii below r (default r/5, 2r/5, 3r/5, 4r/5)")
    p.add_argument("--tol", type=float, default=1e-9, help="bound on the numerical error of the gaps")
    return parser


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_VALIDATION
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        result = args.handler(args, cfg)
        code = EXIT_OK
        if isinstance(result, tuple):
            result, code = result
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(result)
        else:
            stdout.write(result)
        return code
    except (DunklError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_VALIDATION
    except QuadratureError as exc:
        print(f"internal error: {exc}", file=stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # noqa: BLE001 - last-resort exit code contract
        print(f"internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
