"""Command-line surface: spectrum | eigvec | table | verify | plotdata.

Exit codes: 0 ok, 1 verify failure, 2 bad config, 3 solver refusal,
4 table mismatch in compare mode.
"""

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from . import tables, verify
from .asymptotics import theta_first_order
from .charpoly import ProblemInstance
from .numerics import PrecisionContext, g
from .serialize import parse_real, sci_str, sig_digits, write_csv, write_json
from .solvers import ContractionNotGuaranteed
from .spectrum import alpha_sweep, eigenvector, full_spectrum
from .symbolfns import AlphaParam, eta, f_main, h_main
from .verify import run_checks, run_sweep, sweep_check_results

_METHODS = {
    "newton": "newton",
    "bisect": "bisection",
    "fixed-point": "fixed_point",
    "asymptotic": "asymptotic",
}

_PLOT_DIGITS = 17


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    alpha: AlphaParam | None
    n: int | None
    j: int | None
    method: str
    ctx: PrecisionContext
    tol: mpfr | None
    output_format: str
    output_path: str | None


def _build_config(args) -> RunConfig:
    if getattr(args, "precision_bits", 53) < 53:
        raise ConfigError("--precision-bits must be >= 53")
    ctx = PrecisionContext(args.precision_bits)
    alpha = None
    if getattr(args, "alpha", None) is not None:
        try:
            alpha = AlphaParam(args.alpha)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad --alpha: {exc}") from exc
    n = getattr(args, "n", None)
    if n is not None and n < 3:
        raise ConfigError("--n must be >= 3")
    tol = None
    if getattr(args, "tol", None) is not None:
        tol = parse_real(args.tol, ctx)
        if not tol > 0:
            raise ConfigError("--tol must be positive")
    return RunConfig(
        alpha=alpha,
        n=n,
        j=getattr(args, "j", None),
        method=_METHODS[getattr(args, "method", "newton")],
        ctx=ctx,
        tol=tol,
        output_format=getattr(args, "format", "csv"),
        output_path=getattr(args, "out", None),
    )


def _emit(cfg: RunConfig, header, rows, config_obj):
    if cfg.output_format == "json":
        write_json(
            {"config": config_obj, "rows": [dict(zip(header, r)) for r in rows]},
            cfg.output_path,
        )
    else:
        write_csv(header, rows, cfg.output_path)


def _config_obj(cfg: RunConfig, **extra):
    obj = {
        "alpha": repr(cfg.alpha) if cfg.alpha else None,
        "n": cfg.n,
        "method": cfg.method,
        "precision_bits": cfg.ctx.mantissa_bits,
        "tol": sci_str(cfg.tol, 17) if cfg.tol is not None else None,
    }
    obj.update(extra)
    return obj


def cmd_spectrum(args) -> int:
    cfg = _build_config(args)
    if cfg.alpha is None or cfg.n is None:
        raise ConfigError("spectrum needs --alpha and --n")
    inst = ProblemInstance(cfg.alpha, cfg.n)
    spec = full_spectrum(inst, cfg.ctx, method=cfg.method, tol=cfg.tol)
    digits = sig_digits(cfg.ctx.mantissa_bits)
    rows = []
    with cfg.ctx.activate():
        for j in range(1, cfg.n + 1):
            rep = spec.reports[j - 1]
            method = spec.methods[j - 1]
            if rep is not None:
                iters = rep.iterations
                cert = sci_str(rep.certified_error, 17)
                resid = sci_str(rep.residual, 17)
            elif method == "asymptotic":
                iters = 0
                cert = ""
                resid = sci_str(
                    abs(h_main(cfg.alpha, cfg.n, j, spec.thetas[j - 1], cfg.ctx)), 17
                )
            else:
                iters = 0
                cert = "0.0e+00"
                resid = "0.0e+00"
            rows.append(
                (
                    j,
                    sci_str(spec.thetas[j - 1], digits),
                    sci_str(spec.lambdas[j - 1], digits),
                    method,
                    iters,
                    cert,
                    resid,
                )
            )
    header = ["j", "theta", "lambda", "method", "iterations", "certified_error", "residual"]
    _emit(cfg, header, rows, _config_obj(cfg))
    return 0


def cmd_eigvec(args) -> int:
    cfg = _build_config(args)
    if cfg.alpha is None or cfg.n is None or cfg.j is None:
        raise ConfigError("eigvec needs --alpha, --n and --j")
    j, n = cfg.j, cfg.n
    if not 1 <= j <= n:
        raise ConfigError("--j must satisfy 1 <= j <= n")
    inst = ProblemInstance(cfg.alpha, n)
    ctx = cfg.ctx
    digits = sig_digits(ctx.mantissa_bits)
    with ctx.activate():
        if j % 2 == 1:
            theta = ctx.pi_times(Fraction(j - 1, n))
        elif cfg.method == "asymptotic":
            theta = theta_first_order(cfg.alpha, n, j, ctx)
        else:
            from .spectrum import _SOLVERS

            theta = _SOLVERS[cfg.method](cfg.alpha, n, j, ctx, tol=cfg.tol).root
        vec = eigenvector(inst, j, theta, ctx)
        lam = g(theta, ctx)
        rows = []
        for k, c in enumerate(vec.coords, start=1):
            re_part = c.real if hasattr(c, "real") and not isinstance(c, mpfr) else c
            im_part = c.imag if hasattr(c, "imag") and not isinstance(c, mpfr) else mpfr(0)
            rows.append((k, sci_str(re_part, digits), sci_str(im_part, digits)))
        summary = {
            "theta": sci_str(theta, digits),
            "lambda": sci_str(lam, digits),
            "exact_norm": sci_str(vec.exact_norm, digits),
            "asympt_norm": sci_str(vec.asympt_norm, digits) if vec.asympt_norm is not None else None,
        }
    header = ["k", "re", "im"]
    if cfg.output_format == "json":
        write_json(
            {
                "config": _config_obj(cfg, j=j),
                "summary": summary,
                "rows": [dict(zip(header, r)) for r in rows],
            },
            cfg.output_path,
        )
    else:
        write_csv(header, rows, cfg.output_path)
    return 0


def cmd_table(args) -> int:
    cfg = _build_config(args)
    table = args.table
    alphas = args.alpha_list or list(tables.default_alphas(table))
    ns = [n for n in tables.DEFAULT_NS if n <= args.max_n]
    if not ns:
        raise ConfigError(f"--max-n {args.max_n} leaves no table rows")
    rows = tables.table_rows(table, alphas, ns, cfg.ctx)
    if table == "smallj_T3":
        header = ["alpha", "n", "scaled_j2", "scaled_j4", "scaled_j6"]
        out_rows = [
            (
                r["alpha"],
                r["n"],
                sci_str(r["scaled_j2"], 17),
                sci_str(r["scaled_j4"], 17),
                sci_str(r["scaled_j6"], 17),
            )
            for r in rows
        ]
    else:
        header = ["alpha", "n", "max_abs_err", "scaled"]
        out_rows = [
            (r["alpha"], r["n"], sci_str(r["max_abs_err"], 17), sci_str(r["scaled"], 17))
            for r in rows
        ]
    _emit(cfg, header, out_rows, _config_obj(cfg, table=table, ns=ns))
    if args.compare:
        mismatches, checked = tables.compare_rows(table, rows)
        print(
            f"# compared {checked} cells against reference table {table} "
            f"(tolerance {tables.REL_TOLERANCE[table]:.0%})",
            file=sys.stderr,
        )
        for tag, key, computed, expected, dev in mismatches:
            print(
                f"# MISMATCH {tag} {key}: computed={computed!r} reference={expected!r} "
                f"deviation={dev:.4%}",
                file=sys.stderr,
            )
        if mismatches:
            return 4
        if checked == 0:
            raise ConfigError("compare mode matched no reference cells")
    return 0


def cmd_verify(args) -> int:
    bits = args.precision_bits
    if bits < 53:
        raise ConfigError("--precision-bits must be >= 53")
    lines = []

    def record(res):
        lines.append(res.line())
        print(res.line(), flush=True)

    results = run_checks(bits, seed=args.seed, soundness_count=args.soundness_count)
    for res in results:
        record(res)
    agg = run_sweep(
        bits,
        max_den=args.max_den,
        max_n=args.max_n,
        processes=args.processes,
        do_bisect=True,
        do_fp=True,
    )
    sweep_results = sweep_check_results(agg, bits)
    for res in sweep_results:
        record(res)
    ok = all(r.ok for r in results + sweep_results)
    lines.append(f"verify: {'OK' if ok else 'FAILED'}")
    print(lines[-1], flush=True)
    if args.out and args.out != "-":
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0 if ok else 1


def _plot_mesh(ctx, samples=512):
    return [ctx.pi_times(Fraction(k, samples)) for k in range(samples + 1)]


def cmd_plotdata(args) -> int:
    cfg = _build_config(args)
    figure = args.figure
    ctx = cfg.ctx
    rows = []
    with ctx.activate():
        if figure in ("main_eq", "eta_lines", "theta_lambda"):
            if cfg.alpha is None or cfg.n is None:
                raise ConfigError(f"{figure} needs --alpha and --n")
            a, n = cfg.alpha, cfg.n
        if figure == "main_eq":
            for x in _plot_mesh(ctx):
                rows.append(("lhs", x, x))
                for j in range(2, cfg.n + 1, 2):
                    rows.append((f"rhs_j{j}", x, f_main(a, n, j, x, ctx)))
            spec = full_spectrum(ProblemInstance(a, n), ctx)
            for j in range(2, n + 1, 2):
                t = spec.thetas[j - 1]
                rows.append((f"theta_j{j}", t, t))
        elif figure == "eta_lines":
            for x in _plot_mesh(ctx):
                rows.append(("eta", x, eta(a, x, ctx)))
                for j in range(2, n + 1, 2):
                    rows.append((f"line_j{j}", x, n * x - (j - 1) * ctx.pi))
                tl = gmpy2.tan(n * x / 2)
                tr = -(1 - a.re(ctx)) / a.re(ctx) * gmpy2.tan(x / 2)
                if abs(tl) <= 100 and abs(tr) <= 100:
                    rows.append(("tan_lhs", x, tl))
                    rows.append(("tan_rhs", x, tr))
        elif figure == "theta_lambda":
            spec = full_spectrum(ProblemInstance(a, n), ctx)
            for j in range(1, n + 1):
                rows.append(("spectrum", spec.thetas[j - 1], spec.lambdas[j - 1]))
            for k in range(1, n):
                xk = ctx.pi_times(Fraction(k, n))
                rows.append(("mesh", xk, g(xk, ctx)))
        elif figure == "alpha_sweep":
            if cfg.n is None or cfg.j is None:
                raise ConfigError("alpha_sweep needs --n and --j")
            if cfg.j % 2 != 0:
                raise ConfigError("alpha_sweep needs an even --j")
            alphas = [Fraction(k, 50) for k in range(1, 50)]
            for ap, lam in alpha_sweep(cfg.n, cfg.j, alphas, ctx):
                rows.append(("psi", ctx.mpf(ap.re_frac), lam))
        out_rows = [
            (series, sci_str(x, _PLOT_DIGITS), sci_str(y, _PLOT_DIGITS))
            for series, x, y in rows
        ]
    _emit(cfg, ["series", "x", "y"], out_rows, _config_obj(cfg, figure=figure))
    return 0


def _add_common(p, need_alpha=False):
    p.add_argument("--alpha", required=need_alpha, help="edge weight: p/q, decimal, or a+bi")
    p.add_argument("--n", type=int, help="cycle order (>= 3)")
    p.add_argument("--j", type=int, help="eigenvalue index (1-based)")
    p.add_argument(
        "--method",
        choices=sorted(_METHODS),
        default="newton",
        help="even-index solver",
    )
    p.add_argument("--precision-bits", type=int, default=3322, dest="precision_bits")
    p.add_argument("--tol", help="solver tolerance (decimal string)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path ('-' or omitted: stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cyclespec",
        description="Eigensystem toolkit for weighted-cycle Laplacians",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="all n eigenvalues and angles")
    _add_common(p, need_alpha=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("eigvec", help="one eigenvector with exact/asymptotic norms")
    _add_common(p, need_alpha=True)
    p.set_defaults(func=cmd_eigvec)

    p = sub.add_parser("table", help="residual-scaling tables")
    p.add_argument("table", choices=tables.TABLES)
    p.add_argument(
        "--alpha",
        action="append",
        dest="alpha_list",
        help="restrict to this alpha (repeatable)",
    )
    p.add_argument("--max-n", type=int, default=8192, dest="max_n")
    p.add_argument("--compare", action="store_true", help="diff against reference values")
    p.add_argument("--precision-bits", type=int, default=3322, dest="precision_bits")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the seeded invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--precision-bits", type=int, default=350, dest="precision_bits")
    p.add_argument("--max-den", type=int, default=verify.DEFAULT_MAX_DEN, dest="max_den")
    p.add_argument("--max-n", type=int, default=verify.DEFAULT_MAX_N, dest="max_n")
    p.add_argument("--processes", type=int, default=2)
    p.add_argument("--soundness-count", type=int, default=100, dest="soundness_count")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plotdata", help="CSV curve samples for the standard figures")
    p.add_argument(
        "figure", choices=("main_eq", "eta_lines", "theta_lambda", "alpha_sweep")
    )
    _add_common(p)
    p.set_defaults(func=cmd_plotdata)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ContractionNotGuaranteed as exc:
        print(f"solver refusal: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
