"""Residual-scaling tables and their embedded reference values.

Three tables quantify how the closed-form approximations track the solved
eigenvalues as n grows:

  asympt_T1   n^3 * max_j |second-order expansion - solved|
  newton2_T2  n^7 * max_j |two Newton steps        - solved|
  smallj_T3   (n/j)^4 *   |small-index expansion   - solved|   (j = 2, 4, 6)

`REFERENCE` holds previously published values of the scaled columns (tagged
by source table) for the --compare mode; tolerances cover their two-digit
rounding.
"""

from fractions import Fraction

from .numerics import PrecisionContext
from .asymptotics import lambda_second_order, lambda_small_j
from .numerics import g
from .solvers import solve_theta_newton
from .symbolfns import AlphaParam

__all__ = [
    "TABLES",
    "REFERENCE",
    "REL_TOLERANCE",
    "DEFAULT_NS",
    "default_alphas",
    "table_rows",
    "compare_rows",
]

TABLES = ("asympt_T1", "newton2_T2", "smallj_T3")

DEFAULT_NS = (256, 512, 1024, 2048, 4096, 8192)

REL_TOLERANCE = {"asympt_T1": 0.02, "newton2_T2": 0.02, "smallj_T3": 0.03}

# scaled-column reference values, keyed (alpha, n) or (alpha, n, j)
REFERENCE = {
    "asympt_T1": {
        ("1/3", 256): 38.24,
        ("1/3", 512): 38.86,
        ("1/3", 1024): 39.17,
        ("1/3", 2048): 39.32,
        ("1/3", 4096): 39.40,
        ("1/3", 8192): 39.44,
        ("4/5", 256): 11.58,
        ("4/5", 512): 11.62,
        ("4/5", 1024): 11.63,
        ("4/5", 2048): 11.64,
        ("4/5", 4096): 11.64,
        ("4/5", 8192): 11.64,
    },
    "newton2_T2": {
        ("1/3", 256): 2.97,
        ("1/3", 512): 3.01,
        ("1/3", 1024): 3.03,
        ("1/3", 2048): 3.04,
        ("1/3", 4096): 3.04,
        ("1/3", 8192): 3.05,
        ("4/5", 256): 45.41,
        ("4/5", 512): 46.33,
        ("4/5", 1024): 46.80,
        ("4/5", 2048): 47.04,
        ("4/5", 4096): 47.16,
        ("4/5", 8192): 47.22,
    },
    "smallj_T3": {
        ("1/3", 256, 2): 21.80,
        ("1/3", 256, 4): 0.18,
        ("1/3", 256, 6): 4.25,
        ("1/3", 512, 2): 21.65,
        ("1/3", 512, 4): 0.44,
        ("1/3", 512, 6): 4.53,
        ("1/3", 1024, 2): 21.57,
        ("1/3", 1024, 4): 0.58,
        ("1/3", 1024, 6): 4.67,
        ("1/3", 2048, 2): 21.53,
        ("1/3", 2048, 4): 0.65,
        ("1/3", 2048, 6): 4.75,
        ("1/3", 4096, 2): 21.51,
        ("1/3", 4096, 4): 0.68,
        ("1/3", 4096, 6): 4.79,
        ("1/3", 8192, 2): 21.50,
        ("1/3", 8192, 4): 0.70,
        ("1/3", 8192, 6): 4.81,
    },
}

_SMALLJ_JS = (2, 4, 6)


def default_alphas(table: str):
    if table == "smallj_T3":
        return ("1/3",)
    return ("1/3", "4/5")


def _alpha_key(a: AlphaParam) -> str:
    f = a.re_frac
    return f"{f.numerator}/{f.denominator}"


def table_rows(table: str, alphas, ns, ctx: PrecisionContext):
    """Compute one table; rows are dicts keyed by column name.

    Scaled columns come out as mpfr; the caller serializes.
    """
    if table not in TABLES:
        raise ValueError(f"unknown table {table!r}")
    rows = []
    with ctx.activate():
        for alpha in alphas:
            a = alpha if isinstance(alpha, AlphaParam) else AlphaParam(alpha)
            for n in ns:
                if table == "smallj_T3":
                    row = {"alpha": _alpha_key(a), "n": n}
                    for j in _SMALLJ_JS:
                        lam_n = g(solve_theta_newton(a, n, j, ctx).root, ctx)
                        est = lambda_small_j(a, n, j, ctx).value
                        row[f"scaled_j{j}"] = abs(lam_n - est) * ctx.mpf(n) ** 4 / j**4
                    rows.append(row)
                    continue
                worst = ctx.mpf(0)
                for j in range(2, n + 1, 2):
                    rep = solve_theta_newton(a, n, j, ctx)
                    lam_n = g(rep.root, ctx)
                    if table == "asympt_T1":
                        approx = lambda_second_order(a, n, j, ctx).value
                    else:
                        two_step = solve_theta_newton(a, n, j, ctx, max_iter=2)
                        approx = g(two_step.root, ctx)
                    err = abs(approx - lam_n)
                    if err > worst:
                        worst = err
                power = 3 if table == "asympt_T1" else 7
                rows.append(
                    {
                        "alpha": _alpha_key(a),
                        "n": n,
                        "max_abs_err": worst,
                        "scaled": worst * ctx.mpf(n) ** power,
                    }
                )
    return rows


def compare_rows(table: str, rows):
    """Diff computed scaled columns against REFERENCE; never rounds silently.

    Returns (mismatches, checked):  mismatches lists
    (source_tag, key, computed, reference, relative_deviation).
    """
    ref = REFERENCE[table]
    tol = REL_TOLERANCE[table]
    mismatches = []
    checked = 0
    for row in rows:
        if table == "smallj_T3":
            keys = [((row["alpha"], row["n"], j), f"scaled_j{j}") for j in _SMALLJ_JS]
        else:
            keys = [((row["alpha"], row["n"]), "scaled")]
        for key, col in keys:
            if key not in ref:
                continue
            checked += 1
            computed = float(row[col])
            expected = ref[key]
            dev = abs(computed - expected) / expected
            if dev > tol:
                mismatches.append((table, key, computed, expected, dev))
    return mismatches, checked
