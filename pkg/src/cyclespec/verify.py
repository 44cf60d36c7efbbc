"""Seeded invariant sweeps shared by the verify command and the test suite.

Each check returns a CheckResult (worst observed value vs. allowed bound);
the heavy per-(alpha, n) work items run in a small process pool with a
deterministic ordered reduction, so reports are byte-identical for a given
seed regardless of worker count.
"""

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from . import symbolfns
from .charpoly import (
    CornerPerturbation,
    ProblemInstance,
    build_L,
    charpoly_A,
    charpoly_L,
    factor_p,
    factor_q,
)
from .numerics import DOUBLE, PrecisionContext, g
from .oracle import charpoly_root_isolate, dense_det, dense_sym_eig
from .serialize import sci_str
from .solvers import (
    solve_theta_bisection,
    solve_theta_fixed_point,
    solve_theta_newton,
)
from .spectrum import (
    _norm2,
    alpha_sweep,
    eigenvector,
    full_spectrum,
    residual,
)
from .symbolfns import AlphaParam

__all__ = [
    "CheckResult",
    "farey_alphas",
    "residual_bound",
    "cross_method_bound",
    "run_sweep",
    "run_checks",
    "DEFAULT_MAX_DEN",
    "DEFAULT_MAX_N",
    "SWEEP_CHECK_NAMES",
]

DEFAULT_MAX_DEN = 10
DEFAULT_MAX_N = 64

_HALF_FR = Fraction(1, 2)
_ALPHA_TENTHS = [Fraction(k, 10) for k in range(1, 10)]
_MESH_POINTS = 64


@dataclass
class CheckResult:
    name: str
    worst: str
    bound: str
    ok: bool

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"[{tag}] {self.name}: worst={self.worst} bound={self.bound}"


def _result(name, worst, bound) -> CheckResult:
    worst = mpfr(worst)
    bound = mpfr(bound)
    return CheckResult(name, sci_str(worst, 20), sci_str(bound, 20), bool(worst <= bound))


def farey_alphas(max_den: int = DEFAULT_MAX_DEN):
    """All reduced rationals in (0,1) with denominator <= max_den, ascending."""
    vals = {Fraction(p, q) for q in range(2, max_den + 1) for p in range(1, q)}
    return sorted(vals)


def residual_bound(bits: int) -> mpfr:
    """Eigenpair-residual pass bound: 10^-floor((bits-33) log10 2).

    1e-990 at 3322 bits; 1e-95 at 350 bits.
    """
    return mpfr(10) ** (-math.floor((bits - 33) * math.log10(2)))


def cross_method_bound(bits: int) -> mpfr:
    """Cross-solver agreement bound: 10^-floor((bits-66) log10 2) (1e-980 at 3322)."""
    return mpfr(10) ** (-math.floor((bits - 66) * math.log10(2)))


# ---------------------------------------------------------------------------
# eta-family checks


def _eta_variants(a: AlphaParam, x, ctx):
    """The four equivalent closed forms, implemented independently."""
    kap = a.kappa(ctx)
    re_a = a.re(ctx)
    half = x / 2
    pi = ctx.pi
    v0 = 2 * gmpy2.atan(kap / gmpy2.tan(half))
    v1 = pi - 2 * gmpy2.atan(gmpy2.tan(half) / kap)
    s, c = gmpy2.sin_cos(half)
    v2 = 2 * gmpy2.asin(kap * c / gmpy2.sqrt(s * s + kap * kap * c * c))
    denom = (2 * re_a * re_a - 2 * re_a + 1) + (2 * re_a - 1) * gmpy2.cos(x)
    v3 = 2 * gmpy2.asin(gmpy2.sqrt(mpfr(2)) * re_a * c / gmpy2.sqrt(denom))
    return v0, v1, v2, v3


def check_eta_equivalence(bits: int) -> CheckResult:
    ctx = PrecisionContext(bits)
    worst = mpfr(0)
    with ctx.activate():
        for af in _ALPHA_TENTHS:
            a = AlphaParam(af)
            for k in range(1, _MESH_POINTS):
                x = ctx.pi_times(Fraction(k, _MESH_POINTS))
                vals = (symbolfns.eta(a, x, ctx),) + _eta_variants(a, x, ctx)
                spread = max(vals) - min(vals)
                if spread > worst:
                    worst = spread
        return _result("eta formula equivalence", worst, 1000 * ctx.eps)


def check_eta_involution(bits: int) -> CheckResult:
    ctx = PrecisionContext(bits)
    worst = mpfr(0)
    with ctx.activate():
        for af in _ALPHA_TENTHS:
            a = AlphaParam(af)
            for k in range(1, _MESH_POINTS):
                x = ctx.pi_times(Fraction(k, _MESH_POINTS))
                dev = abs(symbolfns.eta(a, symbolfns.eta(a, x, ctx), ctx) - x)
                if dev > worst:
                    worst = dev
        return _result("eta involution", worst, 1000 * ctx.eps)


def check_eta_shape(bits: int) -> CheckResult:
    """Strict decrease, range [0, pi], and one-signed curvature per side of 1/2."""
    ctx = PrecisionContext(bits)
    worst = mpfr("-inf")
    with ctx.activate():
        for af in _ALPHA_TENTHS:
            a = AlphaParam(af)
            prev = None
            sign = 1 if af < _HALF_FR else -1
            for k in range(0, _MESH_POINTS + 1):
                x = ctx.pi_times(Fraction(k, _MESH_POINTS))
                val = symbolfns.eta(a, x, ctx)
                worst = max(worst, val - ctx.pi, -val)
                if prev is not None:
                    worst = max(worst, val - prev)  # must decrease
                prev = val
                if 0 < k < _MESH_POINTS and af != _HALF_FR:
                    worst = max(worst, -sign * symbolfns.eta_second(a, x, ctx))
        return _result("eta monotone/range/curvature", worst, 1000 * ctx.eps)


def check_eta_derivative_bounds(bits: int) -> CheckResult:
    """sup|eta'| = K1 (attained at an endpoint), sup|eta''| <= K2."""
    ctx = PrecisionContext(bits)
    worst = mpfr("-inf")
    with ctx.activate():
        for af in _ALPHA_TENTHS:
            a = AlphaParam(af)
            k1 = ctx.mpf(a.k1_frac)
            k2 = ctx.mpf(a.k2_frac)
            seen = mpfr(0)
            for k in range(0, _MESH_POINTS + 1):
                x = ctx.pi_times(Fraction(k, _MESH_POINTS))
                d1 = abs(symbolfns.eta_prime(a, x, ctx))
                seen = max(seen, d1)
                worst = max(worst, (d1 - k1) / k1)
                if af != _HALF_FR and 0 < k < _MESH_POINTS:
                    d2 = abs(symbolfns.eta_second(a, x, ctx))
                    worst = max(worst, (d2 - k2) / k2)
            worst = max(worst, (k1 * 99 / 100 - seen) / k1)  # sharpness within 1%
        return _result("eta derivative bounds (K1 sharp, K2)", worst, 1000 * ctx.eps)


def check_eta_finite_differences(bits: int) -> CheckResult:
    """eta'/eta'' agree with central differences at h = 2^-40, error O(h^2)."""
    ctx = PrecisionContext(max(bits, 200))
    with ctx.activate():
        h = mpfr(2) ** -40
        worst = mpfr(0)
        for af in (Fraction(1, 5), Fraction(1, 3), Fraction(2, 3), Fraction(3, 4), Fraction(9, 10)):
            a = AlphaParam(af)
            for k in range(1, 16):
                x = ctx.pi_times(Fraction(k, 16))
                fd1 = (symbolfns.eta(a, x + h, ctx) - symbolfns.eta(a, x - h, ctx)) / (2 * h)
                fd2 = (symbolfns.eta_prime(a, x + h, ctx) - symbolfns.eta_prime(a, x - h, ctx)) / (
                    2 * h
                )
                worst = max(worst, abs(fd1 - symbolfns.eta_prime(a, x, ctx)))
                worst = max(worst, abs(fd2 - symbolfns.eta_second(a, x, ctx)))
        return _result("eta derivatives vs finite differences", worst, h * h * 10**5)


# ---------------------------------------------------------------------------
# characteristic-polynomial checks


def check_factorization(bits: int, seed: int, count: int = 200) -> CheckResult:
    """t * D(4 - t^2) = 2 (-1)^n p_n(t) q_{a,n}(t) at random (alpha, n, t)."""
    ctx = PrecisionContext(bits)
    rng = random.Random(seed)
    worst = mpfr(0)
    with ctx.activate():
        for _ in range(count):
            den = rng.randint(3, 50)
            a = AlphaParam(Fraction(rng.randint(1, den - 1), den))
            n = rng.randint(3, 40)
            inst = ProblemInstance(a, n)
            t = ctx.mpf(Fraction(rng.randint(1, 2**30 - 1), 2**29))  # (0, 2)
            lhs = t * charpoly_L(inst, 4 - t * t, ctx)
            sign = 1 if n % 2 == 0 else -1
            rhs = 2 * sign * factor_p(n, t, ctx) * factor_q(inst, t, ctx)
            dev = abs(lhs - rhs) / (1 + abs(lhs))
            if dev > worst:
                worst = dev
        return _result("charpoly factorization identity", worst, mpfr(2) ** (40 - bits))


def check_trig_factorization(bits: int) -> CheckResult:
    """D(g(x)) equals its fully trigonometric factorization away from x = pi."""
    ctx = PrecisionContext(bits)
    worst = mpfr(0)
    with ctx.activate():
        for af in (Fraction(1, 3), Fraction(4, 5), Fraction(1, 10)):
            a = AlphaParam(af)
            re_a = a.re(ctx)
            for n in (5, 8, 13, 40):
                inst = ProblemInstance(a, n)
                for k in range(1, 32):
                    x = ctx.pi_times(Fraction(k, 33))
                    sh, ch = gmpy2.sin_cos(x / 2)
                    sn, cn = gmpy2.sin_cos(n * x / 2)
                    sign = -1 if n % 2 == 0 else 1  # (-1)^(n+1)
                    rhs = (
                        sign
                        * (4 * sh * sn / ch)
                        * ((1 - re_a) * cn + re_a * ch * sn / sh)
                    )
                    lhs = charpoly_L(inst, g(x, ctx), ctx)
                    dev = abs(lhs - rhs) / (1 + abs(lhs))
                    if dev > worst:
                        worst = dev
        return _result("charpoly trig factorization", worst, mpfr(2) ** (40 - bits))


def check_real_part_collapse(bits: int, seed: int) -> CheckResult:
    """Complex-alpha characteristic polynomial equals the Re(alpha) one.

    Route 1: corner-perturbation evaluation (uses the complex corners).
    Route 2 (n <= 8): dense determinant of (lambda I - L) with complex entries.
    """
    ctx = PrecisionContext(bits)
    rng = random.Random(seed)
    worst = mpfr(0)
    with ctx.activate():
        for trial in range(100):
            re_f = Fraction(rng.randint(1, 999), 1000)
            im_f = Fraction(rng.randint(-2000, 2000), 1000)
            a = AlphaParam((re_f, im_f)) if im_f else AlphaParam(re_f)
            n = rng.randint(3, 30)
            inst = ProblemInstance(a, n)
            cp = inst.corner_perturbation()
            for _ in range(20):
                lam = ctx.mpf(Fraction(rng.randint(-1000, 5000), 1000))
                via_l = charpoly_L(inst, lam, ctx)
                via_a = charpoly_A(cp, n, lam, ctx)
                dev = abs(via_a - via_l) / (1 + abs(via_l))
                if dev > worst:
                    worst = dev
            if n <= 8:
                lam = ctx.mpf(Fraction(rng.randint(0, 4000), 1000))
                L = build_L(inst, ctx)
                M = [
                    [(lam if i == k else 0) - L[i][k] for k in range(n)]
                    for i in range(n)
                ]
                dev = abs(dense_det(M, ctx) - charpoly_L(inst, lam, ctx)) / (
                    1 + abs(charpoly_L(inst, lam, ctx))
                )
                if dev > worst:
                    worst = dev
        return _result("complex-alpha charpoly invariance", worst, mpfr(2) ** (48 - bits))


def check_q_mesh_values(bits: int) -> CheckResult:
    """q at the half-mesh 2cos(j pi/2n), q(0), q(2), and the t->0 limits."""
    ctx = PrecisionContext(bits)
    worst = mpfr(0)
    limit_worst = mpfr(0)
    with ctx.activate():
        for af in (Fraction(1, 3), Fraction(4, 5), Fraction(1, 10), Fraction(1, 2)):
            a = AlphaParam(af)
            re_a = a.re(ctx)
            for n in (5, 6, 9, 12):
                inst = ProblemInstance(a, n)
                for j in range(1, n):
                    t = 2 * gmpy2.cos(ctx.pi_times(Fraction(j, 2 * n)))
                    got = factor_q(inst, t, ctx)
                    if j % 2 == 0:
                        want = (1 - re_a) * (-1) ** (j // 2)
                    else:
                        x = ctx.pi_times(Fraction(j, 2 * n))
                        want = re_a / gmpy2.tan(x) * (-1) ** ((j - 1) // 2)
                    worst = max(worst, abs(got - want))
                q0 = factor_q(inst, 0, ctx)
                want0 = mpfr(0) if n % 2 == 1 else (1 - re_a) * (-1) ** (n // 2)
                worst = max(worst, abs(q0 - want0))
                worst = max(worst, abs(factor_q(inst, 2, ctx) - (1 - re_a + re_a * n)))
                t = mpfr(2) ** -30
                if n % 2 == 1:
                    lim = (-1) ** ((n - 1) // 2) * (re_a + (1 - re_a) * n)
                    limit_worst = max(limit_worst, abs(2 * factor_q(inst, t, ctx) / t - lim))
                else:
                    lim = 4 * (-1) ** (n // 2) * n
                    limit_worst = max(limit_worst, abs(2 * factor_p(n, t, ctx) / t - lim))
        bound = max(mpfr(2) ** (30 - bits) * 100, mpfr(10) ** -10)
        return _result("q/p mesh values and limits", max(worst, limit_worst / 10**4), bound)


# ---------------------------------------------------------------------------
# spectrum-level checks


def check_alpha_half_closed_form(bits: int) -> CheckResult:
    ctx = PrecisionContext(bits)
    a = AlphaParam(_HALF_FR)
    worst = mpfr(0)
    with ctx.activate():
        for n in (4, 7, 16, 63):
            spec = full_spectrum(ProblemInstance(a, n), ctx)
            for j in range(1, n + 1):
                if j % 2 == 1:
                    want = g(ctx.pi_times(Fraction(j - 1, n)), ctx)
                else:
                    want = g(ctx.pi_times(Fraction(j, n + 1)), ctx)
                worst = max(worst, abs(spec.lambdas[j - 1] - want))
        return _result("alpha=1/2 closed-form collapse", worst, 64 * ctx.eps)


def check_norm_consistency(bits: int) -> CheckResult:
    """Closed-form eigenvector norms vs direct coordinate summation."""
    ctx = PrecisionContext(bits)
    worst = mpfr(0)
    with ctx.activate():
        alphas = (
            AlphaParam(Fraction(1, 3)),
            AlphaParam(Fraction(4, 5)),
            AlphaParam(Fraction(1, 10)),
            AlphaParam("1/2+3/10i"),
        )
        for a in alphas:
            for n in (3, 4, 5, 8, 12, 16, 33, 64, 128):
                inst = ProblemInstance(a, n)
                spec = full_spectrum(inst, ctx)
                scale = 1000 * ctx.eps * gmpy2.sqrt(mpfr(n))
                for j in range(2, n + 1):
                    vec = eigenvector(inst, j, spec.thetas[j - 1], ctx)
                    dev = abs(_norm2(vec.coords) - vec.exact_norm) / scale
                    if dev > worst:
                        worst = dev
        return _result("eigenvector norm formulas vs summation", worst, mpfr(1))


def check_oracle_agreement(seed: int, count: int = 20) -> CheckResult:
    """Jacobi and charpoly-bisection oracles vs the solver spectrum.

    Double precision must agree to 1e-12, 200-bit runs to 1e-40, and the two
    oracle backends to 10x their tolerances.
    """
    rng = random.Random(seed)
    worst = mpfr(0)
    ctx200 = PrecisionContext(200)
    for _ in range(count):
        den = rng.randint(3, 40)
        a = AlphaParam(Fraction(rng.randint(1, den - 1), den))
        n = rng.randint(3, 24)
        inst = ProblemInstance(a, n)
        with DOUBLE.activate():
            jac = dense_sym_eig(build_L(inst, DOUBLE), DOUBLE, tol=1e-13)
            newt = full_spectrum(inst, DOUBLE)
            dev_d = max(
                abs(x - y) for x, y in zip(jac.lambdas, newt.lambdas)
            ) / mpfr("1e-12")
        with ctx200.activate():
            jac200 = dense_sym_eig(build_L(inst, ctx200), ctx200, tol=mpfr("1e-42"))
            iso = charpoly_root_isolate(inst, ctx200, tol=mpfr("1e-45"))
            newt200 = full_spectrum(inst, ctx200)
            dev_j = max(
                abs(x - y) for x, y in zip(jac200.lambdas, newt200.lambdas)
            ) / mpfr("1e-40")
            dev_i = max(
                abs(x - y) for x, y in zip(iso.lambdas, newt200.lambdas)
            ) / mpfr("1e-40")
            dev_b = max(
                abs(x - y) for x, y in zip(iso.lambdas, jac200.lambdas)
            ) / (10 * mpfr("1e-40"))
        worst = max(worst, mpfr(dev_d), dev_j, dev_i, dev_b)
    return _result("oracle agreement (jacobi/isolation vs solver)", worst, mpfr(1))


def check_alpha_monotonicity(bits: int) -> CheckResult:
    """Even-index eigenvalues strictly increase in alpha, limits bracketed."""
    ctx = PrecisionContext(bits)
    n, j = 10, 4
    with ctx.activate():
        alphas = [Fraction(1, 1000)] + [Fraction(k, 10) for k in range(1, 10)] + [
            Fraction(999, 1000)
        ]
        pairs = alpha_sweep(n, j, alphas, ctx)  # raises if not increasing
        lo_lim = g(ctx.pi_times(Fraction(j - 1, n)), ctx)
        hi_lim = g(ctx.pi_times(Fraction(j, n)), ctx)
        worst = max(
            lo_lim - pairs[0][1],  # must exceed the alpha->0 limit
            pairs[-1][1] - hi_lim,
            (pairs[0][1] - lo_lim) - ctx.mpf("0.01"),  # and hug it near 0
            (hi_lim - pairs[-1][1]) - ctx.mpf("0.01"),
        )
        return _result("alpha-monotonicity and limits", worst, mpfr(0))


def check_certified_soundness(seed: int, count: int = 500) -> CheckResult:
    """|root - reference| <= certified_error for every method.

    Reference roots come from bisection at 4x the mantissa width.
    """
    rng = random.Random(seed)
    base = PrecisionContext(200)
    ref_ctx = PrecisionContext(800)
    worst = mpfr(0)
    for _ in range(count):
        a = AlphaParam(Fraction(rng.randint(2, 2**20 - 2), 2**20))
        n = rng.randint(3, 200)
        evens = list(range(2, n + 1, 2))
        j = rng.choice(evens)
        ref = solve_theta_bisection(a, n, j, ref_ctx).root
        reports = [
            solve_theta_newton(a, n, j, base),
            solve_theta_bisection(a, n, j, base),
        ]
        if Fraction(n) > a.k1_frac:
            reports.append(solve_theta_fixed_point(a, n, j, base))
        with ref_ctx.activate():
            for rep in reports:
                ratio = abs(rep.root - ref) / rep.certified_error
                if ratio > worst:
                    worst = ratio
    return _result("certified-error soundness (500 random solves)", worst, mpfr(1))


# ---------------------------------------------------------------------------
# heavy per-(alpha, n) sweep


def _sweep_cell(payload):
    """One (alpha, n) work item; returns plain strings/floats for pickling."""
    num, den, n, bits, do_bisect, do_fp = payload
    a = AlphaParam(Fraction(num, den))
    ctx = PrecisionContext(bits)
    inst = ProblemInstance(a, n)
    gamma = a.gamma_frac(n)
    out = {"alpha": f"{num}/{den}", "n": n}
    with ctx.activate():
        eps = ctx.eps
        floor = mpfr(2) ** (80 - bits)
        spec = full_spectrum(inst, ctx)
        loc_ok = True
        lin_excess = mpfr("-inf")
        quad_excess = mpfr("-inf")
        quad_applicable = (
            not a.is_half and n * n > float(ctx.pi * ctx.mpf(a.k2_frac) / 2)
        )
        m_quad = ctx.mpf(a.k2_frac) / (2 * n)
        for j in range(2, n + 1, 2):
            rep = spec.reports[j - 1]
            lo = ctx.pi_times(Fraction(j - 1, n))
            hi = ctx.pi_times(Fraction(j, n))
            if not lo < rep.root < hi:
                loc_ok = False
            if a.is_half or rep.iterates is None:
                continue
            errs = [abs(y - rep.root) for y in rep.iterates]
            for m in range(1, len(errs) - 1):
                if errs[m + 1] >= floor and errs[m] >= floor:
                    lin_excess = max(
                        lin_excess, errs[m + 1] / errs[m] - ctx.mpf(gamma) - mpfr("1e-3")
                    )
            if quad_applicable:
                for m in range(0, len(errs) - 1):
                    if errs[m + 1] >= floor and errs[m] >= floor:
                        quad_excess = max(
                            quad_excess,
                            errs[m + 1] / (m_quad * errs[m] * errs[m]) - 1 - mpfr("1e-3"),
                        )
        trace = sum(spec.lambdas, mpfr(0))
        trace_dev = abs(trace - (2 * n - 2 + 2 * a.re(ctx))) / (n * 1000 * eps)
        worst_resid = mpfr(0)
        for j in range(1, n + 1):
            vec = eigenvector(inst, j, spec.thetas[j - 1], ctx)
            r = residual(inst, spec.lambdas[j - 1], vec.coords, ctx)
            if r > worst_resid:
                worst_resid = r
        out["loc_ok"] = loc_ok
        out["trace_dev"] = float(trace_dev)
        out["lin_excess"] = float(lin_excess)
        out["quad_excess"] = float(quad_excess)
        out["residual"] = sci_str(worst_resid, 25)
        if do_bisect:
            dev = mpfr(0)
            for j in range(2, n + 1, 2):
                rb = solve_theta_bisection(a, n, j, ctx)
                dev = max(dev, abs(g(rb.root, ctx) - spec.lambdas[j - 1]))
            out["bisect_dev"] = sci_str(dev, 25)
        if do_fp and Fraction(n) > a.k1_frac:
            dev = mpfr(0)
            for j in range(2, n + 1, 2):
                rf = solve_theta_fixed_point(a, n, j, ctx)
                dev = max(dev, abs(g(rf.root, ctx) - spec.lambdas[j - 1]))
            out["fp_dev"] = sci_str(dev, 25)
    return out


def run_sweep(
    bits: int,
    max_den: int = DEFAULT_MAX_DEN,
    max_n: int = DEFAULT_MAX_N,
    processes: int = 2,
    do_bisect: bool = True,
    do_fp: bool = True,
    progress=None,
):
    """Full residual/cross-method/rate sweep; deterministic aggregate."""
    payloads = [
        (a.numerator, a.denominator, n, bits, do_bisect, do_fp)
        for a in farey_alphas(max_den)
        for n in range(3, max_n + 1)
    ]
    if processes > 1:
        with ProcessPoolExecutor(max_workers=processes) as pool:
            cells = []
            for i, cell in enumerate(pool.map(_sweep_cell, payloads, chunksize=8)):
                cells.append(cell)
                if progress and (i + 1) % 200 == 0:
                    progress(i + 1, len(payloads))
    else:
        cells = [_sweep_cell(p) for p in payloads]
    agg_ctx = PrecisionContext(128)
    with agg_ctx.activate():
        agg = {
            "cells": len(cells),
            "loc_ok": all(c["loc_ok"] for c in cells),
            "trace_dev": max(c["trace_dev"] for c in cells),
            "lin_excess": max(c["lin_excess"] for c in cells),
            "quad_excess": max(c["quad_excess"] for c in cells),
            "residual": sci_str(max(mpfr(c["residual"]) for c in cells), 25),
        }
        if do_bisect:
            agg["bisect_dev"] = sci_str(
                max(mpfr(c["bisect_dev"]) for c in cells if "bisect_dev" in c), 25
            )
        if do_fp:
            agg["fp_dev"] = sci_str(
                max(mpfr(c["fp_dev"]) for c in cells if "fp_dev" in c), 25
            )
            agg["fp_cells"] = sum(1 for c in cells if "fp_dev" in c)
    return agg


SWEEP_CHECK_NAMES = (
    "eigenpair residuals (sweep)",
    "newton-vs-bisection agreement (sweep)",
    "fixed-point-vs-newton agreement (sweep)",
    "localization strict interiors (sweep)",
    "trace identity (sweep)",
    "newton convergence rates (sweep)",
)


def sweep_check_results(agg, bits: int):
    """Convert a run_sweep aggregate into CheckResults."""
    results = [
        _result(SWEEP_CHECK_NAMES[0], mpfr(agg["residual"]), residual_bound(bits)),
    ]
    if "bisect_dev" in agg:
        results.append(
            _result(SWEEP_CHECK_NAMES[1], mpfr(agg["bisect_dev"]), cross_method_bound(bits))
        )
    if "fp_dev" in agg:
        results.append(
            _result(SWEEP_CHECK_NAMES[2], mpfr(agg["fp_dev"]), cross_method_bound(bits))
        )
    results.append(
        CheckResult(
            SWEEP_CHECK_NAMES[3],
            "all interior" if agg["loc_ok"] else "violation",
            "all interior",
            agg["loc_ok"],
        )
    )
    results.append(_result(SWEEP_CHECK_NAMES[4], mpfr(agg["trace_dev"]), mpfr(1)))
    results.append(
        _result(
            SWEEP_CHECK_NAMES[5],
            mpfr(max(agg["lin_excess"], agg["quad_excess"])),
            mpfr(0),
        )
    )
    return results


def run_checks(bits: int, seed: int = 0, soundness_count: int = 100):
    """The non-sweep invariant battery (deterministic given seed)."""
    return [
        check_eta_equivalence(bits),
        check_eta_involution(bits),
        check_eta_shape(bits),
        check_eta_derivative_bounds(bits),
        check_eta_finite_differences(bits),
        check_factorization(bits, seed),
        check_trig_factorization(bits),
        check_real_part_collapse(bits, seed + 1),
        check_q_mesh_values(bits),
        check_alpha_half_closed_form(bits),
        check_norm_consistency(bits),
        check_oracle_agreement(seed + 2),
        check_alpha_monotonicity(bits),
        check_certified_soundness(seed + 3, count=soundness_count),
    ]
