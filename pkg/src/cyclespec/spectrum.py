"""Complete eigensystem of the weighted-cycle Laplacian.

Odd-index eigenvalues are the closed forms g((j-1)pi/n); even-index angles
are roots of the transformed equation, produced by the requested solver.
Eigenvector coordinates, exact and asymptotic norms, and residual
diagnostics live here too.
"""

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpc, mpfr

from .charpoly import ProblemInstance
from .numerics import PrecisionContext, g
from .solvers import (
    SolveReport,
    solve_theta_bisection,
    solve_theta_fixed_point,
    solve_theta_newton,
)
from .symbolfns import AlphaParam, eta, eta_prime, nu, xi

__all__ = [
    "SpectrumResult",
    "Eigenvector",
    "full_spectrum",
    "eigenvector",
    "eigvec_norm_exact",
    "eigvec_norm_asympt",
    "residual",
    "alpha_sweep",
]

_SOLVERS = {
    "newton": solve_theta_newton,
    "bisection": solve_theta_bisection,
    "fixed_point": solve_theta_fixed_point,
}


@dataclass
class SpectrumResult:
    """Ascending eigenvalues, their angles, and per-entry provenance."""

    lambdas: list
    thetas: list
    methods: list
    reports: list

    @property
    def n(self) -> int:
        return len(self.lambdas)


@dataclass
class Eigenvector:
    coords: list
    exact_norm: mpfr
    asympt_norm: mpfr | None


def _theta_asymptotic(a: AlphaParam, n: int, j: int, ctx: PrecisionContext):
    # two-term expansion d + eta(d)/n + eta(d) eta'(d)/n^2 (not root-certified)
    d = ctx.pi_times(j - 1) / n
    e = eta(a, d, ctx)
    return d + e / n + e * eta_prime(a, d, ctx) / (n * n)


def full_spectrum(
    inst: ProblemInstance,
    ctx: PrecisionContext,
    method: str = "newton",
    tol=None,
) -> SpectrumResult:
    """All n eigenvalues of L_{alpha,n} in ascending order.

    Odd j: lambda_j = g((j-1)pi/n) exactly (alpha-independent).  Even j:
    lambda_j = g(theta_j) with theta_j solved inside I_{n,j} by the chosen
    method (newton | bisection | fixed_point), or estimated when method is
    "asymptotic".  fixed_point propagates ContractionNotGuaranteed.
    """
    if method not in ("newton", "bisection", "fixed_point", "asymptotic"):
        raise ValueError(f"unknown method {method!r}")
    a, n = inst.alpha, inst.n
    lambdas, thetas, methods, reports = [], [], [], []
    with ctx.activate():
        for j in range(1, n + 1):
            if j % 2 == 1:
                theta = ctx.pi_times(j - 1) / n
                lambdas.append(g(theta, ctx))
                thetas.append(theta)
                methods.append("closed_form")
                reports.append(None)
            elif method == "asymptotic":
                theta = _theta_asymptotic(a, n, j, ctx)
                lambdas.append(g(theta, ctx))
                thetas.append(theta)
                methods.append("asymptotic")
                reports.append(None)
            else:
                rep: SolveReport = _SOLVERS[method](a, n, j, ctx, tol=tol)
                lambdas.append(g(rep.root, ctx))
                thetas.append(rep.root)
                methods.append(rep.method)
                reports.append(rep)
        if method != "asymptotic":
            for i in range(1, n):
                if not lambdas[i - 1] <= lambdas[i]:
                    raise RuntimeError(
                        f"eigenvalues out of order at j={i + 1}: "
                        f"{lambdas[i - 1]} > {lambdas[i]}"
                    )
    return SpectrumResult(lambdas, thetas, methods, reports)


def _sin_table(theta, n: int, ctx):
    """sin(k*theta) for k = 0..n via the three-term recurrence (one sincos)."""
    s1, c1 = gmpy2.sin_cos(theta)
    two_c = 2 * c1
    table = [mpfr(0), s1]
    for _ in range(n - 1):
        table.append(two_c * table[-1] - table[-2])
    return table


def eigenvector(inst: ProblemInstance, j: int, theta_j, ctx: PrecisionContext) -> Eigenvector:
    """Coordinate vector for the j-th eigenpair.

    j = 1 is the all-ones kernel vector; otherwise
    v_k = sin(k theta) - (1 - conj(a)) sin((k-1) theta) + conj(a) sin((n-k) theta).
    """
    a, n = inst.alpha, inst.n
    if not 1 <= j <= n:
        raise ValueError("j out of range")
    with ctx.activate():
        if j == 1:
            ones = [mpfr(1)] * n
            return Eigenvector(ones, gmpy2.sqrt(mpfr(n)), None)
        theta = theta_j if isinstance(theta_j, mpfr) else ctx.mpf(theta_j)
        s = _sin_table(theta, n, ctx)
        conj_a = a.conj(ctx)
        w = 1 - conj_a
        coords = [s[k] - w * s[k - 1] + conj_a * s[n - k] for k in range(1, n + 1)]
        exact = eigvec_norm_exact(inst, j, theta, ctx)
        asympt = eigvec_norm_asympt(inst, j, theta, ctx) if j % 2 == 0 else None
        return Eigenvector(coords, exact, asympt)


def eigvec_norm_exact(inst: ProblemInstance, j: int, theta_j, ctx: PrecisionContext) -> mpfr:
    """Exact two-norm of the coordinate vector (closed form, no summation).

    Odd j:  |1-a| sqrt(n lambda / 2).
    Even j: sqrt(n nu(theta) + (sin eta(theta)/sin theta) xi(theta)).
    """
    a, n = inst.alpha, inst.n
    if not 2 <= j <= inst.n:
        raise ValueError("norm formulas require 2 <= j <= n")
    with ctx.activate():
        theta = theta_j if isinstance(theta_j, mpfr) else ctx.mpf(theta_j)
        if j % 2 == 1:
            lam = g(theta, ctx)
            abs_one_minus = gmpy2.sqrt(
                ctx.mpf((1 - a.re_frac) ** 2 + a.im_frac**2)
            )
            return abs_one_minus * gmpy2.sqrt(n * lam / 2)
        ratio = gmpy2.sin(eta(a, theta, ctx)) / gmpy2.sin(theta)
        return gmpy2.sqrt(n * nu(a, theta, ctx) + ratio * xi(a, theta, ctx))


def eigvec_norm_asympt(inst: ProblemInstance, j: int, theta_j, ctx: PrecisionContext) -> mpfr:
    """Leading-order norm sqrt(n nu(theta)); exact - this = O(1/sqrt(n))."""
    if j % 2 != 0:
        raise ValueError("asymptotic norm applies to even j")
    with ctx.activate():
        theta = theta_j if isinstance(theta_j, mpfr) else ctx.mpf(theta_j)
        return gmpy2.sqrt(inst.n * nu(inst.alpha, theta, ctx))


def _laplacian_matvec(inst: ProblemInstance, v, ctx):
    """L v using the cycle structure; identical values to the dense product."""
    a, n = inst.alpha, inst.n
    val = a.value(ctx)
    conj_a = a.conj(ctx)
    out = [None] * n
    out[0] = (1 + conj_a) * v[0] - v[1] - conj_a * v[n - 1]
    for k in range(1, n - 1):
        out[k] = -v[k - 1] + 2 * v[k] - v[k + 1]
    out[n - 1] = -val * v[0] - v[n - 2] + (1 + val) * v[n - 1]
    return out


def _norm2(v):
    acc = mpfr(0)
    for c in v:
        acc += gmpy2.norm(c) if isinstance(c, mpc) else c * c
    return gmpy2.sqrt(acc)


def residual(inst: ProblemInstance, lam, v, ctx: PrecisionContext) -> mpfr:
    """|| L v - lambda v ||_2 in working precision."""
    if not any(c != 0 for c in v):
        raise ValueError("residual needs a nonzero vector")
    with ctx.activate():
        lam = ctx.scalar(lam)
        lv = _laplacian_matvec(inst, v, ctx)
        return _norm2([lv[k] - lam * v[k] for k in range(inst.n)])


def alpha_sweep(n: int, j: int, alphas, ctx: PrecisionContext, method: str = "newton"):
    """lambda_{alpha,n,j} over ascending alphas; strictly increasing in alpha.

    The returned values stay inside (g((j-1)pi/n), g(j pi/n)), the two limit
    values at alpha -> 0 and alpha -> 1.
    """
    if j % 2 != 0:
        raise ValueError("the alpha-dependence is nontrivial only for even j")
    params = [a if isinstance(a, AlphaParam) else AlphaParam(a) for a in alphas]
    for left, right in zip(params, params[1:]):
        if not left.re_frac < right.re_frac:
            raise ValueError("alphas must be sorted strictly ascending")
    out = []
    with ctx.activate():
        solver = _SOLVERS[method]
        for a in params:
            rep = solver(a, n, j, ctx)
            out.append((a, g(rep.root, ctx)))
        for (_, l1), (_, l2) in zip(out, out[1:]):
            if not l1 < l2:
                raise RuntimeError("eigenvalue failed to increase with alpha")
    return out
