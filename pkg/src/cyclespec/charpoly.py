"""Characteristic polynomials and closed-form eigenvectors.

Covers the general tridiagonal (-1, 2, -1) Toeplitz matrix with the four
corner entries replaced by 2-delta, -epsilon, -sigma, 2-tau, and the
weighted-cycle Laplacian as its special case delta = tau-bar = 1-alpha-bar,
epsilon = alpha-bar, sigma = alpha.  All evaluation goes through Chebyshev
recurrences (O(n) per point, no coefficient expansion).
"""

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpc, mpfr

from .numerics import PrecisionContext, chebyshev_T, chebyshev_U
from .symbolfns import AlphaParam

__all__ = [
    "CornerPerturbation",
    "ProblemInstance",
    "MatrixDense",
    "build_A",
    "build_L",
    "charpoly_A",
    "charpoly_L",
    "factor_p",
    "factor_q",
    "eigvec_A",
    "DegenerateCase",
    "EigenvalueAtBoundary",
]

MatrixDense = list  # list of row lists, mpfr or mpc entries


class DegenerateCase(Exception):
    """Both closed-form eigenvector branches vanished (multiplicity-2 regime)."""


class EigenvalueAtBoundary(Exception):
    """lambda in {0, 4}: the generic formulas divide by z - 1/z = 0 there."""


@dataclass(frozen=True)
class CornerPerturbation:
    """Corner replacements: (1,1)=2-delta, (1,n)=-epsilon, (n,1)=-sigma, (n,n)=2-tau."""

    delta: object
    epsilon: object
    sigma: object
    tau: object


@dataclass(frozen=True)
class ProblemInstance:
    """(alpha, n) pair defining the weighted n-cycle Laplacian, n >= 3."""

    alpha: AlphaParam
    n: int

    def __post_init__(self):
        if not isinstance(self.alpha, AlphaParam):
            object.__setattr__(self, "alpha", AlphaParam(self.alpha))
        if self.n < 3:
            raise ValueError("n must be >= 3")

    def corner_perturbation(self) -> CornerPerturbation:
        """The Laplacian's (delta, epsilon, sigma, tau) quadruple."""
        re, im = self.alpha.re_frac, self.alpha.im_frac
        if self.alpha.is_real:
            return CornerPerturbation(1 - re, re, re, 1 - re)
        return CornerPerturbation((1 - re, im), (re, -im), (re, im), (1 - re, -im))


def build_A(cp: CornerPerturbation, n: int, ctx: PrecisionContext) -> MatrixDense:
    """Materialize the corner-perturbed tridiagonal Toeplitz matrix."""
    if n < 3:
        raise ValueError("n must be >= 3")
    with ctx.activate():
        zero = mpfr(0)
        two = mpfr(2)
        rows = []
        for i in range(n):
            row = [zero] * n
            row[i] = two
            if i > 0:
                row[i - 1] = mpfr(-1)
            if i < n - 1:
                row[i + 1] = mpfr(-1)
            rows.append(row)
        rows[0][0] = 2 - ctx.scalar(cp.delta)
        rows[0][n - 1] = -ctx.scalar(cp.epsilon)
        rows[n - 1][0] = -ctx.scalar(cp.sigma)
        rows[n - 1][n - 1] = 2 - ctx.scalar(cp.tau)
        return rows


def build_L(inst: ProblemInstance, ctx: PrecisionContext) -> MatrixDense:
    """Materialize the cycle Laplacian: conjugated weight in row 1, plain in row n."""
    a = inst.alpha
    with ctx.activate():
        rows = build_A(CornerPerturbation(0, 0, 0, 0), inst.n, ctx)
        val = a.value(ctx)
        conj = a.conj(ctx)
        rows[0][0] = 1 + conj
        rows[0][inst.n - 1] = -conj
        rows[inst.n - 1][0] = -val
        rows[inst.n - 1][inst.n - 1] = 1 + val
        return rows


def _u_run(u, n_max: int, ctx):
    """[U_-1, U_0, ..., U_{n_max}] at u, one forward pass."""
    vals = [mpfr(0), mpfr(1)]
    if n_max >= 1:
        vals.append(2 * u)
    for _ in range(n_max - 1):
        vals.append(2 * u * vals[-1] - vals[-2])
    return vals


def charpoly_A(cp: CornerPerturbation, n: int, lam, ctx: PrecisionContext):
    """det(lambda I - A_n) via Chebyshev values at u = (lambda-2)/2:

    U_n(u) + (delta+tau) U_{n-1}(u) + (delta tau - epsilon sigma) U_{n-2}(u)
    + (-1)^(n+1) (epsilon + sigma).
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    with ctx.activate():
        lam = ctx.scalar(lam)
        u = (lam - 2) / 2
        uv = _u_run(u, n, ctx)
        d = ctx.scalar(cp.delta)
        e = ctx.scalar(cp.epsilon)
        s = ctx.scalar(cp.sigma)
        t = ctx.scalar(cp.tau)
        sign = -1 if n % 2 == 0 else 1  # (-1)^(n+1)
        return uv[n + 1] + (d + t) * uv[n] + (d * t - e * s) * uv[n - 1] + sign * (e + s)


def charpoly_L(inst: ProblemInstance, lam, ctx: PrecisionContext):
    """det(lambda I - L_{alpha,n}); depends on alpha only through Re(alpha):

    (lambda - 2 Re a) U_{n-1}(u) - 2 Re(a) U_{n-2}(u) + 2 (-1)^(n+1) Re(a).
    """
    n = inst.n
    with ctx.activate():
        lam = ctx.scalar(lam)
        u = (lam - 2) / 2
        uv = _u_run(u, n - 1, ctx)
        re_a = inst.alpha.re(ctx)
        sign = -1 if n % 2 == 0 else 1
        return (lam - 2 * re_a) * uv[n] - 2 * re_a * uv[n - 1] + 2 * sign * re_a


def factor_p(n: int, t, ctx: PrecisionContext) -> mpfr:
    """p_n(t) = (t^2 - 4) U_{n-1}(t/2); alpha-free factor, zeros at 2cos(k pi/2n)."""
    with ctx.activate():
        t = ctx.mpf(t)
        return (t * t - 4) * chebyshev_U(n - 1, t / 2, ctx)


def factor_q(inst: ProblemInstance, t, ctx: PrecisionContext) -> mpfr:
    """q_{a,n}(t) = (1-a) T_n(t/2) + a (t/2) U_{n-1}(t/2), a = Re(alpha).

    Together with p_n it factors the characteristic polynomial:
    D(4 - t^2) * t = 2 (-1)^n p_n(t) q_{a,n}(t).
    """
    with ctx.activate():
        t = ctx.mpf(t)
        re_a = inst.alpha.re(ctx)
        half = t / 2
        return (1 - re_a) * chebyshev_T(inst.n, half, ctx) + re_a * half * chebyshev_U(
            inst.n - 1, half, ctx
        )


def _inf_norm(v):
    return max(abs(c) for c in v)


def eigvec_A(cp: CornerPerturbation, n: int, lam, ctx: PrecisionContext, tol=None):
    """Closed-form eigenvector of A_n for an eigenvalue lambda not in {0, 4}.

    Tries the (delta, epsilon) Chebyshev form first,
        v_k = (-1)^(k-1) (U_{k-1} + delta U_{k-2} + (-1)^n epsilon U_{n-k-1}),
    and falls back to the (sigma, tau) form
        v_k = (-1)^(k-1) (sigma U_{k-2} + (-1)^n tau U_{n-k-1} + (-1)^n U_{n-k}),
    all at u = (lambda-2)/2.  A branch counts as degenerate when its vector
    has sup-norm <= tol*n.  Raises EigenvalueAtBoundary for lambda in {0, 4}
    and DegenerateCase when both branches vanish (eigenvalue of multiplicity
    at least 2; no single closed form applies).
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    with ctx.activate():
        tol = ctx.default_tol if tol is None else ctx.mpf(tol)
        lam = ctx.scalar(lam)
        boundary_slack = 4096 * ctx.eps
        if abs(lam) <= boundary_slack or abs(lam - 4) <= boundary_slack:
            raise EigenvalueAtBoundary(f"lambda = {lam} is at the spectrum boundary")
        u = (lam - 2) / 2
        uv = _u_run(u, n, ctx)  # uv[i] = U_{i-1}
        d = ctx.scalar(cp.delta)
        e = ctx.scalar(cp.epsilon)
        s = ctx.scalar(cp.sigma)
        t = ctx.scalar(cp.tau)
        par = 1 if n % 2 == 0 else -1  # (-1)^n
        v = []
        for k in range(1, n + 1):
            sign = 1 if k % 2 == 1 else -1
            v.append(sign * (uv[k] + d * uv[k - 1] + par * e * uv[n - k]))
        if _inf_norm(v) > tol * n:
            return v
        v = []
        for k in range(1, n + 1):
            sign = 1 if k % 2 == 1 else -1
            v.append(sign * (s * uv[k - 1] + par * t * uv[n - k] + par * uv[n - k + 1]))
        if _inf_norm(v) > tol * n:
            return v
        raise DegenerateCase(
            "both eigenvector branches vanished; eigenvalue has multiplicity >= 2"
        )
