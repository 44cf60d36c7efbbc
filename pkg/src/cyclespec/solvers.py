"""Root-finding engines for the transformed eigenvalue equation.

Three solvers share the bracket I_{n,j} = ((j-1)pi/n, j*pi/n) for even j:
bisection (always works), fixed-point iteration of f(x) = d + eta(x)/n
(contractive when n > K1), and Newton on h(x) = n*x - (j-1)*pi - eta(x)
(convergent for every n >= 3, with a-priori linear and quadratic error
certificates).  A generic convex/concave Newton engine is exposed as well.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .numerics import PrecisionContext
from .symbolfns import AlphaParam, _eta_pair, eta, h_main

__all__ = [
    "BracketInterval",
    "SolveReport",
    "newton_convex",
    "solve_theta_newton",
    "solve_theta_bisection",
    "solve_theta_fixed_point",
    "ContractionNotGuaranteed",
    "NoProgress",
    "PreconditionViolated",
]


class ContractionNotGuaranteed(Exception):
    """Fixed-point refusal: n <= K1(alpha), the map may not contract."""


class NoProgress(Exception):
    """Iteration budget exhausted before meeting tol.

    The solvers do not raise this themselves; they return the best iterate
    with ``converged=False``.  Callers that must escalate can raise it.
    """


class PreconditionViolated(Exception):
    """A declared precondition (e.g. f' > 0) failed at an iterate."""


@dataclass(frozen=True)
class BracketInterval:
    """The localization interval I_{n,j} with h(lo) < 0 < h(hi)."""

    lo: mpfr
    hi: mpfr

    @classmethod
    def for_index(cls, n: int, j: int, ctx: PrecisionContext) -> "BracketInterval":
        with ctx.activate():
            pi = ctx.pi
            return cls(lo=(j - 1) * pi / n, hi=j * pi / n)

    @property
    def width(self) -> mpfr:
        return self.hi - self.lo


@dataclass
class SolveReport:
    """Solver outcome with an a-priori/a-posteriori certified error bound."""

    root: mpfr
    iterations: int
    method: str
    certified_error: mpfr
    residual: mpfr
    converged: bool = True
    iterates: list | None = None


def _validate_even_index(n: int, j: int):
    if n < 3:
        raise ValueError("n must be >= 3")
    if not (2 <= j <= n) or j % 2 != 0:
        raise ValueError(f"j must be even with 2 <= j <= n; got j={j}, n={n}")


def _rounding_floor(ctx: PrecisionContext) -> mpfr:
    # covers the h-evaluation noise ~ j*pi*2^-p near a converged root
    return mpfr(2) ** (10 - ctx.mantissa_bits)


def _closed_form_report(n, j, ctx, method):
    with ctx.activate():
        root = j * ctx.pi / (n + 1)
        a_half = AlphaParam(Fraction(1, 2))
        return SolveReport(
            root=root,
            iterations=0,
            method=method,
            certified_error=_rounding_floor(ctx),
            residual=abs(h_main(a_half, n, j, root, ctx)),
            converged=True,
            iterates=[root],
        )


def newton_convex(
    f,
    f_prime,
    bracket,
    y0,
    max_iter: int,
    tol,
    ctx: PrecisionContext,
    shape: str = "convex",
) -> SolveReport:
    """Newton iteration for a convex (or concave) increasing function.

    Requires f' > 0 on [a, b] and a sign change f(a) <= 0 <= f(b).  For a
    convex f started at or above the root the sequence decreases monotonically
    with error <= (b-a)(1 - f'(a)/f'(b))^m; a wrong-side start lands on the
    good side after one step whenever a - f(a)/f'(a) <= b.  Concave functions
    are covered by the mirror argument (x -> -f(-x)).  Iterates are clamped
    to [a, b]; exhaustion of max_iter returns the best iterate flagged
    ``converged=False``.
    """
    if shape not in ("convex", "concave"):
        raise ValueError("shape must be 'convex' or 'concave'")
    with ctx.activate():
        a = ctx.mpf(bracket[0])
        b = ctx.mpf(bracket[1])
        if not a < b:
            raise ValueError("bracket must satisfy a < b")
        tol = ctx.mpf(tol)
        y = ctx.mpf(y0)
        if y < a or y > b:
            raise ValueError("y0 must lie in [a, b]")
        iterates = [y]
        converged = False
        fy = f(y)
        for _ in range(max_iter):
            if abs(fy) <= tol:
                converged = True
                break
            dy = f_prime(y)
            if not dy > 0:
                raise PreconditionViolated(f"f'({y}) = {dy} is not positive")
            step = fy / dy
            y = y - step
            if y < a:
                y = a
            elif y > b:
                y = b
            iterates.append(y)
            fy = f(y)
            if abs(step) <= tol:
                converged = abs(fy) <= tol or abs(step) <= tol
                break
        m = len(iterates) - 1
        da, db = f_prime(a), f_prime(b)
        if not (da > 0 and db > 0):
            raise PreconditionViolated("f' must be positive at the bracket endpoints")
        if shape == "convex":
            rate = 1 - da / db
        else:
            rate = 1 - db / da
        if rate < 0:
            rate = mpfr(0)
        cert = (b - a) * rate**m + _rounding_floor(ctx)
        return SolveReport(
            root=y,
            iterations=m,
            method="newton",
            certified_error=cert,
            residual=abs(fy),
            converged=converged,
            iterates=iterates,
        )


def _apriori_newton_cap(gamma: Fraction, n: int, tol, bits: int) -> int:
    """Step budget from the linear-rate certificate: error < 2^-p afterwards."""
    if gamma == 0:
        return 4
    p = bits + 8 if tol == 0 else max(8, math.ceil(-float(gmpy2.log2(tol))))
    denom = -math.log2(float(gamma))
    cap = (p + math.log2(math.pi / (2 * n))) / denom + 1
    return max(8, math.ceil(cap) + 1)


def solve_theta_newton(
    a: AlphaParam,
    n: int,
    j: int,
    ctx: PrecisionContext,
    tol=None,
    y0=None,
    max_iter: int | None = None,
) -> SolveReport:
    """Newton's method on h(x) = n x - (j-1) pi - eta(x), from y0 = d_{n,j}.

    Converges for every n >= 3 and any start in cl(I_{n,j}); the report
    carries min(linear, quadratic) certified error:
      linear    (pi/n) gamma^(m-1),
      quadratic (pi/n) (pi K2 / 2n^2)^(2^m - 1)   when n > sqrt(pi K2 / 2).
    Stops when |step| <= tol or |h| <= n*tol, capped by the a-priori step
    budget derived from the linear rate.
    """
    _validate_even_index(n, j)
    if a.is_half:
        return _closed_form_report(n, j, ctx, "newton")
    with ctx.activate():
        tol = ctx.default_tol if tol is None else ctx.mpf(tol)
        bracket = BracketInterval.for_index(n, j, ctx)
        lo, hi = bracket.lo, bracket.hi
        y = lo if y0 is None else ctx.mpf(y0)
        if y < lo or y > hi:
            raise ValueError("y0 must lie in cl(I_{n,j})")
        gamma = a.gamma_frac(n)
        cap = _apriori_newton_cap(gamma, n, tol, ctx.mantissa_bits)
        if max_iter is not None:
            cap = max_iter
        iterates = [y]
        converged = False
        hv_fresh = False
        hv = None
        for _ in range(cap):
            ev, ed = _eta_pair(a, y, ctx)
            hv = n * y - (j - 1) * ctx.pi - ev
            if abs(hv) <= n * tol:
                converged = True
                hv_fresh = True
                break
            step = hv / (n - ed)
            y = y - step
            if y < lo:
                y = lo
            elif y > hi:
                y = hi
            iterates.append(y)
            if abs(step) <= tol:
                converged = True
                break
        if not hv_fresh:
            ev, _ = _eta_pair(a, y, ctx)
            hv = n * y - (j - 1) * ctx.pi - ev
        m = len(iterates) - 1
        width = ctx.pi / n
        cert = width * ctx.mpf(gamma) ** max(m - 1, 0)
        k2 = ctx.mpf(a.k2_frac)
        q = ctx.pi * k2 / (2 * n * n)
        if q < 1 and m >= 1:
            exponent = (mpfr(2) ** m) - 1 if m > 60 else (2**m - 1)
            quad = width * q**exponent
            if quad < cert:
                cert = quad
        return SolveReport(
            root=y,
            iterations=m,
            method="newton",
            certified_error=cert + _rounding_floor(ctx),
            residual=abs(hv),
            converged=converged,
            iterates=iterates,
        )


def _half_angle_tables(first, count, ctx):
    """cos/sin chains of first, first/2, first/4, ... (count entries)."""
    sin_t, cos_t = gmpy2.sin_cos(first)
    coss = [cos_t]
    sins = [sin_t]
    for _ in range(count - 1):
        cos_t = gmpy2.sqrt((1 + cos_t) / 2)
        sin_t = sin_t / (2 * cos_t)
        coss.append(cos_t)
        sins.append(sin_t)
    return coss, sins


class _BisectionTables:
    """Per-(n, j-independent) rotation tables for deep bisection.

    The sign of h at a midpoint equals the sign of
        (1-kappa) cos(A) - (1+kappa) cos(B),
    A = ((n-1)x - (j-1)pi)/2, B = ((n+1)x - (j-1)pi)/2 (both compared angles
    live in [0, pi/2] on the bracket, where tan is monotone).  Midpoints move
    by w0/2^(i+2) at step i, so (cos, sin) of A and B are advanced by
    precomputed rotations whose angles halve each step.
    """

    def __init__(self, n: int, steps: int, ctx: PrecisionContext):
        self.n = n
        self.steps = steps
        with ctx.activate():
            w0 = ctx.pi / n
            if steps > 1:
                self.cos_a, self.sin_a = _half_angle_tables((n - 1) * w0 / 8, steps - 1, ctx)
                self.cos_b, self.sin_b = _half_angle_tables((n + 1) * w0 / 8, steps - 1, ctx)
            else:
                self.cos_a = self.sin_a = self.cos_b = self.sin_b = []


_tables_cache: dict = {}


def _bisection_tables(n, steps, ctx):
    key = (n, steps, ctx.mantissa_bits)
    hit = _tables_cache.get(key)
    if hit is None:
        # keep at most a couple of (n, bits) entries alive; sweeps go n by n
        if len(_tables_cache) > 2:
            _tables_cache.clear()
        hit = _BisectionTables(n, steps, ctx)
        _tables_cache[key] = hit
    return hit


def solve_theta_bisection(
    a: AlphaParam,
    n: int,
    j: int,
    ctx: PrecisionContext,
    tol=None,
) -> SolveReport:
    """Bracketing bisection on h over I_{n,j}; h changes sign exactly once.

    certified_error = (hi-lo) * 2^-iterations plus a rounding-drift cushion.
    """
    _validate_even_index(n, j)
    if a.is_half:
        return _closed_form_report(n, j, ctx, "bisection")
    with ctx.activate():
        tol = ctx.default_tol if tol is None else ctx.mpf(tol)
        bracket = BracketInterval.for_index(n, j, ctx)
        lo, hi = bracket.lo, bracket.hi
        w0 = hi - lo
        steps = max(1, math.ceil(float(gmpy2.log2(w0 / tol))))
        tabs = _bisection_tables(n, steps, ctx)
        kap = a.kappa(ctx)
        ca_w, cb_w = 1 - kap, -(1 + kap)
        mid = lo + w0 / 2
        pi_j = (j - 1) * ctx.pi
        sA, cA = gmpy2.sin_cos(((n - 1) * mid - pi_j) / 2)
        sB, cB = gmpy2.sin_cos(((n + 1) * mid - pi_j) / 2)
        width = w0
        for i in range(steps):
            sign_pos = ca_w * cA + cb_w * cB > 0
            width = width / 2
            if sign_pos:
                hi = mid
            else:
                lo = mid
            if i == steps - 1:
                break
            d = -1 if sign_pos else 1
            ct, st = tabs.cos_a[i], tabs.sin_a[i]
            cA, sA = cA * ct - d * sA * st, sA * ct + d * cA * st
            ct, st = tabs.cos_b[i], tabs.sin_b[i]
            cB, sB = cB * ct - d * sB * st, sB * ct + d * cB * st
            mid = mid + d * width / 2
        root = (lo + hi) / 2
        cert = width + mpfr(2) ** (40 - ctx.mantissa_bits)
        return SolveReport(
            root=root,
            iterations=steps,
            method="bisection",
            certified_error=cert,
            residual=abs(h_main(a, n, j, root, ctx)),
            converged=True,
        )


_LADDER_SEED = (192, 416, 832, 1661)


def solve_theta_fixed_point(
    a: AlphaParam,
    n: int,
    j: int,
    ctx: PrecisionContext,
    tol=None,
    x0=None,
) -> SolveReport:
    """Fixed-point iteration x <- d + eta(x)/n, contractive when n > K1.

    Refuses with ContractionNotGuaranteed otherwise.  Runs a precision
    ladder (iterates are exact data; early contraction happens at cheap
    precision) and stops on the Banach a-posteriori bound
    q/(1-q) |x_m - x_{m-1}| <= tol with q = K1/n.  certified_error is the
    minimum of that bound and the a-priori (pi/n)(K1/n)^m.
    """
    _validate_even_index(n, j)
    if Fraction(n) <= a.k1_frac:
        raise ContractionNotGuaranteed(
            f"fixed-point map needs n > K1(alpha) = {a.k1_frac}; got n = {n}"
        )
    if a.is_half:
        return _closed_form_report(n, j, ctx, "fixed_point")
    bits = ctx.mantissa_bits
    levels = [b for b in _LADDER_SEED if b < bits] + [bits]
    q_frac = a.k1_frac / n
    fac_frac = q_frac / (1 - q_frac)
    total_m = 0
    x_cur = x0
    last_delta = None
    converged = False
    cap = math.ceil((bits + 64) / -math.log2(float(q_frac))) + 64 * len(levels)
    for level_bits in levels:
        lctx = ctx if level_bits == bits else PrecisionContext(level_bits)
        final = level_bits == bits
        with lctx.activate():
            fac = lctx.mpf(fac_frac)
            if final:
                goal = lctx.default_tol if tol is None else lctx.mpf(tol)
            else:
                goal = mpfr(2) ** (48 - level_bits)
            x = lctx.mpf(x_cur) if x_cur is not None else (j - 1) * lctx.pi / n
            pi_j = (j - 1) * lctx.pi
            while total_m < cap:
                x_new = (pi_j + eta(a, x, lctx)) / n
                total_m += 1
                last_delta = abs(x_new - x)
                x = x_new
                if fac * last_delta <= goal:
                    if final:
                        converged = True
                    break
            x_cur = x
    with ctx.activate():
        width = ctx.pi / n
        apriori = width * ctx.mpf(q_frac) ** total_m
        aposteriori = ctx.mpf(fac_frac) * last_delta
        cert = min(apriori, aposteriori) + _rounding_floor(ctx)
        return SolveReport(
            root=x_cur,
            iterations=total_m,
            method="fixed_point",
            certified_error=cert,
            residual=abs(h_main(a, n, j, x_cur, ctx)),
            converged=converged,
        )
