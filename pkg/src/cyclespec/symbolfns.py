"""The eta function family and derived scalar symbols.

eta_a(x) = 2*atan(kappa * cot(x/2)) with kappa = a/(1-a) is a strictly
decreasing involution of [0, pi].  It parameterizes the transformed scalar
equation x = d + eta(x)/n whose roots are the non-trivial eigenvalue angles,
and the norm symbols nu/xi.
"""

import re as _re
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpc, mpfr

from .numerics import PrecisionContext, g

__all__ = [
    "AlphaParam",
    "SolverConstants",
    "solver_constants",
    "eta",
    "eta_prime",
    "eta_second",
    "eta_tilde",
    "eta_tilde_prime",
    "f_main",
    "h_main",
    "h_main_prime",
    "nu",
    "xi",
]

_HALF = Fraction(1, 2)

_COMPLEX_RE = _re.compile(
    r"^\s*(?P<re>[+-]?[^+-]+?)\s*(?P<sign>[+-])\s*(?P<im>[^+-]*?)\s*[ij]\s*$"
)


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(v)  # exact binary value
    if isinstance(v, mpfr):
        q = gmpy2.mpq(v)
        return Fraction(int(q.numerator), int(q.denominator))
    if isinstance(v, str):
        return Fraction(v.strip())
    raise TypeError(f"cannot interpret {v!r} as an exact real number")


def _parse_value(value):
    """Split an alpha-like input into exact (re, im) Fractions."""
    if isinstance(value, tuple) and len(value) == 2:
        return _to_fraction(value[0]), _to_fraction(value[1])
    if isinstance(value, (complex, mpc)):
        return _to_fraction(value.real), _to_fraction(value.imag)
    if isinstance(value, str):
        m = _COMPLEX_RE.match(value)
        if m:
            re_part = _to_fraction(m.group("re"))
            im_str = m.group("im") or "1"
            im_part = _to_fraction(im_str)
            if m.group("sign") == "-":
                im_part = -im_part
            return re_part, im_part
        return _to_fraction(value), Fraction(0)
    return _to_fraction(value), Fraction(0)


class AlphaParam:
    """Edge-weight parameter with 0 < Re(alpha) < 1, stored exactly.

    Inputs are rationals in disguise (fractions, decimal strings, binary
    floats, "a+bi" strings), so Re(alpha), kappa = Re/(1-Re) and |alpha|^2
    are kept as exact Fractions and materialized per precision on demand.
    The exact value 1/2 is detected and fully supported; the boundary
    values 0 and 1 are rejected.
    """

    __slots__ = ("re_frac", "im_frac", "kappa_frac", "_cache")

    def __init__(self, value):
        re_frac, im_frac = _parse_value(value)
        if not 0 < re_frac < 1:
            raise ValueError(f"Re(alpha) must lie strictly in (0, 1); got {re_frac}")
        self.re_frac = re_frac
        self.im_frac = im_frac
        self.kappa_frac = re_frac / (1 - re_frac)
        self._cache = {}

    @property
    def is_real(self) -> bool:
        return self.im_frac == 0

    @property
    def is_half(self) -> bool:
        """True when Re(alpha) is exactly 1/2 (kappa = 1, eta(x) = pi - x)."""
        return self.re_frac == _HALF

    @property
    def abs2_frac(self) -> Fraction:
        return self.re_frac * self.re_frac + self.im_frac * self.im_frac

    @property
    def k1_frac(self) -> Fraction:
        k = self.kappa_frac
        return max(k, 1 / k)

    @property
    def k2_frac(self) -> Fraction:
        k1 = self.k1_frac
        return (k1 * k1 - 1) / 2

    def gamma_frac(self, n: int) -> Fraction:
        a = self.re_frac
        num = abs(2 * a - 1)
        return num / (a * (1 - a) * n + num)

    def _materialize(self, ctx: PrecisionContext):
        entry = self._cache.get(ctx.mantissa_bits)
        if entry is None:
            re_m = ctx.mpf(self.re_frac)
            kap = ctx.mpf(self.kappa_frac)
            if self.is_real:
                val = re_m
            else:
                with ctx.activate():
                    val = mpc(re_m, ctx.mpf(self.im_frac))
            entry = (re_m, kap, val)
            self._cache[ctx.mantissa_bits] = entry
        return entry

    def re(self, ctx: PrecisionContext) -> mpfr:
        return self._materialize(ctx)[0]

    def kappa(self, ctx: PrecisionContext) -> mpfr:
        return self._materialize(ctx)[1]

    def value(self, ctx: PrecisionContext):
        """alpha as mpfr (real) or mpc (complex) at ctx precision."""
        return self._materialize(ctx)[2]

    def conj(self, ctx: PrecisionContext):
        v = self.value(ctx)
        return v.conjugate() if isinstance(v, mpc) else v

    def __eq__(self, other):
        return (
            isinstance(other, AlphaParam)
            and other.re_frac == self.re_frac
            and other.im_frac == self.im_frac
        )

    def __hash__(self):
        return hash((self.re_frac, self.im_frac))

    def __repr__(self):
        if self.is_real:
            return f"AlphaParam({self.re_frac})"
        return f"AlphaParam({self.re_frac} + {self.im_frac}i)"


@dataclass(frozen=True)
class SolverConstants:
    """Rate constants: K1 = sup|eta'|, K2 >= sup|eta''|, gamma_n the Newton ratio."""

    K1: mpfr
    K2: mpfr
    gamma_n: mpfr


def solver_constants(a: AlphaParam, n: int, ctx: PrecisionContext) -> SolverConstants:
    return SolverConstants(
        K1=ctx.mpf(a.k1_frac),
        K2=ctx.mpf(a.k2_frac),
        gamma_n=ctx.mpf(a.gamma_frac(n)),
    )


def _check_angle(x, ctx):
    x = x if isinstance(x, mpfr) else ctx.mpf(x)
    # tolerate endpoint rounding by a few ulps of pi
    slack = 8 * ctx.eps * 4
    if x < -slack or x > ctx.pi + slack:
        raise ValueError(f"angle {x} outside [0, pi]")
    return x


def eta(a: AlphaParam, x, ctx: PrecisionContext) -> mpfr:
    """eta_a(x) = 2*atan(kappa*cot(x/2)), decreasing from pi to 0 on [0, pi].

    Evaluated as pi - 2*atan(tan(x/2)/kappa) left of pi/2 and by the cot
    form right of pi/2, keeping the trig argument <= 1 in magnitude on each
    branch.  Result clamped to [0, pi].
    """
    with ctx.activate():
        x = _check_angle(x, ctx)
        pi = ctx.pi
        if a.is_half:
            r = pi - x
        elif x == 0:
            return pi
        elif x < pi / 2:
            r = pi - 2 * gmpy2.atan(gmpy2.tan(x / 2) / a.kappa(ctx))
        else:
            r = 2 * gmpy2.atan(a.kappa(ctx) / gmpy2.tan(x / 2))
        if r < 0:
            return mpfr(0)
        if r > pi:
            return pi
        return r


def eta_prime(a: AlphaParam, x, ctx: PrecisionContext) -> mpfr:
    """eta'(x) = -kappa(1+tan^2(x/2))/(kappa^2+tan^2(x/2)); in [-K1, -1/K1].

    Endpoints return the analytic limits -1/kappa (x=0) and -kappa (x=pi).
    """
    with ctx.activate():
        x = _check_angle(x, ctx)
        if a.is_half:
            return mpfr(-1)
        kap = a.kappa(ctx)
        if x <= 0:
            return -1 / kap
        if x >= ctx.pi:
            return -kap
        if x < ctx.pi / 2:
            t2 = gmpy2.tan(x / 2) ** 2
            return -kap * (1 + t2) / (kap * kap + t2)
        c2 = (1 / gmpy2.tan(x / 2)) ** 2
        return -kap * (1 + c2) / (1 + kap * kap * c2)


def eta_second(a: AlphaParam, x, ctx: PrecisionContext) -> mpfr:
    """eta''(x) = ((kappa^2-1) tan(x/2))/(kappa^2+tan^2(x/2)) * eta'(x)."""
    with ctx.activate():
        x = _check_angle(x, ctx)
        if a.is_half:
            return mpfr(0)
        kap = a.kappa(ctx)
        k2 = kap * kap
        if x <= 0 or x >= ctx.pi:
            return mpfr(0)
        if x < ctx.pi / 2:
            t = gmpy2.tan(x / 2)
            t2 = t * t
            fac = (k2 - 1) * t / (k2 + t2)
            der = -kap * (1 + t2) / (k2 + t2)
        else:
            c = 1 / gmpy2.tan(x / 2)
            c2 = c * c
            fac = (k2 - 1) * c / (1 + k2 * c2)
            der = -kap * (1 + c2) / (1 + k2 * c2)
        return fac * der


def _eta_pair(a: AlphaParam, x, ctx: PrecisionContext):
    """(eta, eta') sharing a single tangent evaluation; solver hot path."""
    pi = ctx.pi
    if a.is_half:
        return pi - x, mpfr(-1)
    kap = a.kappa(ctx)
    if x == 0:
        return pi, -1 / kap
    if x >= pi:
        return mpfr(0), -kap
    if x < pi / 2:
        t = gmpy2.tan(x / 2)
        t2 = t * t
        val = pi - 2 * gmpy2.atan(t / kap)
        der = -kap * (1 + t2) / (kap * kap + t2)
    else:
        c = 1 / gmpy2.tan(x / 2)
        c2 = c * c
        val = 2 * gmpy2.atan(kap * c)
        der = -kap * (1 + c2) / (1 + kap * kap * c2)
    if val < 0:
        val = mpfr(0)
    return val, der


def eta_tilde(a: AlphaParam, x, ctx: PrecisionContext) -> mpfr:
    """eta~(x) = eta(x) + x - pi; identically 0 when Re(alpha) = 1/2."""
    with ctx.activate():
        if a.is_half:
            return mpfr(0)
        x = _check_angle(x, ctx)
        return eta(a, x, ctx) + x - ctx.pi


def eta_tilde_prime(a: AlphaParam, x, ctx: PrecisionContext) -> mpfr:
    """eta~'(x) = eta'(x) + 1 (exact relation)."""
    with ctx.activate():
        if a.is_half:
            return mpfr(0)
        return eta_prime(a, x, ctx) + 1


def f_main(a: AlphaParam, n: int, j: int, x, ctx: PrecisionContext) -> mpfr:
    """Fixed-point map f(x) = (j-1)pi/n + eta(x)/n; maps cl(I_{n,j}) into itself."""
    with ctx.activate():
        return ((j - 1) * ctx.pi + eta(a, x, ctx)) / n


def h_main(a: AlphaParam, n: int, j: int, x, ctx: PrecisionContext) -> mpfr:
    """h(x) = n x - (j-1) pi - eta(x); strictly increasing, one sign change."""
    with ctx.activate():
        x = x if isinstance(x, mpfr) else ctx.mpf(x)
        return n * x - (j - 1) * ctx.pi - eta(a, x, ctx)


def h_main_prime(a: AlphaParam, n: int, j: int, x, ctx: PrecisionContext) -> mpfr:
    """h'(x) = n - eta'(x) > n."""
    with ctx.activate():
        return n - eta_prime(a, x, ctx)


def nu(a: AlphaParam, x, ctx: PrecisionContext) -> mpfr:
    """Leading squared-norm density:

    nu(x) = (1-Re a)/2 g(x) - (Re a)/2 g(eta) + (Re a - |a|^2)/2 g(x - eta)
            + 2|a|^2,
    with g extended to all of R (x - eta may be negative).
    """
    with ctx.activate():
        x = _check_angle(x, ctx)
        e = eta(a, x, ctx)
        re_a = a.re(ctx)
        a2 = ctx.mpf(a.abs2_frac)
        return (
            (1 - re_a) / 2 * g(x, ctx)
            - re_a / 2 * g(e, ctx)
            + (re_a - a2) / 2 * g(x - e, ctx)
            + 2 * a2
        )


def xi(a: AlphaParam, x, ctx: PrecisionContext) -> mpfr:
    """Bounded correction term of the exact squared eigenvector norm:

    xi(x) = |1-a|^2/2 g(x) cos(eta) + |a|^2/2 g(eta) cos(x)
            + (Re a - |a|^2)/2 (g(x) + g(x+eta) - g(eta)) - 2|a|^2 cos(x).
    """
    with ctx.activate():
        x = _check_angle(x, ctx)
        e = eta(a, x, ctx)
        re_a = a.re(ctx)
        a2 = ctx.mpf(a.abs2_frac)
        one_minus = ctx.mpf((1 - a.re_frac) ** 2 + a.im_frac**2)  # |1-a|^2
        cos_x = gmpy2.cos(x)
        return (
            one_minus / 2 * g(x, ctx) * gmpy2.cos(e)
            + a2 / 2 * g(e, ctx) * cos_x
            + (re_a - a2) / 2 * (g(x, ctx) + g(x + e, ctx) - g(e, ctx))
            - 2 * a2 * cos_x
        )
