"""Closed-form eigenvalue approximations with certified decay orders."""

from dataclasses import dataclass

from gmpy2 import mpfr

from .numerics import PrecisionContext, g, g_prime, g_second
from .symbolfns import AlphaParam, eta, eta_prime, eta_tilde, eta_tilde_prime

__all__ = [
    "AsymptoticEstimate",
    "theta_first_order",
    "lambda_second_order",
    "lambda_second_order_alt",
    "lambda_small_j",
]


@dataclass(frozen=True)
class AsymptoticEstimate:
    value: mpfr
    order: str  # theta_first | lambda_second | lambda_second_alt | small_j
    claimed_error_decay: int


def _check_even(n, j):
    if n < 3 or j % 2 != 0 or not 2 <= j <= n:
        raise ValueError("need n >= 3 and even j with 2 <= j <= n")


def theta_first_order(a: AlphaParam, n: int, j: int, ctx: PrecisionContext) -> mpfr:
    """d + eta(d)/n at d = (j-1)pi/n; within pi*K1/n^2 of the true angle."""
    _check_even(n, j)
    with ctx.activate():
        d = ctx.pi_times(j - 1) / n
        return d + eta(a, d, ctx) / n


def lambda_second_order(a: AlphaParam, n: int, j: int, ctx: PrecisionContext) -> AsymptoticEstimate:
    """Second-order expansion at d = (j-1)pi/n:

    g(d) + g'(d) e/n + (g'(d) e e' + g''(d) e^2 / 2)/n^2,  e = eta(d).
    Error is O(1/n^3), uniformly in j.
    """
    _check_even(n, j)
    with ctx.activate():
        d = ctx.pi_times(j - 1) / n
        e = eta(a, d, ctx)
        ep = eta_prime(a, d, ctx)
        value = (
            g(d, ctx)
            + g_prime(d, ctx) * e / n
            + (g_prime(d, ctx) * e * ep + g_second(d, ctx) * e * e / 2) / (n * n)
        )
        return AsymptoticEstimate(value, "lambda_second", 3)


def lambda_second_order_alt(
    a: AlphaParam, n: int, j: int, ctx: PrecisionContext
) -> AsymptoticEstimate:
    """Same expansion over the mesh j*pi/(n+1), driven by eta~ = eta + x - pi.

    Exact (up to rounding) when Re(alpha) = 1/2, where eta~ vanishes.
    """
    _check_even(n, j)
    with ctx.activate():
        x = ctx.pi_times(j) / (n + 1)
        m = n + 1
        e = eta_tilde(a, x, ctx)
        ep = eta_tilde_prime(a, x, ctx)
        value = (
            g(x, ctx)
            + g_prime(x, ctx) * e / m
            + (g_prime(x, ctx) * e * ep + g_second(x, ctx) * e * e / 2) / (m * m)
        )
        return AsymptoticEstimate(value, "lambda_second_alt", 3)


def lambda_small_j(a: AlphaParam, n: int, j: int, ctx: PrecisionContext) -> AsymptoticEstimate:
    """Spectral-gap-scale expansion j^2 pi^2/n^2 - 2 j^2 (1-a) pi^2 / (a n^3).

    Intended for j << n; error O(j^4/n^4).
    """
    _check_even(n, j)
    with ctx.activate():
        pi2 = ctx.pi * ctx.pi
        j2 = j * j
        re_a = a.re(ctx)
        value = j2 * pi2 / (n * n) - 2 * j2 * (1 - re_a) * pi2 / (re_a * n**3)
        return AsymptoticEstimate(value, "small_j", 4)
