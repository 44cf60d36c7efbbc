"""Precision-parameterized scalar arithmetic and Chebyshev kernels.

Everything downstream works with gmpy2 mpfr/mpc values under an explicit
PrecisionContext, so the same code path serves 53-bit and 3322-bit runs.
"""

import contextlib
import threading
from fractions import Fraction

import gmpy2
from gmpy2 import mpc, mpfr

__all__ = [
    "PrecisionContext",
    "DOUBLE",
    "chebyshev_T",
    "chebyshev_U",
    "g",
    "g_prime",
    "g_second",
]

_lock = threading.Lock()


class PrecisionContext:
    """Working precision (binary mantissa digits) plus derived tolerances.

    Immutable after construction.  Instances are context managers: entering
    activates the underlying gmpy2 context for the current thread, so
    transcendental evaluations round correctly at ``mantissa_bits``.
    """

    __slots__ = ("mantissa_bits", "_gctx", "_pi")

    def __init__(self, mantissa_bits: int):
        if mantissa_bits < 53:
            raise ValueError("mantissa_bits must be >= 53")
        object.__setattr__(self, "mantissa_bits", int(mantissa_bits))
        object.__setattr__(self, "_gctx", gmpy2.context(precision=int(mantissa_bits)))
        object.__setattr__(self, "_pi", None)

    def __setattr__(self, name, value):
        raise AttributeError("PrecisionContext is immutable")

    def __repr__(self):
        return f"PrecisionContext({self.mantissa_bits})"

    def __eq__(self, other):
        return isinstance(other, PrecisionContext) and other.mantissa_bits == self.mantissa_bits

    def __hash__(self):
        return hash(("PrecisionContext", self.mantissa_bits))

    @contextlib.contextmanager
    def activate(self):
        saved = gmpy2.get_context()
        gmpy2.set_context(self._gctx)
        try:
            yield self
        finally:
            gmpy2.set_context(saved)

    @property
    def eps(self) -> mpfr:
        """Unit roundoff 2^(1 - mantissa_bits), exact."""
        with self.activate():
            return mpfr(2) ** (1 - self.mantissa_bits)

    @property
    def default_tol(self) -> mpfr:
        """Default solver tolerance 2^(8 - mantissa_bits): 8 guard bits."""
        with self.activate():
            return mpfr(2) ** (8 - self.mantissa_bits)

    @property
    def pi(self) -> mpfr:
        if self._pi is None:
            with self.activate():
                with _lock:
                    object.__setattr__(self, "_pi", gmpy2.const_pi())
        return self._pi

    def mpf(self, value) -> mpfr:
        """Convert to mpfr at this precision (Fraction/int/float/str/mpfr)."""
        with self.activate():
            if isinstance(value, Fraction):
                return mpfr(gmpy2.mpq(value.numerator, value.denominator))
            return mpfr(value)

    def pi_times(self, q) -> mpfr:
        """q * pi at this precision; q is exact (int/Fraction/ratio string)."""
        with self.activate():
            return self.mpf(q) * self.pi

    def scalar(self, value):
        """Convert to mpfr, or mpc when the value carries an imaginary part."""
        if isinstance(value, (complex, mpc)):
            if value.imag == 0:
                return self.mpf(value.real)
            with self.activate():
                return mpc(self.mpf(value.real), self.mpf(value.imag))
        if isinstance(value, tuple) and len(value) == 2:
            re, im = value
            if im == 0:
                return self.mpf(re)
            with self.activate():
                return mpc(self.mpf(re), self.mpf(im))
        return self.mpf(value)


DOUBLE = PrecisionContext(53)


def chebyshev_T(n: int, t, ctx: PrecisionContext):
    """First-kind Chebyshev value T_n(t) by the forward three-term recurrence.

    T_0 = 1, T_1 = t, T_k = 2 t T_{k-1} - T_{k-2}; exact up to O(n*eps) on
    |t| <= 1.  Accepts real or complex t.
    """
    if n < 0:
        raise ValueError("chebyshev_T needs n >= 0")
    with ctx.activate():
        t = t if isinstance(t, (mpfr, mpc)) else ctx.scalar(t)
        if n == 0:
            return mpfr(1)
        prev, cur = mpfr(1), t
        for _ in range(n - 1):
            prev, cur = cur, 2 * t * cur - prev
        return cur


def chebyshev_U(n: int, t, ctx: PrecisionContext):
    """Second-kind Chebyshev value U_n(t), with the convention U_{-1} = 0.

    U_0 = 1, U_1 = 2t, same recurrence as T.
    """
    if n < -1:
        raise ValueError("chebyshev_U needs n >= -1")
    with ctx.activate():
        t = t if isinstance(t, (mpfr, mpc)) else ctx.scalar(t)
        if n == -1:
            return mpfr(0)
        if n == 0:
            return mpfr(1)
        prev, cur = mpfr(1), 2 * t
        for _ in range(n - 1):
            prev, cur = cur, 2 * t * cur - prev
        return cur


def g(x, ctx: PrecisionContext) -> mpfr:
    """Symbol g(x) = 2 - 2 cos x = 4 sin^2(x/2), defined on all of R.

    Maps [0, pi] onto [0, 4]; even; g(0) = 0 and g(pi) = 4 exactly.
    """
    with ctx.activate():
        return 2 - 2 * gmpy2.cos(ctx.mpf(x) if not isinstance(x, mpfr) else x)


def g_prime(x, ctx: PrecisionContext) -> mpfr:
    """g'(x) = 2 sin x (exact closed form, no numerical differentiation)."""
    with ctx.activate():
        return 2 * gmpy2.sin(ctx.mpf(x) if not isinstance(x, mpfr) else x)


def g_second(x, ctx: PrecisionContext) -> mpfr:
    """g''(x) = 2 cos x."""
    with ctx.activate():
        return 2 * gmpy2.cos(ctx.mpf(x) if not isinstance(x, mpfr) else x)
