import random
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclespec import PrecisionContext, chebyshev_T, chebyshev_U, g, g_prime, g_second

from conftest import assert_close


class TestPrecisionContext:
    def test_eps_is_exact_power(self):
        ctx = PrecisionContext(200)
        with ctx.activate():
            assert ctx.eps == mpfr(2) ** -199

    def test_rejects_narrow_mantissa(self):
        with pytest.raises(ValueError):
            PrecisionContext(52)

    def test_immutable(self, ctx200):
        with pytest.raises(AttributeError):
            ctx200.mantissa_bits = 100

    def test_transcendentals_track_precision(self):
        # sin at 3322 bits must match a 4000-bit reference to ~eps relative
        hi = PrecisionContext(4000)
        lo = PrecisionContext(3322)
        with hi.activate():
            ref = gmpy2.sin(hi.mpf(Fraction(1, 3)))
        with lo.activate():
            got = gmpy2.sin(lo.mpf(Fraction(1, 3)))
            assert abs(got - ref) <= 4 * lo.eps


class TestChebyshev:
    def test_t0_is_one(self, ctx200):
        assert chebyshev_T(0, ctx200.mpf("0.7"), ctx200) == 1

    def test_t2_closed_form(self, ctx200):
        # T_2(t) = 2t^2 - 1
        assert chebyshev_T(2, ctx200.mpf("0.5"), ctx200) == mpfr("-0.5")

    def test_t5_matches_cosine(self, ctx200):
        with ctx200.activate():
            theta = ctx200.pi_times(Fraction(1, 7))
            got = chebyshev_T(5, gmpy2.cos(theta), ctx200)
            want = gmpy2.cos(5 * theta)
            assert_close(got, want, 64 * 5 * ctx200.eps)

    def test_u_minus_one_is_zero(self, ctx200):
        assert chebyshev_U(-1, ctx200.mpf("0.3"), ctx200) == 0

    def test_u1(self, ctx200):
        assert chebyshev_U(1, ctx200.mpf("0.25"), ctx200) == mpfr("0.5")

    def test_u4_zero_at_cos_pi_fifth(self, ctx200):
        with ctx200.activate():
            theta = ctx200.pi_times(Fraction(1, 5))
            got = chebyshev_U(4, gmpy2.cos(theta), ctx200) * gmpy2.sin(theta)
            assert_close(got, mpfr(0), 64 * 4 * ctx200.eps)

    def test_invalid_degrees(self, ctx200):
        with pytest.raises(ValueError):
            chebyshev_T(-1, mpfr(0), ctx200)
        with pytest.raises(ValueError):
            chebyshev_U(-2, mpfr(0), ctx200)

    def test_recurrence_vs_trig_oracle(self, ctx200):
        """|T_n(t) - cos(n acos t)| and the U analog stay below 64 n eps."""
        rng = random.Random(7)
        with ctx200.activate():
            eps = ctx200.eps
            for _ in range(1000):
                t = ctx200.mpf(Fraction(rng.randint(-(2**30), 2**30), 2**30))
                theta = gmpy2.acos(t)
                s = gmpy2.sin(theta)
                # one forward pass produces every degree up to 64
                t_prev, t_cur = mpfr(1), t
                u_prev, u_cur = mpfr(1), 2 * t
                for n in range(2, 65):
                    t_prev, t_cur = t_cur, 2 * t * t_cur - t_prev
                    u_prev, u_cur = u_cur, 2 * t * u_cur - u_prev
                    assert abs(t_cur - gmpy2.cos(n * theta)) <= 64 * n * eps
                    assert abs(u_cur * s - gmpy2.sin((n + 1) * theta)) <= 64 * n * eps


class TestSymbolG:
    def test_endpoints_exact(self, ctx200):
        assert g(ctx200.mpf(0), ctx200) == 0
        assert g(ctx200.pi, ctx200) == 4

    def test_pi_third(self, ctx200):
        with ctx200.activate():
            assert_close(g(ctx200.pi_times(Fraction(1, 3)), ctx200), mpfr(1), 8 * ctx200.eps)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(min_value=-10.0, max_value=10.0, allow_nan=False))
    def test_even(self, x):
        ctx = PrecisionContext(120)
        with ctx.activate():
            assert g(ctx.mpf(x), ctx) == g(ctx.mpf(-x), ctx)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(min_value=0.0, max_value=3.141592653589793))
    def test_half_angle_identity(self, x):
        # g(x) = 4 - (2 cos(x/2))^2
        ctx = PrecisionContext(120)
        with ctx.activate():
            xm = ctx.mpf(x)
            rhs = 4 - (2 * gmpy2.cos(xm / 2)) ** 2
            assert abs(g(xm, ctx) - rhs) <= 8 * ctx.eps

    def test_derivatives_are_exact_forms(self, ctx200):
        with ctx200.activate():
            x = ctx200.mpf("0.9")
            assert g_prime(x, ctx200) == 2 * gmpy2.sin(x)
            assert g_second(x, ctx200) == 2 * gmpy2.cos(x)

    def test_range_on_0_pi(self, ctx200):
        with ctx200.activate():
            for k in range(65):
                val = g(ctx200.pi_times(Fraction(k, 64)), ctx200)
                assert -ctx200.eps <= val <= 4 + 4 * ctx200.eps
