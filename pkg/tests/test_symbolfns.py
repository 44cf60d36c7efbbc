from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclespec import (
    AlphaParam,
    PrecisionContext,
    eta,
    eta_prime,
    eta_second,
    eta_tilde,
    eta_tilde_prime,
    f_main,
    g,
    h_main,
    h_main_prime,
    nu,
    solver_constants,
    xi,
)
from cyclespec.verify import (
    check_eta_derivative_bounds,
    check_eta_equivalence,
    check_eta_finite_differences,
    check_eta_involution,
    check_eta_shape,
)

from conftest import assert_close

# frozen oracle value: 2*atan(1/2) evaluated at 400 bits
TWO_ATAN_HALF = (
    "0.9272952180016122324285124629224288040570741085722405276218661774403957283314834106012"
)


class TestAlphaParam:
    @pytest.mark.parametrize("bad", [0, 1, Fraction(0), Fraction(1), -0.2, 1.5, "0/7"])
    def test_boundary_rejected(self, bad):
        with pytest.raises(ValueError):
            AlphaParam(bad)

    def test_complex_re_bounds(self):
        with pytest.raises(ValueError):
            AlphaParam(complex(1.2, 0.5))
        AlphaParam(complex(0.5, 3.0))  # any imaginary part is fine

    def test_exact_kappa(self):
        a = AlphaParam(Fraction(1, 3))
        assert a.kappa_frac == Fraction(1, 2)
        assert a.k1_frac == 2
        assert a.k2_frac == Fraction(3, 2)

    def test_half_detection(self):
        assert AlphaParam(Fraction(1, 2)).is_half
        assert AlphaParam(0.5).is_half
        assert AlphaParam("1/2+3/10i").is_half
        assert not AlphaParam(Fraction(499, 999)).is_half

    def test_string_forms(self):
        assert AlphaParam("2/5").re_frac == Fraction(2, 5)
        assert AlphaParam("0.3").re_frac == Fraction(3, 10)
        z = AlphaParam("1/2-1/4i")
        assert z.im_frac == Fraction(-1, 4)
        assert AlphaParam("0.5+i").im_frac == 1

    def test_float_is_exact_binary(self):
        assert AlphaParam(0.5).re_frac == Fraction(1, 2)

    def test_gamma_example(self):
        # alpha=1/3, n=10: |2a-1|/(a(1-a)n + |2a-1|) = 3/23
        assert AlphaParam(Fraction(1, 3)).gamma_frac(10) == Fraction(3, 23)

    def test_solver_constants(self, ctx200):
        sc = solver_constants(AlphaParam(Fraction(9, 10)), 5, ctx200)
        assert sc.K1 == 9
        assert sc.K2 == 40
        a = AlphaParam(Fraction(1, 2))
        assert solver_constants(a, 7, ctx200).K2 == 0
        assert solver_constants(a, 7, ctx200).gamma_n == 0


class TestEta:
    def test_half_alpha_is_pi_minus_x(self, a_half, ctx200):
        with ctx200.activate():
            x = ctx200.mpf("0.3")
            assert eta(a_half, x, ctx200) == ctx200.pi - x

    def test_endpoints(self, a_third, ctx200):
        with ctx200.activate():
            assert eta(a_third, ctx200.mpf(0), ctx200) == ctx200.pi
            assert abs(eta(a_third, ctx200.pi, ctx200)) <= 1000 * ctx200.eps

    def test_frozen_value_at_pi_half(self, a_third, ctx200):
        # kappa(1/3) = 1/2, so eta(pi/2) = 2*atan(1/2); both branch formulas agree
        with ctx200.activate():
            got = eta(a_third, ctx200.pi_times(Fraction(1, 2)), ctx200)
            assert_close(got, ctx200.mpf(TWO_ATAN_HALF), 8 * ctx200.eps)

    def test_domain_validated(self, a_third, ctx200):
        with pytest.raises(ValueError):
            eta(a_third, ctx200.mpf(-1), ctx200)
        with pytest.raises(ValueError):
            eta(a_third, ctx200.mpf(4), ctx200)

    @settings(max_examples=40, deadline=None)
    @given(
        st.fractions(min_value=Fraction(1, 20), max_value=Fraction(19, 20)),
        st.floats(min_value=1e-3, max_value=3.14),
    )
    def test_involution_property(self, af, x):
        ctx = PrecisionContext(150)
        a = AlphaParam(af)
        with ctx.activate():
            xm = ctx.mpf(x)
            assert abs(eta(a, eta(a, xm, ctx), ctx) - xm) <= 1000 * ctx.eps

    def test_suite_checks(self):
        # equivalence of the four closed forms, involution, shape, bounds, FD
        assert check_eta_equivalence(200).ok
        assert check_eta_involution(200).ok
        assert check_eta_shape(200).ok
        assert check_eta_derivative_bounds(200).ok
        assert check_eta_finite_differences(200).ok


class TestEtaDerivatives:
    def test_half_alpha(self, a_half, ctx200):
        assert eta_prime(a_half, ctx200.mpf("0.7"), ctx200) == -1
        assert eta_second(a_half, ctx200.mpf("0.7"), ctx200) == 0

    def test_endpoint_limits(self, ctx200):
        a = AlphaParam(Fraction(1, 3))  # kappa = 1/2
        with ctx200.activate():
            assert eta_prime(a, ctx200.mpf(0), ctx200) == -2
            assert eta_prime(a, ctx200.pi, ctx200) == mpfr("-0.5")

    def test_second_vanishes_at_origin_limit(self, a_third, ctx200):
        with ctx200.activate():
            x = mpfr(2) ** -60
            assert abs(eta_second(a_third, x, ctx200)) <= mpfr(2) ** -55

    @pytest.mark.parametrize("af,x", [(Fraction(2, 3), "1.1"), (Fraction(3, 4), "0.9")])
    def test_finite_difference_oracle(self, af, x, ctx200):
        a = AlphaParam(af)
        with ctx200.activate():
            xm = ctx200.mpf(x)
            h = mpfr(2) ** -40
            fd1 = (eta(a, xm + h, ctx200) - eta(a, xm - h, ctx200)) / (2 * h)
            fd2 = (eta_prime(a, xm + h, ctx200) - eta_prime(a, xm - h, ctx200)) / (2 * h)
            assert_close(eta_prime(a, xm, ctx200), fd1, h * h * 100)
            assert_close(eta_second(a, xm, ctx200), fd2, h * h * 100)

    def test_prime_bounded_by_k1(self, ctx200):
        for af in (Fraction(1, 10), Fraction(2, 5), Fraction(9, 10)):
            a = AlphaParam(af)
            k1 = ctx200.mpf(a.k1_frac)
            with ctx200.activate():
                for k in range(65):
                    d = abs(eta_prime(a, ctx200.pi_times(Fraction(k, 64)), ctx200))
                    assert d <= k1 * (1 + 8 * ctx200.eps)


class TestEtaTilde:
    def test_vanishes_at_half(self, a_half, ctx200):
        assert eta_tilde(a_half, ctx200.mpf("0.4"), ctx200) == 0
        assert eta_tilde_prime(a_half, ctx200.mpf("0.4"), ctx200) == 0

    def test_vanishes_at_pi(self, a_third, ctx200):
        with ctx200.activate():
            assert abs(eta_tilde(a_third, ctx200.pi, ctx200)) <= 1000 * ctx200.eps

    def test_frozen_value(self, a_third, ctx200):
        with ctx200.activate():
            got = eta_tilde(a_third, ctx200.pi_times(Fraction(1, 2)), ctx200)
            want = ctx200.mpf(TWO_ATAN_HALF) - ctx200.pi_times(Fraction(1, 2))
            assert_close(got, want, 8 * ctx200.eps)

    def test_matches_arctan_closed_form(self, ctx200):
        # eta~ = 2*atan((kappa-1)cot(x/2) / (1 + kappa cot(x/2)^2))
        for af in (Fraction(1, 3), Fraction(4, 5)):
            a = AlphaParam(af)
            kap = ctx200.mpf(a.kappa_frac)
            with ctx200.activate():
                for k in range(1, 16):
                    x = ctx200.pi_times(Fraction(k, 16))
                    c = 1 / gmpy2.tan(x / 2)
                    want = 2 * gmpy2.atan((kap - 1) * c / (1 + kap * c * c))
                    assert_close(eta_tilde(a, x, ctx200), want, 1000 * ctx200.eps)

    def test_prime_is_eta_prime_plus_one(self, a_third, ctx200):
        with ctx200.activate():
            x = ctx200.mpf("1.234")
            assert eta_tilde_prime(a_third, x, ctx200) == eta_prime(a_third, x, ctx200) + 1


class TestMainEquationPieces:
    def test_fixed_point_at_half(self, a_half, ctx200):
        with ctx200.activate():
            x = ctx200.pi_times(Fraction(1, 3))
            assert_close(f_main(a_half, 5, 2, x, ctx200), x, 8 * ctx200.eps)
            assert abs(h_main(a_half, 5, 2, x, ctx200)) <= 8 * ctx200.eps

    def test_f_stays_in_cell(self, a_third, ctx200):
        with ctx200.activate():
            hi = ctx200.pi_times(Fraction(4, 8))
            assert f_main(a_third, 8, 4, hi, ctx200) <= hi

    def test_f_dual_formula_cross_check(self, a_third, ctx200):
        with ctx200.activate():
            x = ctx200.pi_times(Fraction(3, 8))
            d = ctx200.pi_times(Fraction(3, 8))
            kap = ctx200.mpf(Fraction(1, 2))
            via_cot = 2 * gmpy2.atan(kap / gmpy2.tan(x / 2))
            via_tan = ctx200.pi - 2 * gmpy2.atan(gmpy2.tan(x / 2) / kap)
            assert_close(via_cot, via_tan, 100 * ctx200.eps)
            assert_close(f_main(a_third, 8, 4, x, ctx200), d + via_cot / 8, 100 * ctx200.eps)

    def test_h_bracket_signs(self, ctx200):
        for af in (Fraction(1, 10), Fraction(1, 3), Fraction(4, 5)):
            a = AlphaParam(af)
            with ctx200.activate():
                for n, j in ((5, 2), (8, 6), (12, 12)):
                    lo = ctx200.pi_times(Fraction(j - 1, n))
                    hi = ctx200.pi_times(Fraction(j, n))
                    h_lo = h_main(a, n, j, lo, ctx200)
                    assert h_lo < 0
                    assert_close(h_lo, -eta(a, lo, ctx200), 8 * ctx200.eps)
                    h_hi = h_main(a, n, j, hi, ctx200)
                    assert h_hi > 0
                    assert_close(h_hi, ctx200.pi - eta(a, hi, ctx200), 8 * n * ctx200.eps)

    def test_h_prime_exceeds_n(self, a_third, ctx200):
        with ctx200.activate():
            x = ctx200.mpf("1.0")
            assert h_main_prime(a_third, 7, 4, x, ctx200) > 7


def _nu_direct(a, x, ctx):
    """Literal transcription of the nu definition (independent oracle)."""
    e = eta(a, x, ctx)
    re_a = ctx.mpf(a.re_frac)
    a2 = ctx.mpf(a.abs2_frac)
    return (
        (1 - re_a) / 2 * g(x, ctx)
        - re_a / 2 * g(e, ctx)
        + (re_a - a2) / 2 * g(x - e, ctx)
        + 2 * a2
    )


def _xi_direct(a, x, ctx):
    e = eta(a, x, ctx)
    re_a = ctx.mpf(a.re_frac)
    a2 = ctx.mpf(a.abs2_frac)
    om = ctx.mpf((1 - a.re_frac) ** 2 + a.im_frac**2)
    return (
        om / 2 * g(x, ctx) * gmpy2.cos(e)
        + a2 / 2 * g(e, ctx) * gmpy2.cos(x)
        + (re_a - a2) / 2 * (g(x, ctx) + g(x + e, ctx) - g(e, ctx))
        - 2 * a2 * gmpy2.cos(x)
    )


class TestNormSymbols:
    def test_nu_half_at_pi_half(self, a_half, ctx200):
        with ctx200.activate():
            got = nu(a_half, ctx200.pi_times(Fraction(1, 2)), ctx200)
            assert_close(got, mpfr("0.5"), 100 * ctx200.eps)

    def test_nu_collapses_to_two_at_pi(self, ctx200):
        for a in (AlphaParam(Fraction(1, 3)), AlphaParam("1/2+1i")):
            with ctx200.activate():
                assert_close(nu(a, ctx200.pi, ctx200), mpfr(2), 1000 * ctx200.eps)

    def test_xi_half_at_pi_half(self, a_half, ctx200):
        # direct substitution gives 1/2; confirmed independently by the exact
        # norm of the (n=3, j=2) eigenvector: ||v||^2 = 2, n*nu = 3/2, ratio 1
        with ctx200.activate():
            got = xi(a_half, ctx200.pi_times(Fraction(1, 2)), ctx200)
            assert_close(got, mpfr("0.5"), 100 * ctx200.eps)

    def test_xi_collapses_to_two_at_pi(self, ctx200):
        for af in (Fraction(1, 3), Fraction(4, 5)):
            with ctx200.activate():
                assert_close(xi(AlphaParam(af), ctx200.pi, ctx200), mpfr(2), 1000 * ctx200.eps)

    @pytest.mark.parametrize("alpha", ["1/3", "4/5", "1/2+3/10i", "7/10-2/5i"])
    def test_against_direct_transcription(self, alpha, ctx200):
        a = AlphaParam(alpha)
        with ctx200.activate():
            for k in range(1, 16):
                x = ctx200.pi_times(Fraction(k, 16))
                assert_close(nu(a, x, ctx200), _nu_direct(a, x, ctx200), 1000 * ctx200.eps)
                assert_close(xi(a, x, ctx200), _xi_direct(a, x, ctx200), 1000 * ctx200.eps)

    def test_xi_from_eigenvector_norm_oracle(self, a_third, ctx200):
        # xi(theta) must reproduce (||v||^2 - n nu(theta)) sin(theta)/sin(eta)
        from cyclespec import ProblemInstance, eigenvector, solve_theta_newton
        from cyclespec.spectrum import _norm2

        inst = ProblemInstance(a_third, 12)
        with ctx200.activate():
            theta = solve_theta_newton(a_third, 12, 6, ctx200).root
            vec = eigenvector(inst, 6, theta, ctx200)
            lhs = (_norm2(vec.coords) ** 2 - 12 * nu(a_third, theta, ctx200)) * gmpy2.sin(
                theta
            ) / gmpy2.sin(eta(a_third, theta, ctx200))
            assert_close(xi(a_third, theta, ctx200), lhs, mpfr(2) ** -150)
