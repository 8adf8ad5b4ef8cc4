import math
from fractions import Fraction

import mpmath
import pytest

from conical_heat_trace import (
    ConeData,
    DomainError,
    InMemoryCache,
    Provenance,
    asymptotic_constant,
    asymptotic_f,
    b0,
    b0_exact,
    b1m,
    b_half,
    big_f,
    c1,
    c2m,
    expansion_terms,
    h_alpha_at,
    heat_coefficients,
    heat_from_resolvent,
    i_j_closed,
    i_j_quad,
    psi_m,
    resolvent_coefficients,
    series_weight,
    singular_heat_terms,
)
from conical_heat_trace.coefficients import b1m_result, b_half_result, clear_quadrature_cache, series_split
from conical_heat_trace.hfun import series_coefficients

SQRT_PI = math.sqrt(math.pi)


def resolvent_to_heat(m):
    return math.factorial(m - 1) / math.gamma(m + 0.5)


class TestClosedForms:
    @pytest.mark.parametrize(
        "fprime0, expected",
        [
            (1, 0.0),
            (Fraction(1, 3), 2 / 9),
            (2, -1 / 8),
        ],
    )
    def test_b0(self, fprime0, expected):
        """b0 = (1/12)(1/f'(0) - f'(0))"""
        assert b0(ConeData(fprime0)) == pytest.approx(expected, rel=1e-15, abs=1e-15)

    def test_b0_is_exact_for_rational_germs(self):
        """The orbifold cone of order 3 gives exactly 2/9"""
        assert b0_exact(ConeData(Fraction(1, 3), Fraction(0))) == Fraction(2, 9)
        assert b0_exact(ConeData(1)) == 0

    @pytest.mark.parametrize(
        "fprime0, fsecond0, expected",
        [
            (1, 0, 0.0),
            (1, 1, -1 / 60),
            (2, -1, -1 / 120),
        ],
    )
    def test_c1(self, fprime0, fsecond0, expected):
        """c1 = -(1/60) f''(0)^2 / f'(0)"""
        assert c1(ConeData(fprime0, fsecond0)) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("m", [2, 3, 7])
    def test_c2m_flat(self, m):
        """No second derivative, no logarithmic term"""
        assert c2m(ConeData(0.5, 0), m) == 0.0

    def test_c2m_value(self):
        """c_{2,2} = 2/30 for f'(0) = f''(0) = 1"""
        assert c2m(ConeData(1, 1), 2) == pytest.approx(1 / 15, rel=1e-15)

    @pytest.mark.parametrize("m", [1, 0, 2.5, True])
    def test_c2m_rejects_bad_power(self, m):
        """m must be an integer >= 2"""
        with pytest.raises(DomainError):
            c2m(ConeData(1, 1), m)


class TestHeatFromResolvent:
    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_zeroth_order(self, m):
        """Gamma(m) = (m-1)! so b0 passes through unchanged"""
        assert heat_from_resolvent(0, m, 0.125, 0.0) == pytest.approx((0.125, 0.0), rel=1e-14)

    @pytest.mark.parametrize("m", [2, 3, 4])
    @pytest.mark.parametrize("fprime0, fsecond0", [(1, 1), (0.5, 1), (2, -0.3)])
    def test_log_term_round_trip(self, m, fprime0, fsecond0):
        """c_{2,m} converts to c1 independently of m"""
        cone = ConeData(fprime0, fsecond0)
        _, c = heat_from_resolvent(2, m, 0.0, c2m(cone, m))
        assert c == pytest.approx(c1(cone), rel=1e-12)

    def test_odd_order_has_no_log_term(self):
        """c_{j/2} vanishes for odd j"""
        b, c = heat_from_resolvent(1, 2, 0.3, 0.0)
        assert c == 0.0
        assert b == pytest.approx(0.3 * resolvent_to_heat(2), rel=1e-12)

    def test_digamma_shift(self):
        """A logarithmic resolvent coefficient shifts b by psi(m + j/2) / 2"""
        b, _ = heat_from_resolvent(2, 2, 0.0, 1.0)
        assert b == pytest.approx(0.25 * float(mpmath.digamma(3)), rel=1e-11)

    def test_negative_order(self):
        """j must be nonnegative"""
        with pytest.raises(DomainError):
            heat_from_resolvent(-1, 2, 0.0, 0.0)


class TestPsi:
    @pytest.mark.parametrize("m, expected", [(2, 3 * SQRT_PI / 2), (3, 15 * SQRT_PI / 4)])
    def test_value_at_zero(self, m, expected):
        """psi_m(0) = 2 Gamma(m + 1/2)"""
        assert psi_m(m, 0.0) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("s", [1e-4, -1e-4])
    def test_continuous_at_zero(self, s):
        """The removable singularity at s = 0"""
        assert psi_m(2, s) == pytest.approx(psi_m(2, 0.0), rel=1e-3)

    @pytest.mark.parametrize("s", [0.37, -0.6, 1.5])
    def test_against_mpmath(self, s):
        """Generic s through the reflection formula"""
        expected = mpmath.gamma(2.5 + s / 2) * mpmath.gamma(-s / 2) / mpmath.gamma(-s)
        assert psi_m(2, s) == pytest.approx(float(expected), rel=1e-12)

    def test_odd_integer_zero(self):
        """Gamma(-s) has a pole where Gamma(-s/2) does not"""
        assert psi_m(2, 1.0) == 0.0
        assert psi_m(3, 3.0) == 0.0

    def test_even_integer_limit(self):
        """The limit formula at s = 2 matches nearby values"""
        assert psi_m(2, 2.0) == pytest.approx(-4 * math.gamma(3.5), rel=1e-13)
        assert psi_m(2, 2.0 + 1e-6) == pytest.approx(psi_m(2, 2.0), rel=1e-5)

    def test_pole(self):
        """m + 1/2 + s/2 = 0 is a genuine pole"""
        with pytest.raises(DomainError):
            psi_m(2, -5.0)


class TestIntegralsIj:
    @pytest.mark.parametrize(
        "j, expected",
        [
            (1, -(math.pi**2) / 4),
            (3, -(math.pi**4) / 2),
            (5, -4 * math.pi**6),
        ],
    )
    def test_closed_form(self, j, expected):
        """Odd j in powers of pi"""
        assert i_j_closed(j) == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("j", [1, 3, 5, 7])
    def test_quadrature_matches_closed_form(self, j):
        """Tanh-sinh reproduces the closed forms"""
        result = i_j_quad(j)
        assert result.converged
        assert result.value == pytest.approx(i_j_closed(j), rel=1e-9)

    def test_even_index(self):
        """I_2 = 7 zeta(3), between |I_1| and |I_3|"""
        value = i_j_quad(2).value
        assert value == pytest.approx(7 * float(mpmath.zeta(3)), rel=1e-9)
        assert abs(i_j_closed(1)) < value < abs(i_j_closed(3))

    def test_zeta_identity(self):
        """I_j = (-2)^j j! (1 - 2^(-j-1)) zeta(j+1)"""
        expected = 16 * 24 * (1 - 2**-5) * float(mpmath.zeta(5))
        assert i_j_quad(4).value == pytest.approx(expected, rel=1e-9)

    @pytest.mark.parametrize("j", [2, 4])
    def test_closed_form_odd_only(self, j):
        """Even j has no closed form"""
        with pytest.raises(DomainError):
            i_j_closed(j)

    @pytest.mark.parametrize("j", [0, -1])
    def test_index_positive(self, j):
        """j starts at 1"""
        with pytest.raises(DomainError):
            i_j_quad(j)


class TestBigF:
    def test_vanishes_at_alpha_one(self):
        """F(1) = 0 since hat-h_{k,1} vanishes"""
        result = big_f(1.0)
        assert abs(result.value) <= 1e-10
        assert result.converged

    @pytest.mark.parametrize("alpha", [0.25, 2.0, 5.0])
    def test_converges(self, alpha):
        """Default tolerance is met across the alpha range"""
        result = big_f(alpha)
        assert result.converged
        assert math.isfinite(result.value)

    def test_tolerance_refinement(self):
        """A tighter tolerance stays within the looser error estimate"""
        loose = big_f(2.0, 1e-8)
        tight = big_f(2.0, 1e-12)
        assert tight.value == pytest.approx(loose.value, abs=1e-8)

    def test_series_split(self):
        """The split sits on the edge of the series window"""
        assert series_split(2.0) == pytest.approx(math.exp(-0.5))
        assert series_split(8.0) == pytest.approx(math.exp(-math.pi / 16))

    @pytest.mark.parametrize("alpha", [0.0, -1.0, math.nan])
    def test_rejects_bad_alpha(self, alpha):
        """alpha must be positive"""
        with pytest.raises(DomainError):
            big_f(alpha)

    def test_memoized_with_ttl(self):
        """Per-alpha integrals are cached with an expiry"""
        big_f(1.5)
        cache = InMemoryCache()
        keys = cache.get_keys(r"big_f:\(1\.5,\)")
        assert keys
        assert all(cache.cache[key].expire_at is not None for key in keys)

    def test_clear_quadrature_cache(self):
        """Clearing drops per-alpha integrals but keeps series tables"""
        big_f(1.5)
        h_alpha_at(1.5, 0.25)
        series_coefficients(2)
        cache = InMemoryCache()
        clear_quadrature_cache()
        assert cache.get_keys(r"big_f:") == []
        assert cache.get_keys(r"h_alpha_quad:") == []
        assert cache.get_keys(r"series_coefficients:") != []


class TestBHalf:
    def test_no_second_derivative(self):
        """k_f = 0 gives an exact zero without quadrature"""
        result = b_half_result(ConeData(0.5, 0))
        assert result.value == 0.0
        assert result.n_evals == 0

    @pytest.mark.parametrize("fsecond0", [1.0, -2.5])
    def test_smooth_angle(self, fsecond0):
        """f'(0) = 1 gives zero up to the tolerance"""
        assert abs(b_half(ConeData(1, fsecond0))) <= 1e-9

    def test_formula(self):
        """b_{1/2} = -(2 k_f / sqrt(pi)) F(alpha) / alpha"""
        cone = ConeData(0.5, 1)
        assert b_half(cone) == pytest.approx(2 / SQRT_PI * big_f(2.0).value, rel=1e-14)

    def test_linear_in_second_derivative(self):
        """Doubling f''(0) doubles b_{1/2}"""
        assert b_half(ConeData(0.5, 2)) == pytest.approx(2 * b_half(ConeData(0.5, 1)), rel=1e-14)

    def test_rescaling(self):
        """Rescaling f keeps k_f and changes only alpha"""
        cone = ConeData(0.5, 1)
        rescaled = cone.rescaled(4)
        assert rescaled.k_f == cone.k_f
        assert rescaled.alpha == pytest.approx(cone.alpha / 4)
        expected = -2 * rescaled.k_f * big_f(rescaled.alpha).value / (SQRT_PI * rescaled.alpha)
        assert b_half(rescaled) == pytest.approx(expected, rel=1e-14)


class TestHAlpha:
    def test_vanishes_at_alpha_one(self):
        """The integrand is identically zero at alpha = 1"""
        assert abs(h_alpha_at(1.0, 0.0)) <= 1e-10
        assert abs(h_alpha_at(1.0, 0.3)) <= 1e-9

    @pytest.mark.parametrize("alpha", [0.5, 2.0])
    def test_relation_to_f(self, alpha):
        """h_alpha(0) = 4 F(alpha) / alpha"""
        assert h_alpha_at(alpha, 0.0) == pytest.approx(4 * big_f(alpha).value / alpha, rel=1e-8, abs=1e-10)

    @pytest.mark.parametrize("alpha", [0.5, 2.0])
    def test_continuity_at_zero(self, alpha):
        """h_alpha(0.01) stays close to h_alpha(0)"""
        at_zero = h_alpha_at(alpha, 0.0)
        assert abs(h_alpha_at(alpha, 0.01) - at_zero) <= 0.05 * abs(at_zero) + 1e-6

    @pytest.mark.parametrize("alpha", [0.5, 2.0])
    def test_negative_exponent(self, alpha):
        """Negative s is integrable at u = 0"""
        at_zero = h_alpha_at(alpha, 0.0)
        assert abs(h_alpha_at(alpha, -0.01) - at_zero) <= 0.05 * abs(at_zero) + 1e-6

    @pytest.mark.parametrize("s", [1.0, -1.0, 1.5])
    def test_exponent_range(self, s):
        """s is restricted to (-1, 1)"""
        with pytest.raises(DomainError):
            h_alpha_at(2.0, s)


class TestResolvent:
    @pytest.mark.parametrize("fprime0, fsecond0", [(0.5, 1), (2, -0.3)])
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_cross_m_consistency(self, fprime0, fsecond0, m):
        """(m-1)!/Gamma(m + 1/2) b_{1,m} is b_{1/2} for every m"""
        cone = ConeData(fprime0, fsecond0)
        assert resolvent_to_heat(m) * b1m(cone, m) == pytest.approx(b_half(cone), rel=1e-7)

    @pytest.mark.parametrize("m", [2, 4])
    def test_conversion_helper(self, m):
        """heat_from_resolvent turns b_{1,m} into b_{1/2}"""
        cone = ConeData(0.5, 1)
        b, c = heat_from_resolvent(1, m, b1m(cone, m), 0.0)
        assert b == pytest.approx(b_half(cone), rel=1e-7)
        assert c == 0.0

    def test_flat_cone(self):
        """k_f = 0 gives b_{1,m} = 0 exactly"""
        assert b1m_result(ConeData(0.5), 3).value == 0.0

    def test_smooth_angle(self):
        """alpha = 1 gives b_{1,m} = 0 up to the tolerance"""
        assert abs(b1m(ConeData(1, 1), 2)) <= 1e-9

    def test_bundle(self):
        """resolvent_coefficients collects the three closed and quadrature values"""
        cone = ConeData(0.5, 1)
        coeffs = resolvent_coefficients(cone, 3)
        assert coeffs.m == 3
        assert coeffs.b0m == b0(cone)
        assert coeffs.b1m == b1m(cone, 3)
        assert coeffs.c2m == c2m(cone, 3)

    def test_rejects_small_m(self):
        """m = 1 is not a valid resolvent power"""
        with pytest.raises(DomainError):
            b1m(ConeData(0.5, 1), 1)


class TestHeatCoefficients:
    def test_bundle(self):
        """c0 and c_{1/2} vanish identically"""
        cone = ConeData(0.5, 1)
        coeffs = heat_coefficients(cone)
        assert coeffs.b0 == b0(cone)
        assert coeffs.b_half == b_half(cone)
        assert coeffs.c1 == c1(cone)
        assert coeffs.c0 == 0.0
        assert coeffs.c_half == 0.0

    def test_singular_terms(self):
        """b0 + b_{1/2} t^(1/2) + c1 t log t"""
        cone = ConeData(0.5, 1)
        t = 0.01
        expected = b0(cone) + b_half(cone) * math.sqrt(t) + c1(cone) * t * math.log(t)
        assert singular_heat_terms(cone, t) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("t", [0.0, -1.0])
    def test_singular_terms_positive_time(self, t):
        """t must be positive"""
        with pytest.raises(DomainError):
            singular_heat_terms(ConeData(0.5, 1), t)


class TestAsymptotics:
    def test_first_weight(self):
        """V_1 = pi^2/16 - pi^4/192"""
        assert series_weight(1) == pytest.approx(math.pi**2 / 16 - math.pi**4 / 192, rel=1e-12)

    def test_expansion_terms(self):
        """Even j contribute nothing and come from quadrature"""
        terms = expansion_terms(4)
        assert [term.j for term in terms] == [1, 2, 3, 4]
        assert terms[0].coefficient == pytest.approx(series_weight(1) * (-1 / 30), rel=1e-14)
        assert terms[0].coefficient == pytest.approx(-3.650e-3, rel=1e-3)
        assert terms[0].provenance is Provenance.CLOSED_FORM
        assert terms[1].coefficient == 0.0
        assert terms[1].provenance is Provenance.QUADRATURE
        assert terms[3].coefficient == 0.0

    def test_value_at_zero(self):
        """All alpha-dependent terms vanish at alpha = 0"""
        constant = asymptotic_constant()
        assert constant.converged
        assert asymptotic_f(0.0, 1) == pytest.approx(constant.value, rel=1e-15)

    def test_constant_is_small_alpha_limit(self):
        """F(alpha) approaches C0 as alpha decreases"""
        constant = asymptotic_constant().value
        assert abs(big_f(0.05).value - constant) < abs(big_f(0.2).value - constant)

    @pytest.mark.parametrize("r", [0, -2])
    def test_order_positive(self, r):
        """r starts at 1"""
        with pytest.raises(DomainError):
            expansion_terms(r)

    def test_alpha_nonnegative(self):
        """The expansion is about alpha = 0 from the right"""
        with pytest.raises(DomainError):
            asymptotic_f(-0.1, 3)

    @pytest.mark.slow
    def test_residual_order(self):
        """With r = 3 the residual falls like alpha^8"""
        tol = 1e-14

        def residual(alpha):
            return abs(big_f(alpha, tol).value - asymptotic_f(alpha, 3, tol))

        r_large, r_mid, r_small = residual(0.2), residual(0.1), residual(0.05)
        assert math.log2(r_large / r_mid) >= 7
        assert math.log2(r_mid / r_small) >= 7
