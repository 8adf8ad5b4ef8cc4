"""
Heat-trace and resolvent-trace coefficients of a conical singularity with germ (f'(0), f''(0)).

b0, c1, c2m are closed forms in the germ. b_half and b1m reduce to one-dimensional integrals of
hat-h_{k,alpha}, computed by splitting [0, 1] in u (z = 1 - u^2) at the edge of the series window so that
each piece sees a single evaluation strategy. The small-alpha expansion of F and the integrals I_j it
is built from live here too.
"""

import logging
import math
from collections.abc import Callable
from fractions import Fraction

import mpmath

from .cache import memoize
from .config import DEFAULT_CONFIG, NumericsConfig
from .exceptions import DomainError
from .hfun import ZPoint, h_hat_at, phi_hat_at
from .models import ConeData, ExpansionTerm, HeatCoefficients, Provenance, QuadResult, ResolventCoefficients
from .quadrature import integrate
from .special_fn import bernoulli, digamma, log_abs_gamma, log_gamma

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)

_EXACT_ZERO = QuadResult(value=0.0, err_est=0.0, n_evals=0, converged=True)


def _check_m(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 2:
        raise DomainError(f"resolvent power m must be an integer >= 2, got {m!r}")


def _check_j(j: int) -> None:
    if isinstance(j, bool) or not isinstance(j, int) or j < 1:
        raise DomainError(f"index j must be an integer >= 1, got {j!r}")


def _check_alpha(alpha: float) -> None:
    if not (math.isfinite(alpha) and alpha > 0):
        raise DomainError(f"alpha must be positive, got {alpha!r}")


def b0_exact(cone: ConeData) -> Fraction:
    """(1/12)(1/f'(0) - f'(0)) in rational arithmetic; exact when the germ is given as Fractions."""
    fp = Fraction(cone.fprime0)
    return Fraction(1, 12) * (1 / fp - fp)


def b0(cone: ConeData) -> float:
    return float(b0_exact(cone))


def c1(cone: ConeData) -> float:
    fs = Fraction(cone.fsecond0)
    return float(-Fraction(1, 60) * fs**2 / Fraction(cone.fprime0))


def c2m(cone: ConeData, m: int) -> float:
    _check_m(m)
    fs = Fraction(cone.fsecond0)
    return float(Fraction(m, 30) * fs**2 / Fraction(cone.fprime0))


def series_split(alpha: float) -> float:
    """u_c with 2 log(u_c) = -min(1, pi/alpha): [u_c, 1] is the series window of hat-h under z = 1 - u^2."""
    return math.exp(-0.5 * min(1.0, math.pi / alpha))


def _split_integral(
    integrand: Callable[[float], float],
    u_split: float,
    tol: float,
    left_singular: bool,
    right_singular: bool,
    config: NumericsConfig,
) -> tuple[QuadResult, QuadResult]:
    left = integrate(
        integrand,
        0.0,
        u_split,
        tol / 2,
        endpoint_singularity=left_singular,
        panel_cap=config.panel_cap,
        max_level=config.tanh_sinh_max_level,
    )
    right = integrate(
        integrand,
        u_split,
        1.0,
        tol / 2,
        endpoint_singularity=right_singular,
        panel_cap=config.panel_cap,
        max_level=config.tanh_sinh_max_level,
    )
    return left, right


def _hat_combination(alpha: float, config: NumericsConfig) -> Callable[[float], float]:
    """u -> hat-h_{2,alpha}(1 - u^2) - hat-h_{0,alpha}(1 - u^2) / 4."""

    def combination(u: float) -> float:
        p = ZPoint.from_u(u)
        h2 = h_hat_at(2, alpha, p, config.series_tol, "auto", config).value
        h0 = h_hat_at(0, alpha, p, config.series_tol, "auto", config).value
        return h2 - 0.25 * h0

    return combination


@memoize(ttl=DEFAULT_CONFIG.quadrature_cache_ttl)
def big_f(alpha: float, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG) -> QuadResult:
    """F(alpha) = alpha * int_0^1 (hat-h_{2,alpha} - hat-h_{0,alpha}/4)(1 - u^2) du."""
    _check_alpha(alpha)
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")

    combination = _hat_combination(alpha, config)

    def integrand(u: float) -> float:
        return alpha * combination(u)

    u_c = series_split(alpha)
    left, right = _split_integral(integrand, u_c, tol, alpha < 0.5, False, config)
    logger.debug(
        f"F({alpha}): split at u_c={u_c!r}, direct piece {left.value!r} (err {left.err_est:.2e}), "
        f"series piece {right.value!r} (err {right.err_est:.2e})"
    )
    return left + right


def b_half_result(cone: ConeData, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG) -> QuadResult:
    if cone.k_f == 0:
        return _EXACT_ZERO
    return big_f(cone.alpha, tol, config).scaled(-2.0 * cone.k_f / (SQRT_PI * cone.alpha))


def b_half(cone: ConeData, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG) -> float:
    """b_{1/2} = -(2 k_f / sqrt(pi)) F(alpha) / alpha."""
    return b_half_result(cone, tol, config).value


@memoize(ttl=DEFAULT_CONFIG.quadrature_cache_ttl)
def h_alpha_quad(
    alpha: float, s: float, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG
) -> QuadResult:
    """
    h_alpha(s) = int_0^1 (2 hat-h_2 - hat-h_0 / 2)(t) (1 - t)^(s/2 - 1/2) t^(-s) dt for real s in (-1, 1).

    Under t = 1 - u^2 the weight becomes 2 u^s (1 - u^2)^(-s), so h_alpha(0) = 4 F(alpha) / alpha.
    """
    _check_alpha(alpha)
    if not -1.0 < s < 1.0:
        raise DomainError(f"h_alpha(s) is integrable only for -1 < s < 1, got s={s!r}")

    combination = _hat_combination(alpha, config)

    if s == 0.0:

        def integrand(u: float) -> float:
            return 4.0 * combination(u)

    else:

        def integrand(u: float) -> float:
            z = (1.0 - u) * (1.0 + u)
            return 4.0 * combination(u) * u**s * z ** (-s)

    u_c = series_split(alpha)
    left, right = _split_integral(integrand, u_c, tol, alpha < 0.5 or s < 0.0, s > 0.0, config)
    logger.debug(f"h_alpha({alpha}, s={s}): pieces {left.value!r} + {right.value!r}")
    return left + right


def h_alpha_at(alpha: float, s: float, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG) -> float:
    return h_alpha_quad(alpha, s, tol, config).value


def clear_quadrature_cache() -> None:
    """Drop the memoized per-alpha integrals; Bernoulli tables and C0 stay."""
    memoize.invalidate("big_f")
    memoize.invalidate("h_alpha_quad")


def psi_m(m: int, s: float) -> float:
    """
    psi_m(s) = Gamma(m + 1/2 + s/2) Gamma(-s/2) / Gamma(-s).

    At s = 2n (n >= 0) numerator and denominator both have poles; the limit is
    Gamma(m + 1/2 + n) (-1)^n 2 (2n)! / n!, which is 2 Gamma(m + 1/2) at s = 0.
    """
    _check_m(m)
    if not math.isfinite(s):
        raise DomainError(f"s must be finite, got {s!r}")

    shifted = m + 0.5 + 0.5 * s
    if shifted <= 0 and shifted == math.floor(shifted):
        raise DomainError(f"psi_{m} has a pole at s={s!r}")

    if s >= 0 and s == math.floor(s):
        n, odd = divmod(int(s), 2)
        if odd:
            return 0.0
        log_value = log_gamma(shifted) + math.log(2.0) + log_gamma(2 * n + 1) - log_gamma(n + 1)
        return (-1.0) ** n * math.exp(log_value)

    lg_a, sign_a = log_abs_gamma(shifted)
    lg_b, sign_b = log_abs_gamma(-0.5 * s)
    lg_c, sign_c = log_abs_gamma(-s)
    return sign_a * sign_b * sign_c * math.exp(lg_a + lg_b - lg_c)


def b1m_result(
    cone: ConeData, m: int, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG
) -> QuadResult:
    _check_m(m)
    if cone.k_f == 0:
        return _EXACT_ZERO
    factor = -cone.k_f * psi_m(m, 0.0) / (4.0 * SQRT_PI * math.factorial(m - 1))
    return h_alpha_quad(cone.alpha, 0.0, tol, config).scaled(factor)


def b1m(cone: ConeData, m: int, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG) -> float:
    """b_{1,m} = -k_f psi_m(0) h_alpha(0) / (4 sqrt(pi) (m-1)!)."""
    return b1m_result(cone, m, tol, config).value


def heat_from_resolvent(j: int, m: int, bjm: float, cjm: float) -> tuple[float, float]:
    """(b_{j/2}, c_{j/2}) from the resolvent coefficients (b_{j,m}, c_{j,m})."""
    if isinstance(j, bool) or not isinstance(j, int) or j < 0:
        raise DomainError(f"index j must be an integer >= 0, got {j!r}")
    _check_m(m)
    x = m + 0.5 * j
    factor = math.exp(log_gamma(m) - log_gamma(x))  # (m-1)! / Gamma(m + j/2)
    b = factor * bjm + 0.5 * factor * digamma(x) * cjm
    c = -0.5 * factor * cjm
    return b, c


def _tau(j: int) -> Callable[[float], float]:
    def tau(u: float) -> float:
        return (2.0 * math.log(u)) ** j / ((1.0 - u) * (1.0 + u))

    return tau


@memoize()
def i_j_quad(j: int, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG) -> QuadResult:
    """I_j = int_0^1 log(u^2)^j / (1 - u^2) du by tanh-sinh (log^j singular at 0, bounded at 1)."""
    _check_j(j)
    return integrate(
        _tau(j),
        0.0,
        1.0,
        tol,
        endpoint_singularity=True,
        panel_cap=config.panel_cap,
        max_level=config.tanh_sinh_max_level,
    )


def _i_j_closed_rational(j: int) -> Fraction:
    _check_j(j)
    if j % 2 == 0:
        raise DomainError(f"I_j has a closed form only for odd j, got {j}")
    n = (j + 1) // 2
    return Fraction(2 ** (2 * n - 1) * (1 - 4**n), 4 * n) * abs(bernoulli(2 * n))


def i_j_closed(j: int) -> float:
    """I_{2n-1} = 2^(2n-1) (1 - 2^(2n)) / (4n) pi^(2n) |B_2n|."""
    rational = _i_j_closed_rational(j)
    return float(rational) * math.pi ** (j + 1)


def i_j_closed_mp(j: int) -> mpmath.mpf:
    """As `i_j_closed`, at the working precision of the current mpmath context."""
    rational = _i_j_closed_rational(j)
    return mpmath.mpf(rational.numerator) / rational.denominator * mpmath.pi ** (j + 1)


def i_j(j: int, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG) -> tuple[float, Provenance]:
    if j % 2:
        return i_j_closed(j), Provenance.CLOSED_FORM
    return i_j_quad(j, tol, config).value, Provenance.QUADRATURE


@memoize()
def series_weight(j: int, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG) -> float:
    """
    -(I_j / (j! (j+3)) - I_{j+2} / (4 (j+3)!)), the factor of B_{j+3} alpha^(j+3) in the expansion of F.

    The two quotients agree to roughly j/2 leading digits, so odd j is evaluated from the closed forms
    in extended precision. Even j has no closed form and no effect on F (B_{j+3} = 0).
    """
    _check_j(j)
    if j % 2 == 0:
        a, b = i_j_quad(j, tol, config).value, i_j_quad(j + 2, tol, config).value
        log_a = math.log(j + 3) + log_gamma(j + 1)
        log_b = math.log(4.0) + log_gamma(j + 4)
        return -(a * math.exp(-log_a) - b * math.exp(-log_b))

    with mpmath.workdps(30 + j):
        a = i_j_closed_mp(j) / (mpmath.factorial(j) * (j + 3))
        b = i_j_closed_mp(j + 2) / (4 * mpmath.factorial(j + 3))
        return float(-(a - b))


@memoize()
def asymptotic_constant(tol: float = DEFAULT_CONFIG.c0_tol, config: NumericsConfig = DEFAULT_CONFIG) -> QuadResult:
    """C0 = lim_{alpha -> 0} F(alpha) = -int_0^1 (hat-Phi_2 - hat-Phi_0 / 4)(1 - u^2) du."""

    def integrand(u: float) -> float:
        p = ZPoint.from_u(u)
        return phi_hat_at(2, p, config.series_tol, config) - 0.25 * phi_hat_at(0, p, config.series_tol, config)

    # 1/log(u) behaviour at u = 0; series window |2 log u| <= 1 to the right of the split.
    left, right = _split_integral(integrand, math.exp(-0.5), tol, True, False, config)
    logger.debug(f"C0 pieces: {left.value!r} + {right.value!r}")
    return (left + right).scaled(-1.0)


def expansion_terms(r: int, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG) -> list[ExpansionTerm]:
    """The j = 1..r summands of the small-alpha expansion of F."""
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise DomainError(f"expansion order r must be an integer >= 1, got {r!r}")
    terms = []
    for j in range(1, r + 1):
        i_value, provenance = i_j(j, tol, config)
        i_next, _ = i_j(j + 2, tol, config)
        weight = series_weight(j, tol, config)
        b = bernoulli(j + 3)
        terms.append(
            ExpansionTerm(
                j=j,
                i_j=i_value,
                i_j2=i_next,
                weight=weight,
                bernoulli=float(b),
                coefficient=weight * float(b) if b else 0.0,
                provenance=provenance,
            )
        )
    return terms


def asymptotic_f(alpha: float, r: int, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG) -> float:
    """C0 + (I_1/48) alpha^2 + sum_{j=1}^{r} V_j B_{j+3} alpha^(j+3)."""
    if not (math.isfinite(alpha) and alpha >= 0):
        raise DomainError(f"alpha must be nonnegative, got {alpha!r}")
    terms = expansion_terms(r, tol, config)
    c0 = asymptotic_constant(min(tol, config.c0_tol), config).value
    parts = [c0, i_j_closed(1) / 48.0 * alpha**2]
    parts.extend(term.coefficient * alpha ** (term.j + 3) for term in terms)
    return math.fsum(parts)


def heat_coefficients(cone: ConeData, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG) -> HeatCoefficients:
    return HeatCoefficients(b0=b0(cone), b_half=b_half(cone, tol, config), c1=c1(cone))


def resolvent_coefficients(
    cone: ConeData, m: int, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG
) -> ResolventCoefficients:
    return ResolventCoefficients(m=m, b0m=b0(cone), b1m=b1m(cone, m, tol, config), c2m=c2m(cone, m))


def singular_heat_terms(
    cone: ConeData, t: float, tol: float = DEFAULT_CONFIG.tol, config: NumericsConfig = DEFAULT_CONFIG
) -> float:
    """b0 + b_{1/2} t^(1/2) + c1 t log t, the germ-determined part of the singular heat-trace contribution."""
    if not (math.isfinite(t) and t > 0):
        raise DomainError(f"time t must be positive, got {t!r}")
    coeffs = heat_coefficients(cone, tol, config)
    return math.fsum([coeffs.b0, coeffs.b_half * math.sqrt(t), coeffs.c1 * t * math.log(t)])
