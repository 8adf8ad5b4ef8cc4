"""
The regularized series h_{k,alpha}(z) = sum_n alpha^k n^k (1 - z)^(n alpha) on z in [0, 1] and its parts.

Every function here that is regular at z = 0 (Phi_k, hat-Phi_k, hat-h_{k,alpha}) has two representations:
the closed form, which cancels catastrophically near z = 0, and a power series in L = log(1 - z) with
Bernoulli coefficients, which converges only for |L| < 2 pi / alpha. Evaluation switches between them on
the window |L| <= min(1, pi / alpha).
"""

import logging
import math
import sys
from dataclasses import dataclass

import mpmath

from .cache import memoize
from .config import DEFAULT_CONFIG, NumericsConfig
from .exceptions import CapacityError, DomainError
from .models import EvalDomain, EvalMethod, HEval, HParams
from .special_fn import bernoulli_table

logger = logging.getLogger(__name__)

_EPS = sys.float_info.epsilon

CLOSED_FORM_ORDERS = (0, 1, 2)

# Phi_k uses the alpha = 1 window.
PHI_WINDOW = 1.0


@dataclass(frozen=True)
class ZPoint:
    """A point z of [0, 1] together with w = 1 - z and L = log(1 - z), each held to full precision."""

    z: float
    w: float
    L: float

    @classmethod
    def from_z(cls, z: float) -> "ZPoint":
        if not 0.0 <= z <= 1.0:
            raise DomainError(f"z must lie in [0, 1], got {z!r}")
        return cls(z=z, w=1.0 - z, L=math.log1p(-z) if z < 1.0 else -math.inf)

    @classmethod
    def from_u(cls, u: float) -> "ZPoint":
        """z = 1 - u^2."""
        if not 0.0 <= u <= 1.0:
            raise DomainError(f"u must lie in [0, 1], got {u!r}")
        return cls(z=(1.0 - u) * (1.0 + u), w=u * u, L=2.0 * math.log(u) if u > 0.0 else -math.inf)

    @property
    def l_over_z(self) -> float:
        return -1.0 if self.z == 0.0 else self.L / self.z

    @property
    def is_endpoint(self) -> bool:
        return self.z == 0.0 or math.isinf(self.L)


@dataclass(frozen=True)
class SeriesSum:
    value: float
    terms: int
    truncated: bool
    tail: float


@memoize()
def series_coefficients(k: int, capacity: int = DEFAULT_CONFIG.series_capacity) -> tuple[float, ...]:
    """c_{k,j} = B_{j+k+1} / (j! (j+k+1)) for j = 0 .. capacity-k-1."""
    if k + 1 > capacity:
        raise CapacityError(f"order k={k} needs Bernoulli numbers beyond capacity {capacity}")
    table = bernoulli_table(capacity)
    return tuple(float(table[j + k + 1] / (math.factorial(j) * (j + k + 1))) for j in range(capacity - k))


def bernoulli_series(
    k: int,
    x: float,
    start: int,
    tol: float = DEFAULT_CONFIG.series_tol,
    config: NumericsConfig = DEFAULT_CONFIG,
) -> SeriesSum:
    """
    sum_{j >= start} c_{k,j} x^(j - start).

    Summation stops after two consecutive nonzero terms below tol * max(1, |partial|); vanishing
    coefficients (odd Bernoulli indices) neither count toward nor reset that test.
    """
    coeffs = series_coefficients(k, config.series_capacity)
    if x == 0.0:
        return SeriesSum(coeffs[start], 1, False, 0.0)

    stop = min(start + config.series_term_cap, len(coeffs))
    terms: list[float] = []
    partial = 0.0
    power = 1.0
    quiet = 0
    last = 0.0
    for j in range(start, stop):
        c = coeffs[j]
        if c != 0.0:
            term = c * power
            terms.append(term)
            partial += term
            last = abs(term)
            quiet = quiet + 1 if last <= tol * max(1.0, abs(partial)) else 0
            if quiet >= 2:
                return SeriesSum(math.fsum(terms), j - start + 1, False, last)
        power *= x
    return SeriesSum(math.fsum(terms), stop - start, True, last)


def eval_domain(alpha: float) -> EvalDomain:
    return EvalDomain.for_alpha(alpha)


def _check_order(k: int) -> None:
    if k not in CLOSED_FORM_ORDERS:
        raise DomainError(f"closed forms exist for k in {CLOSED_FORM_ORDERS}, got k={k}")


def _check_open(z: float) -> None:
    if not 0.0 < z < 1.0:
        raise DomainError(f"z must lie in (0, 1), got {z!r}")


def _quotient(numerator: float, denominator: float, what: str) -> float:
    # Near z = 0 the powers in the denominators underflow long before z itself does.
    value = numerator / denominator if denominator != 0.0 else math.inf
    if not math.isfinite(value):
        raise DomainError(f"{what} is not representable in double precision")
    return value


def _h_closed(k: int, alpha: float, L: float) -> float:
    q = math.exp(alpha * L)
    one_minus_q = -math.expm1(alpha * L)
    what = f"h_{{{k},{alpha}}} at log(1 - z) = {L!r}"
    if k == 0:
        return _quotient(1.0, one_minus_q, what)
    if k == 1:
        return _quotient(alpha * q, one_minus_q**2, what)
    return _quotient(alpha**2 * q * (1.0 + q), one_minus_q**3, what)


def _h_sing_closed(k: int, alpha: float, z: float, w: float) -> float:
    what = f"h_{{{k},{alpha}}}^sing at z = {z!r}"
    if k == 0:
        return _quotient(1.0, alpha * z, what)
    if k == 1:
        return _quotient(w, alpha * z * z, what)
    return _quotient(w * (1.0 + w), alpha * z**3, what)


def _phi_closed(k: int, p: ZPoint) -> float:
    # 1 / -inf == -0.0, so the far end z = 1 comes out as Phi_0(1) = 1, Phi_k(1) = 0.
    if k == 0:
        return 1.0 / p.z + 1.0 / p.L
    if k == 1:
        return p.w / p.z**2 - 1.0 / p.L**2
    return p.w * (1.0 + p.w) / p.z**3 + 2.0 / p.L**3


def h_direct(k: int, alpha: float, z: float) -> float:
    """h_{k,alpha}(z) from the closed forms in q = (1 - z)^alpha."""
    HParams(k, alpha)
    _check_order(k)
    _check_open(z)
    return _h_closed(k, alpha, math.log1p(-z))


def h_oracle(
    k: int,
    alpha: float,
    z: float,
    tol: float = 1e-12,
    term_cap: int = DEFAULT_CONFIG.oracle_term_cap,
) -> HEval:
    """
    Brute-force partial sum of the defining series, for any k >= 0.

    Once the term ratio r_n = ((n+1)/n)^k q drops below 1 it only decreases, so the tail after term t_n
    is at most t_n r_n / (1 - r_n); summation stops when that bound is below tol * |partial|.
    """
    HParams(k, alpha)
    _check_open(z)
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")

    log_q = alpha * math.log1p(-z)
    q = math.exp(log_q)
    log_alpha = math.log(alpha)
    terms = [1.0] if k == 0 else []
    partial = math.fsum(terms)
    tail = math.inf
    n = 0
    converged = False
    for n in range(1, term_cap + 1):
        term = math.exp(k * (log_alpha + math.log(n)) + n * log_q)
        terms.append(term)
        partial += term
        ratio = (1.0 + 1.0 / n) ** k * q
        if ratio < 1.0:
            tail = term * ratio / (1.0 - ratio)
            if tail < tol * abs(partial):
                converged = True
                break

    if not converged:
        logger.warning(f"h_oracle(k={k}, alpha={alpha}, z={z}) truncated at {term_cap} terms, tail bound {tail:.3e}")
    return HEval(
        value=math.fsum(terms),
        method=EvalMethod.ORACLE,
        terms_used=n,
        err_est=tail,
        truncated=not converged,
    )


def h_sing(k: int, alpha: float, z: float) -> float:
    """Principal part at z = 0, (1/alpha) h_{k,1}(z)."""
    HParams(k, alpha)
    _check_order(k)
    _check_open(z)
    return _h_sing_closed(k, alpha, z, 1.0 - z)


def h_reg_at_zero(k: int, alpha: float) -> float:
    """B_{k+1} (1 - alpha^{k+1}) / (alpha (k+1))."""
    HParams(k, alpha)
    b = bernoulli_table(max(DEFAULT_CONFIG.bernoulli_capacity, k + 1))[k + 1]
    if b == 0:
        return 0.0
    return float(b) * -math.expm1((k + 1) * math.log(alpha)) / (alpha * (k + 1))


def p_series(k: int, alpha: float, L: float, tol: float = 1e-12, config: NumericsConfig = DEFAULT_CONFIG) -> HEval:
    """P_alpha^{(k)}(L) = alpha^{k+1} sum_j c_{k,j} (alpha L)^j, convergent for |L| < 2 pi / alpha."""
    HParams(k, alpha)
    radius = 2.0 * math.pi / alpha
    if not abs(L) < radius:
        raise DomainError(f"|L| = {abs(L)} is outside the series radius {radius}")

    s = bernoulli_series(k, alpha * L, 0, tol, config)
    scale = alpha ** (k + 1)
    if s.truncated:
        logger.warning(f"p_series(k={k}, alpha={alpha}, L={L}) truncated at {s.terms} terms")
    return HEval(
        value=scale * s.value,
        method=EvalMethod.SERIES,
        terms_used=s.terms,
        err_est=scale * s.tail,
        truncated=s.truncated,
    )


def phi_uses_series(p: ZPoint) -> bool:
    """Whether Phi_k and hat-Phi_k at p come from the Bernoulli series rather than the closed form."""
    return abs(p.L) <= PHI_WINDOW


def phi_at(k: int, p: ZPoint, tol: float = DEFAULT_CONFIG.series_tol, config: NumericsConfig = DEFAULT_CONFIG) -> float:
    if phi_uses_series(p):
        return -bernoulli_series(k, p.L, 0, tol, config).value
    return _phi_closed(k, p)


def phi_hat_at(
    k: int, p: ZPoint, tol: float = DEFAULT_CONFIG.series_tol, config: NumericsConfig = DEFAULT_CONFIG
) -> float:
    if phi_uses_series(p):
        return -p.l_over_z * bernoulli_series(k, p.L, 1, tol, config).value
    phi_zero = -series_coefficients(k, config.series_capacity)[0]
    return (_phi_closed(k, p) - phi_zero) / p.z


def phi(k: int, z: float, tol: float = DEFAULT_CONFIG.series_tol) -> float:
    """Phi_k(z) for z in [0, 1)."""
    _check_order(k)
    if not 0.0 <= z < 1.0:
        raise DomainError(f"z must lie in [0, 1), got {z!r}")
    return phi_at(k, ZPoint.from_z(z), tol)


def phi_hat(k: int, z: float, tol: float = DEFAULT_CONFIG.series_tol) -> float:
    """(Phi_k(z) - Phi_k(0)) / z on [0, 1], with its limits at both ends."""
    _check_order(k)
    return phi_hat_at(k, ZPoint.from_z(z), tol)


def _h_hat_endpoint(k: int, alpha: float, p: ZPoint, config: NumericsConfig) -> HEval:
    if p.z == 0.0:
        c1 = series_coefficients(k, config.series_capacity)[1]
        value = -c1 * -math.expm1((k + 2) * math.log(alpha)) / alpha
    else:
        # h_{k,alpha}(1) keeps only the n = 0 term, so h^reg(1) = 1 - 1/alpha for k = 0 and 0 otherwise.
        reg_at_one = 1.0 - 1.0 / alpha if k == 0 else 0.0
        value = reg_at_one - h_reg_at_zero(k, alpha)
    return HEval(value=value, method=EvalMethod.ENDPOINT)


def _h_hat_series(k: int, alpha: float, p: ZPoint, tol: float, config: NumericsConfig) -> HEval:
    radius = 2.0 * math.pi / max(1.0, alpha)
    if not abs(p.L) < radius:
        raise DomainError(f"|log(1 - z)| = {abs(p.L)} is outside the series radius {radius} for alpha={alpha}")

    own = bernoulli_series(k, p.L, 1, tol, config)
    scaled = bernoulli_series(k, alpha * p.L, 1, tol, config)
    factor = alpha ** (k + 2)
    lz = p.l_over_z
    value = lz * (own.value - factor * scaled.value) / alpha
    return HEval(
        value=value,
        method=EvalMethod.SERIES,
        terms_used=max(own.terms, scaled.terms),
        err_est=abs(lz) * (own.tail + factor * scaled.tail) / alpha + _EPS * abs(value),
        truncated=own.truncated or scaled.truncated,
    )


def _h_hat_direct_mp(k: int, alpha: float, z: float, dps: int) -> float:
    b = bernoulli_table()[k + 1]
    with mpmath.workdps(dps):
        a = mpmath.mpf(alpha)
        zz = mpmath.mpf(z)
        w = 1 - zz
        aL = a * mpmath.log(w)
        q = mpmath.exp(aL)
        one_minus_q = -mpmath.expm1(aL)
        if k == 0:
            h, hs = 1 / one_minus_q, 1 / (a * zz)
        elif k == 1:
            h, hs = a * q / one_minus_q**2, w / (a * zz**2)
        else:
            h, hs = a**2 * q * (1 + q) / one_minus_q**3, w * (1 + w) / (a * zz**3)
        hr = mpmath.mpf(b.numerator) / b.denominator * (1 - a ** (k + 1)) / (a * (k + 1))
        return float((h - hs - hr) / zz)


def _h_hat_direct(k: int, alpha: float, p: ZPoint, config: NumericsConfig) -> HEval:
    hr = h_reg_at_zero(k, alpha)
    if p.z < config.small_z_direct:
        lost_digits = (k + 2) * math.log10(1.0 / p.z) + (k + 1) * abs(math.log10(alpha)) + 1.0
        dps = 20 + math.ceil(lost_digits)
        value = _h_hat_direct_mp(k, alpha, p.z, dps)
        logger.warning(
            f"direct h_hat(k={k}, alpha={alpha}) forced at z={p.z}: ~{lost_digits:.0f} digits cancel, "
            f"evaluated at {dps} digits"
        )
        return HEval(
            value=value,
            method=EvalMethod.DIRECT,
            err_est=_EPS * abs(value) + 10.0 ** (lost_digits - dps),
            precision_loss=True,
        )

    h = _h_closed(k, alpha, p.L)
    hs = _h_sing_closed(k, alpha, p.z, p.w)
    return HEval(
        value=(h - hs - hr) / p.z,
        method=EvalMethod.DIRECT,
        err_est=_EPS * (abs(h) + abs(hs) + abs(hr)) / p.z,
    )


def _h_hat_oracle(k: int, alpha: float, p: ZPoint, config: NumericsConfig) -> HEval:
    oracle = h_oracle(k, alpha, p.z, tol=1e-15, term_cap=config.oracle_term_cap)
    hs = _h_sing_closed(k, alpha, p.z, p.w)
    hr = h_reg_at_zero(k, alpha)
    return HEval(
        value=(oracle.value - hs - hr) / p.z,
        method=EvalMethod.ORACLE,
        terms_used=oracle.terms_used,
        err_est=(oracle.err_est + _EPS * (abs(oracle.value) + abs(hs) + abs(hr))) / p.z,
        truncated=oracle.truncated,
    )


def h_hat_at(
    k: int,
    alpha: float,
    p: ZPoint,
    tol: float = DEFAULT_CONFIG.series_tol,
    method: EvalMethod | str = "auto",
    config: NumericsConfig = DEFAULT_CONFIG,
) -> HEval:
    if p.is_endpoint:
        return _h_hat_endpoint(k, alpha, p, config)

    if method == "auto":
        window = min(1.0, math.pi / alpha)
        mode = EvalMethod.SERIES if abs(p.L) <= window else EvalMethod.DIRECT
    else:
        try:
            mode = EvalMethod(method)
        except ValueError as e:
            raise DomainError(f"unknown evaluation method {method!r}") from e

    if mode is EvalMethod.SERIES:
        return _h_hat_series(k, alpha, p, tol, config)
    if mode is EvalMethod.DIRECT:
        return _h_hat_direct(k, alpha, p, config)
    if mode is EvalMethod.ORACLE:
        return _h_hat_oracle(k, alpha, p, config)
    raise DomainError(f"method {mode.value!r} applies only at z = 0 and z = 1, got z={p.z}")


def h_hat(
    k: int,
    alpha: float,
    z: float,
    tol: float = DEFAULT_CONFIG.series_tol,
    method: EvalMethod | str = "auto",
    config: NumericsConfig = DEFAULT_CONFIG,
) -> HEval:
    """
    hat-h_{k,alpha}(z) = (h^reg(z) - h^reg(0)) / z on [0, 1].

    In the series window this is (1/alpha) (L/z) [S_k(L) - alpha^{k+2} S_k(alpha L)] with
    S_k(x) = sum_{j >= 1} c_{k,j} x^(j-1), which is exactly zero at alpha = 1. Outside it the
    closed forms are used; forcing them below z = small_z_direct re-evaluates in extended precision
    and sets `precision_loss`.
    """
    HParams(k, alpha)
    _check_order(k)
    result = h_hat_at(k, alpha, ZPoint.from_z(z), tol, method, config)
    logger.debug(f"h_hat(k={k}, alpha={alpha}, z={z}) via {result.method.value}: {result.value!r}")
    if result.truncated:
        logger.warning(f"h_hat(k={k}, alpha={alpha}, z={z}) series truncated at {result.terms_used} terms")
    return result
