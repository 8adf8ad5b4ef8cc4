"""
Growth diagnostics of the Taylor coefficients V_j B_{j+3} of F at alpha = 0.

The rows witness that the coefficients grow like a factorial: the (j+3)-th roots increase without
bound, so the formal Taylor series of F has radius zero and F cannot be a rational function of alpha.
"""

import logging
import math
from fractions import Fraction

import mpmath

from .coefficients import i_j_closed, series_weight
from .config import DEFAULT_CONFIG, NumericsConfig
from .exceptions import DomainError
from .models import TaylorDiagRow
from .special_fn import bernoulli, log_gamma

logger = logging.getLogger(__name__)


def _check_odd(j: int) -> None:
    if isinstance(j, bool) or not isinstance(j, int) or j < 1 or j % 2 == 0:
        raise DomainError(f"j must be an odd integer >= 1, got {j!r}")


def _log_abs(value: Fraction) -> float:
    return math.log(abs(value.numerator)) - math.log(value.denominator)


def v_j(j: int) -> float:
    """V_j = -(I_j / (j! (j+3)) - I_{j+2} / (4 (j+3)!)) for odd j."""
    _check_odd(j)
    return series_weight(j)


def d_j(j: int) -> float:
    """D_j = (j+2)(j+3)/pi^2 * |B_{j+1}| / |B_{j+3}|."""
    _check_odd(j)
    ratio = abs(bernoulli(j + 1) / bernoulli(j + 3))
    return (j + 2) * (j + 3) / math.pi**2 * float(ratio)


def d_j_mp(j: int) -> mpmath.mpf:
    """As `d_j`, at the working precision of the current mpmath context."""
    _check_odd(j)
    ratio = abs(bernoulli(j + 1) / bernoulli(j + 3))
    return (j + 2) * (j + 3) * mpmath.mpf(ratio.numerator) / ratio.denominator / mpmath.pi**2


def lower_bound(j: int) -> float:
    """2^(j-1) pi^(j+3) |B_{j+3}| / ((j+3)! (j+3)) * 7/9 * (2^(j+3) - 1) / (3^(j+1) - 1), in log space."""
    _check_odd(j)
    log_value = (
        (j - 1) * math.log(2.0)
        + (j + 3) * math.log(math.pi)
        + _log_abs(bernoulli(j + 3))
        - log_gamma(j + 4)
        - math.log(j + 3)
        + math.log(7.0 / 9.0)
        + math.log(2 ** (j + 3) - 1)
        - math.log(3 ** (j + 1) - 1)
    )
    return math.exp(log_value)


def diagnostic_row(j: int) -> TaylorDiagRow:
    _check_odd(j)
    v = v_j(j)
    b = bernoulli(j + 3)
    log_v = math.log(abs(v))
    return TaylorDiagRow(
        j=j,
        i_j=i_j_closed(j),
        i_j2=i_j_closed(j + 2),
        v_j=v,
        d_j=d_j(j),
        lower_bound=lower_bound(j),
        taylor_coeff=v * float(b),
        root=math.exp((log_v + _log_abs(b)) / (j + 3)),
        v_root=math.exp(log_v / (j + 3)),
    )


def report(j_max: int, config: NumericsConfig = DEFAULT_CONFIG) -> list[TaylorDiagRow]:
    """Rows for j = 1, 3, ..., j_max."""
    _check_odd(j_max)
    if j_max > config.jmax:
        raise DomainError(f"j_max is capped at {config.jmax}, got {j_max}")
    rows = [diagnostic_row(j) for j in range(1, j_max + 1, 2)]
    for row in rows:
        if not row.v_j > row.lower_bound:
            logger.warning(f"V_{row.j} = {row.v_j!r} does not exceed its lower bound {row.lower_bound!r}")
    return rows
