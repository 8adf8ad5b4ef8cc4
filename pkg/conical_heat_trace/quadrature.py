"""
Deterministic adaptive one-dimensional quadrature.

Two rules share the `QuadratureRule` interface: adaptive Gauss-Kronrod 7/15 with worst-panel-first
bisection, and tanh-sinh (double exponential) quadrature for integrands with integrable endpoint
singularities such as log(u)^j or u^p with p > -1. `integrate` selects between them.
"""

import heapq
import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_CONFIG
from .exceptions import DomainError
from .interfaces import QuadratureRule
from .models import QuadResult

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps

# Kronrod abscissae in decreasing order, then the Gauss weights of the embedded 7-point rule
# (nonzero on the odd Kronrod abscissae and the center).
_XGK = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WGK = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG = np.array(
    [
        0.0,
        0.129484966168869693270611432679082,
        0.0,
        0.279705391489276667901467771423780,
        0.0,
        0.381830050505118944950369775488975,
        0.0,
        0.417959183673469387755102040816327,
    ]
)

# Full 15-point tables: negative side, center, positive side.
NODES = np.concatenate([-_XGK[:-1], _XGK[-1:], _XGK[-2::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[-1:], _WGK[-2::-1]])
GAUSS_WEIGHTS = np.concatenate([_WG[:-1], _WG[-1:], _WG[-2::-1]])


@dataclass(frozen=True)
class Panel:
    a: float
    b: float
    value: float
    err: float
    roundoff: float

    @property
    def improvable(self) -> bool:
        return self.err > self.roundoff and self.b - self.a > 4 * _EPS * max(abs(self.a), abs(self.b))


class GaussKronrod15:
    """Single-panel 7/15 Gauss-Kronrod estimate with the QUADPACK error heuristic."""

    def panel(self, f: Callable[[float], float], a: float, b: float) -> Panel:
        center = 0.5 * (a + b)
        half = 0.5 * (b - a)
        fv = np.array([f(x) for x in center + half * NODES], dtype=float)

        resk = float(np.dot(KRONROD_WEIGHTS, fv))
        resg = float(np.dot(GAUSS_WEIGHTS, fv))
        reskh = 0.5 * resk
        resabs = float(np.dot(KRONROD_WEIGHTS, np.abs(fv))) * abs(half)
        resasc = float(np.dot(KRONROD_WEIGHTS, np.abs(fv - reskh))) * abs(half)

        err = abs((resk - resg) * half)
        if resasc != 0.0 and err != 0.0:
            err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
        return Panel(a=a, b=b, value=resk * half, err=err, roundoff=50.0 * _EPS * resabs)


class AdaptiveGaussKronrod(QuadratureRule):
    def __init__(self, panel_cap: int = DEFAULT_CONFIG.panel_cap):
        self.panel_cap = panel_cap
        self.rule = GaussKronrod15()

    def integrate(self, f: Callable[[float], float], a: float, b: float, tol: float) -> QuadResult:
        first = self.rule.panel(f, a, b)
        n_evals = 15
        heap: list[tuple[float, int, Panel]] = [(-first.err, 0, first)]
        seq = 1
        value, err = first.value, first.err

        while len(heap) < self.panel_cap:
            if err <= tol * max(1.0, abs(value)):
                break
            _, _, worst = heap[0]
            if not worst.improvable:
                logger.debug(f"quadrature on [{a}, {b}] reached roundoff level at {len(heap)} panels")
                break
            heapq.heappop(heap)
            mid = 0.5 * (worst.a + worst.b)
            left = self.rule.panel(f, worst.a, mid)
            right = self.rule.panel(f, mid, worst.b)
            n_evals += 30
            for child in (left, right):
                heapq.heappush(heap, (-child.err, seq, child))
                seq += 1
            value += left.value + right.value - worst.value
            err += left.err + right.err - worst.err

        panels = sorted((entry[2] for entry in heap), key=lambda p: p.a)
        value = math.fsum(p.value for p in panels)
        err = math.fsum(max(p.err, p.roundoff) for p in panels)
        converged = bool(math.isfinite(value) and err <= tol * max(1.0, abs(value)))
        if not converged:
            logger.warning(
                f"Gauss-Kronrod on [{a}, {b}] not converged: err_est={err:.3e} after {len(panels)} panels"
            )
        return QuadResult(value=value, err_est=err, n_evals=n_evals, converged=converged)


class TanhSinh(QuadratureRule):
    """
    Tanh-sinh quadrature: x = c + h tanh(pi/2 sinh t) on a uniform t-grid refined by halving.

    Abscissae are computed from their distance to the nearer endpoint so that nodes crowd into
    the endpoints without cancellation; nodes that round onto an endpoint are dropped.
    """

    t_max = 4.5

    def __init__(self, max_level: int = DEFAULT_CONFIG.tanh_sinh_max_level, min_level: int = 3):
        self.max_level = max_level
        self.min_level = min_level

    def _node(self, t: float, a: float, b: float) -> tuple[float, float]:
        s = 0.5 * math.pi * math.sinh(t)
        width = b - a
        if t <= 0:
            x = a + width / (1.0 + math.exp(-2.0 * s))
        else:
            x = b - width / (1.0 + math.exp(2.0 * s))
        weight = 0.5 * width * 0.5 * math.pi * math.cosh(t) / math.cosh(s) ** 2
        return x, weight

    def _level_sum(self, f: Callable[[float], float], a: float, b: float, h: float, odd_only: bool) -> tuple[float, int]:
        k_max = math.ceil(self.t_max / h)
        terms = []
        for k in range(-k_max, k_max + 1):
            if odd_only and k % 2 == 0:
                continue
            x, weight = self._node(k * h, a, b)
            if weight == 0.0 or x <= a or x >= b:
                continue
            terms.append(weight * f(x))
        return math.fsum(terms), len(terms)

    def integrate(self, f: Callable[[float], float], a: float, b: float, tol: float) -> QuadResult:
        h = 1.0
        partial, n_evals = self._level_sum(f, a, b, h, odd_only=False)
        estimate = h * partial
        err = math.inf

        for level in range(1, self.max_level + 1):
            h *= 0.5
            fresh, count = self._level_sum(f, a, b, h, odd_only=True)
            n_evals += count
            refined = 0.5 * estimate + h * fresh
            err = abs(refined - estimate)
            estimate = refined
            if level >= self.min_level and err <= tol * max(1.0, abs(estimate)):
                break

        floor = 64.0 * _EPS * abs(estimate)
        err = max(err, floor)
        converged = bool(math.isfinite(estimate) and err <= tol * max(1.0, abs(estimate)))
        if not converged:
            logger.warning(f"tanh-sinh on [{a}, {b}] not converged: err_est={err:.3e} at level {self.max_level}")
        return QuadResult(value=estimate, err_est=err, n_evals=n_evals, converged=converged)


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = DEFAULT_CONFIG.tol,
    endpoint_singularity: bool = False,
    panel_cap: int = DEFAULT_CONFIG.panel_cap,
    max_level: int = DEFAULT_CONFIG.tanh_sinh_max_level,
) -> QuadResult:
    """
    Integral of f over [a, b].

    `converged` means err_est <= tol * max(1, |value|). With `endpoint_singularity` the tanh-sinh
    rule is used, which never evaluates f at a or b.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DomainError(f"integration needs finite a < b, got [{a}, {b}]")
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    rule: QuadratureRule = TanhSinh(max_level) if endpoint_singularity else AdaptiveGaussKronrod(panel_cap)
    return rule.integrate(f, a, b, tol)
