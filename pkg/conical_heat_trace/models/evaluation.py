import math
from dataclasses import dataclass
from enum import Enum

from ..exceptions import DomainError


class EvalMethod(str, Enum):
    DIRECT = "direct"
    SERIES = "series"
    ORACLE = "oracle"
    ENDPOINT = "endpoint"


@dataclass(frozen=True)
class HParams:
    k: int
    alpha: float

    def __post_init__(self) -> None:
        if self.k < 0:
            raise DomainError(f"derivative order k must be nonnegative, got {self.k}")
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise DomainError(f"alpha must be positive, got {self.alpha!r}")

    @property
    def has_closed_form(self) -> bool:
        return self.k <= 2


@dataclass(frozen=True)
class HEval:
    value: float
    method: EvalMethod
    terms_used: int = 0
    err_est: float = 0.0
    truncated: bool = False
    precision_loss: bool = False


@dataclass(frozen=True)
class EvalDomain:
    """
    Regions of validity of the h_{k,alpha} representations for one alpha.

    r_alpha is the radius of the disc around 0 on which the regular part is holomorphic,
    R_alpha the radius of the Bernoulli series in w = log(1 - z), and z_switch the edge of the
    window |log(1 - z)| <= min(1, pi/alpha) on which the series path is used.
    """

    alpha: float
    r_alpha: float
    R_alpha: float
    z_switch: float

    @classmethod
    def for_alpha(cls, alpha: float) -> "EvalDomain":
        if not (math.isfinite(alpha) and alpha > 0):
            raise DomainError(f"alpha must be positive, got {alpha!r}")
        r_alpha = 1.0 if alpha < 6 else 2.0 * abs(math.sin(math.pi / alpha))
        window = min(1.0, math.pi / alpha)
        return cls(alpha=alpha, r_alpha=r_alpha, R_alpha=2.0 * math.pi / alpha, z_switch=-math.expm1(-window))

    @property
    def series_window(self) -> float:
        return min(1.0, math.pi / self.alpha)


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_est: float
    n_evals: int
    converged: bool

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(
            value=self.value + other.value,
            err_est=self.err_est + other.err_est,
            n_evals=self.n_evals + other.n_evals,
            converged=self.converged and other.converged,
        )

    def scaled(self, factor: float) -> "QuadResult":
        return QuadResult(self.value * factor, self.err_est * abs(factor), self.n_evals, self.converged)
