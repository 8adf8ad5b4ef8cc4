import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ..exceptions import ValidationError

Real = float | int | Fraction


@dataclass(frozen=True)
class ConeData:
    """
    Germ (f'(0), f''(0)) of the warping function f of a conical singularity
    with metric dr^2 + f(r)^2 dtheta^2.

    `alpha = 1/f'(0)` and `k_f = -f''(0)/f'(0)` are derived on construction.
    Exact `Fraction` germs are kept as given so that rational formulas stay exact.
    """

    fprime0: Real
    fsecond0: Real = 0.0
    alpha: float = field(init=False)
    k_f: float = field(init=False)

    def __post_init__(self) -> None:
        for name in ("fprime0", "fsecond0"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float, Fraction)):
                raise ValidationError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value!r}")
        if self.fprime0 <= 0:
            raise ValidationError(f"f'(0) must be positive, got {self.fprime0!r}")

        fp = Fraction(self.fprime0)
        object.__setattr__(self, "alpha", float(1 / fp))
        object.__setattr__(self, "k_f", float(-Fraction(self.fsecond0) / fp))

    def rescaled(self, lam: Real) -> "ConeData":
        """Germ of lam * f: alpha is divided by lam, k_f is unchanged."""
        if lam <= 0:
            raise ValidationError(f"rescaling factor must be positive, got {lam!r}")
        return ConeData(self.fprime0 * lam, self.fsecond0 * lam)


@dataclass(frozen=True)
class ProfileSample:
    r: float
    f_r: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and self.r > 0):
            raise ValidationError(f"profile radius must be positive, got {self.r!r}")
        if not (math.isfinite(self.f_r) and self.f_r > 0):
            raise ValidationError(f"profile value f(r) must be positive, got {self.f_r!r}")


@dataclass(frozen=True)
class EmbeddingData:
    """Cone angle and initial profile-curve curvature of an embedded surface of revolution."""

    embeddable: bool
    phi: float | None = None
    kappa0: float | None = None


class CurvatureClass(str, Enum):
    FINITE = "finite"
    PLUS_INFINITY = "plus_infinity"
    MINUS_INFINITY = "minus_infinity"
