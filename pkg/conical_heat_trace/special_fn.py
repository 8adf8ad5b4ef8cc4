"""Exact Bernoulli numbers and real-argument gamma-family functions."""

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .cache import memoize
from .config import DEFAULT_CONFIG
from .exceptions import CapacityError, DomainError

_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_ASYMPTOTIC_FLOOR = 8.0
_ASYMPTOTIC_TERMS = 9


@dataclass(frozen=True)
class BernoulliTable:
    """
    Bernoulli numbers B_0..B_N as reduced fractions, convention B_1 = -1/2.

    Built once by the recurrence sum_{k=0}^{n} C(n+1, k) B_k = 0; the odd-index values beyond
    B_1 are stored as exact zeros without entering the recurrence.
    """

    values: tuple[Fraction, ...]
    floats: tuple[float, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "floats", tuple(float(b) for b in self.values))

    @classmethod
    def build(cls, capacity: int) -> "BernoulliTable":
        if capacity < 1:
            raise DomainError(f"Bernoulli table capacity must be at least 1, got {capacity}")
        values = [Fraction(1), Fraction(-1, 2)]
        for n in range(2, capacity + 1):
            if n % 2:
                values.append(Fraction(0))
                continue
            acc = Fraction(1) - Fraction(n + 1, 2)  # k = 0 and k = 1 terms
            for k in range(2, n, 2):
                acc += math.comb(n + 1, k) * values[k]
            values.append(-acc / (n + 1))
        return cls(tuple(values[: capacity + 1]))

    @property
    def capacity(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> Fraction:
        self._check(n)
        return self.values[n]

    def as_float(self, n: int) -> float:
        self._check(n)
        return self.floats[n]

    def _check(self, n: int) -> None:
        if n < 0:
            raise DomainError(f"Bernoulli index must be nonnegative, got {n}")
        if n > self.capacity:
            raise CapacityError(f"Bernoulli index {n} exceeds table capacity {self.capacity}")


@memoize()
def bernoulli_table(capacity: int = DEFAULT_CONFIG.bernoulli_capacity) -> BernoulliTable:
    return BernoulliTable.build(capacity)


def bernoulli(n: int, capacity: int = DEFAULT_CONFIG.bernoulli_capacity) -> Fraction:
    """Exact B_n; raises CapacityError beyond the table capacity."""
    return bernoulli_table(capacity)[n]


def _stirling_coefficients() -> Sequence[float]:
    table = bernoulli_table()
    return [float(table[2 * k] / (2 * k * (2 * k - 1))) for k in range(1, _ASYMPTOTIC_TERMS + 1)]


def _digamma_coefficients() -> Sequence[float]:
    table = bernoulli_table()
    return [float(table[2 * k] / (2 * k)) for k in range(1, _ASYMPTOTIC_TERMS + 1)]


_STIRLING = _stirling_coefficients()
_DIGAMMA = _digamma_coefficients()


def _check_positive(x: float, name: str) -> None:
    if not x > 0 or math.isinf(x):
        raise DomainError(f"{name} requires a finite positive argument, got {x!r}")


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0: argument shift to x >= 8, then the Stirling series."""
    _check_positive(x, "log_gamma")
    shift = 0.0
    if x < _ASYMPTOTIC_FLOOR:
        product = 1.0
        while x < _ASYMPTOTIC_FLOOR:
            product *= x
            x += 1.0
        shift = math.log(product)

    inv = 1.0 / x
    inv2 = inv * inv
    tail = 0.0
    for coeff in reversed(_STIRLING):
        tail = tail * inv2 + coeff
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_TWO_PI + tail * inv - shift


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x) for x > 0: recurrence to x >= 8, then the asymptotic series."""
    _check_positive(x, "digamma")
    value = 0.0
    while x < _ASYMPTOTIC_FLOOR:
        value -= 1.0 / x
        x += 1.0

    inv2 = 1.0 / (x * x)
    tail = 0.0
    for coeff in reversed(_DIGAMMA):
        tail = tail * inv2 + coeff
    return value + math.log(x) - 0.5 / x - tail * inv2


def sin_pi(x: float) -> float:
    n = round(x)
    s = math.sin(math.pi * (x - n))
    return -s if n % 2 else s


def log_abs_gamma(x: float) -> tuple[float, int]:
    """(log|Gamma(x)|, sign Gamma(x)) for real x off the poles, by reflection for x <= 0."""
    if x > 0:
        return log_gamma(x), 1
    if x == math.floor(x):
        raise DomainError(f"Gamma has a pole at {x!r}")
    s = sin_pi(x)
    return math.log(math.pi) - math.log(abs(s)) - log_gamma(1.0 - x), 1 if s > 0 else -1


def bagul_bounds(n: int, lower_shift: float = 1.0, upper_shift: float = 2.0) -> tuple[float, float]:
    """
    Two-sided bound on |B_2n|:
    c_n * 3^2n / (3^2n - lower_shift) < |B_2n| < c_n * 3^2n / (3^2n - upper_shift),
    c_n = 2 (2n)! / (pi^2n (2^2n - 1)).

    Valid for every lower_shift <= 1 and upper_shift >= 9 (1 - 8/pi^2).
    """
    if n < 1:
        raise DomainError(f"bound is stated for n >= 1, got {n}")
    log_c = math.log(2.0) + log_gamma(2 * n + 1) - 2 * n * math.log(math.pi) - math.log(4.0**n - 1.0)
    three = 9.0**n
    return math.exp(log_c) * three / (three - lower_shift), math.exp(log_c) * three / (three - upper_shift)
