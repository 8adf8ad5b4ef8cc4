from dataclasses import dataclass
from enum import Enum


class Provenance(str, Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    SERIES = "series"


@dataclass(frozen=True)
class HeatCoefficients:
    """Heat-trace coefficients of the singular point; c0 and c_half vanish identically."""

    b0: float
    b_half: float
    c1: float
    c0: float = 0.0
    c_half: float = 0.0


@dataclass(frozen=True)
class ResolventCoefficients:
    m: int
    b0m: float
    b1m: float
    c2m: float


@dataclass(frozen=True)
class ExpansionTerm:
    """One j-summand of the small-alpha expansion of F; coefficient multiplies alpha**(j + 3)."""

    j: int
    i_j: float
    i_j2: float
    weight: float
    bernoulli: float
    coefficient: float
    provenance: Provenance


@dataclass(frozen=True)
class TaylorDiagRow:
    j: int
    i_j: float
    i_j2: float
    v_j: float
    d_j: float
    lower_bound: float
    taylor_coeff: float
    root: float
    v_root: float
