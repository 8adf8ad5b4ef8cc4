from .cache import CacheDecoratorFactory, InMemoryCache, InMemoryCacheDecorator, memoize
from .coefficients import (
    asymptotic_constant,
    asymptotic_f,
    b0,
    b0_exact,
    b1m,
    b_half,
    big_f,
    c1,
    c2m,
    clear_quadrature_cache,
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
from .config import DEFAULT_CONFIG, NumericsConfig
from .exceptions import (
    CapacityError,
    ConicalHeatTraceError,
    ConvergenceError,
    DomainError,
    FitError,
    ProfileParseError,
    ValidationError,
)
from .geometry import curvature_class, embedding, from_derivatives, from_profile_samples, orbifold_cone, read_profile_csv
from .hfun import h_direct, h_hat, h_oracle, h_reg_at_zero, h_sing, p_series, phi, phi_hat
from .interfaces import CacheDecoratorInterface, CacheInterface, QuadratureRule
from .models import (
    CacheItem,
    ConeData,
    CurvatureClass,
    EmbeddingData,
    EvalDomain,
    EvalMethod,
    ExpansionTerm,
    HEval,
    HeatCoefficients,
    HParams,
    OutputRecord,
    ProfileSample,
    Provenance,
    QuadResult,
    ResolventCoefficients,
    TaylorDiagRow,
)
from .quadrature import AdaptiveGaussKronrod, TanhSinh, integrate
from .special_fn import BernoulliTable, bernoulli, bernoulli_table, digamma, log_gamma

__version__ = "0.1.0"

__all__ = [
    "AdaptiveGaussKronrod",
    "BernoulliTable",
    "CacheDecoratorFactory",
    "CacheDecoratorInterface",
    "CacheInterface",
    "CacheItem",
    "CapacityError",
    "ConeData",
    "ConicalHeatTraceError",
    "ConvergenceError",
    "CurvatureClass",
    "DEFAULT_CONFIG",
    "DomainError",
    "EmbeddingData",
    "EvalDomain",
    "EvalMethod",
    "ExpansionTerm",
    "FitError",
    "HEval",
    "HParams",
    "HeatCoefficients",
    "InMemoryCache",
    "InMemoryCacheDecorator",
    "NumericsConfig",
    "OutputRecord",
    "ProfileParseError",
    "ProfileSample",
    "Provenance",
    "QuadResult",
    "QuadratureRule",
    "ResolventCoefficients",
    "TanhSinh",
    "TaylorDiagRow",
    "ValidationError",
    "asymptotic_constant",
    "asymptotic_f",
    "b0",
    "b0_exact",
    "b1m",
    "b_half",
    "bernoulli",
    "bernoulli_table",
    "big_f",
    "c1",
    "c2m",
    "clear_quadrature_cache",
    "curvature_class",
    "digamma",
    "embedding",
    "expansion_terms",
    "from_derivatives",
    "from_profile_samples",
    "h_alpha_at",
    "h_direct",
    "h_hat",
    "h_oracle",
    "h_reg_at_zero",
    "h_sing",
    "heat_coefficients",
    "heat_from_resolvent",
    "i_j_closed",
    "i_j_quad",
    "integrate",
    "log_gamma",
    "memoize",
    "orbifold_cone",
    "p_series",
    "phi",
    "phi_hat",
    "psi_m",
    "read_profile_csv",
    "resolvent_coefficients",
    "series_weight",
    "singular_heat_terms",
]
