from .cache_item import CacheItem
from .coefficients import ExpansionTerm, HeatCoefficients, Provenance, ResolventCoefficients, TaylorDiagRow
from .cone import ConeData, CurvatureClass, EmbeddingData, ProfileSample
from .evaluation import EvalDomain, EvalMethod, HEval, HParams, QuadResult
from .output import SCHEMA_VERSION, OutputRecord

__all__ = [
    "CacheItem",
    "ConeData",
    "CurvatureClass",
    "EmbeddingData",
    "EvalDomain",
    "EvalMethod",
    "ExpansionTerm",
    "HEval",
    "HParams",
    "HeatCoefficients",
    "OutputRecord",
    "ProfileSample",
    "Provenance",
    "QuadResult",
    "ResolventCoefficients",
    "SCHEMA_VERSION",
    "TaylorDiagRow",
]
