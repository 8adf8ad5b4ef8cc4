from dataclasses import dataclass


@dataclass(frozen=True)
class NumericsConfig:
    """
    Numerical defaults shared by every module.
    Includes only the knobs a caller may reasonably want to tighten; the rest are constants.
    """

    tol: float = 1e-10
    bernoulli_capacity: int = 64
    series_capacity: int = 256
    series_term_cap: int = 200
    series_tol: float = 1e-17
    oracle_term_cap: int = 10**6
    panel_cap: int = 2**14
    tanh_sinh_max_level: int = 8
    c0_tol: float = 1e-11
    small_z_direct: float = 1e-3
    jmax: int = 41
    cache_max_entries: int = 4096
    quadrature_cache_ttl: float = 3600.0

    @classmethod
    def default(cls) -> "NumericsConfig":
        return cls()

    @classmethod
    def strict(cls) -> "NumericsConfig":
        return cls(tol=1e-13, c0_tol=1e-14, tanh_sinh_max_level=10)


DEFAULT_CONFIG = NumericsConfig.default()
