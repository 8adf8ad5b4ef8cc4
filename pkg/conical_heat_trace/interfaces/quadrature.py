from abc import ABC, abstractmethod
from collections.abc import Callable

from ..models import QuadResult


class QuadratureRule(ABC):
    """A deterministic one-dimensional integrator over a finite interval."""

    @abstractmethod
    def integrate(self, f: Callable[[float], float], a: float, b: float, tol: float) -> QuadResult:
        pass
