from .cache import CacheInterface
from .decorator import CacheDecoratorInterface
from .quadrature import QuadratureRule

__all__ = ["CacheInterface", "CacheDecoratorInterface", "QuadratureRule"]
