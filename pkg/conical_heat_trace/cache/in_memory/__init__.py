from .cache import InMemoryCache
from .decorator import InMemoryCacheDecorator

__all__ = ["InMemoryCache", "InMemoryCacheDecorator"]
