from .in_memory.cache import InMemoryCache
from .in_memory.decorator import InMemoryCacheDecorator


class CacheDecoratorFactory:
    @classmethod
    def inmemory(cls, default_ttl: float | None = None) -> InMemoryCacheDecorator:
        cache = InMemoryCache()
        return InMemoryCacheDecorator(cache, default_ttl)


# Process-wide memoizer: Bernoulli tables, series coefficients, C0, and per-alpha integrals under a TTL.
memoize = CacheDecoratorFactory.inmemory()

__all__ = ["CacheDecoratorFactory", "InMemoryCache", "InMemoryCacheDecorator", "memoize"]
