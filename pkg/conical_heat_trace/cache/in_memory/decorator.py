import logging
import re
import threading
from collections.abc import Callable
from functools import wraps
from typing import Any, TypeVar

from ...interfaces import CacheDecoratorInterface
from .cache import InMemoryCache

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])


class InMemoryCacheDecorator(CacheDecoratorInterface):
    """
    Compute-once memoization of pure numerical functions.

    Hits are served under the cache's short-lived lock only. A miss takes a lock private to its key,
    checks again and computes, so concurrent callers of one key share a single computation while
    other keys, hit or miss, proceed in parallel.
    """

    def __init__(self, cache: InMemoryCache, default_ttl: float | None = None):
        self.cache = cache
        self.default_ttl = default_ttl
        self._key_locks: dict[str, threading.Lock] = {}
        self._key_locks_guard = threading.Lock()

    def key_builder(self, f: Callable[..., Any], *args: Any, **kwargs: Any) -> str:
        arg_str = repr(args)
        kwarg_str = repr(sorted(kwargs.items())) if kwargs else "{}"
        func_name = getattr(f, "__qualname__", getattr(f, "__name__", "unknown"))
        return f"{func_name}:{arg_str}:{kwarg_str}"

    def _key_lock(self, key: str) -> threading.Lock:
        with self._key_locks_guard:
            return self._key_locks.setdefault(key, threading.Lock())

    def _release_key_lock(self, key: str, lock: threading.Lock) -> None:
        # Late arrivals either still hold the old lock or find the stored value.
        with self._key_locks_guard:
            if self._key_locks.get(key) is lock:
                del self._key_locks[key]

    def __call__(self, ttl: float | None = None) -> Callable[[F], F]:
        def decorator(func: F) -> F:
            @wraps(func)
            def wrapper(*args: Any, **kwargs: Any) -> Any:
                _key = self.key_builder(func, *args, **kwargs)
                current_ttl = ttl if ttl is not None else self.default_ttl

                try:
                    cached_value = self.cache.get(_key)
                except Exception as e:
                    logger.warning(f"Error in cache lookup: {e}, computing uncached.")
                    return func(*args, **kwargs)
                if cached_value is not None:
                    return cached_value

                key_lock = self._key_lock(_key)
                with key_lock:
                    try:
                        cached_value = self.cache.get(_key)
                        if cached_value is not None:
                            return cached_value

                        logger.debug(f"cache miss: {_key}")
                        result = func(*args, **kwargs)

                        if result is not None:
                            try:
                                self.cache.set(_key, result, ttl=current_ttl)
                            except Exception as e:
                                logger.warning(f"Error in cache store: {e}")
                        return result
                    finally:
                        self._release_key_lock(_key, key_lock)

            return wrapper  # type: ignore[return-value]

        return decorator

    def invalidate(self, target_func_name: str) -> None:
        pattern = rf"(.*\.)?{re.escape(target_func_name)}:\(.*\):"
        for cache_key in self.cache.get_keys(pattern):
            self.cache.delete(cache_key)

    def invalidate_all(self) -> None:
        self.cache.clear()
