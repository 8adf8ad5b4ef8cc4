import re
import threading
import time
from collections import OrderedDict
from typing import Any, cast

from ...config import DEFAULT_CONFIG
from ...interfaces import CacheInterface
from ...models import CacheItem


class InMemoryCache(CacheInterface):
    """Process-wide key-value store, least recently used entries evicted beyond `max_entries`."""

    _instance: "InMemoryCache | None" = None
    _instance_lock = threading.Lock()
    cache: "OrderedDict[str, CacheItem]"
    lock: threading.RLock
    max_entries: int | None

    def __new__(cls) -> "InMemoryCache":
        with cls._instance_lock:
            if cls._instance is None:
                instance = cast(InMemoryCache, super().__new__(cls))
                instance.cache = OrderedDict()
                instance.lock = threading.RLock()
                instance.max_entries = DEFAULT_CONFIG.cache_max_entries
                cls._instance = instance
        return cls._instance

    def set(self, key: str, value: Any, ttl: float | None = None) -> None:
        expire_at = time.monotonic() + ttl if ttl is not None else None
        with self.lock:
            self.cache[key] = CacheItem(value, expire_at)
            self.cache.move_to_end(key)
            if self.max_entries is not None:
                while len(self.cache) > self.max_entries:
                    self.cache.popitem(last=False)

    def get(self, key: str) -> Any:
        with self.lock:
            item = self.cache.get(key)
            if item is None:
                return None
            if item.is_live(time.monotonic()):
                self.cache.move_to_end(key)
                return item.value
            del self.cache[key]  # Remove expired item
            return None

    def get_keys(self, pattern: str | None = None) -> list[str]:
        with self.lock:
            if pattern is None:
                return list(self.cache.keys())
            cache_pattern = re.compile(pattern)
            return [key for key in self.cache if cache_pattern.match(key)]

    def exists(self, key: str) -> bool:
        return self.get(key) is not None

    def delete(self, key: str) -> None:
        with self.lock:
            self.cache.pop(key, None)

    def clear(self) -> None:
        with self.lock:
            self.cache.clear()
