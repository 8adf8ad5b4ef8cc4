from dataclasses import dataclass
from typing import Any


@dataclass
class CacheItem:
    value: Any
    expire_at: float | None

    def is_live(self, now: float) -> bool:
        return self.expire_at is None or now < self.expire_at
