from abc import ABC, abstractmethod
from collections.abc import Callable


class CacheDecoratorInterface(ABC):
    @abstractmethod
    def __call__(self, ttl: float | None = None) -> Callable:
        pass

    @abstractmethod
    def invalidate(self, target_func_name: str) -> None:
        pass

    @abstractmethod
    def invalidate_all(self) -> None:
        pass
