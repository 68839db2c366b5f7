from .custom_logging import CustomizeLogger
from .union_find import UnionFind

__all__ = [
    "CustomizeLogger",
    "UnionFind",
]
