"""
Persistence intervals and barcodes.

Intervals are half-open: a class born at ``birth`` and killed by a simplex
appearing at ``death`` is alive for birth <= r < death.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Protocol

from .complex import Simplex


class CycleSource(Protocol):
    """Produces the representative cycle created by a birth simplex."""

    def cycle_of(self, simplex: Simplex) -> tuple[Simplex, ...]: ...


@dataclass(frozen=True, slots=True)
class PersistenceInterval:
    """One bar of a barcode.

    The representative cycle is resolved through ``cycles`` on first
    access; intervals built by hand only know their degree-0 cycle.
    """

    degree: int
    birth: float
    death: float
    birth_simplex: Simplex
    death_simplex: Simplex | None = None
    cycles: CycleSource | None = field(default=None, compare=False, repr=False)

    @property
    def representative(self) -> tuple[Simplex, ...]:
        if self.cycles is not None:
            return self.cycles.cycle_of(self.birth_simplex)
        return (self.birth_simplex,) if self.degree == 0 else ()

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.death)

    @property
    def ephemeral(self) -> bool:
        """Zero-length interval, created and killed at the same parameter."""
        return self.death == self.birth

    @property
    def persistence(self) -> float:
        return self.death - self.birth

    def alive_at(self, r: float) -> bool:
        return self.birth <= r < self.death

    @property
    def sort_key(self) -> tuple[int, float, float]:
        return (self.degree, self.birth, self.death)

    def to_dict(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "birth": self.birth,
            "death": None if self.is_infinite else self.death,
        }


@dataclass(frozen=True)
class Barcode:
    """Multiset of persistence intervals of a filtration."""

    intervals: tuple[PersistenceInterval, ...] = ()
    max_degree: int = 0
    final_parameter: float = 0.0

    def __len__(self) -> int:
        return len(self.intervals)

    def __contains__(self, interval: object) -> bool:
        return interval in self.intervals

    @cached_property
    def ordered(self) -> tuple[PersistenceInterval, ...]:
        """All intervals sorted by (degree, birth, death)."""
        return tuple(sorted(self.intervals, key=lambda i: i.sort_key))

    def visible(self) -> list[PersistenceInterval]:
        """Non-ephemeral intervals sorted by (degree, birth, death)."""
        return [i for i in self.ordered if not i.ephemeral]

    def in_degree(self, degree: int, include_ephemeral: bool = False) -> list[PersistenceInterval]:
        return [
            i
            for i in self.ordered
            if i.degree == degree and (include_ephemeral or not i.ephemeral)
        ]

    def infinite(self, degree: int) -> list[PersistenceInterval]:
        return [i for i in self.in_degree(degree) if i.is_infinite]

    def degrees(self) -> list[int]:
        return list(range(self.max_degree + 1))

    def total_persistence(self, degree: int) -> float:
        """Sum of finite visible bar lengths in one degree."""
        return sum(i.persistence for i in self.in_degree(degree) if not i.is_infinite)

    def longest(self, degree: int, k: int = 1) -> list[PersistenceInterval]:
        """The ``k`` longest visible bars of a degree, infinite ones first."""
        bars = self.in_degree(degree)
        return sorted(bars, key=lambda i: (-i.persistence, i.birth))[:k]

    def to_list(self) -> list[dict[str, Any]]:
        return [i.to_dict() for i in self.visible()]
