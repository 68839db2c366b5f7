"""
Simplicial homology over the two-element field.

Chain groups use the simplices of one dimension, in canonical complex
order, as basis. Signs of the boundary formula vanish because -1 = 1.
"""

from collections.abc import Iterable
from dataclasses import dataclass

from loguru import logger

from ..models.complex import FilteredComplex, Simplex, faces
from .error_handling import ArgumentError
from .gf2 import GF2Matrix, null_space_basis, rank_gf2

Chain = tuple[Simplex, ...]


@dataclass(frozen=True)
class ChainBasis:
    """Ordered basis of the chain group C_degree."""

    degree: int
    simplices: tuple[Simplex, ...]

    @property
    def dimension(self) -> int:
        return len(self.simplices)

    def positions(self) -> dict[tuple[int, ...], int]:
        return {s.vertices: i for i, s in enumerate(self.simplices)}


@dataclass(frozen=True)
class BettiVector:
    """Betti numbers beta_0 .. beta_max_dim."""

    betti: tuple[int, ...]

    def __getitem__(self, degree: int) -> int:
        return self.betti[degree]

    def __len__(self) -> int:
        return len(self.betti)

    def __str__(self) -> str:
        return "(" + ", ".join(str(b) for b in self.betti) + ")"

    def to_list(self) -> list[int]:
        return list(self.betti)


def chain_basis(K: FilteredComplex, degree: int) -> ChainBasis:
    return ChainBasis(degree, tuple(K.of_dimension(degree)))


def _boundary(K: FilteredComplex, i: int) -> GF2Matrix:
    """Boundary map C_i -> C_{i-1}; zero-sized where a chain group is empty."""
    domain = chain_basis(K, i)
    if i == 0:
        return GF2Matrix.zeros(0, domain.dimension)
    target = chain_basis(K, i - 1).positions()
    columns = [[target[f.vertices] for f in faces(s)] for s in domain.simplices]
    return GF2Matrix.from_columns(len(target), columns)


def boundary_matrix(K: FilteredComplex, i: int) -> GF2Matrix:
    """Matrix of the boundary operator on i-chains."""
    if i < 0 or i > K.max_dim:
        raise ArgumentError(f"Boundary degree {i} outside 0..{K.max_dim}")
    return _boundary(K, i)


def betti_numbers(K: FilteredComplex, max_dim: int) -> BettiVector:
    """beta_i = dim C_i - rank d_i - rank d_{i+1} for i = 0..max_dim."""
    if max_dim < 0:
        raise ArgumentError(f"max_dim must be non-negative, got {max_dim}")
    ranks = [0] + [rank_gf2(_boundary(K, i)) for i in range(1, max_dim + 2)]
    counts = [len(K.of_dimension(i)) for i in range(max_dim + 1)]
    betti = tuple(counts[i] - ranks[i] - ranks[i + 1] for i in range(max_dim + 1))
    logger.debug(f"Betti numbers up to degree {max_dim}: {betti} (ranks {ranks})")
    return BettiVector(betti)


def cycle_space_basis(K: FilteredComplex, i: int) -> list[Chain]:
    """Basis of Z_i, the null space of the boundary on i-chains."""
    if i < 0 or i > K.max_dim:
        raise ArgumentError(f"Cycle degree {i} outside 0..{K.max_dim}")
    basis = chain_basis(K, i)
    return [
        tuple(basis.simplices[j] for j in sorted(vector))
        for vector in null_space_basis(_boundary(K, i))
    ]


def chain_boundary(chain: Iterable[Simplex]) -> set[tuple[int, ...]]:
    """GF(2) boundary of a chain, as the set of face vertex tuples."""
    out: set[tuple[int, ...]] = set()
    for s in chain:
        for face in faces(s):
            out ^= {face.vertices}
    return out


def is_cycle(chain: Iterable[Simplex]) -> bool:
    return not chain_boundary(chain)
