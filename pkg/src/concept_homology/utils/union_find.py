"""Disjoint-set forest with union by height and path compression."""

from collections.abc import Iterable


class UnionFind:
    def __init__(self, nodes: Iterable[int]):
        self.parents: dict[int, int] = {v: v for v in nodes}
        self.heights: dict[int, int] = {v: 1 for v in self.parents}

    def __contains__(self, v: int) -> bool:
        return v in self.parents

    def root(self, v: int) -> int:
        r = v
        while self.parents[r] != r:
            r = self.parents[r]
        # compress
        while self.parents[v] != r:
            self.parents[v], v = r, self.parents[v]
        return r

    def join(self, v1: int, v2: int) -> bool:
        """Merge the sets of v1 and v2; False when already merged."""
        r1 = self.root(v1)
        r2 = self.root(v2)
        if r1 == r2:
            return False
        h1 = self.heights[r1]
        h2 = self.heights[r2]
        if h1 <= h2:
            self.parents[r1] = r2
            self.heights[r2] = max(h2, h1 + 1)
        else:
            self.parents[r2] = r1
        return True

    def groups(self) -> list[frozenset[int]]:
        """All sets, ordered by their smallest member."""
        buckets: dict[int, set[int]] = {}
        for v in self.parents:
            buckets.setdefault(self.root(v), set()).add(v)
        return sorted((frozenset(b) for b in buckets.values()), key=min)
