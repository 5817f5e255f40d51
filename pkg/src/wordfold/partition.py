"""Partitions of {0, ..., n-1} with union-find semantics.

The canonical key of a partition is its restricted-growth string: scan the
universe in order and number the blocks by first appearance. Two partition
objects represent the same partition exactly when their keys are equal,
independent of the internal parent forest.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def find(parent: list[int], x: int) -> int:
    """Root of ``x`` with path halving; mutates ``parent`` in place."""
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def union(parent: list[int], a: int, b: int) -> bool:
    """Merge the blocks of ``a`` and ``b``; True when they were distinct."""
    ra, rb = find(parent, a), find(parent, b)
    if ra == rb:
        return False
    if ra > rb:
        ra, rb = rb, ra
    parent[rb] = ra
    return True


def rgs_key(parent: list[int]) -> tuple[int, ...]:
    """Restricted-growth string of the partition encoded by ``parent``."""
    labels: dict[int, int] = {}
    out = []
    for x in range(len(parent)):
        root = find(parent, x)
        if root not in labels:
            labels[root] = len(labels)
        out.append(labels[root])
    return tuple(out)


def parent_from_key(key: Sequence[int]) -> list[int]:
    """Parent list whose blocks match an RGS key (roots are first members)."""
    first: dict[int, int] = {}
    parent = list(range(len(key)))
    for x, block in enumerate(key):
        if block in first:
            parent[x] = first[block]
        else:
            first[block] = x
    return parent


class VertexPartition:
    """A partition of {0..universe_size-1} behind a small union-find."""

    __slots__ = ("parent",)

    def __init__(self, universe_size: int):
        self.parent = list(range(universe_size))

    @classmethod
    def from_pairs(cls, universe_size: int, pairs: Iterable[tuple[int, int]]) -> "VertexPartition":
        p = cls(universe_size)
        for a, b in pairs:
            p.union(a, b)
        return p

    @classmethod
    def from_key(cls, key: Sequence[int]) -> "VertexPartition":
        p = cls(len(key))
        p.parent = parent_from_key(key)
        return p

    @property
    def universe_size(self) -> int:
        return len(self.parent)

    def find(self, x: int) -> int:
        return find(self.parent, x)

    def union(self, a: int, b: int) -> bool:
        return union(self.parent, a, b)

    def same(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)

    def key(self) -> tuple[int, ...]:
        return rgs_key(self.parent)

    def blocks(self) -> list[list[int]]:
        by_root: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            by_root.setdefault(self.find(x), []).append(x)
        return sorted(by_root.values(), key=lambda b: b[0])

    def block_count(self) -> int:
        return len({self.find(x) for x in range(len(self.parent))})

    def copy(self) -> "VertexPartition":
        clone = VertexPartition(0)
        clone.parent = list(self.parent)
        return clone

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexPartition):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"VertexPartition({self.blocks()})"
