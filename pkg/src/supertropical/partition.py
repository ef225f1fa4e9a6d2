"""Equivalence relations on ``range(n)`` in canonical class-index form."""

from __future__ import annotations

from typing import Iterable, Sequence


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        # smaller root wins so labels stay canonical-friendly
        if y < x:
            x, y = y, x
        self.parent[y] = x
        return True

    def labels(self) -> list[int]:
        return [self.find(x) for x in range(len(self.parent))]


def _canonical(raw: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for r in raw:
        if r not in seen:
            seen[r] = len(seen)
        out.append(seen[r])
    return tuple(out)


class Partition:
    """A partition of ``{0, ..., n-1}``.

    ``labels[x]`` is the class index of ``x``; classes are numbered in
    order of their least member, so two partitions are equal iff their
    label tuples are equal.
    """

    __slots__ = ("labels", "_classes")

    def __init__(self, labels: Iterable[int]):
        self.labels = _canonical(list(labels))
        self._classes = None

    @classmethod
    def diag(cls, n: int) -> Partition:
        return cls(range(n))

    @classmethod
    def full(cls, n: int) -> Partition:
        return cls([0] * n)

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> Partition:
        uf = UnionFind(n)
        for c in classes:
            c = list(c)
            for x in c[1:]:
                uf.union(c[0], x)
        return cls(uf.labels())

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Partition:
        uf = UnionFind(n)
        for x, y in pairs:
            uf.union(x, y)
        return cls(uf.labels())

    @classmethod
    def from_key(cls, n: int, key) -> Partition:
        """Partition by the value of ``key(x)``."""
        return cls(key(x) for x in range(n))

    @property
    def size(self) -> int:
        return len(self.labels)

    def classes(self) -> tuple[tuple[int, ...], ...]:
        if self._classes is None:
            buckets: list[list[int]] = [[] for _ in range(max(self.labels, default=-1) + 1)]
            for x, c in enumerate(self.labels):
                buckets[c].append(x)
            self._classes = tuple(tuple(b) for b in buckets)
        return self._classes

    def class_of(self, x: int) -> tuple[int, ...]:
        return self.classes()[self.labels[x]]

    def related(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    def num_classes(self) -> int:
        return len(self.classes())

    def is_diag(self) -> bool:
        return self.num_classes() == self.size

    def pairs(self):
        """All related pairs ``(x, y)`` with ``x < y``."""
        for c in self.classes():
            for i, x in enumerate(c):
                for y in c[i + 1:]:
                    yield x, y

    def meet(self, other: Partition) -> Partition:
        return Partition(zip(self.labels, other.labels))

    def join(self, other: Partition) -> Partition:
        uf = UnionFind(self.size)
        for part in (self, other):
            for c in part.classes():
                for x in c[1:]:
                    uf.union(c[0], x)
        return Partition(uf.labels())

    def __le__(self, other: Partition) -> bool:
        """Refinement: every class of ``self`` lies inside a class of ``other``."""
        return all(
            other.labels[c[0]] == other.labels[x] for c in self.classes() for x in c[1:]
        )

    def __lt__(self, other: Partition) -> bool:
        return self != other and self <= other

    def __ge__(self, other: Partition) -> bool:
        return other <= self

    def __gt__(self, other: Partition) -> bool:
        return other < self

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        nontriv = [c for c in self.classes() if len(c) > 1]
        return f"Partition(n={self.size}, {nontriv})"


def is_finer(e: Partition, f: Partition) -> bool:
    return e <= f
