"""S-paths and (fiberwise) equalizers.

``feq(U, S)`` is the finest MFCE relation identifying any two members of
``S`` with the same ghost.  Its nontrivial classes are the connected
components of ``US`` under elementary steps ``us -> ut``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import errors
from .core import SupertropicalMonoid, compression_partition, ideal_closure
from .partition import Partition, UnionFind

Label = tuple[int, int, int]


@dataclass(frozen=True)
class SPath:
    """A path given by its labels ``(s_k, u_k, t_k)``; nodes are derived."""

    labels: tuple[Label, ...]

    def __len__(self) -> int:
        return len(self.labels)

    def nodes(self, U: SupertropicalMonoid) -> list[int]:
        if not self.labels:
            return []
        s, u, _ = self.labels[0]
        out = [U.mul[u][s]]
        for _, u, t in self.labels:
            out.append(U.mul[u][t])
        return out

    def start(self, U) -> int:
        s, u, _ = self.labels[0]
        return U.mul[u][s]

    def end(self, U) -> int:
        _, u, t = self.labels[-1]
        return U.mul[u][t]

    def format(self, U: SupertropicalMonoid) -> str:
        return " ".join(f"({U.nm(s)} {U.nm(u)} {U.nm(t)})" for s, u, t in self.labels)


def _as_family(S) -> list[frozenset[int]]:
    if S and not isinstance(next(iter(S)), int):
        return [frozenset(x) for x in S]
    return [frozenset(S)]


def validate_path(U: SupertropicalMonoid, gamma: SPath, S) -> bool:
    """Check labels lie in ``S`` (a set, or a family of sets) and nodes chain up."""
    fam = _as_family(S)
    prev = None
    for k, (s, u, t) in enumerate(gamma.labels):
        if not any(s in X and t in X for X in fam):
            raise errors.LabelNotInS(f"label {k} uses elements outside S", (s, t))
        if U.gh[s] != U.gh[t]:
            raise errors.LabelNotInS(f"label {k} joins different fibers", (s, t))
        if prev is not None and U.mul[u][s] != prev:
            raise errors.NodeMismatch(f"label {k} does not start where label {k - 1} ends", (k,))
        prev = U.mul[u][t]
    return True


def invert(gamma: SPath) -> SPath:
    return SPath(tuple((t, u, s) for s, u, t in reversed(gamma.labels)))


def concat(U: SupertropicalMonoid, gamma: SPath, delta: SPath) -> SPath:
    if gamma.labels and delta.labels and gamma.end(U) != delta.start(U):
        raise errors.NodeMismatch("end node differs from start node", (gamma.end(U), delta.start(U)))
    return SPath(gamma.labels + delta.labels)


def scale(U: SupertropicalMonoid, v: int, gamma: SPath) -> SPath:
    return SPath(tuple((s, U.mul[v][u], t) for s, u, t in gamma.labels))


def _steps(U: SupertropicalMonoid, fam: Sequence[frozenset[int]]):
    """Yield every elementary step ``(s, u, t)`` with ``us != ut``."""
    for X in fam:
        by_fiber: dict[int, list[int]] = {}
        for s in sorted(X):
            by_fiber.setdefault(U.gh[s], []).append(s)
        for members in by_fiber.values():
            for i, s in enumerate(members):
                for t in members[i + 1:]:
                    for u in U.elements():
                        if U.mul[u][s] != U.mul[u][t]:
                            yield (s, u, t)


def _components(U, fam) -> Partition:
    uf = UnionFind(U.size)
    for s, u, t in _steps(U, fam):
        uf.union(U.mul[u][s], U.mul[u][t])
    return Partition(uf.labels())


def feq(U: SupertropicalMonoid, S: Iterable[int]) -> Partition:
    """Fiberwise equalizer of ``S``."""
    return _components(U, [frozenset(S)])


def eq(U: SupertropicalMonoid, S: Iterable[int]) -> Partition:
    """Equalizer of a subset of one fiber."""
    S = frozenset(S)
    if len({U.gh[s] for s in S}) > 1:
        raise errors.NotSingleFiber("S must lie in one fiber", tuple(sorted(S)))
    E = feq(U, S)
    if S:
        a = U.gh[next(iter(S))]
        if a in S:
            assert E == compression_partition(U, ideal_closure(U, S))
    return E


def feq_family(U: SupertropicalMonoid, family: Iterable[Iterable[int]]) -> Partition:
    """Fiberwise equalizer of a family of subsets.

    Computed as the join of the single-set equalizers and checked
    against the components of family paths.
    """
    fam = [frozenset(X) for X in family]
    E = Partition.diag(U.size)
    for X in fam:
        E = E.join(feq(U, X))
    assert E == _components(U, fam)
    return E


def witness_path(U: SupertropicalMonoid, S, z: int, w: int) -> SPath | None:
    """A shortest path from ``z`` to ``w`` or None if they are not connected."""
    fam = _as_family(S)
    adj: dict[int, list[tuple[int, Label]]] = {}
    any_label: dict[int, Label] = {}
    for X in fam:
        for s in X:
            for u in U.elements():
                any_label.setdefault(U.mul[u][s], (s, u, s))
    for s, u, t in _steps(U, fam):
        a, b = U.mul[u][s], U.mul[u][t]
        adj.setdefault(a, []).append((b, (s, u, t)))
        adj.setdefault(b, []).append((a, (t, u, s)))
    if z not in any_label or w not in any_label:
        return None
    if z == w:
        return SPath((any_label[z],))
    prev: dict[int, tuple[int, Label]] = {z: (-1, (0, 0, 0))}
    queue = deque([z])
    while queue:
        n = queue.popleft()
        if n == w:
            break
        for m, lab in adj.get(n, ()):
            if m not in prev:
                prev[m] = (n, lab)
                queue.append(m)
    if w not in prev:
        return None
    labels = []
    n = w
    while n != z:
        p, lab = prev[n]
        labels.append(lab)
        n = p
    return SPath(tuple(reversed(labels)))


def is_ghost_separating_feq(U: SupertropicalMonoid, S) -> bool:
    """For every u, c and member set: ``u S_c`` lies in T(U), in the nonzero ghosts, or is {0}."""
    fam = _as_family(S)

    def cat(p):
        if p == U.zero:
            return 0
        return 2 if U.is_ghost[p] else 1

    for X in fam:
        by_fiber: dict[int, list[int]] = {}
        for s in X:
            by_fiber.setdefault(U.gh[s], []).append(s)
        for members in by_fiber.values():
            for u in U.elements():
                if len({cat(U.mul[u][s]) for s in members}) > 1:
                    return False
    return True
