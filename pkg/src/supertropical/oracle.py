"""Brute-force ground truth for small instances.

Nothing here reuses the path or refinement machinery it is meant to
check: closures are naive fixpoints and "finest"/"coarsest" claims are
decided by enumerating every MFCE relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import errors
from .core import SupertropicalMonoid
from .partition import Partition, UnionFind
from .relations import validate_mfce

DEFAULT_CAP = 7


def closure_mfce(U: SupertropicalMonoid, seeds: Iterable[tuple[int, int]]) -> Partition:
    """Finest MFCE containing the seed pairs, by naive fixpoint iteration."""
    seeds = list(seeds)
    for x, y in seeds:
        if U.gh[x] != U.gh[y]:
            raise errors.FiberIncompatibleSeed(f"{U.nm(x)} and {U.nm(y)} lie in different fibers", (x, y))
    uf = UnionFind(U.size)
    for x, y in seeds:
        uf.union(x, y)
    changed = True
    while changed:
        changed = False
        lab = uf.labels()
        for x in U.elements():
            for y in range(x + 1, U.size):
                if lab[x] != lab[y]:
                    continue
                for z in U.elements():
                    if uf.union(U.mul[x][z], U.mul[y][z]):
                        changed = True
    return Partition(uf.labels())


def partitions(n: int) -> Iterator[Partition]:
    """Every partition of ``range(n)`` via restricted-growth strings."""
    if n == 0:
        yield Partition([])
        return
    a = [0] * n

    def rec(i, m):
        if i == n:
            yield Partition(a)
            return
        for v in range(m + 2):
            a[i] = v
            yield from rec(i + 1, max(m, v))

    yield from rec(1, 0)


def enumerate_mfce(U: SupertropicalMonoid, cap: int = DEFAULT_CAP) -> list[Partition]:
    """All MFCE relations on ``U``.

    Restricted-growth strings where an element may only join a block
    opened by an element of the same fiber (other strings cannot be
    fiber conserving); each candidate is then filtered by the MFCE test.
    """
    if U.size > cap:
        raise errors.TooLarge(f"{U.name} has {U.size} elements; oracle cap is {cap}")
    n = U.size
    a = [0] * n
    block_fiber: list[int] = []
    out = []

    def rec(i):
        if i == n:
            P = Partition(a)
            if validate_mfce(U, P):
                out.append(P)
            return
        g = U.gh[i]
        for b, f in enumerate(block_fiber):
            if f == g:
                a[i] = b
                rec(i + 1)
        a[i] = len(block_fiber)
        block_fiber.append(g)
        rec(i + 1)
        block_fiber.pop()

    rec(0)
    return out


@dataclass(frozen=True)
class AmbiguityReport:
    """Several minimal qualifying relations and no least one."""

    minimal: tuple[Partition, ...]


def _extreme(cands: list[Partition], finest: bool):
    if not cands:
        return None
    if finest:
        best = [E for E in cands if not any(F < E for F in cands)]
        for E in best:
            if all(E <= F for F in cands):
                return E
    else:
        best = [E for E in cands if not any(E < F for F in cands)]
        for E in best:
            if all(F <= E for F in cands):
                return E
    return AmbiguityReport(tuple(best))


def finest_with(U: SupertropicalMonoid, predicate: Callable[[Partition], bool], cap: int = DEFAULT_CAP):
    """Least MFCE satisfying ``predicate``; None if none, AmbiguityReport if no least one."""
    return _extreme([E for E in enumerate_mfce(U, cap) if predicate(E)], True)


def coarsest_with(U: SupertropicalMonoid, predicate: Callable[[Partition], bool], cap: int = DEFAULT_CAP):
    return _extreme([E for E in enumerate_mfce(U, cap) if predicate(E)], False)


def is_ghost_separating_oracle(U: SupertropicalMonoid, F: Partition) -> bool:
    """``pi_F`` sends every tangible to a tangible class: no ``x ~ ex``."""
    return all(not F.related(x, U.gh[x]) for x in U.tangibles)


def coarsest_ghost_separating_inside(U: SupertropicalMonoid, E: Partition, cap: int = DEFAULT_CAP):
    """Coarsest ghost separating MFCE contained in ``E``."""
    return coarsest_with(U, lambda F: F <= E and is_ghost_separating_oracle(U, F), cap)


def mixing_relations(U: SupertropicalMonoid, cap: int = DEFAULT_CAP) -> list[Partition]:
    """MFCE relations whose quotient map is mixing, by the existential definition."""
    out = []
    for F in enumerate_mfce(U, cap):
        ok = True
        for x, y in F.pairs():
            if not any(
                U.mul[x][z] != U.zero and U.is_ghost[U.mul[x][z]] != U.is_ghost[U.mul[y][z]]
                for z in U.elements()
            ):
                ok = False
                break
        if ok:
            out.append(F)
    return out
