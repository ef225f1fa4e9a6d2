"""Seeded random supertropical monoids.

Instances are valid by construction: pick a bipotent chain ``M``, a
monoid ``N`` with zero and a multiplicative ``rho: N -> M``, glue them
with ``str_construct`` and optionally divide out a random MFCE relation
to obtain a folded monoid.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from .core import MonoidWithZero, OrderedGhostSemiring, SupertropicalMonoid, str_construct
from .relations import generated_mfce
from .core import compression_partition, ideal_closure, quotient_monoid


def _assoc(t, n):
    return all(t[t[x][y]][z] == t[x][t[y][z]] for x in range(n) for y in range(n) for z in range(n))


def _fill(n, free, vals):
    """Commutative table on ids 0..n-1 with 0 absorbing, 1 neutral."""
    t = [[0] * n for _ in range(n)]
    for x in range(n):
        t[1][x] = t[x][1] = x
    t[0] = [0] * n
    for x in range(n):
        t[x][0] = 0
    for (x, y), v in zip(free, vals):
        t[x][y] = t[y][x] = v
    return t


@lru_cache(maxsize=None)
def monoids_with_zero(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All commutative monoids on ids 0..n-1 with 0 absorbing and 1 the unit.

    Isomorphic copies are not removed.
    """
    if n == 1:
        return (((0,),),)
    free = [(x, y) for x in range(2, n) for y in range(x, n)]
    out = []
    for vals in product(range(n), repeat=len(free)):
        t = _fill(n, free, vals)
        if _assoc(t, n):
            out.append(tuple(tuple(r) for r in t))
    return tuple(out)


@lru_cache(maxsize=None)
def bipotent_chains(k: int) -> tuple[tuple[tuple[tuple[int, ...], ...], int], ...]:
    """Totally ordered monoids on ranks 0..k-1 (0 absorbing bottom).

    Returns ``(table, one)`` pairs with ids equal to ranks.
    """
    out = []
    for one in range(1, k):
        others = [x for x in range(1, k) if x != one]
        free = [(x, y) for i, x in enumerate(others) for y in others[i:]]
        for vals in product(range(k), repeat=len(free)):
            t = [[0] * k for _ in range(k)]
            for x in range(k):
                t[one][x] = t[x][one] = x
            for (x, y), v in zip(free, vals):
                t[x][y] = t[y][x] = v
            for x in range(k):
                t[0][x] = t[x][0] = 0
            if not _assoc(t, k):
                continue
            mono = all(t[a][c] <= t[b][c] for a in range(k) for b in range(a, k) for c in range(k))
            if mono:
                out.append((tuple(tuple(r) for r in t), one))
    return tuple(out)


def _rhos(N, Mt, one_m, k):
    n = len(N)
    rest = list(range(2, n))
    out = []
    for vals in product(range(1, k), repeat=len(rest)):
        rho = [0, one_m] + list(vals)
        if all(rho[N[x][y]] == Mt[rho[x]][rho[y]] for x in range(n) for y in range(n)):
            out.append(rho)
    return out


def _names_M(k, one):
    names, c = [], 0
    for r in range(k):
        if r == 0:
            names.append("0")
        elif r == one:
            names.append("e")
        else:
            c += 1
            names.append(f"c{c}")
    return names


def random_str(rng: random.Random, size: int, name: str = "R") -> SupertropicalMonoid:
    """A random unfolded monoid with at most ``size`` elements (size >= 3)."""
    while True:
        k = rng.randint(2, min(4, size - 1))
        n = min(5, size - k + 1)
        if n > 2 and rng.random() < 0.3:
            n -= 1
        Ms = bipotent_chains(k)
        Ns = monoids_with_zero(n)
        if not Ms or not Ns:
            continue
        Mt, one = Ms[rng.randrange(len(Ms))]
        Nt = Ns[rng.randrange(len(Ns))]
        rhos = _rhos(Nt, Mt, one, k)
        if not rhos:
            continue
        rho = rhos[rng.randrange(len(rhos))]
        M = OrderedGhostSemiring(Mt, 0, one, range(k), _names_M(k, one), "M", trusted=True)
        nn = ["0", "1"] + [f"t{i}" for i in range(2, n)]
        N = MonoidWithZero(Nt, 0, 1, nn, "N", trusted=True)
        return str_construct(N, M, rho, name)


def random_monoid(rng: random.Random, size: int, name: str = "R", fold_prob: float = 0.6) -> SupertropicalMonoid:
    """A random valid monoid with at most ``size`` elements.

    Starts from a glued monoid of up to ``size + 2`` elements and divides
    out random MFCE relations until the size fits (and, with probability
    ``fold_prob``, once more).
    """
    U = random_str(rng, size + 2, name)
    extra = rng.random() < fold_prob
    while U.size > size or extra:
        extra = False
        pairs = [(x, y) for x in U.elements() for y in range(x + 1, U.size) if U.gh[x] == U.gh[y]]
        if not pairs:
            if U.size > size:
                U = random_str(rng, size + 2, name)
                continue
            break
        prods = sorted(
            {U.mul[y][z] for y in U.tangibles for z in U.tangibles if y != U.one and z != U.one}
            & set(U.tangibles)
        )
        if prods and rng.random() < 0.5:
            # compressing a product of tangibles to its ghost folds U
            E = compression_partition(U, ideal_closure(U, [rng.choice(prods)]))
        else:
            E = generated_mfce(U, [rng.choice(pairs)])
        U = quotient_monoid(U, E, name)
    U.name = name
    return U


def random_monoids(seed: int, count: int, size: int, prefix: str = "r") -> list[SupertropicalMonoid]:
    rng = random.Random(seed)
    return [random_monoid(rng, size, f"{prefix}{seed}.{i}") for i in range(count)]
