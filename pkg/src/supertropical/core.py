"""Finite supertropical monoids given by multiplication tables.

Elements are dense integer ids ``0 .. size-1``.  Every monoid carries
element names so tables can be printed, parsed and compared across
constructions.
"""

from __future__ import annotations

import enum
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence

from . import errors
from .partition import Partition

DEFAULT_SIZE_CAP = 64


class Kind(enum.Enum):
    ZERO = "zero"
    TANGIBLE = "tangible"
    GHOST = "ghost"


class Verdict(NamedTuple):
    """Boolean outcome plus an optional witness explaining a failure."""

    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def _default_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n))


def _check_table(mul, n: int, what: str):
    if len(mul) != n or any(len(row) != n for row in mul):
        raise errors.SupertropicalError(f"{what}: table must be {n}x{n}")
    for row in mul:
        for v in row:
            if not (0 <= v < n):
                raise errors.SupertropicalError(f"{what}: product {v} out of range")


def _check_monoid_axioms(mul, one: int, zero: int, full: bool = True):
    n = len(mul)
    for x in range(n):
        for y in range(x + 1, n):
            if mul[x][y] != mul[y][x]:
                raise errors.NonCommutative(f"x*y != y*x for {(x, y)}", (x, y))
    for x in range(n):
        if mul[one][x] != x:
            raise errors.BadUnit(f"1*{x} != {x}", (x,))
        if mul[zero][x] != zero:
            raise errors.BadZero(f"0*{x} != 0", (x,))
    if full:
        for x in range(n):
            rx = mul[x]
            for y in range(n):
                xy = rx[y]
                mxy = mul[xy]
                ry = mul[y]
                for z in range(n):
                    if mxy[z] != rx[ry[z]]:
                        raise errors.NonAssociative(f"(xy)z != x(yz) for {(x, y, z)}", (x, y, z))


class MonoidWithZero:
    """A commutative monoid with absorbing zero."""

    def __init__(self, mul, zero: int = 0, one: int = 1, names=None, name: str = "N", trusted=False):
        self.mul = tuple(tuple(r) for r in mul)
        self.size = len(self.mul)
        self.zero, self.one = zero, one
        self.names = tuple(names) if names is not None else _default_names(self.size)
        self.name = name
        _check_table(self.mul, self.size, name)
        _check_monoid_axioms(self.mul, one, zero, full=not trusted)

    def __repr__(self):
        return f"MonoidWithZero({self.name}, size={self.size})"


class OrderedGhostSemiring:
    """A bipotent semiring: a totally ordered commutative monoid with
    absorbing bottom element 0.  Addition is ``max`` in ``order``."""

    def __init__(self, mul, zero: int, one: int, order: Sequence[int], names=None, name="M", trusted=False):
        self.mul = tuple(tuple(r) for r in mul)
        self.size = len(self.mul)
        self.zero, self.one = zero, one
        self.order = tuple(order)
        self.names = tuple(names) if names is not None else _default_names(self.size)
        self.name = name
        _check_table(self.mul, self.size, name)
        _check_monoid_axioms(self.mul, one, zero, full=not trusted)
        if sorted(self.order) != list(range(self.size)):
            raise errors.GhostNotClosed("order must list every element exactly once")
        self.rank = [0] * self.size
        for i, a in enumerate(self.order):
            self.rank[a] = i
        _check_order(self.mul, self.order, self.rank, zero)

    def add(self, a: int, b: int) -> int:
        return a if self.rank[a] >= self.rank[b] else b

    def le(self, a: int, b: int) -> bool:
        return self.rank[a] <= self.rank[b]

    def as_monoid(self, name: str | None = None) -> SupertropicalMonoid:
        """View as a supertropical monoid with only ghost elements (e = 1)."""
        return SupertropicalMonoid(
            self.mul, self.zero, self.one, self.one, self.order, self.names, name or self.name, trusted=True
        )

    def __repr__(self):
        return f"OrderedGhostSemiring({self.name}, size={self.size})"


def _check_order(mul, order, rank, zero):
    if order[0] != zero:
        raise errors.OrderIncompatible("0 must be the bottom of the ghost order", (order[0],))
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            for c in order:
                if rank[mul[a][c]] > rank[mul[b][c]]:
                    raise errors.OrderIncompatible(
                        f"a <= b but ac > bc for (a, b, c) = {(a, b, c)}", (a, b, c)
                    )


class SupertropicalMonoid:
    """A finite supertropical monoid.

    ``mul`` is the multiplication table, ``zero``/``one``/``e`` the
    designated elements and ``ghost_order`` lists the ghost ideal
    ``eU`` in ascending order (0 first).
    """

    def __init__(
        self,
        mul,
        zero: int,
        one: int,
        e: int,
        ghost_order: Sequence[int],
        names=None,
        name: str = "U",
        trusted: bool = False,
        size_cap: int = DEFAULT_SIZE_CAP,
    ):
        self.mul = tuple(tuple(r) for r in mul)
        self.size = n = len(self.mul)
        if n > size_cap:
            raise errors.TooLarge(f"{name}: {n} elements exceeds cap {size_cap}")
        self.zero, self.one, self.e = zero, one, e
        self.ghost_order = tuple(ghost_order)
        self.names = tuple(names) if names is not None else _default_names(n)
        if len(self.names) != n or len(set(self.names)) != n:
            raise errors.SupertropicalError(f"{name}: element names must be {n} distinct strings")
        self.name = name
        _check_table(self.mul, n, name)
        _check_monoid_axioms(self.mul, one, zero, full=not trusted)
        if self.mul[e][e] != e:
            raise errors.ENotIdempotent("e*e != e", (e,))
        erow = self.mul[e]
        for x in range(n):
            if erow[x] == zero and x != zero:
                raise errors.GhostKillsTangible(f"e*{self.names[x]} = 0", (x,))
        self.gh = erow
        ghosts = {x for x in range(n) if erow[x] == x}
        if set(self.ghost_order) != ghosts or len(self.ghost_order) != len(ghosts):
            raise errors.GhostNotClosed("ghost order must list exactly the elements of eU", tuple(sorted(ghosts)))
        self.rank = [-1] * n
        for i, a in enumerate(self.ghost_order):
            self.rank[a] = i
        _check_order(self.mul, self.ghost_order, self.rank, zero)
        self.is_ghost = tuple(erow[x] == x for x in range(n))
        self.tangibles = tuple(x for x in range(n) if not self.is_ghost[x])
        self.ghosts = self.ghost_order
        self._index = {nm: i for i, nm in enumerate(self.names)}

    # -- element access -------------------------------------------------
    def id(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise errors.UnknownName(f"{self.name}: no element named {name!r}") from None

    def ids(self, names: Iterable[str]) -> list[int]:
        return [self.id(n) for n in names]

    def nm(self, x: int) -> str:
        return self.names[x]

    def nms(self, xs: Iterable[int]) -> list[str]:
        return [self.names[x] for x in xs]

    def elements(self) -> range:
        return range(self.size)

    def is_tangible(self, x: int) -> bool:
        return not self.is_ghost[x]

    def is_tangible0(self, x: int) -> bool:
        return x == self.zero or not self.is_ghost[x]

    def kind(self, x: int) -> Kind:
        if x == self.zero:
            return Kind.ZERO
        return Kind.GHOST if self.is_ghost[x] else Kind.TANGIBLE

    def add(self, x: int, y: int) -> int:
        ex, ey = self.gh[x], self.gh[y]
        if ex == ey:
            return ex
        return x if self.rank[ex] > self.rank[ey] else y

    def ghost_le(self, a: int, b: int) -> bool:
        return self.rank[a] <= self.rank[b]

    def table_by_names(self) -> dict[tuple[str, str], str]:
        nm = self.names
        return {(nm[x], nm[y]): nm[self.mul[x][y]] for x in range(self.size) for y in range(self.size)}

    def same_as(self, other: SupertropicalMonoid) -> bool:
        """Equal up to renumbering, matching elements by name."""
        return (
            set(self.names) == set(other.names)
            and self.table_by_names() == other.table_by_names()
            and self.nms(self.ghost_order) == other.nms(other.ghost_order)
            and (self.nm(self.zero), self.nm(self.one), self.nm(self.e))
            == (other.nm(other.zero), other.nm(other.one), other.nm(other.e))
        )

    def key(self) -> tuple:
        return (self.mul, self.zero, self.one, self.e, self.ghost_order)

    def __eq__(self, other) -> bool:
        return isinstance(other, SupertropicalMonoid) and self.key() == other.key() and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"SupertropicalMonoid({self.name}, size={self.size}, ghosts={self.nms(self.ghost_order)})"


def validate_monoid(spec: Mapping, size_cap: int = DEFAULT_SIZE_CAP) -> SupertropicalMonoid:
    """Build a monoid from a name-based description.

    ``spec`` has keys ``elements`` (names), ``rows`` (mapping name ->
    list of product names, or a list of rows in element order),
    ``zero``, ``one``, ``e``, ``order`` (ghost names ascending) and
    optionally ``name``.
    """
    names = list(spec["elements"])
    idx = {n: i for i, n in enumerate(names)}
    if len(idx) != len(names):
        raise errors.SupertropicalError("duplicate element names")

    def look(n):
        try:
            return idx[n]
        except KeyError:
            raise errors.UnknownName(f"unknown element {n!r}") from None

    rows = spec["rows"]
    if isinstance(rows, Mapping):
        missing = [n for n in names if n not in rows]
        if missing:
            raise errors.SupertropicalError(f"missing rows for {missing}")
        rows = [rows[n] for n in names]
    mul = [[look(v) for v in row] for row in rows]
    return SupertropicalMonoid(
        mul,
        look(spec["zero"]),
        look(spec["one"]),
        look(spec["e"]),
        [look(a) for a in spec["order"]],
        names,
        spec.get("name", "U"),
        size_cap=size_cap,
    )


# -- basic queries ------------------------------------------------------

def kind(U: SupertropicalMonoid, x: int) -> Kind:
    return U.kind(x)


def ghost(U: SupertropicalMonoid, x: int) -> int:
    return U.gh[x]


def fiber(U: SupertropicalMonoid, c: int) -> frozenset[int]:
    if not U.is_ghost[c]:
        raise errors.NotGhost(f"{U.nm(c)} is not in eU", (c,))
    return frozenset(x for x in U.elements() if U.gh[x] == c)


def ghost_monoid(U: SupertropicalMonoid) -> OrderedGhostSemiring:
    """The ghost ideal eU as a bipotent semiring, reindexed by rank."""
    order = U.ghost_order
    mul = [[U.rank[U.mul[a][b]] for b in order] for a in order]
    return OrderedGhostSemiring(
        mul, 0, U.rank[U.e], range(len(order)), U.nms(order), f"e{U.name}", trusted=True
    )


def is_unfolded(U: SupertropicalMonoid) -> bool:
    t0 = [x for x in U.elements() if U.is_tangible0(x)]
    return all(U.is_tangible0(U.mul[x][y]) for x in t0 for y in t0)


def semiring_witness(U: SupertropicalMonoid) -> tuple[int, int, int] | None:
    """First triple ``(z, x, y)`` with ``z(x+y) != zx + zy``, or None."""
    n, mul, add = U.size, U.mul, U.add
    for z in range(n):
        rz = mul[z]
        for x in range(n):
            for y in range(x, n):
                if rz[add(x, y)] != add(rz[x], rz[y]):
                    return (z, x, y)
    return None


def is_semiring(U: SupertropicalMonoid) -> Verdict:
    w = semiring_witness(U)
    return Verdict(w is None, w)


def str_construct(N: MonoidWithZero, M: OrderedGhostSemiring, rho: Sequence[int], name: str = "STR") -> SupertropicalMonoid:
    """The unfolded monoid glued from ``N`` and ``M`` along ``rho``.

    Ids ``0 .. |M|-1`` are the elements of ``M`` (same ids); the
    nonzero elements of ``N`` follow in their original order.
    """
    rho = list(rho)
    if len(rho) != N.size:
        raise errors.SupertropicalError("rho must have one image per element of N")
    if rho[N.one] != M.one:
        raise errors.RhoUnitMismatch("rho(1_N) != 1_M", (N.one,))
    for x in range(N.size):
        if (rho[x] == M.zero) != (x == N.zero):
            raise errors.RhoKernelTooBig("rho^-1(0) must be {0}", (x,))
    for x in range(N.size):
        for y in range(N.size):
            if rho[N.mul[x][y]] != M.mul[rho[x]][rho[y]]:
                raise errors.RhoNotMultiplicative(f"rho not multiplicative at {(x, y)}", (x, y))

    nz = [x for x in range(N.size) if x != N.zero]
    pos = {x: M.size + i for i, x in enumerate(nz)}
    pos[N.zero] = M.zero
    n = M.size + len(nz)

    taken = set(M.names)
    names = list(M.names)
    for x in nz:
        nm = N.names[x]
        while nm in taken:
            nm += "'"
        taken.add(nm)
        names.append(nm)

    def to_m(u):
        return u if u < M.size else rho[nz[u - M.size]]

    mul = [[0] * n for _ in range(n)]
    for u in range(n):
        for w in range(n):
            if u >= M.size and w >= M.size:
                mul[u][w] = pos[N.mul[nz[u - M.size]][nz[w - M.size]]]
            else:
                mul[u][w] = M.mul[to_m(u)][to_m(w)]
    return SupertropicalMonoid(mul, M.zero, pos[N.one], M.one, M.order, names, name)


def tangible_nc_products(U: SupertropicalMonoid) -> frozenset[int]:
    """Tangible ``x = yz`` admitting a ghost ``y' < ey`` with ``y'z = eyz != 0``."""
    out = set()
    mul, gh, rank = U.mul, U.gh, U.rank
    for y in U.elements():
        ey = gh[y]
        lower = [g for g in U.ghost_order if rank[g] < rank[ey]]
        for z in U.elements():
            x = mul[y][z]
            if x in out or not U.is_tangible(x):
                continue
            target = gh[x]
            if target == U.zero:
                continue
            if any(mul[g][z] == target for g in lower):
                out.add(x)
    return frozenset(out)


def is_ideal(U: SupertropicalMonoid, A: Iterable[int]) -> bool:
    A = set(A)
    return all(U.mul[a][u] in A for a in A for u in U.elements())


def ideal_closure(U: SupertropicalMonoid, gens: Iterable[int]) -> frozenset[int]:
    """The ideal ``eU ∪ U·gens``."""
    out = set(U.ghost_order)
    for g in gens:
        out.update(U.mul[g])
    return frozenset(out)


def compression_partition(U: SupertropicalMonoid, A: Iterable[int]) -> Partition:
    """Classes ``{a} ∪ (A ∩ U_a)`` for each ghost ``a``, singletons elsewhere."""
    A = set(A)
    return Partition(U.gh[x] if x in A else x for x in U.elements())


def quotient_monoid(U: SupertropicalMonoid, P: Partition, name: str | None = None) -> SupertropicalMonoid:
    """The table of ``U/P``; ``P`` must be multiplicative.

    Elements are the classes of ``P`` in canonical order.  Ghost
    classes are ordered by their least ghost member.  Raises ``NotTE``
    when products are not well defined.
    """
    classes = P.classes()
    lab = P.labels
    reps = [c[0] for c in classes]
    k = len(classes)
    mul = [[0] * k for _ in range(k)]
    for i, ri in enumerate(reps):
        for j in range(i, k):
            v = lab[U.mul[ri][reps[j]]]
            mul[i][j] = mul[j][i] = v
    for x in U.elements():
        row = U.mul[x]
        lx = lab[x]
        for y in range(x, U.size):
            if mul[lx][lab[y]] != lab[row[y]]:
                raise errors.NotTE(
                    f"relation not multiplicative at {(U.nm(x), U.nm(y))}", (x, y)
                )
    ghost_classes = []
    for g in U.ghost_order:
        if lab[g] not in ghost_classes:
            ghost_classes.append(lab[g])
    names = []
    for c in classes:
        gs = [x for x in c if U.is_ghost[x]]
        if len(gs) == 1:
            names.append(U.nm(gs[0]))
        elif gs:
            names.append("|".join(U.nms(sorted(gs, key=U.rank.__getitem__))))
        else:
            names.append("|".join(U.nms(c)))
    qname = name or f"{U.name}/E"
    try:
        return SupertropicalMonoid(
            mul, lab[U.zero], lab[U.one], lab[U.e], ghost_classes, names, qname, trusted=True
        )
    except (errors.GhostNotClosed, errors.OrderIncompatible, errors.GhostKillsTangible) as exc:
        raise errors.NotTE(f"quotient is not supertropical: {exc}", exc.witness) from exc


def ideal_compression(U: SupertropicalMonoid, A: Iterable[int]) -> tuple[Partition, SupertropicalMonoid]:
    A = frozenset(A)
    if not set(U.ghost_order) <= A:
        raise errors.NotAnIdeal("the ideal must contain eU", tuple(sorted(set(U.ghost_order) - A)))
    for a in A:
        for u in U.elements():
            if U.mul[a][u] not in A:
                raise errors.NotAnIdeal(f"{U.nm(a)}*{U.nm(u)} escapes the ideal", (a, u))
    P = compression_partition(U, A)
    return P, quotient_monoid(U, P, f"{U.name}/E(A)")


def hat(U: SupertropicalMonoid):
    """The semiring reflection ``sigma_U: U -> U^``."""
    from .transmissions import quotient_map

    A = ideal_closure(U, tangible_nc_products(U))
    P, V = ideal_compression(U, A)
    V.name = f"{U.name}^"
    return quotient_map(U, P, V), V


def divides(U: SupertropicalMonoid, x: int, z: int) -> bool:
    return z in U.mul[x]


def quotient_set(U: SupertropicalMonoid, z: int, x: int) -> frozenset[int]:
    """``[z:x] = {u : ux = z}``."""
    return frozenset(u for u in U.elements() if U.mul[u][x] == z)


def colon(U: SupertropicalMonoid, L: Iterable[int], x: int) -> frozenset[int]:
    """``[L:x] = {z : zx in L}``."""
    L = set(L)
    return frozenset(z for z in U.elements() if U.mul[z][x] in L)


def submonoid(U: SupertropicalMonoid, elements: Iterable[int], name: str | None = None):
    """Restrict ``U`` to a multiplicatively closed subset containing 0, 1, e.

    Returns the submonoid and the list mapping its ids to ``U`` ids.
    """
    keep = sorted(set(elements) | {U.zero, U.one, U.e})
    pos = {x: i for i, x in enumerate(keep)}
    for x in keep:
        for y in keep:
            if U.mul[x][y] not in pos:
                raise errors.NotASubmonoid(f"{U.nm(x)}*{U.nm(y)} leaves the subset", (x, y))
    mul = [[pos[U.mul[x][y]] for y in keep] for x in keep]
    order = [pos[g] for g in U.ghost_order if g in pos]
    V = SupertropicalMonoid(
        mul, pos[U.zero], pos[U.one], pos[U.e], order, U.nms(keep), name or f"{U.name}|sub", trusted=True
    )
    return V, keep


def pairs_same_fiber(U: SupertropicalMonoid):
    for x, y in combinations(U.elements(), 2):
        if U.gh[x] == U.gh[y]:
            yield x, y
