"""Transmissions between supertropical monoids and their factorizations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from . import errors
from .core import (
    MonoidWithZero,
    SupertropicalMonoid,
    Verdict,
    ghost_monoid,
    is_unfolded,
    quotient_monoid,
    str_construct,
    submonoid,
)
from .partition import Partition


class Transmission:
    """A table-backed map ``source -> target``.

    ``table[x]`` is the image of source element ``x``.  Construction
    validates the transmission axioms unless ``check=False``.
    """

    __slots__ = ("source", "target", "table")

    def __init__(self, source: SupertropicalMonoid, target: SupertropicalMonoid, table: Sequence[int], check: bool = True):
        self.source = source
        self.target = target
        self.table = tuple(table)
        if len(self.table) != source.size:
            raise errors.SupertropicalError("map must have one image per source element")
        if check:
            validate_transmission(self)

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Transmission)
            and self.table == other.table
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        pairs = ", ".join(f"{self.source.nm(x)}->{self.target.nm(y)}" for x, y in enumerate(self.table))
        return f"Transmission({self.source.name} -> {self.target.name}: {pairs})"

    def image(self) -> frozenset[int]:
        return frozenset(self.table)

    def is_surjective(self) -> bool:
        return len(self.image()) == self.target.size

    def zero_kernel(self) -> frozenset[int]:
        return frozenset(x for x, y in enumerate(self.table) if y == self.target.zero)

    def relation(self) -> Partition:
        """``E(alpha)``: ``x ~ y`` iff ``alpha(x) = alpha(y)``."""
        return Partition(self.table)

    def ghost_part(self) -> dict[int, int]:
        return {a: self.table[a] for a in self.source.ghost_order}


def transmission_witness(alpha: Transmission):
    """Return ``(error class, message, witness)`` for the first violated axiom, or None."""
    U, V, t = alpha.source, alpha.target, alpha.table
    for y in t:
        if not (0 <= y < V.size):
            return errors.SupertropicalError, "image out of range", (y,)
    for nm, a, b in (("0", U.zero, V.zero), ("1", U.one, V.one), ("e", U.e, V.e)):
        if t[a] != b:
            return errors.UnitMismatch, f"{nm} maps to {V.nm(t[a])}", (a,)
    for x in U.elements():
        rx = U.mul[x]
        tx = V.mul[t[x]]
        for y in range(x, U.size):
            if t[rx[y]] != tx[t[y]]:
                return errors.NotMultiplicative, f"alpha({U.nm(x)}*{U.nm(y)}) != alpha(x)alpha(y)", (x, y)
    g = U.ghost_order
    for i in range(len(g) - 1):
        if V.rank[t[g[i]]] > V.rank[t[g[i + 1]]]:
            return errors.GhostPartNotMonotone, "ghost part reverses order", (g[i], g[i + 1])
    return None


def validate_transmission(alpha: Transmission) -> Verdict:
    w = transmission_witness(alpha)
    if w is not None:
        cls, msg, wit = w
        raise cls(msg, wit)
    return Verdict(True)


def is_transmission(U: SupertropicalMonoid, V: SupertropicalMonoid, table: Sequence[int]) -> Verdict:
    w = transmission_witness(Transmission(U, V, table, check=False))
    return Verdict(w is None, None if w is None else w[2])


def identity(U: SupertropicalMonoid) -> Transmission:
    return Transmission(U, U, range(U.size), check=False)


def quotient_map(U: SupertropicalMonoid, E: Partition, V: SupertropicalMonoid) -> Transmission:
    """The canonical surjection onto a quotient built by ``quotient_monoid``."""
    return Transmission(U, V, E.labels)


def compose(alpha: Transmission, beta: Transmission) -> Transmission:
    """``beta ∘ alpha`` (apply ``alpha`` first)."""
    if alpha.target is not beta.source and alpha.target != beta.source:
        raise errors.SupertropicalError("maps are not composable")
    return Transmission(alpha.source, beta.target, [beta.table[y] for y in alpha.table], check=False)


def ghost_part(alpha: Transmission) -> dict[int, int]:
    return alpha.ghost_part()


def is_tangible(alpha: Transmission) -> Verdict:
    U, V = alpha.source, alpha.target
    for x in U.tangibles:
        if not V.is_tangible0(alpha.table[x]):
            return Verdict(False, (x,))
    return Verdict(True)


def is_mixing(alpha: Transmission) -> Verdict:
    U, t = alpha.source, alpha.table
    zk = alpha.zero_kernel()
    if len(zk) > 1:
        return Verdict(False, ("zero kernel", min(zk - {U.zero})))
    for c in alpha.relation().classes():
        for i, x in enumerate(c):
            for y in c[i + 1:]:
                if not any(
                    t[U.mul[x][z]] != alpha.target.zero
                    and U.is_ghost[U.mul[x][z]] != U.is_ghost[U.mul[y][z]]
                    for z in U.elements()
                ):
                    return Verdict(False, (x, y))
    return Verdict(True)


def is_fiber_contraction(alpha: Transmission) -> bool:
    U, V = alpha.source, alpha.target
    if not alpha.is_surjective() or len(U.ghost_order) != len(V.ghost_order):
        return False
    return all(V.rank[alpha.table[a]] == U.rank[a] for a in U.ghost_order)


def divide_zero_kernel(alpha: Transmission):
    """Split ``alpha = alpha' ∘ pi`` where ``pi`` collapses ``alpha^-1(0)`` to 0."""
    from .relations import te_quotient

    zk = alpha.zero_kernel()
    E = Partition.from_key(alpha.source.size, lambda x: -1 if x in zk else x)
    pi, Q = te_quotient(alpha.source, E, f"{alpha.source.name}/ker")
    reps = [c[0] for c in E.classes()]
    return pi, Transmission(Q, alpha.target, [alpha.table[r] for r in reps])


@dataclass(frozen=True)
class TmFactorization:
    tangible_part: Transmission
    middle: SupertropicalMonoid
    mixing_part: Transmission

    def composite(self) -> Transmission:
        return compose(self.tangible_part, self.mixing_part)


def tm_factorization(alpha: Transmission) -> TmFactorization:
    """Factor a surjective transmission with trivial zero kernel as
    ``alpha_m ∘ alpha_t`` with ``alpha_t`` tangible and ``alpha_m`` mixing."""
    from .relations import ghost_separating_refinement

    if not alpha.is_surjective():
        raise errors.NotSurjective("transmission is not surjective")
    zk = alpha.zero_kernel()
    if len(zk) > 1:
        raise errors.NonTrivialZeroKernel("divide out the zero kernel first", tuple(sorted(zk)))
    U = alpha.source
    Et = ghost_separating_refinement(U, alpha.relation())
    V = quotient_monoid(U, Et, f"{U.name}/E~")
    at = Transmission(U, V, Et.labels)
    am = Transmission(V, alpha.target, [alpha.table[c[0]] for c in Et.classes()])
    assert compose(at, am).table == alpha.table
    assert is_tangible(at), "tangible part is not tangible"
    assert is_mixing(am), "mixing part is not mixing"
    return TmFactorization(at, V, am)


def tm_factorization_general(alpha: Transmission) -> TmFactorization:
    """Factor through the image of ``alpha`` and include it back."""
    if len(alpha.zero_kernel()) > 1:
        raise errors.NonTrivialZeroKernel("divide out the zero kernel first", tuple(sorted(alpha.zero_kernel())))
    if alpha.is_surjective():
        return tm_factorization(alpha)
    W, keep = submonoid(alpha.target, alpha.image(), f"im({alpha.target.name})")
    pos = {x: i for i, x in enumerate(keep)}
    onto = Transmission(alpha.source, W, [pos[y] for y in alpha.table])
    incl = Transmission(W, alpha.target, keep)
    f = tm_factorization(onto)
    am = compose(f.mixing_part, incl)
    assert is_mixing(am)
    return TmFactorization(f.tangible_part, f.middle, am)


def compose_tm(fa: TmFactorization, fb: TmFactorization, verify: bool = True) -> TmFactorization:
    """Factorization of ``beta ∘ alpha`` from the factorizations of both maps."""
    rho = compose(fa.mixing_part, fb.tangible_part)
    fr = tm_factorization_general(rho)
    out = TmFactorization(
        compose(fa.tangible_part, fr.tangible_part),
        fr.middle,
        compose(fr.mixing_part, fb.mixing_part),
    )
    if verify:
        direct = tm_factorization_general(compose(fa.composite(), fb.composite()))
        iso = canonical_isomorphism(out, direct)
        if iso is None:
            raise AssertionError("composite factorization differs from the direct one")
    return out


def canonical_isomorphism(f: TmFactorization, g: TmFactorization) -> list[int] | None:
    """The isomorphism of middles compatible with both factorizations, if any."""
    if f.tangible_part.relation() != g.tangible_part.relation():
        return None
    V, W = f.middle, g.middle
    iso = [0] * V.size
    for x, v in enumerate(f.tangible_part.table):
        iso[v] = g.tangible_part.table[x]
    if sorted(iso) != list(range(W.size)):
        return None
    if not is_transmission(V, W, iso):
        return None
    if any(g.mixing_part.table[iso[v]] != f.mixing_part.table[v] for v in range(V.size)):
        return None
    return iso


# -- transmission search ---------------------------------------------------

def search_transmissions(
    U: SupertropicalMonoid,
    V: SupertropicalMonoid,
    fixed: Mapping[int, int] | None = None,
    injective: bool = False,
    allow_zero: bool = True,
) -> Iterator[tuple[int, ...]]:
    """Enumerate every transmission table ``U -> V`` extending ``fixed``.

    Backtracking over source elements; products of assigned elements
    are propagated so most of the table is forced.
    """
    n = U.size
    base = [-1] * n
    pins = {U.zero: V.zero, U.one: V.one, U.e: V.e}
    if fixed:
        for x, y in fixed.items():
            if pins.get(x, y) != y:
                return
            pins[x] = y
    ghosts_v = V.ghost_order
    nonzero_v = [y for y in range(V.size) if allow_zero or y != V.zero]

    def assign(tab, x, y):
        stack = [(x, y)]
        assigned = []
        while stack:
            a, b = stack.pop()
            cur = tab[a]
            if cur != -1:
                if cur != b:
                    for q in assigned:
                        tab[q] = -1
                    return None
                continue
            if U.is_ghost[a] and not V.is_ghost[b]:
                for q in assigned:
                    tab[q] = -1
                return None
            tab[a] = b
            assigned.append(a)
            ra = U.mul[a]
            vb = V.mul[b]
            for c in range(n):
                if tab[c] != -1:
                    stack.append((ra[c], vb[tab[c]]))
        return assigned

    def ok_final(tab):
        if injective and len(set(tab)) != n:
            return False
        g = U.ghost_order
        return all(V.rank[tab[g[i]]] <= V.rank[tab[g[i + 1]]] for i in range(len(g) - 1))

    tab = list(base)
    for x, y in pins.items():
        if assign(tab, x, y) is None:
            return
    order = [x for x in range(n)]

    def rec(i):
        while i < n and tab[order[i]] != -1:
            i += 1
        if i == n:
            if ok_final(tab):
                yield tuple(tab)
            return
        x = order[i]
        cands = ghosts_v if U.is_ghost[x] else nonzero_v
        for y in cands:
            if not allow_zero and y == V.zero and x != U.zero:
                continue
            done = assign(tab, x, y)
            if done is None:
                continue
            yield from rec(i + 1)
            for q in done:
                tab[q] = -1

    yield from rec(0)


def find_isomorphism(U: SupertropicalMonoid, V: SupertropicalMonoid) -> tuple[int, ...] | None:
    if U.size != V.size or len(U.ghost_order) != len(V.ghost_order):
        return None
    fixed = {a: V.ghost_order[U.rank[a]] for a in U.ghost_order}
    for tab in search_transmissions(U, V, fixed, injective=True, allow_zero=False):
        return tab
    return None


def isomorphic(U: SupertropicalMonoid, V: SupertropicalMonoid) -> bool:
    return find_isomorphism(U, V) is not None


# -- unfolding -------------------------------------------------------------

@dataclass(frozen=True)
class Unfolding:
    """``U~(N)`` with its projection ``tau`` and the lifting data.

    ``lift[x]`` is the tangible lift of ``x in N``; ``ghost_to[a]`` is
    the copy of the ghost ``a`` in the unfolding.
    """

    monoid: SupertropicalMonoid
    tau: Transmission
    N: tuple[int, ...]
    lift: Mapping[int, int]
    ghost_to: Mapping[int, int]

    def __iter__(self):
        return iter((self.monoid, self.tau))


def generated_submonoid(U: SupertropicalMonoid, gens) -> list[int]:
    out = {U.one} | set(gens)
    frontier = list(out)
    while frontier:
        x = frontier.pop()
        for y in list(out):
            p = U.mul[x][y]
            if p not in out:
                out.add(p)
                frontier.append(p)
    return sorted(out)


def unfold(U: SupertropicalMonoid, N=None) -> Unfolding:
    """The unfolding of ``U`` along a submonoid ``N ⊇ T(U) ∪ {0}``."""
    if N is None:
        N = generated_submonoid(U, [U.zero] + list(U.tangibles))
    N = sorted(set(N) | {U.zero})
    Nset = set(N)
    if U.one not in Nset:
        raise errors.NotASubmonoid("N must contain 1", (U.one,))
    missing = [x for x in U.tangibles if x not in Nset]
    if missing:
        raise errors.MissingTangibles("N must contain every tangible", tuple(missing))
    for x in N:
        for y in N:
            if U.mul[x][y] not in Nset:
                raise errors.NotASubmonoid(f"{U.nm(x)}*{U.nm(y)} leaves N", (x, y))
    pos = {x: i for i, x in enumerate(N)}
    names = [("~" + U.nm(x)) if U.is_ghost[x] and x != U.zero else U.nm(x) for x in N]
    Nm = MonoidWithZero(
        [[pos[U.mul[x][y]] for y in N] for x in N], pos[U.zero], pos[U.one], names, f"{U.name}.N", trusted=True
    )
    M = ghost_monoid(U)
    rho = [U.rank[U.gh[x]] for x in N]
    W = str_construct(Nm, M, rho, f"{U.name}~")
    # ids in W: ghost of rank r is r; element N[i] != 0 follows in N order
    nz = [x for x in N if x != U.zero]
    lift = {U.zero: W.zero}
    for i, x in enumerate(nz):
        lift[x] = M.size + i
    ghost_to = {a: U.rank[a] for a in U.ghost_order}
    tau_tab = [0] * W.size
    for a in U.ghost_order:
        tau_tab[ghost_to[a]] = a
    for x in nz:
        tau_tab[lift[x]] = x
    tau = Transmission(W, U, tau_tab)
    return Unfolding(W, tau, tuple(N), lift, ghost_to)


def tangible_unfolding(alpha: Transmission, Np, N) -> tuple[Transmission, Unfolding, Unfolding]:
    """The tangible map ``U'~(N') -> U~(N)`` lying over ``alpha``."""
    Up, U = alpha.source, alpha.target
    uf_src = unfold(Up, Np)
    uf_tgt = unfold(U, N)
    Nset = set(uf_tgt.N)
    for x in uf_src.N:
        if alpha.table[x] not in Nset:
            raise errors.ImageEscapesN(f"alpha({Up.nm(x)}) = {U.nm(alpha.table[x])} is not in N", (x,))
    A, B = uf_src.monoid, uf_tgt.monoid
    tab = [0] * A.size
    for a in Up.ghost_order:
        tab[uf_src.ghost_to[a]] = uf_tgt.ghost_to[alpha.table[a]]
    for x in uf_src.N:
        tab[uf_src.lift[x]] = uf_tgt.lift[alpha.table[x]]
    lifted = Transmission(A, B, tab)
    assert is_tangible(lifted)
    assert compose(lifted, uf_tgt.tau).table == compose(uf_src.tau, alpha).table
    return lifted, uf_src, uf_tgt


def tangible_lift_of_transmission(alpha: Transmission) -> tuple[Transmission, Unfolding]:
    """Lift ``alpha: U' -> U`` (``U'`` unfolded) to ``U' -> U~(N)``."""
    Up, U = alpha.source, alpha.target
    if not is_unfolded(Up):
        raise errors.NotUnfolded(f"{Up.name} is not unfolded")
    T0 = [Up.zero] + list(Up.tangibles)
    N = sorted({alpha.table[x] for x in T0})
    missing = [x for x in U.tangibles if x not in N]
    if missing:
        raise errors.NotTangiblySurjective("some tangibles are not hit", tuple(missing))
    uf = unfold(U, N)
    tab = [0] * Up.size
    for x in Up.elements():
        if Up.is_tangible0(x):
            tab[x] = uf.lift[alpha.table[x]]
        else:
            tab[x] = uf.ghost_to[alpha.table[x]]
    lifted = Transmission(Up, uf.monoid, tab)
    assert compose(lifted, uf.tau).table == alpha.table
    return lifted, uf
