"""m-valuations and m-supervaluations on finite semirings.

Ghost values are compared through the ghost rank of the target monoid,
so an m-valuation covered by ``phi: R -> U`` takes values in
``ghost_monoid(U)`` whose ids are ranks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import errors
from .core import (
    OrderedGhostSemiring,
    SupertropicalMonoid,
    Verdict,
    compression_partition,
    ghost_monoid,
    hat,
    is_semiring,
    quotient_monoid,
)
from .partition import Partition
from .transmissions import Unfolding, search_transmissions, unfold

DEFAULT_TARGET_CAP = 12


class FiniteSemiring:
    """A finite commutative semiring given by addition and multiplication tables."""

    def __init__(self, add, mul, zero: int, one: int, names=None, name: str = "R", trusted: bool = False):
        self.add = tuple(tuple(r) for r in add)
        self.mul = tuple(tuple(r) for r in mul)
        self.size = n = len(self.mul)
        self.zero, self.one = zero, one
        self.names = tuple(names) if names is not None else tuple(f"r{i}" for i in range(n))
        self.name = name
        if not trusted:
            self._validate()

    def _validate(self):
        n, A, Mu = self.size, self.add, self.mul
        for T, what in ((A, "addition"), (Mu, "multiplication")):
            for x in range(n):
                for y in range(n):
                    if T[x][y] != T[y][x]:
                        raise errors.NonCommutative(f"{what} not commutative", (x, y))
                    for z in range(n):
                        if T[T[x][y]][z] != T[x][T[y][z]]:
                            raise errors.NonAssociative(f"{what} not associative", (x, y, z))
        for x in range(n):
            if A[self.zero][x] != x:
                raise errors.BadZero("0 is not additively neutral", (x,))
            if Mu[self.one][x] != x:
                raise errors.BadUnit("1 is not multiplicatively neutral", (x,))
            if Mu[self.zero][x] != self.zero:
                raise errors.BadZero("0 is not absorbing", (x,))
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if Mu[x][A[y][z]] != A[Mu[x][y]][Mu[x][z]]:
                        raise errors.NotSemiring("not distributive", (x, y, z))

    def elements(self) -> range:
        return range(self.size)

    def nm(self, x: int) -> str:
        return self.names[x]

    def __repr__(self):
        return f"FiniteSemiring({self.name}, size={self.size})"


def semiring_of(U: SupertropicalMonoid) -> FiniteSemiring:
    """``U`` with its derived addition, which must be distributive."""
    v = is_semiring(U)
    if not v:
        raise errors.NotSemiring(f"{U.name} is not a semiring", v.witness)
    add = [[U.add(x, y) for y in U.elements()] for x in U.elements()]
    return FiniteSemiring(add, U.mul, U.zero, U.one, U.names, U.name, trusted=True)


def semiring_of_chain(M: OrderedGhostSemiring) -> FiniteSemiring:
    add = [[M.add(a, b) for b in range(M.size)] for a in range(M.size)]
    return FiniteSemiring(add, M.mul, M.zero, M.one, M.names, M.name, trusted=True)


# -- m-valuations ------------------------------------------------------------

@dataclass(frozen=True)
class MValuation:
    R: FiniteSemiring
    M: OrderedGhostSemiring
    table: tuple[int, ...]

    def __call__(self, r: int) -> int:
        return self.table[r]


def validate_m_valuation(v: MValuation) -> bool:
    R, M, t = v.R, v.M, v.table
    if t[R.zero] != M.zero or t[R.one] != M.one:
        raise errors.UnitMismatch("v(0) must be 0 and v(1) must be 1")
    for x in R.elements():
        for y in R.elements():
            if t[R.mul[x][y]] != M.mul[t[x]][t[y]]:
                raise errors.NotMultiplicative("v is not multiplicative", (x, y))
            if M.rank[t[R.add[x][y]]] > M.rank[M.add(t[x], t[y])]:
                raise errors.NotSubadditive("v(x+y) > v(x)+v(y)", (x, y))
    return True


def support(v: MValuation) -> frozenset[int]:
    return frozenset(r for r in v.R.elements() if v.table[r] == v.M.zero)


def nc_products(v: MValuation) -> frozenset[int]:
    """``Y(v)``: products ``ab`` with some ``a'`` such that v(a') < v(a), v(a'b) = v(ab) != 0."""
    R, M, t = v.R, v.M, v.table
    rk = M.rank
    out = set()
    for a in R.elements():
        lower = [ap for ap in R.elements() if rk[t[ap]] < rk[t[a]]]
        if not lower:
            continue
        for b in R.elements():
            ab = R.mul[a][b]
            val = t[ab]
            if val == M.zero or ab in out:
                continue
            if any(t[R.mul[ap][b]] == val for ap in lower):
                out.add(ab)
    return frozenset(out)


def extended_support(v: MValuation) -> frozenset[int]:
    q = support(v) | nc_products(v)
    R = v.R
    assert all(R.mul[x][r] in q for x in q for r in R.elements()), "q' is not a monoid ideal"
    return q


# -- m-supervaluations -------------------------------------------------------

@dataclass(frozen=True)
class MSupervaluation:
    R: FiniteSemiring
    U: SupertropicalMonoid
    table: tuple[int, ...]

    def __call__(self, r: int) -> int:
        return self.table[r]

    def image(self) -> frozenset[int]:
        return frozenset(self.table)

    def is_surjective(self) -> bool:
        img = self.image()
        return img | {self.U.gh[x] for x in img} == set(self.U.elements())

    def format(self) -> str:
        return " ".join(self.U.nm(x) for x in self.table)


def make_supervaluation(R: FiniteSemiring, U: SupertropicalMonoid, table: Sequence[int]) -> MSupervaluation:
    phi = MSupervaluation(R, U, tuple(table))
    validate_m_supervaluation(phi)
    return phi


def covered_valuation(phi: MSupervaluation) -> MValuation:
    U = phi.U
    return MValuation(phi.R, ghost_monoid(U), tuple(U.rank[U.gh[x]] for x in phi.table))


def validate_m_supervaluation(phi: MSupervaluation) -> bool:
    R, U, t = phi.R, phi.U, phi.table
    if len(t) != R.size:
        raise errors.SupertropicalError("one image per element of R required")
    if t[R.zero] != U.zero or t[R.one] != U.one:
        raise errors.UnitMismatch("phi(0) must be 0 and phi(1) must be 1")
    for x in R.elements():
        for y in R.elements():
            if t[R.mul[x][y]] != U.mul[t[x]][t[y]]:
                raise errors.NotMultiplicative("phi is not multiplicative", (x, y))
    validate_m_valuation(covered_valuation(phi))
    return True


def ghost_value_set(psi: MSupervaluation) -> frozenset[int]:
    """``G(psi) = psi(R) ∩ M`` (ids of the target)."""
    return frozenset(x for x in psi.table if psi.U.is_ghost[x])


def ghost_value_ranks(psi: MSupervaluation) -> frozenset[int]:
    """``G(psi)`` in rank coordinates, comparable across targets."""
    return frozenset(psi.U.rank[x] for x in ghost_value_set(psi))


def is_tangible_supervaluation(psi: MSupervaluation) -> bool:
    return all(psi.U.is_tangible0(x) for x in psi.table)


def is_supervaluation(psi: MSupervaluation) -> bool:
    """The target (restricted to ``psi(R) ∪ e psi(R)``) is a semiring."""
    from .core import submonoid

    U = psi.U
    if psi.is_surjective():
        return bool(is_semiring(U))
    img = set(psi.table) | {U.gh[x] for x in psi.table}
    V, _ = submonoid(U, img)
    return bool(is_semiring(V))


def ideals_of_M(U: SupertropicalMonoid, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Ideals of the semiring ``eU`` (sets containing 0 closed under ``M·``), inside ``within``."""
    M = U.ghost_order
    pool = sorted(set(within if within is not None else M) - {U.zero}, key=U.rank.__getitem__)
    out = []
    for k in range(len(pool) + 1):
        for combo in combinations(pool, k):
            A = frozenset(combo) | {U.zero}
            if all(U.mul[a][m] in A for a in A for m in M):
                out.append(A)
    return out


def is_ideal_of_M(U: SupertropicalMonoid, A: Iterable[int]) -> bool:
    A = set(A)
    return U.zero in A and all(U.is_ghost[a] for a in A) and all(U.mul[a][m] in A for a in A for m in U.ghost_order)


@dataclass(frozen=True)
class Lift:
    """A lift ``psi = pi_E ∘ phi~`` with the relation ``E`` on the unfolding."""

    psi: MSupervaluation
    relation: Partition
    unfolding: Unfolding


def tangible_lift(phi: MSupervaluation) -> Lift:
    U = phi.U
    N = sorted(phi.image())
    missing = [x for x in U.tangibles if x not in phi.image()]
    if missing:
        raise errors.NotTangiblySurjective("phi misses some tangibles", tuple(missing))
    uf = unfold(U, N)
    W = uf.monoid
    psi = make_supervaluation(phi.R, W, [uf.lift[x] for x in phi.table])
    assert is_tangible_supervaluation(psi)
    return Lift(psi, Partition.diag(W.size), uf)


def _lift_outside(phi: MSupervaluation, A: frozenset[int], base: Lift | None = None) -> Lift:
    base = base or tangible_lift(phi)
    uf = base.unfolding
    W = uf.monoid
    ideal = set(W.ghost_order) | {uf.lift[a] for a in A if a != phi.U.zero}
    E = compression_partition(W, ideal)
    V = quotient_monoid(W, E, f"{W.name}/{len(A)}")
    psi = make_supervaluation(phi.R, V, [E.labels[y] for y in base.psi.table])
    return Lift(psi, E, uf)


def partial_tangible_lift(phi: MSupervaluation, A: Iterable[int]) -> Lift:
    """The tangible lift of ``phi`` outside the ideal ``A ⊆ G(phi)`` of M."""
    A = frozenset(A) | {phi.U.zero}
    if not is_ideal_of_M(phi.U, A):
        raise errors.NotAnIdeal("A is not an ideal of eU", tuple(sorted(A)))
    G = ghost_value_set(phi)
    if not A <= G | {phi.U.zero}:
        raise errors.NotContainedInG("A is not inside G(phi)", tuple(sorted(A - G)))
    out = _lift_outside(phi, A)
    assert ghost_value_set(out.psi) | {out.psi.U.zero} == {out.psi.U.ghost_order[phi.U.rank[a]] for a in A}
    return out


def almost_tangible_lift(phi: MSupervaluation) -> Lift:
    """``phi^``: the tangible lift outside ``v(q')``."""
    if not is_semiring(phi.U):
        raise errors.TargetNotSemiring(f"{phi.U.name} is not a semiring")
    v = covered_valuation(phi)
    qp = extended_support(v)
    A = frozenset(phi.U.ghost_order[v.table[r]] for r in qp) | {phi.U.zero}
    return partial_tangible_lift(phi, A)


def hat_relation_of_lift(phi: MSupervaluation) -> Partition:
    """The relation of the semiring reflection on the target of ``phi~``."""
    sigma, _ = hat(tangible_lift(phi).unfolding.monoid)
    return sigma.relation()


# -- dominance ---------------------------------------------------------------

def dominance_witness(phi: MSupervaluation, psi: MSupervaluation, cap: int = DEFAULT_TARGET_CAP):
    """A transmission table ``alpha`` with ``psi = alpha ∘ phi``, or None."""
    if phi.U.size > cap or psi.U.size > cap:
        raise errors.TargetsTooLarge(f"targets exceed the search cap {cap}")
    fixed: dict[int, int] = {}
    for r in phi.R.elements():
        x, y = phi.table[r], psi.table[r]
        if fixed.get(x, y) != y:
            return None
        fixed[x] = y
    for tab in search_transmissions(phi.U, psi.U, fixed):
        return tab
    return None


def dominates(phi: MSupervaluation, psi: MSupervaluation, cap: int = DEFAULT_TARGET_CAP) -> Verdict:
    """``psi <= phi``: some transmission carries ``phi`` to ``psi``."""
    w = dominance_witness(phi, psi, cap)
    return Verdict(w is not None, w)


def equivalent(phi: MSupervaluation, psi: MSupervaluation, cap: int = DEFAULT_TARGET_CAP) -> bool:
    return bool(dominates(phi, psi, cap)) and bool(dominates(psi, phi, cap))


# -- the interval [phi, phi~] ----------------------------------------------

@dataclass(frozen=True)
class IntervalMember:
    relation: Partition
    psi: MSupervaluation
    G: frozenset[int]  # ghost value set in rank coordinates


def interval_members(phi: MSupervaluation, cap: int = 16, target_cap: int = DEFAULT_TARGET_CAP) -> list[IntervalMember]:
    """Every ``pi_F ∘ phi~`` (F an MFCE on the unfolding) that dominates ``phi``."""
    from .oracle import enumerate_mfce

    lift = tangible_lift(phi)
    W = lift.unfolding.monoid
    out = []
    for F in enumerate_mfce(W, cap):
        V = quotient_monoid(W, F, f"{W.name}/F")
        psi = MSupervaluation(phi.R, V, tuple(F.labels[y] for y in lift.psi.table))
        if dominates(psi, phi, target_cap):
            out.append(IntervalMember(F, psi, ghost_value_ranks(psi)))
    return out


def dominance_classes(members: list[IntervalMember], target_cap: int = DEFAULT_TARGET_CAP) -> list[list[IntervalMember]]:
    classes: list[list[IntervalMember]] = []
    for m in members:
        for c in classes:
            if equivalent(c[0].psi, m.psi, target_cap):
                c.append(m)
                break
        else:
            classes.append([m])
    return classes


def interval_bijection(phi: MSupervaluation) -> list[tuple[frozenset[int], Lift]]:
    """Pairs ``(A, phi~_A)`` over all ideals ``A ⊆ G(phi)``, checked for order reversal."""
    U = phi.U
    base = tangible_lift(phi)
    pairs = []
    for A in ideals_of_M(U, ghost_value_set(phi) | {U.zero}):
        pairs.append((A, _lift_outside(phi, A, base)))
    for A1, l1 in pairs:
        for A2, l2 in pairs:
            g1, g2 = ghost_value_ranks(l1.psi), ghost_value_ranks(l2.psi)
            assert bool(dominates(l1.psi, l2.psi)) == (g1 <= g2)
    return pairs
