"""Equivalence relations on a supertropical monoid.

A relation is a :class:`Partition` of the element ids of its monoid.
TE relations are multiplicative and satisfy ``ex ~ 0 => x ~ 0``; MFCE
relations additionally keep fibers (``x ~ y => ex = ey``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import errors
from .core import SupertropicalMonoid, Verdict, colon, quotient_monoid
from .partition import Partition, UnionFind


def _check_size(U: SupertropicalMonoid, E: Partition):
    if E.size != U.size:
        raise errors.SupertropicalError(f"relation has {E.size} elements, monoid has {U.size}")


def multiplicative_witness(U: SupertropicalMonoid, E: Partition):
    """First ``(x, y, z)`` with ``x ~ y`` but ``xz !~ yz``."""
    lab = E.labels
    for c in E.classes():
        r = c[0]
        rrow = U.mul[r]
        for x in c[1:]:
            xrow = U.mul[x]
            for z in U.elements():
                if lab[xrow[z]] != lab[rrow[z]]:
                    return (r, x, z)
    return None


def validate_te(U: SupertropicalMonoid, E: Partition) -> Verdict:
    _check_size(U, E)
    w = multiplicative_witness(U, E)
    if w is not None:
        return Verdict(False, ("not multiplicative",) + w)
    z0 = E.labels[U.zero]
    for x in U.elements():
        if E.labels[U.gh[x]] == z0 and E.labels[x] != z0:
            return Verdict(False, ("ghost killed", x))
    return Verdict(True)


def validate_mfce(U: SupertropicalMonoid, E: Partition) -> Verdict:
    v = validate_te(U, E)
    if not v:
        return v
    for x, y in E.pairs():
        if U.gh[x] != U.gh[y]:
            return Verdict(False, ("fiber", x, y))
    return Verdict(True)


def require_mfce(U: SupertropicalMonoid, E: Partition):
    v = validate_mfce(U, E)
    if not v:
        raise errors.NotMFCE(f"not an MFCE relation on {U.name}: {v.witness}", v.witness)


def require_te(U: SupertropicalMonoid, E: Partition):
    v = validate_te(U, E)
    if not v:
        raise errors.NotTE(f"not a TE relation on {U.name}: {v.witness}", v.witness)


def quotient(U: SupertropicalMonoid, E: Partition, name: str | None = None):
    """``(pi_E, U/E)`` for an MFCE relation ``E``."""
    require_mfce(U, E)
    return te_quotient(U, E, name)


def te_quotient(U: SupertropicalMonoid, E: Partition, name: str | None = None):
    """Quotient by a TE relation; ghost classes may merge."""
    from .transmissions import quotient_map

    require_te(U, E)
    V = quotient_monoid(U, E, name)
    return quotient_map(U, E, V), V


def diag(U: SupertropicalMonoid) -> Partition:
    return Partition.diag(U.size)


def merge(U: SupertropicalMonoid, *groups: Iterable[int]) -> Partition:
    return Partition.from_classes(U.size, groups)


def meet(E: Partition, F: Partition) -> Partition:
    return E.meet(F)


def join(E: Partition, F: Partition, U: SupertropicalMonoid | None = None) -> Partition:
    J = E.join(F)
    if U is not None:
        require_mfce(U, J)
    return J


def is_finer(E: Partition, F: Partition) -> bool:
    return E <= F


def generated_mfce(U: SupertropicalMonoid, pairs: Iterable[tuple[int, int]], base: Partition | None = None) -> Partition:
    """Finest MFCE containing ``base`` and the given pairs (worklist closure)."""
    uf = UnionFind(U.size)
    work = list(pairs)
    for x, y in work:
        if U.gh[x] != U.gh[y]:
            raise errors.FiberIncompatibleSeed(f"{U.nm(x)}, {U.nm(y)} lie in different fibers", (x, y))
    if base is not None:
        work.extend(base.pairs())
    while work:
        x, y = work.pop()
        if uf.union(x, y):
            rx, ry = U.mul[x], U.mul[y]
            for z in U.elements():
                if rx[z] != ry[z]:
                    work.append((rx[z], ry[z]))
    return Partition(uf.labels())


def ghost_separating_refinement(U: SupertropicalMonoid, E: Partition) -> Partition:
    """The coarsest ghost separating TE relation inside ``E``.

    ``x ~ y`` iff ``x ~_E y`` and for every ``z`` the products ``xz``,
    ``yz`` are both in T(U) ∪ {0}, both in eU, or ``xz ~_E 0``.
    """
    require_te(U, E)
    lab = E.labels
    z0 = lab[U.zero]

    def cat(p):
        if lab[p] == z0:
            return 0
        return 2 if U.is_ghost[p] else 1

    return Partition.from_key(U.size, lambda x: (lab[x], tuple(cat(p) for p in U.mul[x])))


@dataclass(frozen=True)
class CanonicalRelations:
    E_nu: Partition
    E_nu_tilde: Partition
    E_t: Partition
    E_t_multiplicative: bool


def e_nu(U: SupertropicalMonoid) -> Partition:
    return Partition.from_key(U.size, lambda x: U.gh[x])


def e_nu_tilde(U: SupertropicalMonoid) -> Partition:
    """``x ~ y`` iff ``ex = ey`` and ``[M:x] = [M:y]``."""
    M = U.ghost_order
    return Partition.from_key(U.size, lambda x: (U.gh[x], colon(U, M, x)))


def canonical_relations(U: SupertropicalMonoid) -> CanonicalRelations:
    En = e_nu(U)
    Et_ = e_nu_tilde(U)
    ref = ghost_separating_refinement(U, En)
    assert ref == Et_, "two descriptions of the coarsest tangible relation disagree"
    Et = Partition.from_key(U.size, lambda x: (U.gh[x], x if U.is_ghost[x] else -1))
    mult = bool(validate_te(U, Et))
    if mult:
        assert Et == Et_, "E_t multiplicative but differs from the refinement of E(nu)"
    return CanonicalRelations(En, Et_, Et, mult)


@dataclass(frozen=True)
class RelationKind:
    is_te: bool
    is_mfce: bool
    is_ghost_separating: bool
    is_mixing: bool


def is_ghost_separating(U: SupertropicalMonoid, E: Partition) -> bool:
    return E <= e_nu_tilde(U)


def is_mixing_relation(U: SupertropicalMonoid, E: Partition) -> bool:
    return ghost_separating_refinement(U, E).is_diag()


def classify(U: SupertropicalMonoid, E: Partition) -> RelationKind:
    require_mfce(U, E)
    Et = e_nu_tilde(U)
    return RelationKind(True, True, E <= Et, E.meet(Et).is_diag())


def maximal_mixing_above(U: SupertropicalMonoid, E: Partition) -> Partition:
    """A maximal mixing MFCE containing the mixing relation ``E``.

    Mixing relations form a down-set, so a pair rejected once stays
    rejected and a single lexicographic pass reaches a maximal element.
    """
    require_mfce(U, E)
    if not is_mixing_relation(U, E):
        raise errors.NotMixing("starting relation is not mixing")
    F = E
    for x in U.elements():
        for y in range(x + 1, U.size):
            if U.gh[x] != U.gh[y] or F.related(x, y):
                continue
            G = generated_mfce(U, [(x, y)], F)
            if is_mixing_relation(U, G):
                F = G
    for x, y in _one_step_candidates(U, F):
        assert not is_mixing_relation(U, generated_mfce(U, [(x, y)], F))
    return F


def _one_step_candidates(U, F):
    for x in U.elements():
        for y in range(x + 1, U.size):
            if U.gh[x] == U.gh[y] and not F.related(x, y):
                yield x, y


def format_classes(U: SupertropicalMonoid, E: Partition, nontrivial_only: bool = False) -> str:
    out = []
    for c in E.classes():
        if nontrivial_only and len(c) == 1:
            continue
        out.append("{" + " ".join(U.nms(c)) + "}")
    return " ".join(out)
