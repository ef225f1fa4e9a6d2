"""Ideal-generating sections of the ghost map, sons and tyrants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from . import errors
from .core import SupertropicalMonoid, Verdict
from .partition import Partition


@dataclass(frozen=True)
class IgSection:
    """A section ``s: M -> U`` stored as ``values[rank]`` over the ghost order."""

    U: SupertropicalMonoid
    values: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.values[self.U.rank[a]]

    def as_dict(self) -> dict[int, int]:
        return {a: self(a) for a in self.U.ghost_order}

    def image(self) -> frozenset[int]:
        return frozenset(self.values)

    def tangible_values(self) -> frozenset[int]:
        return frozenset(x for x in self.values if self.U.is_tangible(x))

    def is_trivial(self) -> bool:
        return not self.tangible_values()

    def __le__(self, other: IgSection) -> bool:
        return all(t == a or t == s for a, t, s in zip(self.U.ghost_order, self.values, other.values))

    def format(self) -> str:
        U = self.U
        return " ".join(f"{U.nm(a)}->{U.nm(self(a))}" for a in U.ghost_order if self(a) != a)

    def __repr__(self) -> str:
        return f"IgSection({self.U.name}: {self.format() or 'trivial'})"


def make_section(U: SupertropicalMonoid, mapping: Mapping[int, int] | None = None) -> IgSection:
    """Section with ``s(a) = mapping.get(a, a)``; ``s(0) = 0`` is forced."""
    mapping = dict(mapping or {})
    if mapping.get(U.zero, U.zero) != U.zero:
        raise errors.SC1Violated("s(0) must be 0", (U.zero,))
    return IgSection(U, tuple(mapping.get(a, a) for a in U.ghost_order))


def trivial_section(U: SupertropicalMonoid) -> IgSection:
    return make_section(U)


def sc2_prime_holds(s: IgSection) -> bool:
    U = s.U
    for a in U.ghost_order:
        x = s(a)
        for y in U.elements():
            p = U.mul[x][y]
            if U.is_tangible(p) and p != s(U.mul[a][y]):
                return False
    return True


def check_ig_section(s: IgSection) -> Verdict:
    U = s.U
    for a in U.ghost_order:
        if U.gh[s(a)] != a:
            return Verdict(False, ("SC1", a))
    allowed = set(U.ghost_order) | set(s.values)
    for a in U.ghost_order:
        for y in U.elements():
            if U.mul[s(a)][y] not in allowed:
                return Verdict(False, ("SC2", a, y))
    return Verdict(True)


def validate_ig_section(s: IgSection) -> bool:
    v = check_ig_section(s)
    if not v:
        if v.witness[0] == "SC1":
            raise errors.SC1Violated(f"e*s({s.U.nm(v.witness[1])}) differs from the argument", v.witness[1:])
        raise errors.SC2Violated("s(M)U is not inside M ∪ s(M)", v.witness[1:])
    assert sc2_prime_holds(s)
    return True


def relation_of_section(s: IgSection) -> Partition:
    U = s.U
    return Partition.from_classes(U.size, [(a, s(a)) for a in U.ghost_order])


def section_of_relation(U: SupertropicalMonoid, E: Partition) -> IgSection:
    for c in E.classes():
        if sum(1 for x in c if U.is_tangible(x)) > 1:
            raise errors.ClassWithTwoTangibles("class with two tangibles", tuple(c))
    mapping = {}
    for a in U.ghost_order:
        tang = [x for x in E.class_of(a) if U.is_tangible(x)]
        if tang:
            mapping[a] = tang[0]
    s = make_section(U, mapping)
    validate_ig_section(s)
    return s


def igs_meet(s: IgSection, t: IgSection) -> IgSection:
    U = s.U
    vals = tuple(x if x == y and U.is_tangible(x) else a for a, x, y in zip(U.ghost_order, s.values, t.values))
    return IgSection(U, vals)


def igs_join(s: IgSection, t: IgSection) -> IgSection:
    return igs_sup_family([s, t])


def igs_sup_family(sections: Iterable[IgSection]) -> IgSection:
    sections = list(sections)
    if not sections:
        raise errors.NoUpperBound("empty family")
    U = sections[0].U
    vals = list(U.ghost_order)
    for s in sections:
        for i, x in enumerate(s.values):
            if U.is_tangible(x):
                if U.is_tangible(vals[i]) and vals[i] != x:
                    raise errors.NoUpperBound(
                        f"two tangible choices over {U.nm(U.ghost_order[i])}", (vals[i], x)
                    )
                vals[i] = x
    out = IgSection(U, tuple(vals))
    if not check_ig_section(out):
        raise errors.NoUpperBound("candidate supremum is not an ig-section")
    return out


def all_sections(U: SupertropicalMonoid) -> list[IgSection]:
    """Every ig-section of ``U`` (exhaustive)."""
    choices = []
    for a in U.ghost_order:
        choices.append([a] + [x for x in U.tangibles if U.gh[x] == a])
    out = []

    def rec(i, acc):
        if i == len(choices):
            s = IgSection(U, tuple(acc))
            if check_ig_section(s):
                out.append(s)
            return
        for x in choices[i]:
            acc.append(x)
            rec(i + 1, acc)
            acc.pop()

    rec(0, [])
    return out


# -- sons and tyrants --------------------------------------------------------

def _need_tangible(U, x):
    if not U.is_tangible(x):
        raise errors.NotTangible(f"{U.nm(x)} is not tangible", (x,))


def sons(U: SupertropicalMonoid, x: int) -> frozenset[int]:
    """``S(x) = Ux ∩ T(U)``."""
    _need_tangible(U, x)
    return frozenset(p for p in U.mul[x] if U.is_tangible(p))


def sons_over(U: SupertropicalMonoid, x: int, c: int) -> frozenset[int]:
    return frozenset(z for z in sons(U, x) if U.gh[z] == c)


def sons_by_fiber(U: SupertropicalMonoid, x: int) -> dict[int, frozenset[int]]:
    out: dict[int, set[int]] = {}
    for z in sons(U, x):
        out.setdefault(U.gh[z], set()).add(z)
    return {c: frozenset(v) for c, v in out.items()}


def is_tyrant(U: SupertropicalMonoid, x: int) -> bool:
    return all(len(v) <= 1 for v in sons_by_fiber(U, x).values())


def tyrants(U: SupertropicalMonoid) -> list[int]:
    return [x for x in U.tangibles if is_tyrant(U, x)]


def section_of_tyrant(U: SupertropicalMonoid, x: int) -> IgSection:
    """The primitive section ``s_x`` generated by the tyrant ``x``."""
    if not is_tyrant(U, x):
        raise errors.NotATyrant(f"{U.nm(x)} has two sons over one ghost", (x,))
    mapping = {c: next(iter(v)) for c, v in sons_by_fiber(U, x).items()}
    s = make_section(U, mapping)
    validate_ig_section(s)
    assert is_primitive_with_generator(s, x)
    return s


def is_primitive_with_generator(s: IgSection, x: int) -> bool:
    """``M ∪ s(M) = eU ∪ xU``."""
    U = s.U
    return set(U.ghost_order) | set(s.values) == set(U.ghost_order) | set(U.mul[x])


def is_primitive(s: IgSection) -> bool:
    return any(is_primitive_with_generator(s, x) for x in s.tangible_values())


def primitive_sections_below(s: IgSection) -> list[IgSection]:
    U = s.U
    prims = [section_of_tyrant(U, x) for x in sorted(s.tangible_values())]
    if prims:
        assert igs_sup_family(prims) == s
    return prims


def pushforward(alpha, s: IgSection) -> IgSection:
    """``alpha ∘ s`` for a fiber contraction ``alpha``."""
    from .transmissions import is_fiber_contraction

    if not is_fiber_contraction(alpha):
        raise errors.NotFiberContraction("map is not a fiber contraction")
    V = alpha.target
    mapping = {}
    for a in s.U.ghost_order:
        b = alpha.table[a]
        mapping[b] = alpha.table[s(a)]
    out = make_section(V, mapping)
    validate_ig_section(out)
    return out


def associated_in_M(U: SupertropicalMonoid, a: int, c: int) -> bool:
    """``a ~_T c``: ``a in T(U)c`` and ``c in T(U)a``."""
    return any(U.mul[t][c] == a for t in U.tangibles) and any(U.mul[t][a] == c for t in U.tangibles)
