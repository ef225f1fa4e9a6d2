"""Property checks over fixtures and seeded random monoids.

Each property is a generator yielding ``(ok, detail)`` per individual
check; ``run`` tallies them per property.  Everything is deterministic in
the seed, and instances are visited in a fixed order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator

from . import errors
from .core import SupertropicalMonoid, hat, ideal_closure, compression_partition, is_semiring, quotient_monoid
from .equalizers import feq, validate_path, witness_path, is_ghost_separating_feq
from .fixtures import all_fixtures
from .generate import random_monoids
from .isolation import (
    T_tangible_counterexample,
    cancellation_hypothesis,
    isolate,
    isolation_obstruction,
    sis_ghost_test,
    sis_tangible_counterexample,
    son_isolating_relation,
    tyrant_obstruction,
    tyrant_relation,
)
from .oracle import closure_mfce, coarsest_ghost_separating_inside, enumerate_mfce, finest_with
from .partition import Partition
from .relations import classify, e_nu_tilde, generated_mfce, ghost_separating_refinement, is_mixing_relation
from .sections import (
    all_sections,
    is_primitive_with_generator,
    is_tyrant,
    primitive_sections_below,
    relation_of_section,
)
from .transmissions import Transmission, compose_tm, is_fiber_contraction, is_mixing, is_tangible, tm_factorization
from .valuations import (
    MSupervaluation,
    almost_tangible_lift,
    dominance_classes,
    dominates,
    ghost_value_ranks,
    hat_relation_of_lift,
    ideals_of_M,
    interval_members,
    is_supervaluation,
    semiring_of,
    tangible_lift,
)

DEFAULT_CAP = 16
VALUATION_SIZE = 6  # largest monoid used as a valuation source
VALUATION_PER_INSTANCE = 2
Check = Iterator[tuple[bool, str]]


@dataclass
class Tally:
    checked: int = 0
    failed: int = 0
    first: str | None = None

    def add(self, ok: bool, detail: str):
        self.checked += 1
        if not ok:
            self.failed += 1
            if self.first is None:
                self.first = detail


def _mfce(U, cap):
    return enumerate_mfce(U, cap) if U.size <= cap else []


# -- monoid properties -------------------------------------------------------

def prop_refinement(U: SupertropicalMonoid, cap: int, rng) -> Check:
    Et = e_nu_tilde(U)
    for E in _mfce(U, cap):
        got = ghost_separating_refinement(U, E)
        want = coarsest_ghost_separating_inside(U, E, cap)
        yield got == want and got == E.meet(Et), f"{U.name} E={E.labels}"


def _quotient_sources(U, cap):
    """Surjective transmissions with trivial zero kernel: MFCE quotients and ideal compressions."""
    seen = set()
    rels = list(_mfce(U, cap))
    for x in U.tangibles:
        rels.append(compression_partition(U, ideal_closure(U, [x])))
    for E in rels:
        if E in seen:
            continue
        seen.add(E)
        V = quotient_monoid(U, E, f"{U.name}/E")
        yield E, Transmission(U, V, E.labels, check=False)


def prop_tm(U: SupertropicalMonoid, cap: int, rng) -> Check:
    mfce = _mfce(U, cap)
    for E, alpha in _quotient_sources(U, cap):
        f = tm_factorization(alpha)
        ok = f.composite().table == alpha.table and bool(is_tangible(f.tangible_part)) and bool(is_mixing(f.mixing_part))
        yield ok, f"{U.name} alpha={alpha.table}"
        at = f.tangible_part
        for F in mfce:
            if not (F <= E and all(not F.related(x, U.gh[x]) for x in U.tangibles)):
                continue
            W = quotient_monoid(U, F, f"{U.name}/F")
            reps = [c[0] for c in F.classes()]
            mu = Transmission(W, alpha.target, [alpha.table[r] for r in reps], check=False)
            if not is_fiber_contraction(mu):
                continue
            try:
                zeta = Transmission(W, f.middle, [at.table[r] for r in reps])
                ok = (
                    all(zeta.table[F.labels[x]] == at.table[x] for x in U.elements())
                    and is_fiber_contraction(zeta)
                    and all(f.mixing_part.table[zeta.table[w]] == mu.table[w] for w in W.elements())
                )
            except errors.SupertropicalError:
                ok = False
            yield ok, f"{U.name} alpha={alpha.table} F={F.labels}"


def _random_quotient(U, rng):
    pairs = [(x, y) for x in U.elements() for y in range(x + 1, U.size) if U.gh[x] == U.gh[y]]
    if pairs and rng.random() < 0.7:
        E = generated_mfce(U, [rng.choice(pairs)])
    elif U.tangibles:
        E = compression_partition(U, ideal_closure(U, [rng.choice(U.tangibles)]))
    else:
        E = Partition.diag(U.size)
    V = quotient_monoid(U, E, f"{U.name}'")
    return Transmission(U, V, E.labels, check=False)


def prop_compose(U: SupertropicalMonoid, cap: int, rng) -> Check:
    alpha = _random_quotient(U, rng)
    beta = _random_quotient(alpha.target, rng)
    try:
        compose_tm(tm_factorization(alpha), tm_factorization(beta), verify=True)
        yield True, ""
    except AssertionError as exc:
        yield False, f"{U.name} alpha={alpha.table} beta={beta.table}: {exc}"


def _effective_subsets(U):
    """Subsets of U up to members alone in their fiber, which never matter."""
    fibers: dict[int, list[int]] = {}
    for x in U.elements():
        fibers.setdefault(U.gh[x], []).append(x)
    options = []
    for members in fibers.values():
        opts = [()]
        for k in range(2, len(members) + 1):
            opts.extend(combinations(members, k))
        options.append(opts)
    out = [()]
    for opts in options:
        out = [a + b for a in out for b in opts]
    return [frozenset(s) for s in out]


def _check_equalizer(U, S) -> tuple[bool, str]:
    E = feq(U, S)
    seeds = [(s, t) for s in S for t in S if s < t and U.gh[s] == U.gh[t]]
    ok = E == closure_mfce(U, seeds)
    for c in E.classes():
        for y in c[1:]:
            g = witness_path(U, S, c[0], y)
            try:
                ok = ok and g is not None and validate_path(U, g, S) and g.start(U) == c[0] and g.end(U) == y
            except errors.SupertropicalError:
                ok = False
    ok = ok and is_ghost_separating_feq(U, S) == classify(U, E).is_ghost_separating
    return ok, f"{U.name} S={U.nms(sorted(S))}"


def prop_equalizer(U: SupertropicalMonoid, cap: int, rng, exhaustive: bool = False) -> Check:
    if exhaustive:
        for S in _effective_subsets(U):
            yield _check_equalizer(U, S)
    else:
        S = frozenset(x for x in U.elements() if rng.random() < 0.5)
        yield _check_equalizer(U, S)


def prop_sections(U: SupertropicalMonoid, cap: int, rng) -> Check:
    secs = all_sections(U)
    for x in U.tangibles:
        a = is_tyrant(U, x)
        b = any(x in s.image() for s in secs)
        c = any(is_primitive_with_generator(s, x) for s in secs)
        yield a == b == c, f"{U.name} x={U.nm(x)} tyrant={a} image={b} primitive={c}"
    for s in secs:
        try:
            ok = is_mixing_relation(U, relation_of_section(s))
            primitive_sections_below(s)
        except AssertionError:
            ok = False
        yield ok, f"{U.name} s={s.format()}"


def prop_isolation(U: SupertropicalMonoid, cap: int, rng) -> Check:
    for x in U.tangibles:
        T = tyrant_relation(U, x)
        I = isolate(U, x)
        S = son_isolating_relation(U, x)
        tag = f"{U.name} x={U.nm(x)}"
        yield (T.case == "II") == (tyrant_obstruction(U, x) is not None), tag + " tyrant ghost criterion"
        yield classify(U, T.relation).is_ghost_separating == (T_tangible_counterexample(U, x) is None), tag + " tyrant tangible criterion"
        yield (I.case == "II") == (isolation_obstruction(U, x) is not None), tag + " isolation criterion"
        yield (S.case == "II") == (sis_ghost_test(U, x) is not None), tag + " sis ghost criterion"
        yield classify(U, S.relation).is_ghost_separating == (sis_tangible_counterexample(U, x) is None), tag + " sis tangible criterion"
        yield I.relation <= S.relation, tag + " Is inside Sis"
        if cancellation_hypothesis(U, U.gh[x]):
            yield I.relation == S.relation, tag + " cancellation collapse"
        if U.size <= min(cap, 8):
            yield _minimal(U, x, T.relation, cap, "tyrant"), tag + " T(x) minimal"
            yield _minimal(U, x, I.relation, cap, "isolated"), tag + " Is(x) minimal"


def _minimal(U, x, rel, cap, what) -> bool:
    """``rel`` is the finest MFCE under which the relevant sons of ``x`` coincide.

    A literal "at most one son over c" reading has no least element (a
    son may instead be sent to its ghost), so the predicate asks that the
    classes of the sons over each c collapse to one.
    """
    from .sections import sons_by_fiber

    groups = sons_by_fiber(U, x)
    if what == "isolated":
        groups = {U.gh[x]: groups.get(U.gh[x], frozenset())}

    def pred(F):
        return all(len({F.labels[z] for z in zs}) <= 1 for zs in groups.values())

    return finest_with(U, pred, cap) == rel


def prop_reflection(U: SupertropicalMonoid, cap: int, rng) -> Check:
    sigma, H = hat(U)
    sigma2, _ = hat(H)
    yield bool(is_semiring(H)) and sigma2.relation().is_diag(), f"{U.name} hat"


# -- valuation properties ----------------------------------------------------

def valuation_sources(U: SupertropicalMonoid, cap: int, rng) -> list[MSupervaluation]:
    """Quotient maps ``R = U -> U/E`` for a semiring ``U``, the identity first."""
    if U.size > VALUATION_SIZE or not is_semiring(U):
        return []
    R = semiring_of(U)
    rels = _mfce(U, cap)
    picks = [Partition.diag(U.size)]
    others = [E for E in rels if not E.is_diag()]
    picks += rng.sample(others, min(len(others), VALUATION_PER_INSTANCE - 1))
    out = []
    for E in picks:
        V = quotient_monoid(U, E, f"{U.name}/E")
        out.append(MSupervaluation(R, V, tuple(E.labels)))
    return out


def prop_interval(phi: MSupervaluation, cap: int) -> Check:
    tag = f"{phi.U.name} phi={phi.table}"
    members = interval_members(phi, cap)
    classes = dominance_classes(members)
    ideals = ideals_of_M(phi.U, set(phi.table) & set(phi.U.ghost_order) | {phi.U.zero})
    ideal_ranks = sorted(sorted(phi.U.rank[a] for a in A) for A in ideals)
    class_G = sorted(sorted(c[0].G) for c in classes)
    yield len(classes) == len(ideals) and class_G == ideal_ranks, tag + " count"
    reps = [c[0] for c in classes]
    for m1 in reps:
        for m2 in reps:
            yield bool(dominates(m1.psi, m2.psi)) == (m1.G <= m2.G), tag + " order"
    byrel = {m.relation: m for m in members}
    for m1, m2 in combinations(members, 2):
        lo = byrel.get(m1.relation.meet(m2.relation))
        hi = byrel.get(m1.relation.join(m2.relation))
        ok = lo is not None and hi is not None and lo.G == m1.G & m2.G and hi.G == m1.G | m2.G
        yield ok, tag + " lattice"


def prop_almost_lift(phi: MSupervaluation, cap: int) -> Check:
    tag = f"{phi.U.name} phi={phi.table}"
    h = almost_tangible_lift(phi)
    yield bool(is_semiring(h.psi.U)) and h.relation == hat_relation_of_lift(phi), tag + " hat"
    for m in interval_members(phi, cap):
        yield is_supervaluation(m.psi) == bool(dominates(h.psi, m.psi)), tag + f" F={m.relation.labels}"


# -- driver -----------------------------------------------------------------

MONOID_PROPERTIES: dict[str, Callable] = {
    "refinement": prop_refinement,
    "tm_factorization": prop_tm,
    "compose_tm": prop_compose,
    "equalizer": prop_equalizer,
    "interval": None,
    "almost_lift": None,
    "sections": prop_sections,
    "isolation": prop_isolation,
    "reflection": prop_reflection,
}
PROPERTIES = tuple(MONOID_PROPERTIES)


@dataclass
class Report:
    tallies: dict[str, Tally] = field(default_factory=lambda: {p: Tally() for p in PROPERTIES})
    instances: int = 0
    valuations: int = 0

    def ok(self) -> bool:
        return all(t.failed == 0 for t in self.tallies.values())

    def porcelain(self) -> str:
        lines = [f"instances={self.instances}", f"valuations={self.valuations}"]
        for p, t in self.tallies.items():
            status = "pass" if t.failed == 0 else "fail"
            lines.append(f"property={p} checked={t.checked} failed={t.failed} status={status}")
        lines.append(f"result={'pass' if self.ok() else 'fail'}")
        return "\n".join(lines)

    def human(self) -> str:
        lines = [f"{self.instances} monoids, {self.valuations} valuations"]
        for p, t in self.tallies.items():
            mark = "ok  " if t.failed == 0 else "FAIL"
            extra = f"  first failure: {t.first}" if t.first else ""
            lines.append(f"  {mark} {p:<17} {t.checked - t.failed}/{t.checked}{extra}")
        lines.append("all properties pass" if self.ok() else "some properties FAIL")
        return "\n".join(lines)


def instances(seed: int, count: int, size: int, fixtures: bool = True) -> list[SupertropicalMonoid]:
    out = list(all_fixtures()) if fixtures else []
    return out + random_monoids(seed, count, size)


def run(seed: int = 1, count: int = 100, size: int = 6, cap: int = DEFAULT_CAP,
        fixtures: bool = True, only: tuple[str, ...] | None = None) -> Report:
    rep = Report()
    wanted = set(only or PROPERTIES)
    n_fixtures = len(all_fixtures()) if fixtures else 0
    for i, U in enumerate(instances(seed, count, size, fixtures)):
        rep.instances += 1
        rng = random.Random(f"{seed}:{i}")
        for p, fn in MONOID_PROPERTIES.items():
            if fn is None or p not in wanted:
                continue
            if p == "equalizer":
                gen = fn(U, cap, rng, exhaustive=i < n_fixtures)
            else:
                gen = fn(U, cap, rng)
            for ok, detail in gen:
                rep.tallies[p].add(ok, detail)
        if wanted & {"interval", "almost_lift"}:
            for phi in valuation_sources(U, cap, rng):
                rep.valuations += 1
                if "interval" in wanted:
                    for ok, detail in prop_interval(phi, cap):
                        rep.tallies["interval"].add(ok, detail)
                if "almost_lift" in wanted:
                    for ok, detail in prop_almost_lift(phi, cap):
                        rep.tallies["almost_lift"].add(ok, detail)
    return rep
