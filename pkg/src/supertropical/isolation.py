"""Relations that turn a tangible element into a tyrant or isolate it.

For tangible ``x`` with ``a = ex``:

* ``T(x)``   fiberwise equalizer of the sons of ``x``;
* ``Is(x)``  equalizer of the sons of ``x`` over ``a``;
* ``Sis(x)`` join of ``Is(z)`` over all sons ``z``.

Each report says whether ``[x]`` stays tangible (case I) or becomes
ghost (case II), with a witness tuple from the matching criterion.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import errors
from .core import SupertropicalMonoid, compression_partition, ideal_closure, quotient_set
from .equalizers import eq, feq, feq_family
from .partition import Partition
from .sections import sons, sons_over


@dataclass(frozen=True)
class IsolationReport:
    x: int
    relation: Partition
    case: str  # "I" or "II"
    witness: tuple | None = None

    def format(self, U: SupertropicalMonoid) -> str:
        w = "none" if self.witness is None else "(" + ",".join(U.nms(self.witness)) + ")"
        return f"isolation x={U.nm(self.x)} case={self.case} witness={w}"


def _need_tangible(U, x):
    if not U.is_tangible(x):
        raise errors.NotTangible(f"{U.nm(x)} is not tangible", (x,))


def compression_of(U: SupertropicalMonoid, gens) -> Partition:
    """``E(U, X)``: compress the ideal ``M ∪ UX`` to ghosts."""
    return compression_partition(U, ideal_closure(U, gens))


def _case(U, E, x):
    return "II" if E.related(x, U.gh[x]) else "I"


def tyrant_relation(U: SupertropicalMonoid, x: int) -> IsolationReport:
    _need_tangible(U, x)
    S = sons(U, x)
    E = feq(U, S)
    case = _case(U, E, x)
    w = None
    if case == "II":
        assert E == compression_of(U, S)
        w = tyrant_obstruction(U, x)
    return IsolationReport(x, E, case, w)


def _tangible_multipliers(U, x):
    return [v for v in U.elements() if U.is_tangible(U.mul[v][x])]


def tyrant_obstruction(U: SupertropicalMonoid, x: int):
    """``(u, v, w)`` with evx = ewx, euvx = ex, wx, uvx tangible, uwx ghost."""
    _need_tangible(U, x)
    mul, gh = U.mul, U.gh
    a = gh[x]
    tv = _tangible_multipliers(U, x)
    for v in tv:
        vx = mul[v][x]
        for w in tv:
            wx = mul[w][x]
            if gh[vx] != gh[wx]:
                continue
            for u in U.elements():
                uvx = mul[u][vx]
                if gh[uvx] == a and U.is_tangible(uvx) and U.is_ghost[mul[u][wx]]:
                    return (u, v, w)
    return None


def is_T_tangible(U: SupertropicalMonoid, x: int) -> bool:
    return T_tangible_counterexample(U, x) is None


def T_tangible_counterexample(U: SupertropicalMonoid, x: int):
    """``(u, v, w)`` with evx = ewx, uvx and wx tangible but uwx not."""
    _need_tangible(U, x)
    mul, gh = U.mul, U.gh
    tv = _tangible_multipliers(U, x)
    for v in tv:
        vx = mul[v][x]
        for w in tv:
            wx = mul[w][x]
            if gh[vx] != gh[wx]:
                continue
            for u in U.elements():
                if U.is_tangible(mul[u][vx]) and not U.is_tangible(mul[u][wx]):
                    return (u, v, w)
    return None


def isolate(U: SupertropicalMonoid, x: int) -> IsolationReport:
    _need_tangible(U, x)
    a = U.gh[x]
    S = sons_over(U, x, a)
    E = eq(U, S)
    case = _case(U, E, x)
    w = None
    if case == "II":
        assert E == compression_of(U, [x])
        w = isolation_obstruction(U, x)
    return IsolationReport(x, E, case, w)


def is_isolated(U: SupertropicalMonoid, x: int) -> bool:
    return sons_over(U, x, U.gh[x]) == {x}


def isolation_obstruction(U: SupertropicalMonoid, x: int):
    """``(u, v, w)`` in ``[a:a]`` with uvx, wx tangible and uwx ghost."""
    _need_tangible(U, x)
    a = U.gh[x]
    mul = U.mul
    A = sorted(quotient_set(U, a, a))
    for v in A:
        vx = mul[v][x]
        for w in A:
            wx = mul[w][x]
            if not U.is_tangible(wx):
                continue
            for u in A:
                if U.is_tangible(mul[u][vx]) and U.is_ghost[mul[u][wx]]:
                    return (u, v, w)
    return None


def divides(U: SupertropicalMonoid, x: int, z: int) -> bool:
    return z in U.mul[x]


def associated(U: SupertropicalMonoid, x: int, xp: int) -> bool:
    return divides(U, x, xp) and divides(U, xp, x)


@dataclass(frozen=True)
class InvarianceReport:
    associated: bool
    same_relation: bool | None = None
    same_isolated: bool | None = None
    same_case: bool | None = None
    transport_ok: bool | None = None

    def ok(self) -> bool:
        return not self.associated or all((self.same_relation, self.same_isolated, self.same_case, self.transport_ok))


def isolation_invariance(U: SupertropicalMonoid, x: int, xp: int) -> InvarianceReport:
    _need_tangible(U, x)
    _need_tangible(U, xp)
    if not associated(U, x, xp):
        return InvarianceReport(False)
    rx, rxp = isolate(U, x), isolate(U, xp)
    transport = all(
        U.is_tangible(U.mul[u][x]) == U.is_tangible(U.mul[u][xp])
        and (U.gh[U.mul[u][x]] == U.gh[x]) == (U.gh[U.mul[u][xp]] == U.gh[xp])
        for u in U.elements()
    )
    return InvarianceReport(
        True,
        rx.relation == rxp.relation,
        is_isolated(U, x) == is_isolated(U, xp),
        rx.case == rxp.case,
        transport,
    )


def son_family(U: SupertropicalMonoid, x: int) -> list[frozenset[int]]:
    return [sons_over(U, z, U.gh[z]) for z in sorted(sons(U, x))]


def son_isolating_relation(U: SupertropicalMonoid, x: int) -> IsolationReport:
    _need_tangible(U, x)
    E = feq_family(U, son_family(U, x))
    case = _case(U, E, x)
    w = None
    if case == "II":
        assert E == compression_of(U, [x])
        w = sis_ghost_test(U, x)
    return IsolationReport(x, E, case, w)


def _son_quads(U, x):
    """Candidate ``(p, v, w)`` with px, vpx, wpx tangible over epx."""
    mul, gh = U.mul, U.gh
    for p in _tangible_multipliers(U, x):
        px = mul[p][x]
        c = gh[px]
        tv = [v for v in U.elements() if U.is_tangible(mul[v][px]) and gh[mul[v][px]] == c]
        for v in tv:
            for w in tv:
                yield p, px, v, w


def sis_ghost_test(U: SupertropicalMonoid, x: int):
    """``(u, v, w, p)`` with epx = evpx = ewpx, euvpx = a, uvpx, wpx tangible, uwpx = a."""
    _need_tangible(U, x)
    mul, gh = U.mul, U.gh
    a = gh[x]
    for p, px, v, w in _son_quads(U, x):
        vpx, wpx = mul[v][px], mul[w][px]
        for u in U.elements():
            uvpx = mul[u][vpx]
            if U.is_tangible(uvpx) and gh[uvpx] == a and mul[u][wpx] == a:
                return (u, v, w, p)
    return None


def sis_tangible_counterexample(U: SupertropicalMonoid, x: int):
    _need_tangible(U, x)
    mul = U.mul
    for p, px, v, w in _son_quads(U, x):
        vpx, wpx = mul[v][px], mul[w][px]
        for u in U.elements():
            if U.is_tangible(mul[u][vpx]) and not U.is_tangible(mul[u][wpx]):
                return (u, v, w, p)
    return None


def sis_tangible_test(U: SupertropicalMonoid, x: int) -> bool:
    return sis_tangible_counterexample(U, x) is None


def cancellation_hypothesis(U: SupertropicalMonoid, a: int) -> bool:
    """For b, c, d in T(U)e: abd = acd implies ab = ac."""
    Te = sorted({U.gh[t] for t in U.tangibles})
    mul = U.mul
    for b in Te:
        ab = mul[a][b]
        for c in Te:
            ac = mul[a][c]
            if ab == ac:
                continue
            for d in Te:
                if mul[ab][d] == mul[ac][d]:
                    return False
    return True


def cancellation_collapse(U: SupertropicalMonoid, x: int) -> bool:
    _need_tangible(U, x)
    held = cancellation_hypothesis(U, U.gh[x])
    if held:
        assert isolate(U, x).relation == son_isolating_relation(U, x).relation
    return held
