from __future__ import annotations

import random

from hypothesis import given, settings, strategies as st

from supertropical.equalizers import (
    SPath,
    concat,
    eq,
    feq,
    feq_family,
    invert,
    is_ghost_separating_feq,
    scale,
    validate_path,
    witness_path,
)
from supertropical.fixtures import fix2, fix3, fix4
from supertropical.generate import random_monoid
from supertropical.oracle import finest_with
from supertropical.relations import format_classes, validate_mfce


def ix(U, *names):
    return [U.names.index(n) for n in names]


def test_path_operations():
    T = fix2()
    x1, x2, one, c = ix(T, "x1", "x2", "1", "c")
    S = {x1, x2}
    g = SPath(((x1, one, x2),))
    assert validate_path(T, g, S)
    assert g.nodes(T) == [x1, x2]
    assert invert(g).nodes(T) == [x2, x1]
    assert concat(T, g, invert(g)).nodes(T) == [x1, x2, x1]
    assert scale(T, x1, g).nodes(T) == [c, c]


def test_feq_examples():
    T = fix2()
    assert format_classes(T, feq(T, ix(T, "x1", "c")), True) == "{c x1}"
    assert feq(T, ix(T, "x1")).is_diag()
    P = fix3()
    fam = [ix(P, "x2", "xy"), ix(P, "x3", "x2y", "xy2")]
    assert format_classes(P, feq_family(P, fam), True) == "{x2 xy} {x3 x2y xy2}"


def test_witness_paths():
    P = fix3()
    S = ix(P, "x2", "xy")
    x3, x2y = ix(P, "x3", "x2y")
    g = witness_path(P, S, x3, x2y)
    assert g.format(P) == "(x2 x xy)"
    assert g.start(P) == x3 and g.end(P) == x2y
    T = fix2()
    assert witness_path(T, ix(T, "x1"), *ix(T, "x1", "x2")) is None


def test_ghost_separation():
    T = fix2()
    assert is_ghost_separating_feq(T, ix(T, "x1", "x2"))
    C = fix4()
    assert is_ghost_separating_feq(C, ix(C, "x1"))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_feq_is_the_finest_equalizing_mfce(seed):
    rng = random.Random(seed)
    U = random_monoid(rng, 6)
    for S in ([x for x in U.elements() if U.gh[x] == U.gh[y]] for y in rng.sample(list(U.elements()), 2)):
        F = feq(U, S)
        assert validate_mfce(U, F)
        if all(U.gh[s] == U.gh[S[0]] for s in S):
            least = finest_with(U, lambda E: all(E.related(S[0], s) for s in S))
            assert least == F
        E = eq(U, S)
        assert F <= E
