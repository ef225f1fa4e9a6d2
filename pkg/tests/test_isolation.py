from __future__ import annotations

import pytest

from supertropical import errors
from supertropical.fixtures import fix1, fix2, fix3, fix4, fix5, fix_lone, fix_spread
from supertropical.isolation import (
    associated,
    cancellation_collapse,
    compression_of,
    is_isolated,
    is_T_tangible,
    isolate,
    isolation_invariance,
    sis_tangible_test,
    son_isolating_relation,
    tyrant_relation,
)

CASE_I = [(fix1, "1"), (fix2, "x1"), (fix3, "x"), (fix4, "x1"), (fix5, "x1")]
CASE_II = [(fix_lone, "1", "t2,1,t2"), (fix_spread, "t4", "t3,1,t3")]


def _witness(U, r):
    return ",".join(U.nms(r.witness))


@pytest.mark.parametrize("fix, x", CASE_I)
def test_case_one(fix, x):
    U = fix()
    i = U.names.index(x)
    for f in (tyrant_relation, isolate, son_isolating_relation):
        r = f(U, i)
        assert r.case == "I" and r.witness is None
    assert is_T_tangible(U, i) and sis_tangible_test(U, i)
    # in swap the associate x2 is a second son over c
    assert is_isolated(U, i) == (fix is not fix5)


@pytest.mark.parametrize("fix, x, w", CASE_II)
def test_case_two(fix, x, w):
    U = fix()
    i = U.names.index(x)
    for f in (tyrant_relation, isolate):
        r = f(U, i)
        assert r.case == "II" and _witness(U, r) == w
        assert r.relation == compression_of(U, [i]) or f is tyrant_relation
    r = son_isolating_relation(U, i)
    assert r.case == "II" and _witness(U, r) == w + ",1"
    assert not (is_T_tangible(U, i) or is_isolated(U, i) or sis_tangible_test(U, i))


def test_isolating_relation_refines_son_isolating_one():
    for fix, x in CASE_I:
        U = fix()
        i = U.names.index(x)
        assert isolate(U, i).relation <= son_isolating_relation(U, i).relation


def test_cancellation_collapse():
    assert not cancellation_collapse(fix3(), fix3().names.index("x"))
    for fix, x in CASE_I:
        if fix is not fix3:
            U = fix()
            assert cancellation_collapse(U, U.names.index(x))


def test_associated_elements():
    W = fix5()
    a, b = W.names.index("x1"), W.names.index("x2")
    assert associated(W, a, b)
    assert isolation_invariance(W, a, b).ok()
    T = fix2()
    assert not associated(T, T.names.index("x1"), T.names.index("x2"))


def test_ghost_argument_rejected():
    T = fix2()
    with pytest.raises(errors.NotTangible):
        isolate(T, T.names.index("c"))
