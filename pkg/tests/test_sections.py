from __future__ import annotations

import pytest

from supertropical import errors
from supertropical.fixtures import CATALOG, fix1, fix2, fix3, fix4, fix5
from supertropical.relations import classify, format_classes, merge, quotient
from supertropical.sections import (
    all_sections,
    igs_join,
    igs_meet,
    is_primitive,
    make_section,
    primitive_sections_below,
    pushforward,
    relation_of_section,
    section_of_relation,
    section_of_tyrant,
    sons,
    sons_over,
    trivial_section,
    tyrants,
    validate_ig_section,
)
from supertropical.core import hat


def ix(U, *names):
    return [U.names.index(n) for n in names]


def sec(U, **kw):
    return make_section(U, {U.names.index(a): U.names.index(b) for a, b in kw.items()})


def test_collapse_section():
    C = fix4()
    s = sec(C, c="x1")
    assert validate_ig_section(s)
    E = relation_of_section(s)
    assert format_classes(C, E, True) == "{c x1}"
    assert classify(C, E).is_mixing
    assert section_of_relation(C, E) == s


def test_twin_sections_have_no_join():
    T = fix2()
    s, t = sec(T, c="x1"), sec(T, c="x2")
    assert validate_ig_section(s) and validate_ig_section(t)
    assert igs_meet(s, t) == trivial_section(T)
    with pytest.raises(errors.NoUpperBound):
        igs_join(s, t)


def test_zero_is_fixed():
    U = fix1()
    with pytest.raises(errors.SC1Violated):
        make_section(U, {0: 2})


def test_sons():
    P = fix3()
    x, c2 = ix(P, "x", "c2")
    assert P.nms(sorted(sons_over(P, x, c2))) == ["x2", "xy"]
    C = fix4()
    assert C.nms(sorted(sons(C, C.names.index("x1")))) == ["x1"]


@pytest.mark.parametrize(
    "fix, expected",
    [(fix1, ["1"]), (fix2, ["x1", "x2"]), (fix3, ["x3", "x2y", "xy2", "y3"]), (fix4, ["x1"]), (fix5, [])],
)
def test_tyrants(fix, expected):
    U = fix()
    assert U.nms(tyrants(U)) == expected
    for x in tyrants(U):
        assert validate_ig_section(section_of_tyrant(U, x))


def test_primitive_decomposition():
    C = fix4()
    s = sec(C, c="x1")
    assert is_primitive(s)
    assert [p.format() for p in primitive_sections_below(s)] == ["c->x1"]


def test_every_section_is_the_join_of_its_primitives():
    for name, f in CATALOG.items():
        U = f()
        for s in all_sections(U):
            if not validate_ig_section(s):
                continue
            acc = trivial_section(U)
            for p in primitive_sections_below(s):
                acc = igs_join(acc, p)
            assert acc == s, (name, s)


def test_pushforward():
    C = fix4()
    s = sec(C, c="x1")
    assert pushforward(hat(C)[0], s).is_trivial()
    W = fix5()
    pi, Q = quotient(W, merge(W, ix(W, "x1", "x2")))
    t = sec(W, c="x1")
    assert pushforward(pi, t).format() == "c->x1|x2"
