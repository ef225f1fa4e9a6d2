from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from supertropical import errors, fmt
from supertropical.fixtures import all_fixtures, fix2
from supertropical.generate import random_monoid
from supertropical.relations import merge

TWIN = """\
monoid twin   # the two-twin example
elements 0 e c 1 x1 x2
zero 0
one 1
e e
order 0 e c
row 0: 0 0 0 0 0 0
row e: 0 e c e c c
row c: 0 c c c c c
row 1: 0 e c 1 x1 x2
row x1: 0 c c x1 c c
row x2: 0 c c x2 c c
classes E: {x1 x2}
set S: x1 c
section s: c->x1
path g: (x1 1 x2)
"""


def test_parse_objects():
    ws = fmt.parse(TWIN)
    T = ws.monoid("twin")
    assert T.same_as(fix2())
    m, E = ws.relations["E"]
    assert m == "twin" and E == merge(T, [4, 5])
    assert sorted(T.nms(ws.sets["S"][1])) == ["c", "x1"]
    assert ws.sections["s"][1].format() == "c->x1"
    assert ws.paths["g"][1].nodes(T) == [4, 5]


def test_round_trip_is_a_fixed_point():
    text = fmt.dumps(fmt.parse(TWIN))
    assert fmt.dumps(fmt.parse(text)) == text


def test_fixtures_round_trip():
    ws = fmt.Workspace()
    for U in all_fixtures():
        ws.monoids[U.name] = U
    again = fmt.parse(fmt.dumps(ws))
    for U in all_fixtures():
        assert again.monoid(U.name).same_as(U)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_random_monoids_round_trip(seed):
    U = random_monoid(random.Random(seed), 6, "r")
    V = fmt.parse(fmt.dump_monoid(U)).monoid("r")
    assert V.same_as(U)


def test_short_row_reports_position():
    bad = TWIN.replace("row 1: 0 e c 1 x1 x2", "row 1: 0 e c 1 x1")
    with pytest.raises(errors.ParseError) as ei:
        fmt.parse(bad)
    assert "line 10" in str(ei.value) and "has 5 entries, expected 6" in str(ei.value)


@pytest.mark.parametrize(
    "edit",
    [
        ("zero 0\n", ""),
        ("row x1: 0 c c x1 c c", "row x1: 0 c c x1 c zz"),
        ("section s: c->x1", "section s: c->1"),
        ("classes E: {x1 x2}", "classes E: {x1 x2"),
    ],
)
def test_rejects_malformed_input(edit):
    with pytest.raises(errors.SupertropicalError):
        fmt.parse(TWIN.replace(*edit))


def test_unknown_monoid():
    with pytest.raises(errors.UnknownName):
        fmt.parse(TWIN).monoid("nope")
