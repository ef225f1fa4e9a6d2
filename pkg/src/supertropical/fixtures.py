"""Named example monoids used throughout the tests and the CLI."""

from __future__ import annotations

from functools import lru_cache

from .core import SupertropicalMonoid, validate_monoid


def _from_rule(name, elements, zero, one, e, order, rule):
    rows = {a: [rule(a, b) for b in elements] for a in elements}
    return validate_monoid(
        {"name": name, "elements": elements, "rows": rows, "zero": zero, "one": one, "e": e, "order": order}
    )


@lru_cache(maxsize=None)
def fix1() -> SupertropicalMonoid:
    """minimal: {0, e, 1}."""
    def rule(a, b):
        if "0" in (a, b):
            return "0"
        if "e" in (a, b):
            return "e"
        return "1"
    return _from_rule("minimal", ["0", "e", "1"], "0", "1", "e", ["0", "e"], rule)


def _twin_rule(extra):
    def rule(a, b):
        if "0" in (a, b):
            return "0"
        if a == "1":
            return b
        if b == "1":
            return a
        r = extra(a, b)
        if r is not None:
            return r
        if a == "e" and b == "e":
            return "e"
        return "c"
    return rule


@lru_cache(maxsize=None)
def fix2() -> SupertropicalMonoid:
    """twin: M = {0 < e < c}, tangibles 1, x1, x2 over c, all tangible products c."""
    return _from_rule(
        "twin", ["0", "e", "c", "1", "x1", "x2"], "0", "1", "e", ["0", "e", "c"], _twin_rule(lambda a, b: None)
    )


@lru_cache(maxsize=None)
def fix4() -> SupertropicalMonoid:
    """collapse: as twin, but products among x1, x2 equal x1.  Not a semiring."""
    def extra(a, b):
        if a in ("x1", "x2") and b in ("x1", "x2"):
            return "x1"
        return None
    return _from_rule("collapse", ["0", "e", "c", "1", "x1", "x2"], "0", "1", "e", ["0", "e", "c"], _twin_rule(extra))


@lru_cache(maxsize=None)
def fix5() -> SupertropicalMonoid:
    """swap: twin plus a unit u over e with u*u = 1 swapping x1 and x2."""
    swap = {"x1": "x2", "x2": "x1"}

    def extra(a, b):
        if a == "u" and b == "u":
            return "1"
        if a == "u" or b == "u":
            other = b if a == "u" else a
            if other in swap:
                return swap[other]
            return "e" if other == "e" else "c"
        return None
    return _from_rule(
        "swap", ["0", "e", "c", "1", "x1", "x2", "u"], "0", "1", "e", ["0", "e", "c"], _twin_rule(extra)
    )


def _mono_name(i, j):
    if i == j == 0:
        return "1"
    parts = []
    for var, k in (("x", i), ("y", j)):
        if k == 1:
            parts.append(var)
        elif k > 1:
            parts.append(f"{var}{k}")
    return "".join(parts)


def _ghost_name(k):
    return "e" if k == 0 else ("c" if k == 1 else f"c{k}")


@lru_cache(maxsize=None)
def fix3() -> SupertropicalMonoid:
    """plane: monomials x^i y^j of degree <= 3 over the saturating chain e < c < c2 < c3."""
    monos = [(i, d - i) for d in range(4) for i in range(d, -1, -1)]
    ghosts = list(range(4))
    names = ["0"] + [_ghost_name(k) for k in ghosts] + [_mono_name(i, j) for i, j in monos]
    info = {"0": None}
    for k in ghosts:
        info[_ghost_name(k)] = ("g", k)
    for i, j in monos:
        info[_mono_name(i, j)] = ("t", i, j)

    def rule(a, b):
        A, B = info[a], info[b]
        if A is None or B is None:
            return "0"
        if A[0] == "t" and B[0] == "t":
            i, j = A[1] + B[1], A[2] + B[2]
            return _mono_name(i, j) if i + j <= 3 else "c3"
        da = A[1] if A[0] == "g" else A[1] + A[2]
        db = B[1] if B[0] == "g" else B[1] + B[2]
        return _ghost_name(min(da + db, 3))

    return _from_rule("plane", names, "0", "1", "e", ["0"] + [_ghost_name(k) for k in ghosts], rule)


CATALOG = {"minimal": fix1, "twin": fix2, "plane": fix3, "collapse": fix4, "swap": fix5}


def catalog() -> list[SupertropicalMonoid]:
    return [f() for f in CATALOG.values()]


# Instances where isolation lands in case II.  Both were found by a seeded
# search and frozen verbatim: ``lone`` is random_monoids(1, 60, 6)[15]
# (a semiring), ``spread`` is random_monoids(3, 60, 6)[22] (not one).
_LONE = """
monoid lone
elements 0 e 1 t2
zero 0
one 1
e e
order 0 e
row 0: 0 0 0 0
row e: 0 e e e
row 1: 0 e 1 t2
row t2: 0 e t2 e
"""

_SPREAD = """
monoid spread
elements 0 e c1 1 t3 t4
zero 0
one 1
e e
order 0 e c1
row 0: 0 0 0 0 0 0
row e: 0 e c1 e c1 c1
row c1: 0 c1 c1 c1 c1 c1
row 1: 0 e c1 1 t3 t4
row t3: 0 c1 c1 t3 c1 t3
row t4: 0 c1 c1 t4 t3 t4
"""


def _parsed(text, name):
    from .fmt import parse

    return parse(text).monoids[name]


@lru_cache(maxsize=None)
def fix_lone() -> SupertropicalMonoid:
    """Case II for T, Is and Sis at ``t2`` (t2*t2 = e)."""
    return _parsed(_LONE, "lone")


@lru_cache(maxsize=None)
def fix_spread() -> SupertropicalMonoid:
    """Case II at ``t4``; not a semiring."""
    return _parsed(_SPREAD, "spread")


EXTRAS = {"lone": fix_lone, "spread": fix_spread}


def all_fixtures() -> list[SupertropicalMonoid]:
    return catalog() + [f() for f in EXTRAS.values()]
