"""Line-oriented fixture format.

A ``monoid`` (or ``semiring``) line opens a block of table lines::

    monoid twin
    elements 0 e c 1 x1 x2
    zero 0
    one 1
    e e
    order 0 e c
    row 0: 0 0 0 0 0 0
    ...

Object lines refer to the most recent monoid unless they name one::

    classes E: {x1 x2}
    set S: x1 x2
    section s: c->x1
    path g: (x1 1 x2)
    map alpha: twin -> other: <images in source order>
    val phi: R -> twin: <images in R order>

Semiring blocks carry ``add`` rows next to ``row`` lines.  Comments start
with ``#``.  ``dumps(parse(text))`` is the canonical form and is a fixed
point of ``dumps . parse``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import errors
from .core import SupertropicalMonoid, validate_monoid
from .equalizers import SPath
from .partition import Partition
from .sections import IgSection, make_section, validate_ig_section
from .transmissions import Transmission
from .valuations import FiniteSemiring, MSupervaluation, validate_m_supervaluation

_TOKEN = re.compile(r"->|[{}():]|[^\s{}():>-]+")
_BLOCK_KEYS = ("elements", "zero", "one", "e", "order", "row", "add")


@dataclass
class Workspace:
    monoids: dict[str, SupertropicalMonoid] = field(default_factory=dict)
    semirings: dict[str, FiniteSemiring] = field(default_factory=dict)
    relations: dict[str, tuple[str, Partition]] = field(default_factory=dict)
    sets: dict[str, tuple[str, frozenset[int]]] = field(default_factory=dict)
    sections: dict[str, tuple[str, IgSection]] = field(default_factory=dict)
    paths: dict[str, tuple[str, SPath]] = field(default_factory=dict)
    maps: dict[str, Transmission] = field(default_factory=dict)
    valuations: dict[str, MSupervaluation] = field(default_factory=dict)

    def monoid(self, name: str) -> SupertropicalMonoid:
        try:
            return self.monoids[name]
        except KeyError:
            raise errors.UnknownName(f"no monoid named {name!r}") from None

    def count(self) -> int:
        return sum(len(d) for d in (self.monoids, self.semirings, self.relations, self.sets,
                                    self.sections, self.paths, self.maps, self.valuations))


def _tokens(line: str):
    body = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.ws = Workspace()
        self.block: dict | None = None
        self.current: str | None = None

    def fail(self, msg, ln, col=1):
        raise errors.ParseError(msg, ln, col)

    def run(self) -> Workspace:
        for ln, line in enumerate(self.lines, 1):
            toks = _tokens(line)
            if not toks:
                continue
            head, col = toks[0]
            if head in _BLOCK_KEYS:
                if self.block is None:
                    self.fail(f"{head!r} outside a monoid or semiring block", ln, col)
                self.block_line(head, toks[1:], ln)
                continue
            self.close()
            handler = getattr(self, "on_" + head, None)
            if handler is None:
                self.fail(f"unknown keyword {head!r}", ln, col)
            handler(toks[1:], ln)
        self.close()
        return self.ws

    # -- blocks --------------------------------------------------------------

    def _open(self, kind, toks, ln):
        if len(toks) != 1:
            self.fail(f"{kind} needs exactly one name", ln)
        name = toks[0][0]
        table = self.ws.monoids if kind == "monoid" else self.ws.semirings
        if name in table:
            self.fail(f"duplicate {kind} name {name!r}", ln, toks[0][1])
        self.block = {"kind": kind, "name": name, "line": ln, "rows": {}, "add": {}}

    def on_monoid(self, toks, ln):
        self._open("monoid", toks, ln)

    def on_semiring(self, toks, ln):
        self._open("semiring", toks, ln)

    def block_line(self, head, toks, ln):
        b = self.block
        if head in ("row", "add"):
            if len(toks) < 2 or toks[1][0] != ":":
                self.fail(f"expected '{head} <id>: <products>'", ln)
            key = "rows" if head == "row" else "add"
            who = toks[0][0]
            if who in b[key]:
                self.fail(f"duplicate {head} for {who!r}", ln, toks[0][1])
            b[key][who] = (toks[2:], ln)
            return
        if head in b:
            self.fail(f"duplicate {head!r} line", ln)
        vals = [t for t, _ in toks]
        if head in ("zero", "one", "e") and len(vals) != 1:
            self.fail(f"{head!r} takes one element", ln)
        b[head] = (vals, ln, toks)

    def close(self):
        b, self.block = self.block, None
        if b is None:
            return
        ln = b["line"]
        need = ["elements", "zero", "one"] + (["e", "order"] if b["kind"] == "monoid" else [])
        for k in need:
            if k not in b:
                self.fail(f"{b['kind']} {b['name']} has no {k!r} line", ln)
        names = b["elements"][0]
        idx = {n: i for i, n in enumerate(names)}
        if len(idx) != len(names):
            self.fail("duplicate element names", b["elements"][1])

        def table(key):
            rows = []
            for n in names:
                if n not in b[key]:
                    self.fail(f"missing {'row' if key == 'rows' else 'add'} for {n!r}", ln)
                toks, rl = b[key][n]
                if len(toks) != len(names):
                    col = toks[-1][1] if toks else 1
                    self.fail(f"row {n!r} has {len(toks)} entries, expected {len(names)}", rl, col)
                row = []
                for t, c in toks:
                    if t not in idx:
                        self.fail(f"unknown element {t!r}", rl, c)
                    row.append(idx[t])
                rows.append(row)
            extra = set(b[key]) - set(names)
            if extra:
                self.fail(f"rows for unknown elements {sorted(extra)}", ln)
            return rows

        def one_el(key):
            vals, kl, toks = b[key]
            if vals[0] not in idx:
                self.fail(f"unknown element {vals[0]!r}", kl, toks[0][1])
            return vals[0]

        mul = table("rows")
        if b["kind"] == "monoid":
            for v, c in zip(*[b["order"][0], [t[1] for t in b["order"][2]]]):
                if v not in idx:
                    self.fail(f"unknown element {v!r}", b["order"][1], c)
            spec = {
                "name": b["name"], "elements": names, "rows": [[names[v] for v in r] for r in mul],
                "zero": one_el("zero"), "one": one_el("one"), "e": one_el("e"), "order": b["order"][0],
            }
            self.ws.monoids[b["name"]] = validate_monoid(spec)
            self.current = b["name"]
        else:
            add = table("add")
            self.ws.semirings[b["name"]] = FiniteSemiring(
                add, mul, idx[one_el("zero")], idx[one_el("one")], names, b["name"]
            )

    # -- objects -------------------------------------------------------------

    def _header(self, toks, ln, kind, store):
        """``<name>[ <monoid>]:`` -> (name, monoid name, rest)."""
        try:
            colon = [t for t, _ in toks].index(":")
        except ValueError:
            self.fail(f"{kind} line needs ':'", ln)
        head = toks[:colon]
        if len(head) not in (1, 2):
            self.fail(f"expected '{kind} <name> [<monoid>]:'", ln)
        name = head[0][0]
        if name in store:
            self.fail(f"duplicate {kind} name {name!r}", ln, head[0][1])
        if len(head) == 2:
            mname = head[1][0]
            if mname not in self.ws.monoids:
                self.fail(f"unknown monoid {mname!r}", ln, head[1][1])
        elif self.current is None:
            self.fail(f"{kind} before any monoid", ln)
        else:
            mname = self.current
        return name, mname, toks[colon + 1:]

    def _el(self, U, tok, ln):
        t, c = tok
        try:
            return U.names.index(t)
        except ValueError:
            self.fail(f"unknown element {t!r} in {U.name}", ln, c)

    def _groups(self, toks, ln, open_, close):
        groups, cur = [], None
        for tok in toks:
            t = tok[0]
            if t == open_:
                if cur is not None:
                    self.fail(f"nested {open_!r}", ln, tok[1])
                cur = []
            elif t == close:
                if cur is None:
                    self.fail(f"unbalanced {close!r}", ln, tok[1])
                groups.append(cur)
                cur = None
            elif cur is None:
                self.fail(f"expected {open_!r}", ln, tok[1])
            else:
                cur.append(tok)
        if cur is not None:
            self.fail(f"missing {close!r}", ln)
        return groups

    def on_classes(self, toks, ln):
        name, mname, rest = self._header(toks, ln, "classes", self.ws.relations)
        U = self.ws.monoids[mname]
        groups = [[self._el(U, t, ln) for t in g] for g in self._groups(rest, ln, "{", "}")]
        seen = [x for g in groups for x in g]
        if len(seen) != len(set(seen)):
            self.fail("element listed in two classes", ln)
        self.ws.relations[name] = (mname, Partition.from_classes(U.size, groups))

    def on_set(self, toks, ln):
        name, mname, rest = self._header(toks, ln, "set", self.ws.sets)
        U = self.ws.monoids[mname]
        self.ws.sets[name] = (mname, frozenset(self._el(U, t, ln) for t in rest))

    def on_section(self, toks, ln):
        name, mname, rest = self._header(toks, ln, "section", self.ws.sections)
        U = self.ws.monoids[mname]
        mapping = {}
        if len(rest) % 3:
            self.fail("expected 'a->x' entries", ln)
        for i in range(0, len(rest), 3):
            a, arrow, x = rest[i:i + 3]
            if arrow[0] != "->":
                self.fail("expected '->'", ln, arrow[1])
            mapping[self._el(U, a, ln)] = self._el(U, x, ln)
        s = make_section(U, mapping)
        validate_ig_section(s)
        self.ws.sections[name] = (mname, s)

    def on_path(self, toks, ln):
        name, mname, rest = self._header(toks, ln, "path", self.ws.paths)
        U = self.ws.monoids[mname]
        labels = []
        for g in self._groups(rest, ln, "(", ")"):
            if len(g) != 3:
                self.fail("path labels are (s u t) triples", ln)
            labels.append(tuple(self._el(U, t, ln) for t in g))
        self.ws.paths[name] = (mname, SPath(tuple(labels)))

    def _arrow(self, toks, ln, kind, store, src_kind):
        vals = [t for t, _ in toks]
        if len(vals) < 6 or vals[1] != ":" or vals[3] != "->" or vals[5] != ":":
            self.fail(f"expected '{kind} <name>: <source> -> <target>: <images>'", ln)
        name = vals[0]
        if name in store:
            self.fail(f"duplicate {kind} name {name!r}", ln, toks[0][1])
        src_store = self.ws.monoids if src_kind == "monoid" else self.ws.semirings
        if vals[2] not in src_store:
            self.fail(f"unknown {src_kind} {vals[2]!r}", ln, toks[2][1])
        if vals[4] not in self.ws.monoids:
            self.fail(f"unknown monoid {vals[4]!r}", ln, toks[4][1])
        src, tgt = src_store[vals[2]], self.ws.monoids[vals[4]]
        imgs = toks[6:]
        if len(imgs) != src.size:
            self.fail(f"expected {src.size} images, got {len(imgs)}", ln)
        return name, src, tgt, [self._el(tgt, t, ln) for t in imgs]

    def on_map(self, toks, ln):
        name, U, V, table = self._arrow(toks, ln, "map", self.ws.maps, "monoid")
        self.ws.maps[name] = Transmission(U, V, table)

    def on_val(self, toks, ln):
        name, R, U, table = self._arrow(toks, ln, "val", self.ws.valuations, "semiring")
        phi = MSupervaluation(R, U, tuple(table))
        validate_m_supervaluation(phi)
        self.ws.valuations[name] = phi


def parse(text: str) -> Workspace:
    return _Parser(text).run()


def load(path) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def load_many(paths) -> Workspace:
    return parse("\n".join(open(p, encoding="utf-8").read() for p in paths))


# -- output ------------------------------------------------------------------

def dump_monoid(U: SupertropicalMonoid) -> str:
    nm = U.nm
    out = [f"monoid {U.name}", "elements " + " ".join(U.names), f"zero {nm(U.zero)}", f"one {nm(U.one)}",
           f"e {nm(U.e)}", "order " + " ".join(nm(a) for a in U.ghost_order)]
    for x in U.elements():
        out.append(f"row {nm(x)}: " + " ".join(nm(y) for y in U.mul[x]))
    return "\n".join(out)


def dump_semiring(R: FiniteSemiring) -> str:
    nm = R.nm
    out = [f"semiring {R.name}", "elements " + " ".join(R.names), f"zero {nm(R.zero)}", f"one {nm(R.one)}"]
    for x in R.elements():
        out.append(f"add {nm(x)}: " + " ".join(nm(y) for y in R.add[x]))
    for x in R.elements():
        out.append(f"row {nm(x)}: " + " ".join(nm(y) for y in R.mul[x]))
    return "\n".join(out)


def dump_classes(U: SupertropicalMonoid, name: str, E: Partition) -> str:
    body = " ".join("{" + " ".join(U.nms(c)) + "}" for c in E.classes())
    return f"classes {name} {U.name}: {body}"


def dump_set(U: SupertropicalMonoid, name: str, S) -> str:
    return f"set {name} {U.name}: " + " ".join(U.nms(sorted(S)))


def dump_section(name: str, s: IgSection) -> str:
    return f"section {name} {s.U.name}: {s.format()}".rstrip()


def dump_path(U: SupertropicalMonoid, name: str, g: SPath) -> str:
    return f"path {name} {U.name}: {g.format(U)}".rstrip()


def dump_map(name: str, a: Transmission) -> str:
    return f"map {name}: {a.source.name} -> {a.target.name}: " + " ".join(a.target.nms(a.table))


def dump_val(name: str, phi: MSupervaluation) -> str:
    return f"val {name}: {phi.R.name} -> {phi.U.name}: {phi.format()}"


def dumps(ws: Workspace) -> str:
    parts = [dump_monoid(U) for U in ws.monoids.values()]
    parts += [dump_semiring(R) for R in ws.semirings.values()]
    lines = []
    for n, (m, E) in ws.relations.items():
        lines.append(dump_classes(ws.monoids[m], n, E))
    for n, (m, S) in ws.sets.items():
        lines.append(dump_set(ws.monoids[m], n, S))
    for n, (m, s) in ws.sections.items():
        lines.append(dump_section(n, s))
    for n, (m, g) in ws.paths.items():
        lines.append(dump_path(ws.monoids[m], n, g))
    for n, a in ws.maps.items():
        lines.append(dump_map(n, a))
    for n, phi in ws.valuations.items():
        lines.append(dump_val(n, phi))
    if lines:
        parts.append("\n".join(lines))
    return "\n\n".join(parts) + "\n"

