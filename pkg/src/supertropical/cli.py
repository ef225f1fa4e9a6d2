"""Command-line front end.

Objects come from fixture files given with ``-f``; the built-in fixtures
(minimal, twin, plane, collapse, swap, lone, spread) are always loaded
first, so ``supertropical tyrant plane x`` works without any file.
Exit codes: 0 ok, 1 property violation, 2 parse or validation error.
"""

from __future__ import annotations

import argparse
import sys

from . import errors, fmt
from .core import is_semiring
from .equalizers import feq, witness_path
from .fixtures import CATALOG, EXTRAS
from .isolation import (
    cancellation_hypothesis,
    is_isolated,
    isolate,
    son_isolating_relation,
    tyrant_relation,
)
from .relations import classify, e_nu, format_classes, validate_mfce, validate_te
from .transmissions import Transmission, divide_zero_kernel, is_mixing, is_tangible, tm_factorization_general
from . import verify as verify_mod

OK, VIOLATION, INVALID = 0, 1, 2


def _builtin() -> fmt.Workspace:
    ws = fmt.Workspace()
    for f in list(CATALOG.values()) + list(EXTRAS.values()):
        U = f()
        ws.monoids[U.name] = U
    return ws


def _load(files, builtin=True) -> fmt.Workspace:
    ws = _builtin() if builtin else fmt.Workspace()
    if files:
        text = "\n".join(open(p, encoding="utf-8").read() for p in files)
        loaded = fmt.parse(text)
        for kind in ("monoids", "semirings", "relations", "sets", "sections", "paths", "maps", "valuations"):
            getattr(ws, kind).update(getattr(loaded, kind))
    return ws


def _element(U, name):
    try:
        return U.names.index(name)
    except ValueError:
        raise errors.UnknownName(f"no element {name!r} in {U.name}") from None


def _elements(U, tokens):
    out = []
    for t in tokens:
        for part in t.replace("{", " ").replace("}", " ").replace(",", " ").split():
            out.append(_element(U, part))
    return out


class Out:
    """Collects ``key=value`` records (porcelain) or free text."""

    def __init__(self, porcelain: bool):
        self.porcelain = porcelain

    def rec(self, human: str, **fields):
        if self.porcelain:
            print(" ".join(f"{k}={v}" for k, v in fields.items()))
        else:
            print(human)


def _tok(s: str) -> str:
    return s.replace(" ", ",")


# -- commands ----------------------------------------------------------------

def cmd_check(args) -> int:
    ws = _load(args.files, builtin=False)
    out = Out(args.porcelain)
    status = OK
    for U in ws.monoids.values():
        w = is_semiring(U)
        if w:
            out.rec(f"monoid {U.name}: OK", kind="monoid", name=U.name, valid="yes", semiring="yes")
        else:
            wit = ",".join(U.nms(w.witness))
            out.rec(f"monoid {U.name}: OK; semiring: NO (witness {wit})",
                    kind="monoid", name=U.name, valid="yes", semiring="no", witness=wit)
    for R in ws.semirings.values():
        out.rec(f"semiring {R.name}: OK", kind="semiring", name=R.name, valid="yes")
    for n, (m, E) in ws.relations.items():
        U = ws.monoids[m]
        te, mf = validate_te(U, E), validate_mfce(U, E)
        label = "MFCE" if mf else ("TE" if te else "not TE")
        if not te:
            status = VIOLATION
            wit = ",".join(U.nms(te.witness)) if te.witness else ""
            out.rec(f"classes {n}: not TE (witness {wit})", kind="classes", name=n, valid="no", witness=wit)
        else:
            out.rec(f"classes {n}: {label}", kind="classes", name=n, valid="yes", type=label)
    for n, (m, s) in ws.sections.items():
        out.rec(f"section {n}: OK", kind="section", name=n, valid="yes")
    for n, (m, S) in ws.sets.items():
        out.rec(f"set {n}: OK", kind="set", name=n, valid="yes")
    for n, (m, g) in ws.paths.items():
        U = ws.monoids[m]
        ok = all(U.gh[s] == U.gh[t] for s, _, t in g.labels) and all(
            U.mul[g.labels[k][1]][g.labels[k][2]] == U.mul[g.labels[k + 1][1]][g.labels[k + 1][0]]
            for k in range(len(g) - 1)
        )
        if not ok:
            status = VIOLATION
        out.rec(f"path {n}: {'OK' if ok else 'broken'}", kind="path", name=n, valid="yes" if ok else "no")
    for n, a in ws.maps.items():
        out.rec(f"map {n}: OK", kind="map", name=n, valid="yes")
    for n, phi in ws.valuations.items():
        out.rec(f"val {n}: OK", kind="val", name=n, valid="yes")
    return status


def _transmission_for(ws, name) -> Transmission:
    if name in ws.maps:
        return ws.maps[name]
    if name in ws.relations:
        m, E = ws.relations[name]
        U = ws.monoids[m]
        from .core import quotient_monoid

        return Transmission(U, quotient_monoid(U, E, f"{U.name}/{name}"), E.labels)
    if name in ws.monoids:
        U = ws.monoids[name]
        from .core import quotient_monoid

        E = e_nu(U)
        return Transmission(U, quotient_monoid(U, E, f"{U.name}/nu"), E.labels)
    raise errors.UnknownName(f"no map, relation or monoid named {name!r}")


def _table_lines(U):
    w = max(len(n) for n in U.names)
    yield "    " + " ".join(n.rjust(w) for n in U.names)
    for x in U.elements():
        yield f"  {U.nm(x).rjust(w)}| " + " ".join(U.nm(y).rjust(w) for y in U.mul[x])


def cmd_factorize(args) -> int:
    ws = _load(args.files)
    alpha = _transmission_for(ws, args.name)
    out = Out(args.porcelain)
    if len(alpha.zero_kernel()) > 1:
        pi, alpha = divide_zero_kernel(alpha)
        out.rec(f"zero kernel divided out: {' '.join(alpha.source.names)}", zero_kernel="divided")
    f = tm_factorization_general(alpha)
    U, V = alpha.source, f.middle
    at = " ".join(f"{U.nm(x)}->{V.nm(y)}" for x, y in enumerate(f.tangible_part.table))
    am = " ".join(f"{V.nm(x)}->{f.mixing_part.target.nm(y)}" for x, y in enumerate(f.mixing_part.table))
    if args.porcelain:
        out.rec("", source=U.name, middle_size=V.size, target=alpha.target.name)
        out.rec("", tangible_part=_tok(at))
        out.rec("", middle_elements=",".join(V.names))
        out.rec("", mixing_part=_tok(am))
    else:
        print(f"{U.name} -> {alpha.target.name}")
        print(f"tangible part: {at}")
        print(f"middle ({V.size} elements):")
        for line in _table_lines(V):
            print(line)
        print(f"mixing part: {am}")
    if args.verify:
        ok = (
            f.composite().table == alpha.table
            and bool(is_tangible(f.tangible_part))
            and bool(is_mixing(f.mixing_part))
        )
        out.rec(f"verify: {'OK' if ok else 'FAILED'}", verify="pass" if ok else "fail")
        return OK if ok else VIOLATION
    return OK


def cmd_equalize(args) -> int:
    ws = _load(args.files)
    U = ws.monoid(args.monoid)
    if len(args.set) == 1 and args.set[0] in ws.sets:
        S = ws.sets[args.set[0]][1]
    else:
        S = frozenset(_elements(U, args.set))
    E = feq(U, S)
    kind = classify(U, E)
    out = Out(args.porcelain)
    cls = format_classes(U, E, nontrivial_only=True) or "(diagonal)"
    out.rec(f"Feq({' '.join(U.nms(sorted(S)))}) classes: {cls}", classes=_tok(cls))
    out.rec(f"ghost separating: {'yes' if kind.is_ghost_separating else 'no'}",
            ghost_separating="yes" if kind.is_ghost_separating else "no")
    if args.paths:
        for c in E.classes():
            for y in c[1:]:
                g = witness_path(U, S, c[0], y)
                out.rec(f"path {U.nm(c[0])} ~ {U.nm(y)}: {g.format(U)}",
                        path_from=U.nm(c[0]), path_to=U.nm(y), labels=_tok(g.format(U)))
    return OK


def _report(out, U, rep, what, paths=False, S=None):
    cls = format_classes(U, rep.relation, nontrivial_only=True) or "(diagonal)"
    w = "none" if rep.witness is None else ",".join(U.nms(rep.witness))
    out.rec(f"{what}({U.nm(rep.x)}): case {rep.case}; classes {cls}; witness {w}",
            relation=what, x=U.nm(rep.x), case=rep.case, classes=_tok(cls), witness=w)
    if paths and rep.case == "II" and S is not None:
        g = witness_path(U, S, rep.x, U.gh[rep.x])
        if g is not None:
            out.rec(f"  path {U.nm(rep.x)} -> {U.nm(U.gh[rep.x])}: {g.format(U)}", path=_tok(g.format(U)))


def _tangible_arg(ws, args):
    U = ws.monoid(args.monoid)
    x = _element(U, args.x)
    if not U.is_tangible(x):
        raise errors.NotTangible(f"{args.x} is not tangible in {U.name}", (x,))
    return U, x


def cmd_tyrant(args) -> int:
    ws = _load(args.files)
    U, x = _tangible_arg(ws, args)
    from .sections import is_tyrant, sons

    out = Out(args.porcelain)
    out.rec(f"{U.nm(x)} is {'already ' if is_tyrant(U, x) else 'not '}a tyrant",
            tyrant="yes" if is_tyrant(U, x) else "no")
    _report(out, U, tyrant_relation(U, x), "T", args.paths, sons(U, x))
    return OK


def cmd_isolate(args) -> int:
    ws = _load(args.files)
    U, x = _tangible_arg(ws, args)
    from .sections import sons_over

    out = Out(args.porcelain)
    iso = is_isolated(U, x)
    out.rec(f"{U.nm(x)} is {'already isolated' if iso else 'not isolated'}", isolated="yes" if iso else "no")
    _report(out, U, isolate(U, x), "Is", args.paths, sons_over(U, x, U.gh[x]))
    _report(out, U, son_isolating_relation(U, x), "Sis")
    held = cancellation_hypothesis(U, U.gh[x])
    out.rec(f"cancellation hypothesis at {U.nm(U.gh[x])}: {'holds' if held else 'fails'}",
            cancellation="holds" if held else "fails")
    return OK


def cmd_mfce(args) -> int:
    from .oracle import enumerate_mfce

    ws = _load(args.files)
    U = ws.monoid(args.monoid)
    rels = enumerate_mfce(U, args.cap)
    if args.dot:
        print(_dot(U, rels))
        return OK
    out = Out(args.porcelain)
    for i, E in enumerate(rels):
        k = classify(U, E)
        cls = format_classes(U, E, nontrivial_only=True) or "(diagonal)"
        tags = [t for t, on in (("tangible", k.is_ghost_separating), ("mixing", k.is_mixing)) if on]
        out.rec(f"E{i}: {cls}  {' '.join(tags)}".rstrip(), index=i, classes=_tok(cls),
                tangible="yes" if k.is_ghost_separating else "no", mixing="yes" if k.is_mixing else "no")
    return OK


def _dot(U, rels) -> str:
    lines = [f'digraph "{U.name}" {{', "  rankdir=BT;"]
    for i, E in enumerate(rels):
        label = format_classes(U, E, nontrivial_only=True) or "diag"
        lines.append(f'  E{i} [label="{label}"];')
    for i, E in enumerate(rels):
        for j, F in enumerate(rels):
            if E < F and not any(E < G < F for G in rels):
                lines.append(f"  E{i} -> E{j};")
    lines.append("}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    only = tuple(args.only) if args.only else None
    rep = verify_mod.run(args.seed, args.count, args.size, args.cap, fixtures=not args.no_fixtures, only=only)
    print(rep.porcelain() if args.porcelain else rep.human())
    return OK if rep.ok() else VIOLATION


def cmd_show(args) -> int:
    ws = _builtin()
    names = args.names or list(ws.monoids)
    for i, n in enumerate(names):
        if i:
            print()
        print(fmt.dump_monoid(ws.monoid(n)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="supertropical", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, files=True):
        sp.add_argument("--porcelain", action="store_true", help="key=value output")
        if files:
            sp.add_argument("-f", "--file", dest="files", action="append", default=[], help="fixture file")

    sp = sub.add_parser("check", help="validate every object in fixture files")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--porcelain", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("factorize", help="(t,m)-factorization of a map, relation quotient or ghost map")
    common(sp)
    sp.add_argument("name")
    sp.add_argument("--verify", action="store_true", help="re-check flags and composition")
    sp.set_defaults(func=cmd_factorize)

    sp = sub.add_parser("equalize", help="fiberwise equalizer of a set")
    common(sp)
    sp.add_argument("monoid")
    sp.add_argument("set", nargs="+", help="element names or a set name")
    sp.add_argument("--paths", action="store_true", help="print a witness path per identification")
    sp.set_defaults(func=cmd_equalize)

    for name, fn, helptext in (("tyrant", cmd_tyrant, "the relation T(x)"),
                               ("isolate", cmd_isolate, "the relations Is(x) and Sis(x)")):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("monoid")
        sp.add_argument("x")
        sp.add_argument("--paths", action="store_true")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("mfce", help="list every MFCE relation (brute force)")
    common(sp)
    sp.add_argument("monoid")
    sp.add_argument("--cap", type=int, default=verify_mod.DEFAULT_CAP)
    sp.add_argument("--dot", action="store_true", help="emit the lattice as DOT")
    sp.set_defaults(func=cmd_mfce)

    sp = sub.add_parser("verify", help="run every property on fixtures and random monoids")
    sp.add_argument("--porcelain", action="store_true")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--size", type=int, default=6)
    sp.add_argument("--cap", type=int, default=verify_mod.DEFAULT_CAP)
    sp.add_argument("--no-fixtures", action="store_true", help="random monoids only")
    sp.add_argument("--only", action="append", choices=verify_mod.PROPERTIES)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("show", help="print built-in fixtures in the file format")
    sp.add_argument("names", nargs="*")
    sp.set_defaults(func=cmd_show)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except errors.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return INVALID
    except errors.SupertropicalError as exc:
        wit = f" (witness {exc.witness})" if exc.witness is not None else ""
        print(f"error: {type(exc).__name__}: {exc}{wit}", file=sys.stderr)
        return INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


if __name__ == "__main__":
    sys.exit(main())
