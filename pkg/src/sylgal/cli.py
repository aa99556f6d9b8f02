"""``sylgal`` command line.

Exit codes: 0 success or affirmative answer, 1 negative answer or domain
error, 2 usage error (argparse).
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import Optional

from . import constructions as C
from .canon import are_isomorphic, automorphism_group_order, canonical_form
from .chromatic import (
    as_coloring,
    iter_chromatic_colorings,
    check_structure_props,
    is_chromatic,
    is_mr,
    mr_colorable,
)
from .embed import all_embeddings, embeds_into, fmin
from .enumeration import EnumSpec, enumerate_geometries
from .errors import BudgetExhausted, SylgalError
from .galois import gf
from .geometry import is_k_sg
from .io import dump_coords, dump_geometry, load_geometry, load_points
from .witness import Collinear, find_witness, random_point_set

DEFAULT_SEED = 20240607

# published counts, used only when a row cannot be computed within budget
PAPER_TABLE1 = {
    "sg": {6: 0, 7: 1, 8: 0, 9: 1, 10: 1, 11: 1, 12: 3, 13: 7, 14: 1, 15: 119, 16: 398},
    "mr": {6: 0, 7: 0, 8: 0, 9: 0, 10: 0, 11: 0, 12: 1, 13: 1, 14: 2, 15: 6, 16: 18},
}
# MR rows count (geometry, colouring) classes with the red/blue swap identified
MR_CONVENTION = "swap-identified"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(rows, header=None, pretty=False, out=None):
    out = out or sys.stdout
    rows = [[str(v) for v in r] for r in rows]
    if header:
        rows = [list(header)] + rows
    if not pretty:
        for r in rows:
            out.write("\t".join(r) + "\n")
        return
    widths = [max(len(r[i]) for r in rows if i < len(r)) for i in range(max(map(len, rows)))]
    for r in rows:
        out.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")


# -- construct -----------------------------------------------------------------

CONSTRUCT_KINDS = ("pg", "ag", "affine-plus", "inflection", "additive", "multiplicative",
                   "parallel-planes", "parallel-lines", "table4", "van-wamelen")


def build_config(args) -> C.NamedConfig:
    kind = args.kind
    if kind == "pg":
        return C.pg_config(args.dim, gf(args.q))
    if kind == "ag":
        return C.ag_config(args.dim, gf(args.q))
    if kind == "affine-plus":
        return C.affine_plus_config(gf(args.q))
    if kind == "inflection":
        return C.inflection_config(gf(args.q))
    if kind == "additive":
        gens = None if args.gens is None else [int(t) for t in args.gens.split(",")]
        return C.additive_group_config(gf(args.q), gens, include_center=args.center, close=gens is not None)
    if kind == "multiplicative":
        f = gf(args.q)
        return C.multiplicative_group_config(f, C.multiplicative_subgroup(f, args.order))
    if kind == "parallel-planes":
        return C.parallel_planes_config(args.p)
    if kind == "parallel-lines":
        return C.parallel_lines_config(args.p, args.m)
    if kind == "table4":
        return C.table4_deletion(args.name)
    return C.van_wamelen_11(gf(3))


def cmd_construct(args) -> int:
    cfg = build_config(args)
    text = dump_geometry(cfg.geometry, cfg.coloring, cfg.coords, comment=cfg.name)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -- check / canon / iso ---------------------------------------------------------


def cmd_check(args) -> int:
    doc = load_geometry(_read(args.file))
    g, col = doc.geometry, doc.coloring
    n = g.n_points
    if args.ksg is not None:
        ok = is_k_sg(g, args.ksg)
        print(f"ok\t{n} points" if ok else f"fail\tsome line has fewer than {args.ksg} points")
        return 0 if ok else 1
    if args.mr:
        if col is None:
            col = mr_colorable(g)
            if col is None:
                print("fail\tno proper 2-colouring exists")
                return 1
            print(f"ok\t{n} points\tcolouring " + " ".join(map(str, col)))
            return 0
        ok = is_mr(g, col)
        print(f"ok\t{n} points" if ok else "fail\tsome line is single-coloured")
        return 0 if ok else 1
    if args.chromatic:
        if col is None:
            found = next(iter_chromatic_colorings(g), None)
            if found is None:
                print("fail\tno chromatic colouring exists")
                return 1
            print(f"ok\t{n} points\tcolouring " + " ".join(map(str, as_coloring(found))))
            return 0
        chk = is_chromatic(g, col)
        if chk:
            print(f"ok\t{n} points")
            return 0
        print(f"fail\tpair {chk.pair[0]} {chk.pair[1]} shares {chk.colour} without a third point of the other colour")
        return 1
    # --structure
    rep = check_structure_props(g, col if col is not None else as_coloring([3] * n))
    for name, ok, wit in rep.checks:
        print(f"{name}\t{'ok' if ok else 'fail'}" + ("" if ok else f"\t{wit}"))
    return 0 if rep.ok else 1


def cmd_canon(args) -> int:
    doc = load_geometry(_read(args.file))
    col = None if args.ignore_colours else doc.coloring
    print(canonical_form(doc.geometry, col).hex())
    if args.order:
        print(automorphism_group_order(doc.geometry, col))
    return 0


def cmd_iso(args) -> int:
    a = load_geometry(_read(args.first))
    b = load_geometry(_read(args.second))
    phi = are_isomorphic(a.geometry, a.coloring, b.geometry, b.coloring)
    if phi is None:
        print("no")
        return 1
    print("yes")
    for i, j in enumerate(phi):
        print(f"{i}\t{j}")
    return 0


# -- enumerate -------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    spec = EnumSpec(args.points, args.min_line_size, args.non_collinear, args.filter)
    try:
        res = enumerate_geometries(spec, budget=args.budget)
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 1
    os.makedirs(args.out, exist_ok=True)
    for i, (form, g, col) in enumerate(res.items):
        path = os.path.join(args.out, f"n{spec.n_points}_k{spec.min_line_size}_{i:04d}.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dump_geometry(g, col, comment=f"canonical {form.hex()}"))
    filt = args.filter or "none"
    rows = [(spec.n_points, filt, res.count())]
    if args.filter == "mr":
        c = res.counts()
        rows = [(spec.n_points, "mr", c[MR_CONVENTION]),
                (spec.n_points, "mr:swap-distinct", c["coloured"]),
                (spec.n_points, "mr:geometries", c["geometries"])]
    with open(os.path.join(args.out, "counts.tsv"), "w", encoding="utf-8") as fh:
        _emit(rows, ("n_points", "filter", "count"), out=fh)
    _emit(rows, ("n_points", "filter", "count"), pretty=args.pretty)
    return 0


# -- embed / fmin ----------------------------------------------------------------


def cmd_embed(args) -> int:
    doc = load_geometry(_read(args.file))
    f = gf(args.q)
    if args.all:
        embs = all_embeddings(doc.geometry, args.dim, f)
        if not embs:
            print("no")
            return 1
        print(f"yes\t{len(embs)}")
        for e in embs:
            sys.stdout.write(dump_coords(e.assignment) + "\n")
        return 0
    e = embeds_into(doc.geometry, args.dim, f, full_span=args.full_span)
    if e is None:
        print("no")
        return 1
    print("yes")
    sys.stdout.write(dump_coords(e.assignment))
    return 0


def cmd_fmin(args) -> int:
    r = fmin(args.k, args.dim, args.char, horizon=args.horizon, size_cap=args.size_cap,
             enum_limit=args.enum_limit)
    _emit([r.tsv_row().split("\t")], r.tsv_header().split("\t"), pretty=args.pretty)
    for note in r.notes:
        print(f"# {note}")
    return 0 if r.upper is not None else 1


# -- witness ---------------------------------------------------------------------


def cmd_witness(args) -> int:
    if args.random is not None:
        s = random_point_set(random.Random(args.seed), args.random)
    elif args.file:
        s = load_points(_read(args.file))
    else:
        raise SylgalError("give a point FILE or --random SIZE")
    cert = find_witness(s)
    if isinstance(cert, Collinear):
        print("collinear\tline " + " ".join(map(str, cert.line)))
        return 0
    on = " ".join(f"{i}:{c}" for i, c in cert.on_line)
    print(f"witness\tpair {cert.pair[0]} {cert.pair[1]}\tcolour {cert.colour}\t"
          f"line {' '.join(map(str, cert.line))}\ton-line {on}")
    return 1


# -- reports ---------------------------------------------------------------------

REPORT_IDS = ("table1-sg", "table1-mr", "table2", "table4-partial", "fmin-summary")
TABLE2_ROWS = ("PG(2,2)", "AG(2,3)", "AG(2,3)+", "PG(2,3)", "AG(2,4)", "20.2")
FMIN_CASES = ((3, 2, 2, 2), (3, 2, 3, 2), (3, 2, 5, 2), (3, 2, 7, 2), (4, 2, 3, 1),
              (4, 2, 2, 2), (4, 2, 5, 1), (3, 3, 2, 1), (3, 3, 3, 1))


def _table2_geometry(name):
    if name == "PG(2,2)":
        return C.pg_config(2, gf(2)).geometry
    if name == "AG(2,3)":
        return C.ag_config(2, gf(3)).geometry
    if name == "AG(2,3)+":
        return C.affine_plus_config(gf(3)).geometry
    if name == "PG(2,3)":
        return C.pg_config(2, gf(3)).geometry
    if name == "AG(2,4)":
        return C.ag_config(2, gf(4)).geometry
    return C.table4_deletion(name).geometry


def _known_forms():
    cfgs = [C.pg_config(2, gf(2)), C.ag_config(2, gf(3)), C.affine_plus_config(gf(3)),
            C.pg_config(2, gf(3)), C.ag_config(2, gf(4))]
    cfgs += [C.table4_deletion(n) for n in C.TABLE4_NAMES]
    return {canonical_form(c.geometry): c.name for c in cfgs}


def emit_report(report_id: str, q_list=(2, 3, 4, 5, 7, 8, 9, 13), max_n: Optional[int] = None,
                budget: Optional[float] = None) -> list[tuple]:
    """Rows ``(key, value, provenance)`` for one of :data:`REPORT_IDS`."""
    rows = []
    if report_id in ("table1-sg", "table1-mr"):
        mode = report_id[-2:]
        top = max_n or (12 if mode == "sg" else 13)
        for n in range(6, top + 1):
            k, filt = (3, None) if mode == "sg" else (2, "mr")
            try:
                res = enumerate_geometries(EnumSpec(n, k, True, filt), budget=budget)
            except BudgetExhausted:
                rows.append((str(n), PAPER_TABLE1[mode].get(n, "-"), "cited-paper"))
                continue
            val = res.count() if mode == "sg" else res.counts()[MR_CONVENTION]
            rows.append((str(n), val, "computed-exhaustive"))
    elif report_id == "table2":
        for name in TABLE2_ROWS:
            g = _table2_geometry(name)
            for q in q_list:
                e = embeds_into(g, 2, gf(q))
                rows.append((f"{name} q={q}", "yes" if e else "no",
                             "computed-witness" if e else "computed-exhaustive"))
    elif report_id == "table4-partial":
        forms = _known_forms()
        for n in range(12, (max_n or 17) + 1):
            try:
                res = enumerate_geometries(EnumSpec(n, 4, True), budget=budget)
            except BudgetExhausted:
                rows.append((str(n), "-", "cited-paper"))
                continue
            names = [forms.get(f, f"unnamed-{f.hex()[:12]}") for f, _, _ in res.items]
            rows.append((str(n), ",".join(names) or "none", "computed-exhaustive"))
    elif report_id == "fmin-summary":
        for k, n, p, h in FMIN_CASES:
            r = fmin(k, n, p, horizon=h)
            val = f"{r.lower}" if r.resolved else f"{r.lower}..{r.upper}"
            prov = "computed-exhaustive" if r.lower_provenance == "exhaustive" else "cited-paper"
            rows.append((f"f_{k},{n}({p}) h={h}", val, prov))
    else:
        raise SylgalError(f"unknown report {report_id!r}")
    return rows


def cmd_report(args) -> int:
    q_list = tuple(int(t) for t in args.q_list.split(","))
    rows = emit_report(args.id, q_list, args.max_n, args.budget)
    _emit(rows, ("key", "value", "provenance"), pretty=args.pretty)
    return 0


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sylgal", description="Sylvester-Gallai and chromatic geometry toolkit")
    ap.add_argument("--pretty", action="store_true", help="aligned text instead of TSV")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomised commands")
    # the global flags are accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("construct", help="write a named configuration")
    p.add_argument("kind", choices=CONSTRUCT_KINDS)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--p", type=int, default=5)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--order", type=int, default=3, help="multiplicative subgroup order")
    p.add_argument("--gens", help="comma-separated additive generators (field element indices)")
    p.add_argument("--center", action="store_true", help="include the common point (additive)")
    p.add_argument("--name", choices=C.TABLE4_NAMES, default="20.2")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="check a geometry file")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--chromatic", action="store_true")
    grp.add_argument("--mr", action="store_true")
    grp.add_argument("--ksg", type=int, metavar="K")
    grp.add_argument("--structure", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("canon", help="print the canonical form as hex")
    p.add_argument("file")
    p.add_argument("--order", action="store_true", help="also print the automorphism group order")
    p.add_argument("--ignore-colours", action="store_true")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("iso", help="test two geometry files for isomorphism")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("enumerate", help="isomorph-free enumeration")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--min-line-size", type=int, default=2)
    p.add_argument("--non-collinear", action="store_true")
    p.add_argument("--filter", choices=("mr", "chromatic"))
    p.add_argument("--budget", type=float, help="seconds")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("embed", help="embed a geometry file in PG(n,q)")
    p.add_argument("file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--all", action="store_true", help="all embeddings up to projective equivalence")
    p.add_argument("--full-span", action="store_true")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("fmin", help="bounds on f_{k,n}(p)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--char", type=int, required=True)
    p.add_argument("--horizon", type=int, default=2)
    p.add_argument("--size-cap", type=int, default=30)
    p.add_argument("--enum-limit", type=int)
    p.set_defaults(func=cmd_fmin)

    p = sub.add_parser("witness", help="collinearity certificate or witness line")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", type=int, metavar="SIZE", help="use a seeded random point set")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("report", help="reproduce a table")
    p.add_argument("id", choices=REPORT_IDS)
    p.add_argument("--q-list", default="2,3,4,5,7,8,9,13")
    p.add_argument("--max-n", type=int)
    p.add_argument("--budget", type=float, help="seconds per enumeration")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SylgalError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
