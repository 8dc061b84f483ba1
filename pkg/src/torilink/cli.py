"""Command-line entry point: ``torilink <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from . import cyclic, dehnfill, groups, symmetry, verify
from .cover import QuotientComplex, cusps, descending_link, euler_and_volume, height, spine
from .homology import choi_park_betti, reduced_ranks
from .io import load_choice, load_colouring, load_polytope, load_presentation


class UsageError(Exception):
    pass


# -- output --------------------------------------------------------------------------


def _plain(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, (tuple, list)):
        return [_plain(y) for y in x]
    return x


def emit(fmt: str, header: list[str], rows: list[list], title: str | None = None, out=None):
    out = out or sys.stdout
    rows = [[_plain(v) for v in r] for r in rows]
    if fmt == "json":
        out.write(json.dumps([dict(zip(header, r)) for r in rows], sort_keys=True) + "\n")
    elif fmt == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([" ".join(map(str, v)) if isinstance(v, list) else v for v in r])
        out.write(buf.getvalue())
    else:
        if title:
            out.write(title + "\n")
        for r in rows:
            out.write("  ".join(f"{h}={_human(v)}" for h, v in zip(header, r)) + "\n")


def _human(v):
    if isinstance(v, list):
        return "(" + ",".join(map(str, v)) + ")"
    return str(v)


def _load(args):
    try:
        P = load_polytope(args.polytope)
        c = load_colouring(P, args.colouring)
    except (ValueError, OSError, KeyError) as exc:
        raise UsageError(str(exc)) from exc
    return P, c


# -- subcommands -----------------------------------------------------------------------


def cmd_cover(args) -> int:
    P, c = _load(args)
    q = QuotientComplex(c)
    rep = args.report
    if rep == "cells":
        rows = [[k, n] for k, n in enumerate(q.cell_counts())]
        emit(args.format, ["dim", "cells"], rows, f"{q.n_top} copies of {P.name}")
        if P.dim == 4 and args.format == "human":
            chi, vol = euler_and_volume(q)
            print(f"chi={chi}  volume={vol} pi^2")
    elif rep == "homology":
        h = spine(q).homology()
        rows = [[k, b, list(t)] for k, (b, t) in enumerate(zip(h.betti, h.torsion))]
        emit(args.format, ["dim", "betti", "torsion"], rows)
    elif rep == "cusps":
        rows = [[P.names_of(P.faces[x.vertex].facets), x.copy, list(x.section.betti),
                 x.one_same_pair, x.orientable] for x in cusps(q)]
        emit(args.format, ["vertex", "copy", "section_betti", "one_same_pair", "orientable"], rows)
    elif rep == "descending-links":
        if not c.is_basis_palette():
            raise UsageError("descending links need a colouring by basis vectors")
        rows = []
        for v in range(q.n_top):
            rows.append([v, height(v), list(reduced_ranks(descending_link(q, v), P.dim - 2))])
        emit(args.format, ["vertex", "f", "reduced_betti"], rows)
    return 0


def cmd_fill(args) -> int:
    P, c = _load(args)
    try:
        choice = load_choice(P, args.choice)
        fp = dehnfill.dehn_fill(P, c, choice)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc
    sm = dehnfill.smooth(fp)
    rep = args.report
    if rep == "polytope":
        if args.format == "json":
            print(json.dumps({"filled": fp.polytope.to_dict(), "smoothed": sm.polytope.to_dict(),
                              "filled_type": dehnfill.recognize(fp.polytope),
                              "smoothed_type": dehnfill.recognize(sm.polytope)}, sort_keys=True))
        else:
            rows = [["filled", dehnfill.recognize(fp.polytope), list(fp.polytope.f_vector())],
                    ["smoothed", dehnfill.recognize(sm.polytope), list(sm.polytope.f_vector())]]
            emit(args.format, ["stage", "type", "f_vector"], rows)
    elif rep == "red-cells":
        rows = []
        for k, comp in enumerate(dehnfill.core_components(sm)):
            rows.append([k, comp.size, comp.euler, comp.orientable, comp.closed,
                         list(comp.homology.betti), list(comp.colours)])
        emit(args.format, ["component", "cells", "chi", "orientable", "closed", "betti", "colours"], rows)
    elif rep == "homology":
        h = dehnfill.filled_manifold_homology(sm)
        rows = [[k, b, list(t)] for k, (b, t) in enumerate(zip(h.betti, h.torsion))]
        emit(args.format, ["dim", "betti", "torsion"], rows)
    return 0


def cmd_betti(args) -> int:
    P, c = _load(args)
    if args.method == "choi-park":
        if P.ideal_vertices:
            raise UsageError("the Choi-Park formula needs a compact polytope")
        betti = choi_park_betti(c).betti
    else:
        betti = spine(QuotientComplex(c)).homology().betti
    emit(args.format, ["dim", "betti"], [[k, b] for k, b in enumerate(betti)])
    return 0


def cmd_alexander(args) -> int:
    try:
        p = load_presentation(args.presentation)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from exc
    if args.rewrite:
        w1, w2 = (groups.LabelWord.parse(w) for w in args.rewrite)
        d = groups.rewrite_equivalent(w1, w2, depth=args.depth)
        print(d)
        return 0 if d.found else 1
    m = groups.alexander_matrix(p)
    k = args.minors if args.minors is not None else len(p.generators) - 1
    did = False
    if args.ideal:
        ig = groups.alexander_ideal_generators(m, k)
        rows = [[_factored(g)] for g in sorted(ig.generators, key=_factor_key)]
        if args.format == "human":
            print(f"{ig.total} minors of size {k}, {ig.zero} zero, {len(ig.generators)} distinct up to units")
        emit(args.format, ["generator"], rows)
        did = True
    if args.polynomial:
        ig = groups.alexander_ideal_generators(m, k)
        if not ig.generators:
            print("0")
        else:
            print(groups.laurent_gcd(ig.generators))
        did = True
    if not did:
        names = p.generators
        rows = []
        for r, row in zip(p.relators, m):
            rows.append([r.format(names)] + [str(x) for x in row])
        emit(args.format, ["relator"] + [f"d/d{g}" for g in names], rows)
    return 0


def _factor_key(g):
    e = groups.t_minus_one_exponents(g)
    return (0, e, "") if e is not None else (1, (), str(g))


def _factored(g) -> str:
    """Products of (t_i - 1) are shown factored; anything else expanded."""
    e = groups.t_minus_one_exponents(g)
    if e is None:
        return str(g)
    parts = [f"(t{i}-1)" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e, 1) if k]
    return "*".join(parts) or "1"


def _parse_phi(text: str):
    try:
        return cyclic.check_class(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad class {text!r}: {exc}") from exc


def _parse_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}") from exc


def cmd_cyclic(args) -> int:
    if args.table:
        fmt = args.format if args.format != "human" else "csv"
        rows = [[",".join(map(str, phi)), b1, b2, b3]
                for phi, b1, b2, b3 in cyclic.table(_parse_range(args.table), primitive_only=True)]
        emit(fmt, ["phi", "b1", "b2", "b3"], rows)
        return 0
    if not args.phi:
        raise UsageError("give --phi or --table")
    phi = _parse_phi(args.phi)
    row = [",".join(map(str, phi)), cyclic.b1_cyclic_cover(phi), cyclic.b2_cyclic_cover(phi),
           cyclic.b3_cyclic_cover(phi)]
    emit(args.format, ["phi", "b1", "b2", "b3"], [row])
    return 0


def cmd_symmetry(args) -> int:
    rep = args.report
    if rep == "orders":
        emit(args.format, ["group", "order"], [["H", len(symmetry.group_H())],
                                               ["G", len(symmetry.group_G())],
                                               ["borromean", len(symmetry.borromean_symmetries())]])
    elif rep == "transitivity":
        H = symmetry.group_H()
        rows = []
        for k in range(1, 6):
            ok, sizes = symmetry.transitivity_on_subsets(H, k)
            rows.append([k, ok, sizes])
        emit(args.format, ["k", "transitive", "orbit_sizes"], rows)
    elif rep == "borromean":
        B = symmetry.borromean_symmetries()
        ok = all(g.signs[3] == g.permutation_sign() for g in B)
        _, sizes = symmetry.transitivity_on_subsets(B, 1, n=4)
        emit(args.format, ["order", "fourth_sign_rule", "orbits_on_coordinates"], [[len(B), ok, sizes]])
    elif rep == "quadrics":
        r = symmetry.quadric_checks(args.i, args.j)
        rows = [["intersection", repr(p), True] for p in r.intersection]
        rows += [["listed", repr(c.point), c.label] for c in r.critical]
        rows += [["grid", repr(c.point), c.label] for c in r.grid_critical]
        rows.append(["family_preserved", "", r.preserved])
        emit(args.format, ["kind", "point", "result"], rows)
        return 0 if r.listed_ok and r.preserved else 1
    return 0


def cmd_verify(args) -> int:
    claims = verify.CLAIMS
    if args.jobs > 1:
        with ThreadPoolExecutor(args.jobs) as pool:
            outcomes = [o for part in pool.map(lambda c: verify.run_claims([c]), claims) for o in part]
    else:
        outcomes = verify.run_claims(claims)
    rows = [[o.key, "PASS" if o.passed else "FAIL", o.statement, o.detail] for o in outcomes]
    if args.format == "human":
        width = max(len(o.key) for o in outcomes)
        for o in outcomes:
            print(f"{'PASS' if o.passed else 'FAIL'}  {o.key:<{width}}  {o.statement}")
            if not o.passed:
                print(f"      {o.detail}")
        failed = sum(not o.passed for o in outcomes)
        print(f"{len(outcomes) - failed}/{len(outcomes)} claims verified")
    else:
        emit(args.format, ["claim", "status", "statement", "detail"], rows)
    return 0 if all(o.passed for o in outcomes) else 1


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torilink",
                                     description="Coloured polytopes, Dehn filling and link invariants.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "csv", "json"), default="human")
    common.add_argument("--jobs", type=int, default=1, help="worker threads where supported")
    common.add_argument("--depth", type=int, default=64, help="search depth bound")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_polytope(p, default="P4"):
        p.add_argument("--polytope", default=default, help="JSON file or builtin name")
        p.add_argument("--colouring", default=None, help="JSON file or builtin colouring name")

    p = sub.add_parser("cover", parents=[common], help="cells, homology, cusps of the assembled manifold")
    with_polytope(p)
    p.add_argument("--report", choices=("cells", "homology", "cusps", "descending-links"), default="cells")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("fill", parents=[common], help="combinatorial Dehn filling")
    with_polytope(p)
    p.add_argument("--choice", default=dehnfill.SAME_COLOUR, help="same-colour or a JSON file")
    p.add_argument("--report", choices=("polytope", "red-cells", "homology"), default="polytope")
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("betti", parents=[common], help="Betti numbers of a small cover")
    with_polytope(p, default="pentagon_product")
    p.add_argument("--method", choices=("choi-park", "cubical"), default="choi-park")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("alexander", parents=[common], help="Fox calculus and Alexander invariants")
    p.add_argument("--presentation", default="link", help="presentation file, or 'link' for the builtin group")
    p.add_argument("--minors", type=int, default=None, help="minor size (default: generators - 1)")
    p.add_argument("--ideal", action="store_true", help="list ideal generators")
    p.add_argument("--polynomial", action="store_true", help="print the gcd of the ideal")
    p.add_argument("--rewrite", nargs=2, metavar=("W1", "W2"), help="search a label-word derivation")
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("cyclic", parents=[common], help="Betti numbers of infinite cyclic covers")
    p.add_argument("--phi", help="class as five comma-separated integers")
    p.add_argument("--table", help="coordinate range such as -2..2 or 1,2,3 (CSV output)")
    p.set_defaults(func=cmd_cyclic)

    p = sub.add_parser("symmetry", parents=[common], help="symmetry groups and quadric checks")
    p.add_argument("--report", choices=("orders", "transitivity", "borromean", "quadrics"), default="orders")
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--j", type=int, default=2)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("verify-paper", parents=[common], help="check every tabulated claim")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"torilink: error: {exc}", file=sys.stderr)
        return 2


def run(argv=None) -> int:
    """Like ``main`` but turns argparse exits into return codes."""
    try:
        return main(argv)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
