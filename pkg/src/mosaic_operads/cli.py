"""Batch command-line surface over the library.

Subcommands mirror the library: mosaic enumeration and composition,
associahedron counts and flip graphs, mod-2 Betti numbers, fundamental
group presentations and first homology, braid normal forms and cabling,
operad axiom reports, and complex exports.

Every subcommand is deterministic for fixed inputs and supports
``--format json`` (the default; schemas documented in the README) or
``--format text``; the export commands additionally emit DOT.  Exit codes:
0 success, 1 computation diagnostic, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .associahedra import Dissection, enumerate_dissections, f_vector, flip_graph
from .braids import BraidWord, braids_equal, cable, garside_normal_form
from .homology import betti_mod2, h1, pi1_presentation
from .mosaic import (
    CellStructureError,
    MarkedDissection,
    canonicalize,
    enumerate_cells,
    mosaic_compose,
)
from .operads import (
    braid_operad_instance,
    cable_permutation_image_report,
    end_operad_instance,
    mosaic_graft_intertwining_report,
    mosaic_operad_instance,
    operad_axioms_check,
)

MOSAIC_RANGE = 8
HOMOLOGY_RANGE = 7


class UsageError(Exception):
    pass


def _thread_bound() -> int:
    """MOSAIC_THREADS is an upper bound on internal parallelism; all
    computations currently run on a single worker, which satisfies any
    positive bound."""
    raw = os.environ.get("MOSAIC_THREADS")
    if raw is None:
        return 1
    try:
        bound = int(raw)
    except ValueError:
        raise UsageError(f"MOSAIC_THREADS must be a positive integer, got {raw!r}")
    if bound < 1:
        raise UsageError(f"MOSAIC_THREADS must be a positive integer, got {raw!r}")
    return 1  # min(bound, available workers)


def _guard(n: int, limit: int, what: str, force: bool) -> None:
    if n > limit and not force:
        raise UsageError(
            f"{what} is guarded at n <= {limit} (use --force to override)"
        )


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, indent=2) if args.format == "json" else text
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _parse_marked(raw: str) -> MarkedDissection:
    if raw.startswith("@"):
        with open(raw[1:], "r", encoding="utf-8") as fh:
            raw = fh.read()
    data = json.loads(raw)
    return MarkedDissection.of(data["labels"], data.get("diagonals", []))


def _cell_payload(cell) -> dict:
    return {
        "n": cell.n,
        "dim": cell.dim,
        "labels": list(cell.canonical.labels),
        "diagonals": [list(d) for d in cell.canonical.dissection.sorted_diagonals()],
    }


# --- subcommand handlers -----------------------------------------------------


def _cmd_mosaic_cells(args) -> None:
    _guard(args.n, MOSAIC_RANGE, "mosaic enumeration", args.force)
    cx = enumerate_cells(args.n)
    counts = list(cx.counts())
    text = "\n".join(
        f"dimension {d}: {c} cells" for d, c in enumerate(counts)
    )
    _emit(args, {"n": args.n, "counts": counts}, text)


def _cmd_mosaic_euler(args) -> None:
    _guard(args.n, MOSAIC_RANGE, "mosaic enumeration", args.force)
    chi = enumerate_cells(args.n).euler_characteristic()
    _emit(args, {"n": args.n, "euler_characteristic": chi}, str(chi))


def _cmd_mosaic_compose(args) -> None:
    a = _parse_marked(args.a)
    b = _parse_marked(args.b)
    cell = mosaic_compose(canonicalize(a), args.i, canonicalize(b))
    payload = _cell_payload(cell)
    text = f"labels {payload['labels']} diagonals {payload['diagonals']} (dim {payload['dim']})"
    _emit(args, payload, text)


def _cmd_assoc_fvector(args) -> None:
    if args.n < 3:
        raise UsageError("polygons need at least 3 vertices")
    fv = list(f_vector(args.n))
    text = "\n".join(f"dimension {d}: {c} faces" for d, c in enumerate(fv))
    _emit(args, {"n": args.n, "f_vector": fv}, text)


def _cmd_assoc_flipgraph(args) -> None:
    if args.n < 4:
        raise UsageError("flip graphs need at least 4 vertices")
    graph = flip_graph(args.n)
    nodes = sorted(graph, key=lambda t: t.sorted_diagonals())
    index = {t: i for i, t in enumerate(nodes)}
    edges = sorted(
        (index[t], index[u])
        for t in nodes
        for u in graph[t]
        if index[t] < index[u]
    )
    if args.format == "dot":
        lines = ["graph flips {"]
        lines.extend(f"  t{i};" for i in range(len(nodes)))
        lines.extend(f"  t{i} -- t{j};" for i, j in edges)
        lines.append("}")
        _emit_raw(args, "\n".join(lines))
        return
    payload = {
        "n": args.n,
        "triangulations": [[list(d) for d in t.sorted_diagonals()] for t in nodes],
        "flips": [list(e) for e in edges],
    }
    text = f"{len(nodes)} triangulations, {len(edges)} flips"
    _emit(args, payload, text)


def _cmd_topology_betti2(args) -> None:
    _guard(args.n, HOMOLOGY_RANGE, "homology", args.force)
    betti = list(betti_mod2(enumerate_cells(args.n)))
    _emit(args, {"n": args.n, "betti_mod2": betti}, " ".join(map(str, betti)))


def _cmd_topology_pi1(args) -> None:
    _guard(args.n, HOMOLOGY_RANGE, "homology", args.force)
    pres = pi1_presentation(enumerate_cells(args.n))
    payload = {"n": args.n, **pres.to_json()}
    _emit(args, payload, pres.to_text())


def _cmd_topology_h1(args) -> None:
    _guard(args.n, HOMOLOGY_RANGE, "homology", args.force)
    group = h1(enumerate_cells(args.n))
    conjectured = math.comb(args.n - 1, 3)
    payload = {
        "n": args.n,
        "free_rank": group.free_rank,
        "torsion": list(group.torsion),
        "rendered": group.render(),
        "binomial_rank": conjectured,
        "matches_binomial_rank": group.free_rank == conjectured,
    }
    _emit(args, payload, group.render())


def _cmd_braid_nf(args) -> None:
    word = BraidWord.from_text(args.strands, args.word)
    nf = garside_normal_form(word)
    payload = {
        "strands": nf.strands,
        "delta_power": nf.delta_power,
        "factors": [list(f.images) for f in nf.factors],
    }
    text = f"delta_power {nf.delta_power}, factors {[list(f.images) for f in nf.factors]}"
    _emit(args, payload, text)


def _cmd_braid_equal(args) -> None:
    u = BraidWord.from_text(args.strands, args.word)
    v = BraidWord.from_text(args.strands, args.word2)
    equal = braids_equal(u, v)
    _emit(args, {"strands": args.strands, "equal": equal}, str(equal).lower())


def _cmd_braid_cable(args) -> None:
    outer = BraidWord.from_text(args.strands, args.word)
    inners = []
    for spec_text in args.inner:
        strands_text, _, word_text = spec_text.partition(":")
        try:
            strands = int(strands_text)
        except ValueError:
            raise UsageError(f"--inner expects 'strands:word', got {spec_text!r}")
        inners.append(BraidWord.from_text(strands, word_text))
    if len(inners) != outer.strands:
        raise UsageError(
            f"cable needs {outer.strands} --inner arguments, got {len(inners)}"
        )
    result = cable(outer, inners)
    payload = {"strands": result.strands, "word": result.to_text()}
    _emit(args, payload, result.to_text() or "(empty word)")


def _cmd_operad_check(args) -> None:
    reports = []
    if args.instance in ("braid", "all"):
        reports += operad_axioms_check(braid_operad_instance(), args.budget)
        reports.append(cable_permutation_image_report())
    if args.instance in ("endomorphism", "all"):
        reports += operad_axioms_check(end_operad_instance(), max(args.budget, 5000))
    if args.instance in ("mosaic", "all"):
        reports += operad_axioms_check(mosaic_operad_instance(), min(args.budget, 150))
        reports.append(mosaic_graft_intertwining_report())
    text = "\n".join(
        f"{r['instance']}: {r['law']}: {r['status']} ({r['cases']} cases)"
        for r in reports
    )
    _emit(args, {"reports": reports}, text)


def _cmd_export(args) -> None:
    _guard(args.n, MOSAIC_RANGE, "mosaic enumeration", args.force)
    cx = enumerate_cells(args.n)
    if args.what == "complex":
        payload = cx.to_json()
        _emit(args, payload, json.dumps(payload, indent=2))
    elif args.what == "skeleton":
        _emit_raw(args, cx.skeleton_dot())
    else:
        _emit_raw(args, cx.dual_dot())


def _emit_raw(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mosaic-operads",
        description="Exact combinatorics of braids, associahedra, and moduli mosaics.",
    )

    def common(p, n=False, strands=False, word=False, formats=("json", "text")):
        p.add_argument("--format", choices=formats, default="json")
        p.add_argument("--out", metavar="PATH", help="write output to a file")
        p.add_argument("--force", action="store_true", help="lift range guards")
        if n:
            p.add_argument("--n", type=int, required=True)
        if strands:
            p.add_argument("--strands", type=int, required=True)
        if word:
            p.add_argument("--word", required=True, help="signed generators, e.g. '1 2 -1'")

    top = parser.add_subparsers(dest="group", required=True)

    mosaic = top.add_parser("mosaic", help="cells of the moduli mosaic model")
    msub = mosaic.add_subparsers(dest="command", required=True)
    p = msub.add_parser("cells", help="cell counts by dimension")
    common(p, n=True)
    p.set_defaults(handler=_cmd_mosaic_cells)
    p = msub.add_parser("euler", help="Euler characteristic")
    common(p, n=True)
    p.set_defaults(handler=_cmd_mosaic_euler)
    p = msub.add_parser("compose", help="compose two cells along a mark")
    common(p)
    p.add_argument("--a", required=True, help="left cell as JSON or @file")
    p.add_argument("--b", required=True, help="right cell as JSON or @file")
    p.add_argument("--i", type=int, required=True, help="input mark of the left cell")
    p.set_defaults(handler=_cmd_mosaic_compose)

    assoc = top.add_parser("assoc", help="associahedron face counts and flips")
    asub = assoc.add_subparsers(dest="command", required=True)
    p = asub.add_parser("fvector", help="face counts by dimension")
    common(p, n=True)
    p.set_defaults(handler=_cmd_assoc_fvector)
    p = asub.add_parser("flipgraph", help="triangulation flip graph")
    common(p, n=True, formats=("json", "text", "dot"))
    p.set_defaults(handler=_cmd_assoc_flipgraph)

    topo = top.add_parser("topology", help="homology and fundamental group")
    tsub = topo.add_subparsers(dest="command", required=True)
    p = tsub.add_parser("betti2", help="mod-2 Betti numbers")
    common(p, n=True)
    p.set_defaults(handler=_cmd_topology_betti2)
    p = tsub.add_parser("pi1", help="fundamental group presentation")
    common(p, n=True)
    p.set_defaults(handler=_cmd_topology_pi1)
    p = tsub.add_parser("h1", help="first homology with the binomial-rank comparison")
    common(p, n=True)
    p.set_defaults(handler=_cmd_topology_h1)

    braid = top.add_parser("braid", help="braid words and cabling")
    bsub = braid.add_subparsers(dest="command", required=True)
    p = bsub.add_parser("nf", help="Garside normal form")
    common(p, strands=True, word=True)
    p.set_defaults(handler=_cmd_braid_nf)
    p = bsub.add_parser("equal", help="decide word equality")
    common(p, strands=True, word=True)
    p.add_argument("--word2", required=True)
    p.set_defaults(handler=_cmd_braid_equal)
    p = bsub.add_parser("cable", help="cable inner braids into an outer braid")
    common(p, strands=True, word=True)
    p.add_argument(
        "--inner",
        action="append",
        default=[],
        metavar="STRANDS:WORD",
        help="one per outer strand, e.g. --inner '2:1' --inner '1:'",
    )
    p.set_defaults(handler=_cmd_braid_cable)

    operad = top.add_parser("operad", help="operad axiom reports")
    osub = operad.add_subparsers(dest="command", required=True)
    p = osub.add_parser("check", help="verify unit and associativity laws")
    common(p)
    p.add_argument(
        "--instance",
        choices=["braid", "endomorphism", "mosaic", "all"],
        default="all",
    )
    p.add_argument("--budget", type=int, default=500, help="cases per law grid")
    p.set_defaults(handler=_cmd_operad_check)

    p = top.add_parser("export", help="export a cell complex")
    common(p, n=True, formats=("json", "text", "dot"))
    p.add_argument("--what", choices=["complex", "skeleton", "dual"], default="complex")
    p.set_defaults(handler=_cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _thread_bound()
        args.handler(args)
    except (UsageError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CellStructureError as exc:
        print(f"diagnostic: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
