"""Command-line surface: enumeration, dimension tables, cohomology,
SPQR inspection, and verification suites.

Reports are TSV by default (JSON behind --format json) and deterministic
under a fixed seed.  Exit code 0 iff every requested check passes.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import homotopy as hom
from . import operators as ops
from .complexes import (
    VARIANTS,
    cohomology_dims,
    grade_range,
    table1_rows,
    verify_theorem1,
)
from .connectivity import (
    connectivity_class,
    contraction_case,
    r_edge_weight,
    recompose,
    spqr,
    tree_to_json,
)
from .canon import canonical_form
from .generate import build_basis
from .graphs import NonSimple, contract_edge, graph6_decode
from .sampling import biconnected_samples, nontri_samples


def _emit(lines: list[str], out_path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _tsv(rows: list[list], header: list[str]) -> list[str]:
    return ["\t".join(header)] + ["\t".join(str(x) for x in r) for r in rows]


def cmd_enumerate(args) -> int:
    basis = build_basis(args.loops, args.vertices, args.variant)
    _emit([k.decode("ascii") for k in basis.keys], args.out)
    return 0


def cmd_dims(args) -> int:
    rows = []
    for r in grade_range(args.loops):
        dims = [len(build_basis(args.loops, r, v)) for v in VARIANTS]
        rows.append([args.loops, r] + dims)
    if args.format == "json":
        doc = [
            {"loops": g, "vertices": r, "full": a, "biconnected": b, "triconnected": c}
            for g, r, a, b, c in rows
        ]
        _emit([json.dumps(doc, indent=2)], args.out)
    else:
        _emit(_tsv(rows, ["loops", "vertices", "full", "biconnected", "triconnected"]), args.out)
    return 0


def cmd_cohomology(args) -> int:
    rep = cohomology_dims(args.loops, args.variant)
    if args.format == "json":
        doc = {
            "loops": rep.loop_order,
            "variant": rep.variant,
            "rows": [vars(r) | {} for r in rep.rows],
            "dims_by_degree": {str(k): v for k, v in sorted(rep.table_n2.items())},
        }
        _emit([json.dumps(doc, indent=2)], args.out)
    else:
        rows = [
            [rep.loop_order, r.vertex_count, r.degree_n0, r.degree_n2,
             r.dim_basis, r.rank_out, r.rank_in, r.dim_h]
            for r in rep.rows
        ]
        _emit(
            _tsv(rows, ["loops", "vertices", "degree_n0", "degree_n2",
                        "dim_basis", "rank_out", "rank_in", "dim_H"]),
            args.out,
        )
    return 0


def cmd_spqr(args) -> int:
    g = graph6_decode(args.graph6)
    _emit([tree_to_json(spqr(g))], args.out)
    return 0


def cmd_table1(args) -> int:
    rows = table1_rows(args.max_vertices)
    if args.format == "json":
        doc = [
            {"vertices": r, "full": a, "biconnected": b, "triconnected": c}
            for r, a, b, c in rows
        ]
        _emit([json.dumps(doc, indent=2)], args.out)
    else:
        out_rows = []
        for r, full, bi, tri in rows:
            pb = f"{bi * 100 // full}%" if full else "-"
            pt = f"{tri * 100 // full}%" if full else "-"
            out_rows.append([r, full, f"{bi} ({pb})", f"{tri} ({pt})"])
        _emit(_tsv(out_rows, ["vertices", "full", "biconnected", "triconnected"]), args.out)
    return 0


def _verify_d2(args) -> tuple[bool, list[str]]:
    lines = []
    ok = True
    for g in range(3, args.max_loops + 1):
        for variant in VARIANTS:
            try:
                cohomology_dims(g, variant)
                lines.append(f"d2\t{g}\t{variant}\tPASS")
            except Exception as exc:  # ComplexError carries the witness
                ok = False
                lines.append(f"d2\t{g}\t{variant}\tFAIL\t{exc}")
    return ok, lines


def _verify_theorem1(args) -> tuple[bool, list[str]]:
    lines = []
    ok = True
    for g in range(3, args.max_loops + 1):
        rep = verify_theorem1(g)
        dims = {v: r.dims_by_degree() for v, r in rep.reports.items()}
        lines.append(f"theorem1\t{g}\t{'PASS' if rep.passed else 'FAIL'}\t{dims}")
        ok &= rep.passed
    return ok, lines


def _suite_keys(max_loops: int, variant: str) -> list[bytes]:
    keys: list[bytes] = []
    for g in range(3, max_loops + 1):
        for r in grade_range(g):
            keys += list(build_basis(g, r, variant).keys)
    return keys


def _verify_kwz(args) -> tuple[bool, list[str]]:
    keys = _suite_keys(args.max_loops, "full")
    rep = ops.identity_suite("square_zero", keys)
    ok = not rep["failures"]
    return ok, [f"kwz\tsquare_zero\t{rep['passed']}/{rep['samples']}\t"
                f"{'PASS' if ok else rep['failures'][:1]}"]


def _verify_zivkovic(args) -> tuple[bool, list[str]]:
    keys = _suite_keys(args.max_loops, "full")
    bikeys = _suite_keys(args.max_loops, "biconnected")
    lines = []
    ok = True
    for name, sample in [
        ("delta0_D", keys), ("D_squared", keys), ("nabla_D", keys),
        ("Dbar_squared", bikeys), ("nabla_Dbar", bikeys),
    ]:
        rep = ops.identity_suite(name, sample)
        good = not rep["failures"]
        ok &= good
        lines.append(f"zivkovic\t{name}\t{rep['passed']}/{rep['samples']}\t"
                     f"{'PASS' if good else rep['failures'][:1]}")
    return ok, lines


def _verify_deltak(args) -> tuple[bool, list[str]]:
    bikeys = _suite_keys(args.max_loops, "biconnected")
    lines = []
    ok = True
    for name in ("delta3", "delta4"):
        rep = ops.identity_suite(name, bikeys)
        good = not rep["failures"]
        ok &= good
        lines.append(f"deltak\t{name}\t{rep['passed']}/{rep['samples']}\t"
                     f"{'PASS' if good else rep['failures'][:1]}")
    return ok, lines


def _verify_homotopy(args) -> tuple[bool, list[str]]:
    import random

    samples = nontri_samples(args.samples, args.seed, args.max_loops)
    rng = random.Random(args.seed + 1)
    lines = []
    ok = True
    passed = 0
    for g in samples:
        lg = hom.to_labeled(g)
        order = list(lg.leaf_ids)
        rng.shuffle(order)
        lg = hom.to_labeled(g, tuple(order))
        rep = hom.homotopy_check(lg)
        if rep["passed"]:
            passed += 1
        else:
            ok = False
            from .graphs import graph6_encode
            lines.append(
                f"homotopy\tFAIL\t{graph6_encode(g).decode()}\t"
                f"k={lg.label_count}\tfirst={lg.leaf_ids[0]}\tN={rep['n_value']}"
            )
    lines.insert(0, f"homotopy\tPASS {passed}/{len(samples)}" if ok
                 else f"homotopy\tFAIL {passed}/{len(samples)}")
    return ok, lines


def _verify_spqr_roundtrip(args) -> tuple[bool, list[str]]:
    samples = biconnected_samples(args.samples, args.seed)
    ok = True
    bad = 0
    for g in samples:
        tree = spqr(g)
        if canonical_form(recompose(tree)).canon_key != canonical_form(g).canon_key:
            ok = False
            bad += 1
    return ok, [f"spqr-roundtrip\t{'PASS' if ok else 'FAIL'}\t"
                f"{len(samples) - bad}/{len(samples)}"]


def _verify_contraction_case(args) -> tuple[bool, list[str]]:
    samples = nontri_samples(args.samples, args.seed, args.max_loops)
    checked = 0
    bad = 0
    for g in samples:
        tree = spqr(g)
        weight = r_edge_weight(tree)
        for j in range(g.k):
            case = contraction_case(tree, j)
            image = contract_edge(g, j)
            if isinstance(image, NonSimple):
                continue
            checked += 1
            bicon = connectivity_class(image) >= 2
            if case == "P-kill":
                good = not bicon
            elif not bicon:
                good = False
            else:
                new_weight = r_edge_weight(spqr(image))
                if case == "R-local":
                    good = new_weight < weight
                else:  # S-shrink / S-merge
                    good = new_weight == weight
            if not good:
                bad += 1
    ok = bad == 0
    return ok, [f"contraction-case\t{'PASS' if ok else 'FAIL'}\t"
                f"{checked - bad}/{checked} edges"]


VERIFIERS = {
    "d2": _verify_d2,
    "theorem1": _verify_theorem1,
    "kwz": _verify_kwz,
    "zivkovic": _verify_zivkovic,
    "deltak": _verify_deltak,
    "homotopy": _verify_homotopy,
    "spqr-roundtrip": _verify_spqr_roundtrip,
    "contraction-case": _verify_contraction_case,
}


def cmd_verify(args) -> int:
    ok, lines = VERIFIERS[args.suite](args)
    _emit(lines, args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="graphcomplex",
        description="Exact workbench for the graph complex and its "
        "biconnected/triconnected quotients.",
    )
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--out", help="write the report to this path")
    p.add_argument("--threads", type=int, default=1,
                   help="accepted for interface stability; the engine is "
                   "single-threaded and deterministic")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("enumerate", help="graph6 stream of one basis")
    sp.add_argument("--loops", type=int, required=True)
    sp.add_argument("--vertices", type=int, required=True)
    sp.add_argument("--variant", choices=VARIANTS, default="full")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("dims", help="basis dimension table for one loop order")
    sp.add_argument("--loops", type=int, required=True)
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("cohomology", help="exact cohomology dimensions")
    sp.add_argument("--loops", type=int, required=True)
    sp.add_argument("--variant", choices=VARIANTS, default="full")
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("spqr", help="SPQR tree of a graph6 graph as JSON")
    sp.add_argument("graph6")
    sp.set_defaults(func=cmd_spqr)

    sp = sub.add_parser("table1", help="loop-order-10 dimension table")
    sp.add_argument("--max-vertices", type=int, default=8)
    sp.set_defaults(func=cmd_table1)

    sp = sub.add_parser("verify", help="run one verification suite")
    sp.add_argument("suite", choices=sorted(VERIFIERS))
    sp.add_argument("--max-loops", type=int, default=5)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
