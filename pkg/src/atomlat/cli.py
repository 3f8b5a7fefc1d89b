"""Command line interface.

Subcommands: enumerate, betti, sdepth, invariants, verify, verify-ideal,
report.  All structured output is JSON on stdout except the enumerate
and verify file trees, which land in --out directories.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .enumeration import levels
from .homology import betti_table, pdim_ideal, pdim_quotient
from .ideals import lcm_lattice, parse_ideal
from .invariants import InvariantRecord, breadth, length, order_dimension
from .lattice import Lattice, load_lattice, save_lattice
from .pipeline import verify, verify_ideal, write_report
from .sdepth import Mode, sdepth_certificate


def _cmd_enumerate(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    lat_dir = os.path.join(args.out, "lattices")
    os.makedirs(lat_dir, exist_ok=True)
    manifest_nodes = []
    edges = []
    for level_nodes, level_edges in levels(args.atoms, jobs=args.jobs):
        for node_id, key, family in level_nodes:
            lat = Lattice.from_atom_family(args.atoms, family)
            fname = f"node_{node_id:04d}.json"
            save_lattice(lat, os.path.join(lat_dir, fname))
            manifest_nodes.append({
                "id": node_id,
                "file": f"lattices/{fname}",
                "cardinality": lat.size,
                "canonical_hex": key.hex(),
            })
        edges.extend([p, c] for p, c in level_edges)
        if args.stream:
            # level data is already on disk; nothing else retained
            pass
    dag_path = os.path.join(args.out, "dag.json")
    with open(dag_path, "w") as fh:
        json.dump(
            {"k": args.atoms, "nodes": manifest_nodes, "edges": edges},
            fh, indent=2,
        )
        fh.write("\n")
    print(json.dumps({
        "k": args.atoms,
        "nodes": len(manifest_nodes),
        "edges": len(edges),
        "out": args.out,
    }))
    return 0


def _load_target_lattice(args):
    if args.lattice:
        return load_lattice(args.lattice)
    return lcm_lattice(parse_ideal(args.ideal))


def _cmd_betti(args) -> int:
    L = _load_target_lattice(args)
    table = betti_table(L, method=args.method)
    print(json.dumps({
        "pdim_quotient": pdim_quotient(L, method=args.method),
        "pdim_ideal": pdim_ideal(L, method=args.method),
        "betti": table.to_records(),
    }, indent=2))
    return 0


def _cmd_sdepth(args) -> int:
    I = parse_ideal(args.ideal)
    mode = Mode.QUOTIENT if args.quotient else Mode.IDEAL
    value, part = sdepth_certificate(I, mode, box_cap=args.box_cap)
    out = {
        "mode": mode.value,
        "sdepth": value,
        "spdim": I.num_vars - value,
    }
    if args.certificate:
        out["certificate"] = part.to_lists()
    print(json.dumps(out, indent=2))
    return 0


def _cmd_invariants(args) -> int:
    L = load_lattice(args.lattice)
    rec = InvariantRecord(
        node_id=0,
        cardinality=L.size,
        length=length(L),
        order_dimension=order_dimension(L),
        breadth=breadth(L),
    )
    print(json.dumps(rec.to_dict(), indent=2))
    return 0


def _cmd_verify(args) -> int:
    exhaustive = True if args.exhaustive else None
    report = verify(
        args.atoms,
        exhaustive=exhaustive,
        jobs=args.jobs,
        out_dir=args.out,
        resume_dir=args.resume,
        box_cap=args.box_cap,
    )
    summary = {
        "k": report.k,
        "exhaustive": report.exhaustive,
        "nodes": len(report.records),
        "checks": len(report.checks),
        "failures": [c.to_dict() for c in report.failures],
        "all_passed": report.all_passed,
        "timings": report.timings,
    }
    print(json.dumps(summary, indent=2))
    return 0 if report.all_passed else 1


def _cmd_verify_ideal(args) -> int:
    I = parse_ideal(args.ideal)
    rep = verify_ideal(I, box_cap=args.box_cap)
    print(json.dumps(rep.to_dict(), indent=2))
    ok = all(status != "FAIL" for _, status in rep.statuses)
    return 0 if ok else 1


def _cmd_report(args) -> int:
    records_path = os.path.join(args.in_dir, "records.json")
    with open(records_path) as fh:
        data = json.load(fh)
    records = [InvariantRecord.from_dict(d) for d in data]
    ideals = {rec.node_id: rec.extra.get("ideal", "") for rec in records}
    paths = write_report(
        records, args.in_dir, formats=(args.format,), ideals=ideals
    )
    print(json.dumps({"written": paths}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atomlat",
        description="Atomistic lattice enumeration and Stanley depth toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate atomistic lattices")
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--stream", action="store_true",
                   help="write levels as they complete instead of at the end")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("betti", help="Betti table from a lattice or ideal")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--lattice", help="lattice JSON file")
    grp.add_argument("--ideal", help="ideal text, e.g. 'x1*x2, x2*x3'")
    p.add_argument("--method", choices=("interval", "crosscut"),
                   default="interval")
    p.set_defaults(func=_cmd_betti)

    p = sub.add_parser("sdepth", help="Stanley depth of an ideal or quotient")
    p.add_argument("--ideal", required=True)
    p.add_argument("--quotient", action="store_true",
                   help="compute sdepth of S/I instead of I")
    p.add_argument("--certificate", action="store_true",
                   help="include the interval partition")
    p.add_argument("--box-cap", type=int, default=None)
    p.set_defaults(func=_cmd_sdepth)

    p = sub.add_parser("invariants", help="length, order dimension, breadth")
    p.add_argument("--lattice", required=True)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("verify", help="run the per-node verification")
    p.add_argument("--atoms", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true",
                   help="search every node instead of pruning")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--resume", default=None,
                   help="directory with a previous run's sdepth log")
    p.add_argument("--out", default=None)
    p.add_argument("--box-cap", type=int, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("verify-ideal", help="check one ideal's depth chain")
    p.add_argument("--ideal", required=True)
    p.add_argument("--box-cap", type=int, default=None)
    p.set_defaults(func=_cmd_verify_ideal)

    p = sub.add_parser("report", help="write report tables from records.json")
    p.add_argument("--in", dest="in_dir", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
