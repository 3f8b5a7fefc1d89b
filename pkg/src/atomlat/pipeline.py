"""End-to-end verification pipeline and report writing.

For each enumerated lattice the pipeline realizes an ideal, computes
projective dimensions from the lcm-lattice, optionally the purely
order-theoretic invariants, and Stanley depths, then evaluates five
per-node checks:

  1. spdim I <= pdim I
  2. spdim S/I <= pdim S/I
  3. spdim I <= spdim S/I - 1
  4. spdim S/I >= pdim S/I
  5. sdepth I > sdepth S/I

In pruned mode the expensive Stanley-depth searches run only at
dag-maximal nodes within each pdim class (for the upper bounds 1 and 2)
and at dag-minimal nodes (for the lower bound 4); spdim weakly
decreases along every dag edge, so the bounds propagate to all other
nodes, and 3 and 5 follow from 1 once 2 and 4 pin spdim S/I to
pdim S/I.  Exhaustive mode searches every node directly.
"""

from __future__ import annotations

import csv
import json
import os
import time
from dataclasses import dataclass, field

from .enumeration import (
    EnumerationDag,
    generate_all,
    maximal_nodes_by_value,
    minimal_nodes_by_value,
)
from .homology import pdim_quotient
from .ideals import MonomialIdeal, format_ideal, lcm_lattice, realize
from .invariants import InvariantRecord, breadth, length, order_dimension
from .lattice import save_lattice
from .sdepth import Mode, ResourceLimitError, sdepth


CHECK_NAMES = (
    "spdim_ideal_le_pdim_ideal",
    "spdim_quotient_le_pdim_quotient",
    "spdim_ideal_lt_spdim_quotient",
    "spdim_quotient_ge_pdim_quotient",
    "sdepth_ideal_gt_sdepth_quotient",
)


@dataclass(frozen=True)
class CheckResult:
    node_id: int
    check: str
    status: str  # PASS or FAIL
    basis: str  # direct, propagated, or derived
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "node_id": self.node_id,
            "check": self.check,
            "status": self.status,
            "basis": self.basis,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    k: int
    exhaustive: bool
    records: tuple[InvariantRecord, ...]
    checks: tuple[CheckResult, ...]
    searched: dict[str, tuple[int, ...]]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(c.status == "PASS" for c in self.checks)

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if c.status != "PASS")

    def record_for(self, node_id: int) -> InvariantRecord:
        return self.records[node_id]


class _SdepthStore:
    """Crash-safe cache of sdepth values keyed by canonical form and mode."""

    def __init__(self, log_path=None, resume_paths=()):
        self.values: dict[tuple[str, str], int] = {}
        self.log_path = log_path
        for path in resume_paths:
            if path and os.path.exists(path):
                with open(path) as fh:
                    for line in fh:
                        line = line.strip()
                        if not line:
                            continue
                        try:
                            rec = json.loads(line)
                            key = (rec["canonical"], rec["mode"])
                            self.values[key] = int(rec["sdepth"])
                        except (ValueError, KeyError):
                            continue  # torn tail line from a crashed run
        self._fh = None
        if log_path:
            self._fh = open(log_path, "a")

    def get(self, canonical_hex: str, mode: Mode) -> int | None:
        return self.values.get((canonical_hex, mode.value))

    def put(self, canonical_hex: str, mode: Mode, value: int) -> None:
        self.values[(canonical_hex, mode.value)] = value
        if self._fh is not None:
            self._fh.write(json.dumps(
                {"canonical": canonical_hex, "mode": mode.value, "sdepth": value}
            ) + "\n")
            self._fh.flush()

    def close(self):
        if self._fh is not None:
            self._fh.close()
            self._fh = None


def _atomic_write_json(path, payload) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def verify(
    k: int,
    exhaustive: bool | None = None,
    jobs: int = 1,
    out_dir=None,
    resume_dir=None,
    box_cap: int | None = None,
    betti_method: str = "crosscut",
    with_invariants: bool | None = None,
) -> VerificationReport:
    """Run the full per-node verification for atom count k.

    exhaustive=None picks exhaustive search for k <= 4 and pruning for
    k = 5; with_invariants=None likewise restricts the order-theoretic
    invariants to k <= 4, where the report tables need them.
    """
    if not 2 <= k <= 5:
        raise ValueError("verify supports 2 <= k <= 5")
    if exhaustive is None:
        exhaustive = k <= 4
    if with_invariants is None:
        with_invariants = k <= 4
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    dag = generate_all(k, jobs=jobs)
    timings["enumerate"] = time.perf_counter() - t0
    count = len(dag.nodes)

    t0 = time.perf_counter()
    ideals: list[MonomialIdeal] = [realize(node.lattice) for node in dag.nodes]
    timings["realize"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    pdim2 = [
        pdim_quotient(node.lattice, method=betti_method) for node in dag.nodes
    ]
    timings["betti"] = time.perf_counter() - t0

    records = [
        InvariantRecord(
            node_id=node.id,
            cardinality=node.cardinality,
            pdim_quotient=pdim2[node.id],
            pdim_ideal=pdim2[node.id] - 1,
            extra={
                "canonical": node.canonical.hex,
                "ideal": format_ideal(ideals[node.id]),
                "num_vars": ideals[node.id].num_vars,
            },
        )
        for node in dag.nodes
    ]

    t0 = time.perf_counter()
    if with_invariants:
        for node in dag.nodes:
            rec = records[node.id]
            rec.length = length(node.lattice)
            rec.order_dimension = order_dimension(node.lattice)
            rec.breadth = breadth(node.lattice)
    timings["invariants"] = time.perf_counter() - t0

    log_path = os.path.join(out_dir, "sdepth_log.jsonl") if out_dir else None
    resume_paths = []
    if resume_dir:
        resume_paths.append(os.path.join(resume_dir, "sdepth_log.jsonl"))
    if log_path and log_path not in resume_paths:
        resume_paths.append(log_path)
    store = _SdepthStore(log_path=log_path, resume_paths=resume_paths)

    def node_sdepth(node_id: int, mode: Mode) -> int:
        hex_key = dag.nodes[node_id].canonical.hex
        val = store.get(hex_key, mode)
        if val is None:
            val = sdepth(ideals[node_id], mode, box_cap=box_cap)
            store.put(hex_key, mode, val)
        return val

    t0 = time.perf_counter()
    errors: dict[int, str] = {}
    if exhaustive:
        searched = {"all": tuple(range(count))}
        to_search_upper = range(count)
        to_search_lower = range(count)
    else:
        upper = maximal_nodes_by_value(dag, pdim2)
        lower = minimal_nodes_by_value(dag, pdim2)
        to_search_upper = sorted({i for ids in upper.values() for i in ids})
        to_search_lower = sorted({i for ids in lower.values() for i in ids})
        searched = {
            "upper": tuple(to_search_upper),
            "lower": tuple(to_search_lower),
        }
    for i in set(to_search_upper) | set(to_search_lower):
        rec = records[i]
        n = ideals[i].num_vars
        try:
            sq = node_sdepth(i, Mode.QUOTIENT)
            rec.spdim_quotient = n - sq
            if exhaustive or i in set(to_search_upper):
                si = node_sdepth(i, Mode.IDEAL)
                rec.spdim_ideal = n - si
        except ResourceLimitError as exc:
            errors[i] = str(exc)
    timings["sdepth"] = time.perf_counter() - t0
    store.close()

    t0 = time.perf_counter()
    checks = _evaluate_checks(
        dag, records, pdim2, searched, exhaustive, errors, out_dir
    )
    timings["checks"] = time.perf_counter() - t0

    report = VerificationReport(
        k=k,
        exhaustive=exhaustive,
        records=tuple(records),
        checks=tuple(checks),
        searched=searched,
        timings=timings,
    )
    if out_dir:
        _persist(report, dag, ideals, out_dir)
    return report


def _evaluate_checks(
    dag: EnumerationDag,
    records: list[InvariantRecord],
    pdim2: list[int],
    searched: dict[str, tuple[int, ...]],
    exhaustive: bool,
    errors: dict[int, str],
    out_dir,
) -> list[CheckResult]:
    count = len(dag.nodes)
    checks: list[CheckResult] = []

    def emit(node_id, name, ok, basis, detail=""):
        status = "PASS" if ok else "FAIL"
        if not ok and out_dir:
            path = os.path.join(out_dir, f"witness_node_{node_id}.json")
            save_lattice(dag.nodes[node_id].lattice, path)
            detail = (detail + f" witness={path}").strip()
        checks.append(CheckResult(node_id, name, status, basis, detail))

    if exhaustive:
        for i in range(count):
            if i in errors:
                for name in CHECK_NAMES:
                    emit(i, name, False, "direct", f"resource error: {errors[i]}")
                continue
            rec = records[i]
            s1, s2 = rec.spdim_ideal, rec.spdim_quotient
            p1, p2 = rec.pdim_ideal, rec.pdim_quotient
            emit(i, CHECK_NAMES[0], s1 <= p1, "direct")
            emit(i, CHECK_NAMES[1], s2 <= p2, "direct")
            emit(i, CHECK_NAMES[2], s1 <= s2 - 1, "direct")
            emit(i, CHECK_NAMES[3], s2 >= p2, "direct")
            emit(i, CHECK_NAMES[4], s1 < s2, "direct")
        return checks

    anc = dag.ancestor_masks()
    desc = dag.descendant_masks()
    upper_ids = set(searched["upper"])
    lower_ids = set(searched["lower"])

    # direct results at the searched extremal nodes
    upper_ok_ideal: dict[int, bool] = {}
    upper_ok_quot: dict[int, bool] = {}
    lower_ok: dict[int, bool] = {}
    for i in upper_ids:
        rec = records[i]
        known = i not in errors and rec.spdim_ideal is not None
        upper_ok_ideal[i] = known and rec.spdim_ideal <= rec.pdim_ideal
        known = i not in errors and rec.spdim_quotient is not None
        upper_ok_quot[i] = known and rec.spdim_quotient <= rec.pdim_quotient
    for i in lower_ids:
        rec = records[i]
        known = i not in errors and rec.spdim_quotient is not None
        lower_ok[i] = known and rec.spdim_quotient >= rec.pdim_quotient

    def good_mask(flags: dict[int, bool]) -> int:
        mask = 0
        for i, ok in flags.items():
            if ok:
                mask |= 1 << i
        return mask

    good_ideal = good_mask(upper_ok_ideal)
    good_quot = good_mask(upper_ok_quot)
    good_lower = good_mask(lower_ok)

    def class_witness(i: int, relation: list[int], good: int) -> bool:
        # a certifying node in the same pdim class among ancestors or
        # descendants (or i itself)
        mask = (relation[i] | (1 << i)) & good
        return any(pdim2[j] == pdim2[i] for j in _mask_bits(mask))

    for i in range(count):
        rec = records[i]
        direct_up = i in upper_ids
        basis_up = "direct" if direct_up else "propagated"
        ok_up_ideal = (
            upper_ok_ideal[i] if direct_up else class_witness(i, anc, good_ideal)
        )
        ok_up_quot = (
            upper_ok_quot[i] if direct_up else class_witness(i, anc, good_quot)
        )
        direct_low = i in lower_ids
        basis_low = "direct" if direct_low else "propagated"
        low_cover = (
            lower_ok[i] if direct_low else class_witness(i, desc, good_lower)
        )
        up_cover = ok_up_quot

        detail_up = "no certifying maximal node in pdim class"
        detail_low = "" if low_cover else "no certifying minimal node in pdim class"
        emit(i, CHECK_NAMES[0], ok_up_ideal, basis_up,
             "" if ok_up_ideal else detail_up)
        emit(i, CHECK_NAMES[1], ok_up_quot, basis_up,
             "" if ok_up_quot else detail_up)
        emit(i, CHECK_NAMES[3], low_cover, basis_low, detail_low)
        if up_cover and low_cover and rec.spdim_quotient is None:
            # both bounds certified, so spdim S/I is pinned to pdim S/I
            rec.spdim_quotient = rec.pdim_quotient
        if i in upper_ids and rec.spdim_ideal is not None \
                and rec.spdim_quotient is not None:
            ok_gap = rec.spdim_ideal < rec.spdim_quotient
            emit(i, CHECK_NAMES[2], ok_gap, "direct")
            emit(i, CHECK_NAMES[4], ok_gap, "direct")
        else:
            ok_gap = ok_up_ideal and ok_up_quot and low_cover
            emit(i, CHECK_NAMES[2], ok_gap, "derived",
                 "" if ok_gap else "bound propagation incomplete")
            emit(i, CHECK_NAMES[4], ok_gap, "derived",
                 "" if ok_gap else "bound propagation incomplete")
    return checks


def _mask_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


REPORT_COLUMNS = (
    "No.", "|L|", "pdim S/I", "spdim S/I", "pdim I", "spdim I",
    "Length", "dim", "Breadth",
)


def _record_row(no: int, rec: InvariantRecord) -> list:
    return [
        no,
        rec.cardinality,
        rec.pdim_quotient,
        rec.spdim_quotient,
        rec.pdim_ideal,
        rec.spdim_ideal,
        rec.length,
        rec.order_dimension,
        rec.breadth,
    ]


def write_report(records, out_dir, formats=("csv", "json"), ideals=None) -> list[str]:
    """Write the appendix-style tables; returns the paths written.

    Records must carry every report column; rows appear in record order
    (node id order: cardinality descending, canonical key ascending).
    """
    os.makedirs(out_dir, exist_ok=True)
    recs = list(records)
    missing = set()
    for rec in recs:
        for col, val in zip(REPORT_COLUMNS[1:], _record_row(0, rec)[1:]):
            if val is None:
                missing.add(col)
    if missing:
        raise ValueError(
            f"records incomplete for report columns: {sorted(missing)}"
        )
    paths = []
    if "csv" in formats:
        path = os.path.join(out_dir, "report.csv")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(REPORT_COLUMNS)
            for no, rec in enumerate(recs, start=1):
                writer.writerow(_record_row(no, rec))
        paths.append(path)
        if ideals is not None:
            ipath = os.path.join(out_dir, "report_ideals.csv")
            with open(ipath, "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["No.", "ideal"])
                for no, rec in enumerate(recs, start=1):
                    ideal = ideals[rec.node_id]
                    text = ideal if isinstance(ideal, str) else format_ideal(ideal)
                    writer.writerow([no, text])
            paths.append(ipath)
    if "json" in formats:
        path = os.path.join(out_dir, "report.json")
        rows = [
            dict(zip(REPORT_COLUMNS, _record_row(no, rec)))
            for no, rec in enumerate(recs, start=1)
        ]
        _atomic_write_json(path, rows)
        paths.append(path)
    return paths


def _persist(report: VerificationReport, dag: EnumerationDag, ideals, out_dir):
    _atomic_write_json(
        os.path.join(out_dir, "records.json"),
        [rec.to_dict() for rec in report.records],
    )
    _atomic_write_json(
        os.path.join(out_dir, "checks.json"),
        [c.to_dict() for c in report.checks],
    )
    _atomic_write_json(
        os.path.join(out_dir, "manifest.json"),
        {
            "k": report.k,
            "exhaustive": report.exhaustive,
            "nodes": len(dag.nodes),
            "edges": len(dag.edges),
            "searched": {key: list(v) for key, v in report.searched.items()},
            "timings": report.timings,
            "all_passed": report.all_passed,
        },
    )
    complete = all(
        rec.spdim_ideal is not None and rec.length is not None
        for rec in report.records
    )
    if complete:
        write_report(report.records, out_dir, ideals=ideals)


@dataclass(frozen=True)
class IdealReport:
    """verify_ideal output: invariants of one ideal plus check statuses."""

    ideal: str
    num_vars: int
    num_generators: int
    depth_quotient: int
    pdim_quotient: int
    pdim_ideal: int
    sdepth_quotient: int
    spdim_quotient: int
    sdepth_ideal: int
    spdim_ideal: int
    equality_expected: bool
    statuses: tuple[tuple[str, str], ...]

    def to_dict(self) -> dict:
        out = {
            "ideal": self.ideal,
            "num_vars": self.num_vars,
            "num_generators": self.num_generators,
            "depth_quotient": self.depth_quotient,
            "pdim_quotient": self.pdim_quotient,
            "pdim_ideal": self.pdim_ideal,
            "sdepth_quotient": self.sdepth_quotient,
            "spdim_quotient": self.spdim_quotient,
            "sdepth_ideal": self.sdepth_ideal,
            "spdim_ideal": self.spdim_ideal,
            "equality_expected": self.equality_expected,
            "statuses": {name: status for name, status in self.statuses},
        }
        return out


def verify_ideal(I: MonomialIdeal, box_cap: int | None = None) -> IdealReport:
    """All invariants of one ideal and the depth/sdepth comparisons.

    The equality depth S/I = sdepth S/I is only asserted as PASS/FAIL
    for ideals with at most five generators; with more generators the
    comparison is reported as HOLDS / DOES NOT HOLD.
    """
    n = I.num_vars
    L = lcm_lattice(I)
    p2 = pdim_quotient(L)
    depth = n - p2
    sq = sdepth(I, Mode.QUOTIENT, box_cap=box_cap)
    si = sdepth(I, Mode.IDEAL, box_cap=box_cap)
    expected = I.num_generators <= 5
    eq = depth == sq
    strict = si > sq
    if expected:
        statuses = (
            ("depth S/I = sdepth S/I", "PASS" if eq else "FAIL"),
            ("sdepth I > sdepth S/I", "PASS" if strict else "FAIL"),
        )
    else:
        statuses = (
            (
                "depth S/I = sdepth S/I",
                "HOLDS" if eq else
                "DOES NOT HOLD (not expected beyond 5 generators)",
            ),
            ("sdepth I > sdepth S/I", "HOLDS" if strict else "DOES NOT HOLD"),
        )
    return IdealReport(
        ideal=format_ideal(I),
        num_vars=n,
        num_generators=I.num_generators,
        depth_quotient=depth,
        pdim_quotient=p2,
        pdim_ideal=p2 - 1,
        sdepth_quotient=sq,
        spdim_quotient=n - sq,
        sdepth_ideal=si,
        spdim_ideal=n - si,
        equality_expected=expected,
        statuses=statuses,
    )
