"""Command-line front end: compute, verify, conjecture, table.

  compute     solve one graph (named family, graph6, or edge-list file)
  verify      sweep every nonisomorphic graph up to --nmax and check the
              solver against all applicable bounds, closed forms, and
              characterizations; nonzero exit on any failure
  conjecture  report graphs with max degree >= C(s,2)+2 whose damage
              number exceeds n-3 (reported, never asserted)
  table       family table: solver value vs closed form

Formats: text (default), json, csv.  CSV columns are fixed and listed in
the README.  Exit codes: 0 pass, 1 verification failure, 2 usage error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import multiprocessing
import random
import sys
import time
from dataclasses import dataclass, field

from . import theory
from .cache import ENV_VAR, ResultsCache
from .engine import DEFAULT_STATE_CAP, StateCapExceeded
from .graphs import (FamilySpec, Graph, canonical_graph, components,
                     enumerate_nonisomorphic, family, max_degree,
                     parse_edge_list_text, parse_family, parse_graph6,
                     write_graph6)
from .solver import damage_number

_COMPUTE_COLUMNS = ["graph6", "s", "value", "best_cop_start", "states",
                    "iterations", "wall_ms"]
_VERIFY_COLUMNS = ["n", "graph6", "s", "value", "lo", "hi", "exact",
                   "status", "failed_checks"]
_CONJECTURE_COLUMNS = ["n", "graph6", "s", "max_degree", "value", "threshold"]
_TABLE_COLUMNS = ["family", "s", "value", "closed_form", "match"]


def _solve_payload(g: Graph, s: int, state_cap: int) -> dict:
    t0 = time.perf_counter()
    res = damage_number(g, s, state_cap)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    return {
        "value": res.value,
        "best_cop_start": res.best_cop_start,
        "states": res.states_explored,
        "iterations": res.iterations,
        "wall_ms": round(wall_ms, 3),
    }


def solve_with_cache(g: Graph, s: int, cache: ResultsCache | None,
                     state_cap: int) -> tuple[dict, bool]:
    """(payload, came_from_cache); payload keys match the compute JSON."""
    g6 = write_graph6(canonical_graph(g))
    if cache is not None:
        hit = cache.get(g6, s)
        if hit is not None:
            return hit, True
    payload = _solve_payload(g, s, state_cap)
    if cache is not None:
        cache.put(g6, s, payload)
    return payload, False


def _solve_task(args: tuple[str, int, int]):
    g6, s, state_cap = args
    try:
        return g6, s, _solve_payload(parse_graph6(g6), s, state_cap)
    except StateCapExceeded:
        return g6, s, None


def _solve_many(tasks: list[tuple[str, int, int]], jobs: int) -> dict:
    """Solve (graph6, s) tasks, optionally across processes."""
    out = {}
    if jobs > 1 and len(tasks) > 1:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(jobs) as pool:
            for g6, s, payload in pool.imap_unordered(_solve_task, tasks):
                out[(g6, s)] = payload
    else:
        for task in tasks:
            g6, s, payload = _solve_task(task)
            out[(g6, s)] = payload
    return out


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

@dataclass
class SweepRecord:
    n: int
    graph6: str
    s: int
    value: int | None
    lo: int | None
    hi: int | None
    exact: int | None
    checks: dict[str, bool] = field(default_factory=dict)
    status: str = "pass"
    from_cache: bool = False

    @property
    def failed_checks(self) -> list[str]:
        return sorted(tag for tag, ok in self.checks.items() if not ok)


@dataclass
class VerificationReport:
    nmax: int
    smax: int
    records: list[SweepRecord]
    wall_ms: float = 0.0

    @property
    def failures(self) -> int:
        return sum(1 for r in self.records if r.status == "fail")

    @property
    def skipped(self) -> int:
        return sum(1 for r in self.records if r.status == "skip")

    def to_json_obj(self) -> dict:
        return {
            "nmax": self.nmax,
            "smax": self.smax,
            "failures": self.failures,
            "skipped": self.skipped,
            "records": [
                {
                    "n": r.n, "graph6": r.graph6, "s": r.s, "value": r.value,
                    "prediction": {"lo": r.lo, "hi": r.hi, "exact": r.exact},
                    "checks": r.checks, "status": r.status,
                }
                for r in self.records
            ],
            "wall_ms": round(self.wall_ms, 3),
        }


def _record_checks(g: Graph, s: int, value: int, record: SweepRecord,
                   state_cap: int, closed_form_fn) -> None:
    pred = theory.predicted(g, s, closed_form_fn=closed_form_fn)
    record.lo, record.hi, record.exact = pred.lo, pred.hi, pred.exact
    record.checks["bounds"] = pred.lo <= value <= pred.hi
    if pred.exact is not None:
        record.checks["exact"] = value == pred.exact
    if s == 2:
        record.checks["char-max"] = (
            (value == g.n - 2) == theory.char_dmg2_is_nminus2(g)
        )
        record.checks["char-one"] = (
            (value == 1) == theory.char_dmg2_is_1(g)
        )
    comps = components(g)
    if len(comps) >= 2:
        left = g.induced(comps[0])
        rest = g.induced(sorted(v for c in comps[1:] for v in c))
        expected = theory.union_value(
            lambda t: damage_number(left, t, state_cap).value,
            lambda t: damage_number(rest, t, state_cap).value,
            left, rest, s)
        record.checks["union"] = value == expected


def run_verification(nmax: int, smax: int, *, state_cap: int = DEFAULT_STATE_CAP,
                     cache: ResultsCache | None = None, jobs: int = 1,
                     closed_form_fn=theory.closed_form) -> VerificationReport:
    """Exhaustive sweep over the census; deterministic record order."""
    t0 = time.perf_counter()
    instances: list[tuple[Graph, str, int]] = []
    for n in range(1, nmax + 1):
        for g in enumerate_nonisomorphic(n):
            g6 = write_graph6(g)
            for s in range(1, smax + 1):
                instances.append((g, g6, s))

    payloads: dict[tuple[str, int], dict | None] = {}
    cached_keys: list[tuple[str, int]] = []
    todo: list[tuple[str, int, int]] = []
    for g, g6, s in instances:
        hit = cache.get(g6, s) if cache is not None else None
        if hit is not None:
            payloads[(g6, s)] = hit
            cached_keys.append((g6, s))
        else:
            todo.append((g6, s, state_cap))
    payloads.update(_solve_many(todo, jobs))
    if cache is not None:
        for g6, s, _cap in todo:
            payload = payloads[(g6, s)]
            if payload is not None:
                cache.put(g6, s, payload)

    # deterministic 10% re-sample of cache hits, recomputed fresh
    resample: set[tuple[str, int]] = set()
    if cached_keys:
        seed = int.from_bytes(
            hashlib.sha1(repr(sorted(cached_keys)).encode()).digest()[:8], "big")
        k = max(1, len(cached_keys) // 10)
        resample = set(random.Random(seed).sample(sorted(cached_keys), k))

    records = []
    for g, g6, s in instances:
        payload = payloads[(g6, s)]
        record = SweepRecord(n=g.n, graph6=g6, s=s, value=None,
                             lo=None, hi=None, exact=None)
        if payload is None:
            record.status = "skip"
            records.append(record)
            continue
        record.value = payload["value"]
        record.from_cache = (g6, s) in set(cached_keys)
        _record_checks(g, s, record.value, record, state_cap, closed_form_fn)
        if (g6, s) in resample:
            fresh = _solve_payload(g, s, state_cap)
            record.checks["cache-consistency"] = fresh["value"] == record.value
        record.status = "pass" if all(record.checks.values()) else "fail"
        records.append(record)
    return VerificationReport(nmax=nmax, smax=smax, records=records,
                              wall_ms=(time.perf_counter() - t0) * 1000.0)


# ---------------------------------------------------------------------------
# conjecture
# ---------------------------------------------------------------------------

def run_conjecture(nmax: int, s: int, *, state_cap: int = DEFAULT_STATE_CAP,
                   cache: ResultsCache | None = None, jobs: int = 1) -> dict:
    """Graphs with max degree >= C(s,2)+2 whose damage number exceeds n-3."""
    degree_floor = s * (s - 1) // 2 + 2
    eligible: list[tuple[Graph, str]] = []
    for n in range(1, nmax + 1):
        for g in enumerate_nonisomorphic(n):
            if max_degree(g) >= degree_floor:
                eligible.append((g, write_graph6(g)))
    payloads: dict[tuple[str, int], dict | None] = {}
    todo = []
    for g, g6 in eligible:
        hit = cache.get(g6, s) if cache is not None else None
        if hit is not None:
            payloads[(g6, s)] = hit
        else:
            todo.append((g6, s, state_cap))
    payloads.update(_solve_many(todo, jobs))
    if cache is not None:
        for g6, s_, _cap in todo:
            if payloads[(g6, s_)] is not None:
                cache.put(g6, s_, payloads[(g6, s_)])

    findings = []
    skipped = 0
    for g, g6 in eligible:
        payload = payloads[(g6, s)]
        if payload is None:
            skipped += 1
            continue
        if payload["value"] > g.n - 3:
            findings.append({
                "n": g.n, "graph6": g6, "s": s,
                "max_degree": max_degree(g),
                "value": payload["value"],
                "threshold": g.n - 3,
            })
    return {
        "s": s, "nmax": nmax, "degree_floor": degree_floor,
        "eligible": len(eligible), "skipped": skipped,
        "counterexamples": findings,
    }


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        return int(lo), int(hi)
    return int(text), int(text)


def _table_instances(pattern: str) -> list[FamilySpec]:
    kind, _, rest = pattern.partition(":")
    if kind in ("path", "cycle", "complete", "empty", "star", "wheel"):
        lo, hi = _parse_range(rest)
        return [FamilySpec(kind, (k,)) for k in range(lo, hi + 1)]
    if kind == "spider":
        # range over total leg sum; every 3-leg spider in range
        lo, hi = _parse_range(rest)
        specs = []
        for total in range(max(3, lo), hi + 1):
            for k1 in range(total, 0, -1):
                for k2 in range(min(k1, total - k1), 0, -1):
                    k3 = total - k1 - k2
                    if 1 <= k3 <= k2:
                        specs.append(FamilySpec.spider(k1, k2, k3))
        return specs
    return [parse_family(pattern)]


def run_table(pattern: str, s_range: tuple[int, int], *,
              state_cap: int = DEFAULT_STATE_CAP,
              cache: ResultsCache | None = None) -> list[dict]:
    rows = []
    for spec in _table_instances(pattern):
        g = family(spec)
        for s in range(s_range[0], s_range[1] + 1):
            row = {"family": spec.label(), "s": s, "value": None,
                   "closed_form": theory.closed_form(spec, s), "match": None}
            try:
                payload, _ = solve_with_cache(g, s, cache, state_cap)
                row["value"] = payload["value"]
            except StateCapExceeded:
                rows.append(row)
                continue
            if row["closed_form"] is not None:
                row["match"] = row["value"] == row["closed_form"]
            rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _csv_text(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row.get(col, "") for col in columns])
    return buf.getvalue()


def _render_compute(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        return _csv_text(_COMPUTE_COLUMNS, [payload])
    return (
        f"graph {payload['graph']}  s={payload['s']}\n"
        f"damage number: {payload['value']}\n"
        f"optimal cop start: {payload['best_cop_start']}\n"
        f"states: {payload['states']}  iterations: {payload['iterations']}  "
        f"wall: {payload['wall_ms']:.1f} ms"
    )


def _render_verify(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_json_obj(), indent=2)
    rows = [
        {
            "n": r.n, "graph6": r.graph6, "s": r.s, "value": r.value,
            "lo": r.lo, "hi": r.hi,
            "exact": "" if r.exact is None else r.exact,
            "status": r.status,
            "failed_checks": ";".join(r.failed_checks),
        }
        for r in report.records
    ]
    if fmt == "csv":
        return _csv_text(_VERIFY_COLUMNS, rows)
    lines = []
    for r in report.records:
        if r.status != "pass":
            lines.append(f"{r.status.upper()}: {r.graph6} (n={r.n}, s={r.s}) "
                         f"value={r.value} failed={r.failed_checks}")
    lines.append(
        f"verified {len(report.records)} records "
        f"(nmax={report.nmax}, smax={report.smax}): "
        f"{report.failures} failures, {report.skipped} skipped"
    )
    return "\n".join(lines)


def _render_conjecture(result: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, indent=2)
    if fmt == "csv":
        return _csv_text(_CONJECTURE_COLUMNS, result["counterexamples"])
    lines = [
        f"degree floor {result['degree_floor']} (s={result['s']}): "
        f"{result['eligible']} eligible graphs up to n={result['nmax']}, "
        f"{result['skipped']} skipped"
    ]
    if result["counterexamples"]:
        for c in result["counterexamples"]:
            lines.append(
                f"counterexample {c['graph6']} (n={c['n']}): "
                f"dmg={c['value']} > {c['threshold']}"
            )
    else:
        lines.append("no counterexamples found")
    return "\n".join(lines)


def _render_table(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2)
    if fmt == "csv":
        return _csv_text(_TABLE_COLUMNS, rows)
    lines = [f"{'family':<16} {'s':>2} {'value':>6} {'closed':>7} match"]
    for row in rows:
        closed = "-" if row["closed_form"] is None else row["closed_form"]
        match = "-" if row["match"] is None else ("yes" if row["match"] else "NO")
        value = "-" if row["value"] is None else row["value"]
        lines.append(f"{row['family']:<16} {row['s']:>2} {value:>6} "
                     f"{closed:>7} {match}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing and entry point
# ---------------------------------------------------------------------------

def _load_graph(args) -> Graph:
    picked = [x for x in (args.family, args.graph6, args.edges) if x]
    if len(picked) != 1:
        raise ValueError("give exactly one of --family, --graph6, --edges")
    if args.family:
        return family(parse_family(args.family))
    if args.graph6:
        return parse_graph6(args.graph6)
    with open(args.edges) as fh:
        return parse_edge_list_text(fh.read())


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="damage-lab",
        description="exact s-robber damage numbers of small graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json", "csv"),
                       default="text")
        p.add_argument("--cache-dir", default=None,
                       help=f"results cache directory (or ${ENV_VAR})")
        p.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP)
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("compute", help="solve one graph")
    p.add_argument("--family", help="e.g. path:5, spider:2,2,2, union:path:3+cycle:4")
    p.add_argument("--graph6", help="graph6 string")
    p.add_argument("--edges", help="edge-list file ('n m' header, one edge per line)")
    p.add_argument("--s", type=int, required=True, help="number of robbers")
    common(p)

    p = sub.add_parser("verify", help="sweep the census against the theory")
    p.add_argument("--nmax", type=int, default=5, help="max vertex count (<= 6)")
    p.add_argument("--smax", type=int, default=2, help="max robber count (<= 3)")
    common(p)

    p = sub.add_parser("conjecture", help="search for degree-bound counterexamples")
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--s", type=int, default=3)
    common(p)

    p = sub.add_parser("table", help="family table: solver vs closed form")
    p.add_argument("--family", required=True,
                   help="kind:lo..hi (spider ranges over total leg sum)")
    p.add_argument("--s", default="2", help="robber count or range a..b")
    common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cache = ResultsCache(args.cache_dir)
    try:
        if args.command == "compute":
            g = _load_graph(args)
            payload, _ = solve_with_cache(g, args.s, cache, args.state_cap)
            out = dict(payload)
            out.setdefault("graph", write_graph6(canonical_graph(g)))
            out.setdefault("s", args.s)
            print(_render_compute(out, args.format))
            return 0
        if args.command == "verify":
            if not 1 <= args.nmax <= 6:
                raise ValueError("verify supports 1 <= nmax <= 6")
            if not 1 <= args.smax <= 3:
                raise ValueError("verify supports 1 <= smax <= 3")
            report = run_verification(args.nmax, args.smax,
                                      state_cap=args.state_cap, cache=cache,
                                      jobs=args.jobs)
            print(_render_verify(report, args.format))
            return 1 if report.failures else 0
        if args.command == "conjecture":
            result = run_conjecture(args.nmax, args.s,
                                    state_cap=args.state_cap, cache=cache,
                                    jobs=args.jobs)
            print(_render_conjecture(result, args.format))
            return 0
        if args.command == "table":
            rows = run_table(args.family, _parse_range(args.s),
                             state_cap=args.state_cap, cache=cache)
            print(_render_table(rows, args.format))
            return 1 if any(row["match"] is False for row in rows) else 0
    except StateCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
