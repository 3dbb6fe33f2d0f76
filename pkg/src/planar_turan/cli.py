"""``ptl``: command-line front end.

Every command builds a :class:`RunReport`; ``--format json`` prints it as
sorted-key JSON (no timestamps, so identical inputs give identical bytes),
otherwise one ``PASS/FAIL/INFO`` line per check.  Exit status is 0 when no
check failed, 1 when one did, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from . import oracle
from .blocks import block_report, decompose
from .constructions import extremal_c3c5, fan, random_plane_map, wheel
from .cycles import find_pattern, parse_pattern
from .errors import CapExceeded, ParseError, TooSmall
from .graph_core import format_adjlist, parse_adjlist
from .plane_map import PlaneMap, format_dot, format_rot, parse_rot

SCHEMA_VERSION = 1
MAX_THEOREM_N = 10**6


class UsageError(Exception):
    pass


def rational(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bytes):
        return obj.hex()
    return obj


@dataclass
class Check:
    name: str
    verdict: str  # PASS, FAIL or INFO
    claim: str
    detail: str = ""


@dataclass
class RunReport:
    command: str
    inputs: dict
    checks: list[Check] = field(default_factory=list)
    payload: dict = field(default_factory=dict)

    def add(self, name: str, ok: Optional[bool], claim: str, detail: str = ""):
        verdict = "INFO" if ok is None else ("PASS" if ok else "FAIL")
        self.checks.append(Check(name, verdict, claim, detail))

    @property
    def failed(self) -> bool:
        return any(c.verdict == "FAIL" for c in self.checks)

    def to_json(self) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "checks": [vars(c) for c in self.checks],
            "payload": self.payload,
        }
        return json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"{c.verdict} {c.name}: {c.detail}".rstrip(": ") for c in self.checks]
        return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit_map(m: PlaneMap, fmt: str) -> str:
    if fmt == "adjlist":
        return format_adjlist(m.graph)
    if fmt == "dot":
        return format_dot(m)
    if fmt == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "n": m.n,
            "edges": [list(e) for e in m.graph.sorted_edges()],
            "rotation": [list(r) for r in m.rotation],
            "faces": {str(k): v for k, v in sorted(m.face_profile().items())},
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return format_rot(m)


# --- commands -------------------------------------------------------------


def cmd_construct(args) -> str:
    if args.kind == "extremal":
        m = extremal_c3c5(args.n)
    elif args.kind == "wheel":
        m = wheel(args.n)
    elif args.kind == "fan":
        m = fan(args.n)
    else:
        m = random_plane_map(args.n, random.Random(args.seed), args.keep)
    return _emit_map(m, args.format or "rot")


def cmd_decompose(args) -> RunReport:
    m = parse_rot(_read(args.file))
    blocks = decompose(m)
    rep = RunReport("decompose", {"file": Path(args.file).name if args.file != "-" else "-"})
    rows = block_report(blocks)
    rep.payload = {"n": m.n, "e": m.m, "f3": m.f3(), "blocks": rows}
    rep.add("edge_partition", sum(b.e for b in blocks) == m.m, "e(G) = sum of e(B)",
            f"{sum(b.e for b in blocks)} = {m.m}")
    rep.add("f3_partition", sum(b.f3_in_host for b in blocks) == m.f3(), "f3(G) = sum of f3(B)",
            f"{sum(b.f3_in_host for b in blocks)} = {m.f3()}")
    summary = ", ".join(f"{r['alias']}({len(r['vertices'])})" for r in rows)
    rep.add("blocks", None, "triangular block list", f"{len(rows)} blocks: {summary}")
    return rep


def cmd_free(args) -> RunReport:
    g = parse_adjlist(_read(args.file))
    p = parse_pattern(args.pattern)
    wit = find_pattern(g, p)
    rep = RunReport("free", {"file": Path(args.file).name if args.file != "-" else "-", "pattern": str(p)})
    rep.payload = {"n": g.n, "e": g.m, "free": wit is None, "witness": [list(c) for c in wit] if wit else None}
    detail = "no copy found" if wit is None else "copy " + " | ".join("-".join(map(str, c)) for c in wit)
    rep.add("pattern_free", wit is None, f"G is {p}-free", detail)
    return rep


def _config(args) -> oracle.SearchConfig:
    return oracle.SearchConfig(
        branch_on_witness=not args.no_branch,
        iso_memo=not args.no_iso_memo,
        jobs=args.jobs,
        checkpoint=args.checkpoint,
    )


def cmd_oracle(args) -> RunReport:
    if args.what == "ex":
        p = parse_pattern(args.pattern)
        res = oracle.ex_planar(args.n, p, _config(args))
        rep = RunReport("oracle ex", {"n": args.n, "pattern": str(p)})
        rep.payload = res.payload()
        rep.add("ex_planar", None, f"max edges of an n-vertex {p}-free planar graph",
                f"n={args.n} max={res.max_edges} witnesses={len(res.witnesses)}")
        formula = oracle.known_formula(p)
        if formula and args.n >= formula.n0:
            want = formula.evaluate(args.n)
            rep.add("known_formula", want == res.max_edges, formula.source, f"formula {want}, oracle {res.max_edges}")
        lower = oracle.construction_lower_bound(args.n, p)
        if lower is not None:
            rep.add("construction_lower_bound", res.max_edges >= lower, "oracle >= construction",
                    f"{res.max_edges} >= {lower}")
        print(f"searched {res.graphs_seen} graphs, pruned {res.graphs_pruned}, {res.elapsed:.2f}s", file=sys.stderr)
        return rep
    if args.what == "compare":
        p = parse_pattern(args.pattern)
        rows = oracle.compare_known(range(args.n_min, args.n_max + 1), p, _config(args))
        rep = RunReport("oracle compare", {"pattern": str(p), "n_min": args.n_min, "n_max": args.n_max})
        rep.payload = {"rows": rows}
        for r in rows:
            ok = r["match"] if r["match"] is not None else r["lower_bound_ok"]
            rep.add(f"n={r['n']}", ok, "oracle vs registry",
                    f"oracle {r['oracle']}, formula {r['formula']}, construction {r['construction']}")
        return rep
    if args.what == "blocks":
        entries = oracle.enumerate_blocks(args.v)
        rep = RunReport("oracle blocks", {"v": args.v})
        rep.payload = {"classes": [{k: e[k] for k in ("alias", "code", "e", "f3", "holes", "good")} for e in entries]}
        rep.add("class_count", None, "plane classes of single-block maps", f"v={args.v}: {len(entries)}")
        return rep
    if args.what == "lemma2":
        return cmd_verify_lemma2(args)
    return _census_report(args.n)


def cmd_verify_theorem1(args) -> RunReport:
    lo, hi = (args.n, args.n) if args.n is not None else (args.n_min, args.n_max)
    if lo < 7 or hi > MAX_THEOREM_N or lo > hi:
        raise UsageError(f"n range must lie in [7, {MAX_THEOREM_N}], got [{lo}, {hi}]")
    rep = RunReport("verify-theorem1", {"n_min": lo, "n_max": hi})
    p = parse_pattern("C3+C5")
    bad: dict[str, list[int]] = {"planar": [], "free": [], "edges": []}
    for n in range(lo, hi + 1):
        m = extremal_c3c5(n)
        if not m.is_spherical():
            bad["planar"].append(n)
        if find_pattern(m.graph, p) is not None:
            bad["free"].append(n)
        if m.m != (8 * n - 13) // 3:
            bad["edges"].append(n)
    span = f"n in [{lo}, {hi}]"
    rep.add("planarity", not bad["planar"], "construction is plane (Euler characteristic 2)", span)
    rep.add("freeness", not bad["free"], "construction is C3+C5-free", span)
    rep.add("edge_formula", not bad["edges"], "e = floor((8n - 13)/3)", span)
    threshold = oracle.census_threshold()
    if hi >= threshold:
        rep.add("census_threshold", None, f"upper bound argument applies for n >= {threshold}",
                f"{max(lo, threshold)}..{hi} covered by the counting threshold")
    rep.payload = {"failures": bad, "threshold": threshold}
    return rep


def cmd_verify_lemma2(args) -> RunReport:
    rep = RunReport("verify-lemma2", {})
    lemma = oracle.verify_lemma2()
    obs = oracle.verify_observation1()
    rep.payload = {"lemma2": lemma, "observation1": obs}
    rep.add("bad_count", lemma["pass"], "exactly two 6-vertex block classes are bad",
            f"{lemma['bad_count']} bad of {lemma['six_vertex_classes']}: {', '.join(lemma['bad'])}")
    rep.add("fan6_bad", lemma["fan6_bad"], "K1+P5 is bad")
    rep.add("bad_f3", lemma["bad_f3_le_half_e"], "bad classes have f3 <= e/2")
    rep.add("six_from_five", lemma["all_six_from_five"], "every 6-vertex block extends a 5-vertex block")
    rep.add("observation1", obs["pass"], "good block plus a vertex in a hole stays good",
            f"{obs['checked']} insertions")
    return rep


def _census_report(n: int) -> RunReport:
    c = oracle.lemma1_census(n)
    rep = RunReport("census", {"n": n})
    rep.payload = c.payload()
    rep.payload["threshold"] = oracle.census_threshold()
    rep.add("f_n", c.f_n == Fraction(4 * n + 15097, 15555), "f(n) = (4n + 15097)/15555", str(c.f_n))
    rep.add("alpha", c.alpha == Fraction(4 * n - 458, 15555), "alpha = (4n - 458)/15555", str(c.alpha))
    rep.add("euler_identity", c.euler_identity, "(5/8)(4n + 1037 alpha + 22) = (8n - 16)/3", str(c.euler_bound))
    rep.add("pair_blocks", c.pair_blocks == Fraction(2 * n - 357994, 77775), "(2n - 357994)/77775",
            str(c.pair_blocks))
    rep.add("threshold_ok", None, "pair_blocks >= 3", str(c.threshold_ok))
    rep.add("min_threshold", rep.payload["threshold"] == 295660, "least n with pair_blocks >= 3 is 295660",
            str(rep.payload["threshold"]))
    return rep


def cmd_census(args) -> RunReport:
    return _census_report(args.n)


def cmd_catalog(args) -> RunReport:
    if args.rebuild:
        data = oracle.build_catalog(args.max_v)
        out = oracle.cache_dir() / "block_catalog.json"
        out.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
        source = str(out)
    else:
        data = json.loads(oracle.catalog_path().read_text())
        source = "frozen"
    rep = RunReport("catalog", {"rebuild": args.rebuild, "max_v": args.max_v})
    counts = {v: len(es) for v, es in sorted(data["classes"].items(), key=lambda kv: int(kv[0]))}
    rep.payload = {"source": source, "counts": counts,
                   "aliases": {v: [e["alias"] for e in es] for v, es in data["classes"].items()}}
    rep.add("counts", None, "block classes per vertex count", " ".join(f"{v}:{c}" for v, c in counts.items()))
    return rep


# --- argument parsing -----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["adjlist", "rot", "dot", "json"], default=None)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0, help="seed for random corpora")

    ap = argparse.ArgumentParser(prog="ptl", description="Planar Turán toolkit for disjoint cycle unions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="print a plane graph")
    p.add_argument("kind", choices=["extremal", "wheel", "fan", "random"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--keep", type=float, default=0.7, help="edge survival rate for random maps")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("decompose", parents=[common], help="triangular blocks of a rot file")
    p.add_argument("file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("free", parents=[common], help="test a graph for a cycle pattern")
    p.add_argument("file")
    p.add_argument("--pattern", required=True)
    p.set_defaults(func=cmd_free)

    p = sub.add_parser("oracle", parents=[common], help="exhaustive small-n computations")
    p.add_argument("what", choices=["ex", "compare", "blocks", "lemma2", "census"])
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--n-min", type=int, default=6)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--v", type=int, default=5)
    p.add_argument("--pattern", default="C3+C5")
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--no-branch", action="store_true", help="try every deletion set instead of branching")
    p.add_argument("--no-iso-memo", action="store_true", help="do not skip isomorphic subgraphs")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify-theorem1", parents=[common], help="check the extremal construction over a range")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n-min", type=int, default=7)
    p.add_argument("--n-max", type=int, default=200)
    p.set_defaults(func=cmd_verify_theorem1)

    p = sub.add_parser("verify-lemma2", parents=[common], help="good/bad census of 6-vertex blocks")
    p.set_defaults(func=cmd_verify_lemma2)

    p = sub.add_parser("census", parents=[common], help="exact counting arithmetic at n")
    p.add_argument("--n", type=int, default=295660)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("catalog", parents=[common], help="block catalogue summary")
    p.add_argument("--rebuild", action="store_true", help="re-enumerate into PTL_CACHE_DIR")
    p.add_argument("--max-v", type=int, default=6)
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        out = args.func(args)
    except (UsageError, ParseError, TooSmall, CapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if isinstance(out, str):
        sys.stdout.write(out)
        return 0
    sys.stdout.write(out.to_json() if args.format == "json" else out.to_text())
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())
