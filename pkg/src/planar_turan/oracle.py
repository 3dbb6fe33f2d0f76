"""Exhaustive search at desk scale.

* ``generate_graphs``: isomorph-free generation by canonical augmentation.
* ``triangulations``: all maximal planar graphs on n vertices, by closing
  the edge-flip graph from one stacked triangulation.
* ``ex_planar``: every planar graph on n >= 3 vertices is a spanning
  subgraph of some triangulation, so an H-free planar graph with
  ``3n - 6 - k`` edges is a triangulation minus ``k`` edges.  Deletion sets
  are searched by branching on the edges of a found copy of H (any H-free
  subgraph must miss one of them), for k = 0, 1, 2, ... until something
  survives.
* block catalogue, the good/bad census of 6-vertex blocks, and the
  counting arithmetic used to reach the large-n threshold.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Callable, Iterator, Optional

from .blocks import decompose, holes, is_fan_graph, is_good, is_wheel_graph
from .constructions import extremal_c3c5, fan, flip_edge
from .cycles import CyclePattern, find_pattern, parse_pattern
from .errors import CapExceeded
from .graph_core import (
    Graph,
    canonical_code,
    canonical_labeling,
    complete_graph,
    is_isomorphic,
)
from .plane_map import PlaneMap, all_embeddings, discharge_bound, insert_vertex_in_face, plane_code

GENERATION_CAP = 10


# --- isomorph-free generation ---------------------------------------------


@dataclass
class GraphFilter:
    connected: bool = False
    min_degree: int = 0
    max_degree: Optional[int] = None
    min_edges: int = 0
    max_edges: Optional[int] = None

    def accepts(self, g: Graph) -> bool:
        degs = [len(a) for a in g.adj]
        if g.m < self.min_edges or (self.max_edges is not None and g.m > self.max_edges):
            return False
        if degs and min(degs) < self.min_degree:
            return False
        if self.max_degree is not None and degs and max(degs) > self.max_degree:
            return False
        return not self.connected or g.is_connected()


def _augment(parent: Graph) -> list[Graph]:
    """Children of ``parent`` accepted by the canonical-deletion rule, one per class."""
    n = parent.n + 1
    x = parent.n
    parent_code = canonical_code(parent)
    kids: dict[bytes, Graph] = {}
    for mask in range(1 << parent.n):
        nbrs = [i for i in range(parent.n) if mask >> i & 1]
        child = Graph(n, parent.edges | {(i, x) for i in nbrs})
        code, order = canonical_labeling(child)
        if code in kids:
            continue
        last = order[-1]
        if last != x and canonical_code(child.remove_vertices([last])) != parent_code:
            continue
        kids[code] = child
    return [kids[c] for c in sorted(kids)]


def _generate(n: int) -> Iterator[Graph]:
    if n == 0:
        yield Graph(0)
        return
    for parent in _generate(n - 1):
        yield from _augment(parent)


def generate_graphs(n: int, filters: Optional[GraphFilter] = None, cap: int = GENERATION_CAP) -> Iterator[Graph]:
    """One graph per isomorphism class on ``n`` vertices passing ``filters``."""
    if n > cap:
        raise CapExceeded(f"n={n} above generation cap {cap}")
    filters = filters or GraphFilter()
    for g in _generate(n):
        if filters.accepts(g):
            yield g


# --- triangulations -------------------------------------------------------


def _stacked(n: int) -> PlaneMap:
    m = PlaneMap(4, ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)))
    if not m.is_spherical():
        m = m.mirror()
    while m.n < n:
        m = insert_vertex_in_face(m, 0, m.face_walks()[0])
    return m


def triangulations(n: int, cap: int = 12) -> list[PlaneMap]:
    """All triangulations of the sphere on ``n`` vertices up to isomorphism."""
    if n > cap:
        raise CapExceeded(f"n={n} above triangulation cap {cap}")
    if n < 3:
        raise ValueError("triangulations need n >= 3")
    if n == 3:
        return [PlaneMap(3, ((1, 2), (2, 0), (0, 1)))]
    seed = _stacked(n)
    seen = {canonical_code(seed.graph): seed}
    queue = [seed]
    for m in queue:
        for a, b in m.graph.sorted_edges():
            t = flip_edge(m, a, b)
            if t is None:
                continue
            code = canonical_code(t.graph)
            if code not in seen:
                seen[code] = t
                queue.append(t)
    return [seen[c] for c in sorted(seen)]


# --- planar Turán numbers -------------------------------------------------


@dataclass
class SearchConfig:
    """Switches for the deletion search; every setting gives the same maximum."""

    branch_on_witness: bool = True  # else try every k-subset of edges
    iso_memo: bool = True  # skip subgraphs isomorphic to one already expanded
    jobs: int = 1
    checkpoint: Optional[str] = None
    cap: int = GENERATION_CAP


@dataclass
class SearchResult:
    n: int
    pattern: str
    max_edges: int
    witnesses: list[str]  # canonical codes (hex) of extremal graphs
    graphs_seen: int = 0
    graphs_pruned: int = 0
    elapsed: float = 0.0
    witness_graphs: list[Graph] = field(default_factory=list, repr=False)

    def payload(self) -> dict:
        return {
            "n": self.n,
            "pattern": self.pattern,
            "max_edges": self.max_edges,
            "witnesses": self.witnesses,
            "witness_edges": [sorted(map(list, g.edges)) for g in self.witness_graphs],
        }


def _survivors(tri: Graph, p: CyclePattern, k: int, cfg: SearchConfig) -> tuple[dict[bytes, Graph], int, int]:
    """p-free subgraphs of ``tri`` with exactly ``k`` edges removed (by canonical code)."""
    found: dict[bytes, Graph] = {}
    seen = pruned = 0
    if not cfg.branch_on_witness:
        for gone in combinations(tri.sorted_edges(), k):
            g = tri.remove_edges(gone)
            seen += 1
            if find_pattern(g, p) is None:
                found.setdefault(canonical_code(g), g)
        return found, seen, pruned
    visited: set = set()

    def branch(g: Graph, depth: int):
        nonlocal seen, pruned
        key = canonical_code(g) if cfg.iso_memo else g.edges
        if key in visited:
            pruned += 1
            return
        visited.add(key)
        seen += 1
        wit = find_pattern(g, p)
        if wit is None:
            if depth == k:
                found.setdefault(key if cfg.iso_memo else canonical_code(g), g)
            else:
                # fewer deletions suffice: any k-superset inside g is p-free too
                for gone in combinations(g.sorted_edges(), k - depth):
                    h = g.remove_edges(gone)
                    found.setdefault(canonical_code(h), h)
            return
        if depth == k:
            return
        edges = {(min(c[i], c[(i + 1) % len(c)]), max(c[i], c[(i + 1) % len(c)])) for c in wit for i in range(len(c))}
        for e in sorted(edges):
            branch(g.remove_edges([e]), depth + 1)

    branch(tri, 0)
    return found, seen, pruned


def _survivors_task(args):
    tri_edges, n, pattern, k, cfg = args
    found, seen, pruned = _survivors(Graph(n, frozenset(tri_edges)), parse_pattern(pattern), k, cfg)
    return {c.hex(): sorted(g.edges) for c, g in found.items()}, seen, pruned


class _Checkpoint:
    def __init__(self, path: Optional[str]):
        self.path = Path(path) if path else None
        self.done: dict[str, dict] = {}
        if self.path and self.path.exists():
            self.done = json.loads(self.path.read_text()).get("done", {})

    def save(self):
        if not self.path:
            return
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps({"schema": 1, "done": self.done}, sort_keys=True))
        os.replace(tmp, self.path)


def _trivial_max(n: int) -> int:
    return n * (n - 1) // 2


def ex_planar(n: int, p: CyclePattern | str, config: Optional[SearchConfig] = None) -> SearchResult:
    """Exact maximum edge count of an n-vertex p-free planar graph, with all extremal graphs."""
    cfg = config or SearchConfig()
    if isinstance(p, str):
        p = parse_pattern(p)
    if n > cfg.cap:
        raise CapExceeded(f"n={n} above oracle cap {cfg.cap}")
    start = time.perf_counter()
    if n < 3:
        g = complete_graph(n)
        return SearchResult(n, str(p), _trivial_max(n), [canonical_code(g).hex()], 1, 0,
                            time.perf_counter() - start, [g])
    tris = [t.graph for t in triangulations(n)]
    top = 3 * n - 6
    ckpt = _Checkpoint(cfg.checkpoint)
    seen_total = pruned_total = 0
    for k in range(top + 1):
        level: dict[str, list] = {}
        todo = []
        for i, t in enumerate(tris):
            key = f"{n}|{p}|{top - k}|{i}"
            if key in ckpt.done:
                level.update(ckpt.done[key])
            else:
                todo.append((key, (sorted(t.edges), n, str(p), k, cfg)))
        if cfg.jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                results = list(pool.map(_survivors_task, [a for _, a in todo]))
        else:
            results = [_survivors_task(a) for _, a in todo]
        for (key, _), (found, seen, pruned) in zip(todo, results):
            seen_total += seen
            pruned_total += pruned
            level.update(found)
            ckpt.done[key] = found
        ckpt.save()
        if level:
            codes = sorted(level)
            graphs = [Graph.from_edges(n, level[c]) for c in codes]
            return SearchResult(n, str(p), top - k, codes, seen_total, pruned_total,
                                time.perf_counter() - start, graphs)
    raise AssertionError("the edgeless graph is always pattern-free")


# --- known values ---------------------------------------------------------


@dataclass(frozen=True)
class KnownFormula:
    pattern: str
    evaluate: Callable[[int], int]
    n0: int
    source: str


def _ex_2c4(n: int) -> int:
    return 19 * n // 7 - 6 if n % 7 == 0 else (19 * n - 34) // 7


KNOWN_FORMULAS: dict[str, KnownFormula] = {
    "2C3": KnownFormula("2C3", lambda n: -(-5 * n // 2) - 5, 6, "ceil(5n/2) - 5"),
    "C3+C4": KnownFormula("C3+C4", lambda n: 5 * n // 2 - 4, 20, "floor(5n/2) - 4"),
    "2C4": KnownFormula("2C4", _ex_2c4, 2661, "19n/7 - 6 if 7 | n else floor((19n - 34)/7)"),
    "2C": KnownFormula("2C", lambda n: 2 * n - 1, 5, "2n - 1"),
    "3C": KnownFormula("3C", lambda n: 3 * n - 6, 3, "3n - 6 (any t >= 3)"),
    "C5": KnownFormula("C5", lambda n: (12 * n - 33) // 5, 11, "(12n - 33)/5"),
    "C3+C5": KnownFormula("C3+C5", lambda n: (8 * n - 13) // 3, 295660, "floor((8n - 13)/3)"),
}


def known_formula(p: CyclePattern | str) -> Optional[KnownFormula]:
    key = str(parse_pattern(p) if isinstance(p, str) else p)
    if key in KNOWN_FORMULAS:
        return KNOWN_FORMULAS[key]
    pat = parse_pattern(key)
    if not pat.exact_lengths and pat.wildcard_count >= 3:
        t = pat.wildcard_count
        return KnownFormula(key, lambda n: 3 * n - 6, 3, f"3n - 6 (t = {t})")
    return None


def construction_lower_bound(n: int, p: CyclePattern) -> Optional[int]:
    """Edges of a verified p-free planar construction, where one is known."""
    if str(p) == "C3+C5" and n >= 7:
        m = extremal_c3c5(n)
        if m.is_spherical() and find_pattern(m.graph, p) is None:
            return m.m
    return None


def compare_known(n_range, p: CyclePattern | str, config: Optional[SearchConfig] = None) -> list[dict]:
    if isinstance(p, str):
        p = parse_pattern(p)
    formula = known_formula(p)
    rows = []
    for n in n_range:
        res = ex_planar(n, p, config)
        fval = formula.evaluate(n) if formula and n >= formula.n0 else None
        lower = construction_lower_bound(n, p)
        rows.append(
            {
                "n": n,
                "oracle": res.max_edges,
                "formula": fval,
                "construction": lower,
                "match": None if fval is None else fval == res.max_edges,
                "lower_bound_ok": None if lower is None else res.max_edges >= lower,
            }
        )
    return rows


# --- block catalogue ------------------------------------------------------


def _triangle_connected(g: Graph) -> bool:
    """Graph-level necessary condition for a single triangular block."""
    tris = [t for t in combinations(range(g.n), 3) if all(g.has_edge(a, b) for a, b in combinations(t, 2))]
    if not tris:
        return False
    covered = {e for t in tris for e in combinations(t, 2)}
    if covered != set(g.edges):
        return False
    comp = {e: e for e in covered}

    def find(e):
        while comp[e] != e:
            comp[e] = comp[comp[e]]
            e = comp[e]
        return e

    for t in tris:
        es = list(combinations(t, 2))
        for e in es[1:]:
            comp[find(e)] = find(es[0])
    return len({find(e) for e in covered}) == 1


def _structural_alias(g: Graph) -> Optional[str]:
    k = g.n
    if k == 2:
        return "edge"
    if k == 3:
        return "triangle"
    if k == 4:
        return "k4" if g.m == 6 else "diamond"
    if is_fan_graph(g):
        return f"fan{k}"
    if is_wheel_graph(g):
        return f"wheel{k}"
    if k == 5 and g.m == 9:
        return "k5me"
    if k == 5 and is_isomorphic(g, _K4_EAR):
        return "k4ear"
    if k >= 4 and g.m == 2 * k - 3 and is_isomorphic(g, _path_square(k)):
        return f"strip{k}"
    if k == 6 and is_isomorphic(g, _octahedron()):
        return "octahedron"
    return None


def _octahedron() -> Graph:
    return Graph.from_edges(6, [(a, b) for a, b in combinations(range(6), 2) if b - a != 3])


def _path_square(k: int) -> Graph:
    return Graph.from_edges(k, [(i, j) for i in range(k) for j in (i + 1, i + 2) if j < k])


# K4 with a triangle glued on one edge
_K4_EAR = Graph.from_edges(5, [*complete_graph(4).edges, (2, 4), (3, 4)])


def enumerate_blocks(v: int, cap: int = 7) -> list[dict]:
    """Plane-isomorphism classes of single-block plane graphs on ``v`` vertices."""
    if v > cap:
        raise CapExceeded(f"v={v} above block cap {cap}")
    if v < 2:
        return []
    if v == 2:
        maps = [PlaneMap(2, ((1,), (0,)))]
    else:
        maps = []
        for g in generate_graphs(v, GraphFilter(connected=True, min_degree=2)):
            if g.m > 3 * v - 6 or not _triangle_connected(g):
                continue
            for m in all_embeddings(g, bound=cap):
                if len(decompose(m)) == 1:
                    maps.append(m)
    entries = []
    for m in maps:
        b = decompose(m)[0]
        entries.append(
            {
                "code": plane_code(m).hex(),
                "v": v,
                "e": m.m,
                "f3": m.f3(),
                "holes": sorted(len(h) for h in holes(b)),
                "good": is_good(b) if v >= 6 else None,
                "rotation": [list(r) for r in m.rotation],
                "graph_alias": _structural_alias(m.graph),
            }
        )
    entries.sort(key=lambda e: (e["e"], e["f3"], e["code"]))
    _assign_aliases(entries)
    return entries


def _assign_aliases(entries: list[dict]):
    by_name: dict[str, list[dict]] = {}
    unnamed = 0
    for e in entries:
        name = e.pop("graph_alias")
        if name is None:
            unnamed += 1
            name = f"b{e['v']}_{unnamed:02d}"
        by_name.setdefault(name, []).append(e)
    for name, group in by_name.items():
        if len(group) == 1:
            group[0]["alias"] = name
        else:
            for i, e in enumerate(group):
                e["alias"] = f"{name}{chr(ord('a') + i)}"


def build_catalog(max_v: int = 6) -> dict:
    return {"schema": 1, "classes": {str(v): enumerate_blocks(v) for v in range(2, max_v + 1)}}


def catalog_path() -> Path:
    return Path(__file__).parent / "data" / "block_catalog.json"


def cache_dir() -> Path:
    path = Path(os.environ.get("PTL_CACHE_DIR", Path.home() / ".cache" / "planar_turan"))
    path.mkdir(parents=True, exist_ok=True)
    return path


# --- good/bad census ------------------------------------------------------


def _map_of(entry: dict) -> PlaneMap:
    return PlaneMap.from_rotation(entry["rotation"])


def hole_insertions(m: PlaneMap, holes_only: bool = True) -> Iterator[PlaneMap]:
    """Maps from adding one vertex inside a face, joined to >= 2 consecutive boundary vertices."""
    for fi, walk in enumerate(m.face_walks()):
        length = len(walk)
        if holes_only and length < 4:
            continue
        if len(set(walk)) != length:
            continue
        for k in range(2, length + 1):
            starts = range(1) if k == length else range(length)
            for s in starts:
                attach = [walk[(s + i) % length] for i in range(k)]
                yield insert_vertex_in_face(m, fi, attach)


def verify_lemma2(catalog: Optional[dict] = None) -> dict:
    """Bad 6-vertex block classes and the consistency checks around them."""
    catalog = catalog or build_catalog(6)
    six = catalog["classes"]["6"]
    bad = [e for e in six if e["good"] is False]
    fan6 = plane_code(fan(6)).hex()
    # every 6-vertex block arises from a 5-vertex block plus one vertex
    reach: dict[str, set[str]] = {}
    for e in catalog["classes"]["5"]:
        codes = set()
        for m in hole_insertions(_map_of(e), holes_only=False):
            if len(decompose(m)) == 1:
                codes.add(plane_code(m).hex())
        reach[e["alias"]] = codes
    reachable = set().union(*reach.values())
    seven_from_bad = []
    for e in bad:
        for m in hole_insertions(_map_of(e)):
            blocks = decompose(m)
            if len(blocks) == 1:
                seven_from_bad.append(is_good(blocks[0]))
    return {
        "six_vertex_classes": len(six),
        "bad": [e["alias"] for e in bad],
        "bad_count": len(bad),
        "fan6_bad": any(e["code"] == fan6 for e in bad),
        "bad_f3_le_half_e": all(2 * e["f3"] <= e["e"] for e in bad),
        "children_per_5_block": {a: len(c) for a, c in sorted(reach.items())},
        "all_six_from_five": reachable == {e["code"] for e in six},
        "seven_from_bad_all_good": all(seven_from_bad) if seven_from_bad else None,
        "pass": len(bad) == 2,
    }


def verify_observation1(catalog: Optional[dict] = None) -> dict:
    """Good 6-vertex block + vertex inserted in a hole stays good."""
    catalog = catalog or build_catalog(6)
    checked = failures = 0
    failing = []
    for e in catalog["classes"]["6"]:
        if e["good"] is not True:
            continue
        for m in hole_insertions(_map_of(e)):
            blocks = decompose(m)
            if len(blocks) != 1:
                continue
            checked += 1
            if not is_good(blocks[0]):
                failures += 1
                failing.append(e["alias"])
    return {"checked": checked, "failures": failures, "failing_parents": sorted(set(failing)), "pass": failures == 0}


# --- counting arithmetic for the large-n threshold -----------------------


@dataclass(frozen=True)
class Census:
    n: int
    alpha: Fraction
    f_n: Fraction
    pair_blocks: Fraction
    threshold_ok: bool
    euler_bound: Fraction
    euler_identity: bool
    below_target: bool

    def payload(self) -> dict:
        return asdict(self)


# Constants of the counting argument.
C5_VERTICES = 5
K4_BLOCK_CAP = math.comb(C5_VERTICES, 2)  # K4 blocks meet the fixed C5 in distinct pairs
BIG_BLOCK_VERTICES = 520
BIG_BLOCK_F3 = 2 * BIG_BLOCK_VERTICES - 3
SMALL_BLOCK_RATIO = Fraction(2, 5)  # f3 <= 2e/5 for edge, triangle and diamond blocks
SINGLE_VERTEX_CAP = 3  # C5-blocks meeting the fixed C5 in one given vertex
MULTI_VERTEX_CAP = 2  # C5-blocks meeting it in a given set of >= 3 vertices


def f_of_n(n: int) -> Fraction:
    return Fraction(4 * n + 15097, 15555)


def lemma1_census(n: int) -> Census:
    if n < 1:
        raise ValueError("n must be positive")
    f_n = f_of_n(n)
    alpha = f_n - 1
    multi = sum(math.comb(C5_VERTICES, j) for j in range(3, C5_VERTICES + 1))
    pair_blocks = (f_n - SINGLE_VERTEX_CAP * C5_VERTICES - MULTI_VERTEX_CAP * multi) / math.comb(C5_VERTICES, 2)
    # f3 <= (2/5) e + BIG_BLOCK_F3 * alpha + 3 * K4_BLOCK_CAP
    bound = discharge_bound(n, SMALL_BLOCK_RATIO, BIG_BLOCK_F3 * alpha + 3 * K4_BLOCK_CAP)
    return Census(
        n=n,
        alpha=alpha,
        f_n=f_n,
        pair_blocks=pair_blocks,
        threshold_ok=pair_blocks >= 3,
        euler_bound=bound,
        euler_identity=bound == Fraction(8 * n - 16, 3),
        below_target=bound < (8 * n - 13) // 3,
    )


def census_threshold() -> int:
    """Smallest n with at least three blocks forced onto a single vertex pair."""
    lo, hi = 1, 1
    while not lemma1_census(hi).threshold_ok:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if lemma1_census(mid).threshold_ok:
            hi = mid
        else:
            lo = mid + 1
    return lo
