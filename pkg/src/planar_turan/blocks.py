"""Triangular blocks of a plane graph.

A block is grown from a seed edge by repeatedly absorbing every 3-face that
shares an edge with it.  Blocks partition the edge set; an edge lying on no
3-face is a block by itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .cycles import _k_cycles
from .errors import TooSmall
from .graph_core import Edge, Graph
from .plane_map import PlaneMap, plane_code

LARGE = "large"
LEMMA3_SMALL = ("diamond", "fan5", "wheel5", "k4ear")


@dataclass(frozen=True)
class TriBlock:
    host: PlaneMap
    edges: frozenset[Edge]
    vertices: tuple[int, ...]
    f3_in_host: int

    @property
    def sub_map(self) -> PlaneMap:
        return self.host.restrict(self.edges)

    @property
    def graph(self) -> Graph:
        """Block graph on 0..k-1 (same indexing as ``sub_map``)."""
        return self.sub_map.graph

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def v(self) -> int:
        return len(self.vertices)

    def to_host(self, local: Iterable[int]) -> tuple[int, ...]:
        return tuple(self.vertices[x] for x in local)


@dataclass(frozen=True)
class BlockClass:
    code: bytes
    vertices: int
    e: int
    f3: int
    alias: str


def _three_faces(m: PlaneMap) -> list[tuple[Edge, Edge, Edge]]:
    out = []
    for walk in m.face_walks():
        if len(walk) == 3:
            a, b, c = walk
            out.append(tuple(sorted(((min(a, b), max(a, b)), (min(b, c), max(b, c)), (min(a, c), max(a, c))))))
    return out


def decompose(m: PlaneMap, edge_order: Optional[Sequence[Edge]] = None) -> list[TriBlock]:
    """Triangular blocks of ``m``, listed by smallest edge.

    ``edge_order`` only changes which seed edges start the closures; the
    resulting partition is the same for every order.
    """
    tri_faces = _three_faces(m)
    faces_at: dict[Edge, list[int]] = {}
    for i, tri in enumerate(tri_faces):
        for e in tri:
            faces_at.setdefault(e, []).append(i)
    seeds = list(edge_order) if edge_order is not None else m.graph.sorted_edges()
    owner: dict[Edge, int] = {}
    groups: list[tuple[set[Edge], set[int]]] = []
    for seed in seeds:
        seed = (min(seed), max(seed))
        if seed in owner:
            continue
        block, used_faces = {seed}, set()
        owner[seed] = len(groups)
        queue = [seed]
        for e in queue:
            for fi in faces_at.get(e, ()):
                if fi in used_faces:
                    continue
                used_faces.add(fi)
                for other in tri_faces[fi]:
                    if other not in block:
                        block.add(other)
                        owner[other] = len(groups)
                        queue.append(other)
        groups.append((block, used_faces))
    if len(owner) != m.m:
        raise ValueError("edge_order does not cover every edge")
    blocks = [
        TriBlock(m, frozenset(es), tuple(sorted({x for e in es for x in e})), len(fs))
        for es, fs in groups
    ]
    return sorted(blocks, key=lambda b: min(b.edges))


def holes(b: TriBlock) -> list[tuple[int, ...]]:
    """Faces of the block's own embedding with length >= 4, in host labels."""
    return [b.to_host(w) for w in b.sub_map.face_walks() if len(w) >= 4]


def bad_pairs(b: TriBlock) -> list[tuple[int, int]]:
    """Nonadjacent pairs on a common hole with every 5-cycle through both."""
    if b.v < 6:
        raise TooSmall(f"good/bad is defined for blocks with >= 6 vertices, got {b.v}")
    sub = b.sub_map
    g = sub.graph
    five = list(_k_cycles(g.adj, 5, frozenset()))
    avoids = {x: any(x not in c for c in five) for x in range(g.n)}
    out = set()
    for walk in sub.face_walks():
        if len(walk) < 4:
            continue
        for x, y in combinations(sorted(set(walk)), 2):
            if y in g.adj[x]:
                continue
            if not (avoids[x] or avoids[y]):
                out.add(tuple(sorted(b.to_host((x, y)))))
    return sorted(out)


def is_good(b: TriBlock) -> bool:
    return not bad_pairs(b)


def _hub_split(g: Graph) -> list[Graph]:
    k = g.n
    return [g.remove_vertices([h]) for h in range(k) if len(g.adj[h]) == k - 1]


def is_wheel_graph(g: Graph) -> bool:
    """K1 ∨ C_{k-1}, k >= 4."""
    if g.n < 4:
        return False
    for rim in _hub_split(g):
        if rim.m == rim.n and all(len(a) == 2 for a in rim.adj) and rim.is_connected():
            return True
    return False


def is_fan_graph(g: Graph) -> bool:
    """K1 ∨ P_{k-1}, k >= 3."""
    if g.n < 3:
        return False
    for rim in _hub_split(g):
        if rim.m == rim.n - 1 and max(len(a) for a in rim.adj) <= 2 and rim.is_connected():
            return True
    return False


def is_wheel(b: TriBlock) -> bool:
    return is_wheel_graph(b.graph)


def is_fan(b: TriBlock) -> bool:
    return is_fan_graph(b.graph)


@dataclass(frozen=True)
class Fan:
    center: int
    rim: tuple[int, ...]
    triangles: int
    closed: bool  # rim wraps all the way round the centre


def fan_partition(m: PlaneMap, v: int) -> list[Fan]:
    """Maximal runs of consecutive 3-faces around ``v`` in rotation order."""
    rot = m.rotation[v]
    d = len(rot)
    if d == 0:
        return []
    fid = m.face_of_dart
    walks = m.face_darts
    # corner i sits between rot[i] and rot[i+1]
    tri = [len(walks[fid[(rot[i], v)]]) == 3 for i in range(d)]
    start = rot.index(min(rot))
    if all(tri):
        rim = tuple(rot[(start + i) % d] for i in range(d))
        return [Fan(v, rim, d, True)]
    # begin scanning just after a non-triangular corner so no run wraps
    s = next(i for i in range(d) if not tri[(start + i) % d])
    fans, run = [], []
    for j in range(1, d + 1):
        i = (start + s + j) % d
        if tri[i]:
            if not run:
                run = [rot[i]]
            run.append(rot[(i + 1) % d])
        elif run:
            fans.append(Fan(v, tuple(run), len(run) - 1, False))
            run = []
    if run:
        fans.append(Fan(v, tuple(run), len(run) - 1, False))
    return fans


# --- catalogue ------------------------------------------------------------


@lru_cache(maxsize=1)
def load_catalog() -> dict[bytes, dict]:
    """Frozen block catalogue (all block classes with <= 6 vertices), keyed by plane code."""
    text = resources.files("planar_turan").joinpath("data/block_catalog.json").read_text()
    data = json.loads(text)
    return {bytes.fromhex(e["code"]): e for v in data["classes"].values() for e in v}


def classify(b: TriBlock) -> BlockClass:
    code = plane_code(b.sub_map)
    entry = load_catalog().get(code)
    alias = entry["alias"] if entry else LARGE
    return BlockClass(code, b.v, b.e, b.f3_in_host, alias)


def bad_six_aliases() -> tuple[str, ...]:
    return tuple(sorted(e["alias"] for e in load_catalog().values() if e.get("good") is False and e["v"] == 6))


def lemma3_aliases() -> tuple[str, ...]:
    return LEMMA3_SMALL + bad_six_aliases()


@dataclass(frozen=True)
class Lemma3Report:
    u: int
    v: int
    removed_edge: bool
    blocks: tuple[dict, ...]
    violations: tuple[dict, ...]

    @property
    def clean(self) -> bool:
        return not self.violations


def check_lemma3_list(m: PlaneMap, u: int, v: int) -> Lemma3Report:
    """Blocks of ``m - uv`` holding both u and v, flagged against the admissible list."""
    if u == v:
        raise ValueError("u and v must differ")
    removed = v in m.rotation[u]
    host = m.remove_edge(u, v) if removed else m
    allowed = set(lemma3_aliases())
    rows = []
    for b in decompose(host):
        if u in b.vertices and v in b.vertices:
            cls = classify(b)
            rows.append(
                {
                    "vertices": list(b.vertices),
                    "alias": cls.alias,
                    "e": b.e,
                    "f3": b.f3_in_host,
                    "allowed": cls.alias in allowed,
                }
            )
    return Lemma3Report(u, v, removed, tuple(rows), tuple(r for r in rows if not r["allowed"]))


def block_report(blocks: Sequence[TriBlock]) -> list[dict]:
    out = []
    for b in blocks:
        out.append(
            {
                "vertices": list(b.vertices),
                "edges": [list(e) for e in sorted(b.edges)],
                "f3": b.f3_in_host,
                "alias": classify(b).alias,
                "holes": sorted(len(h) for h in holes(b)),
                "good": is_good(b) if b.v >= 6 else None,
            }
        )
    return out
