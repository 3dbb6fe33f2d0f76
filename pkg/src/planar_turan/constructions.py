"""Plane graphs with explicit rotation systems: wheels, fans, apex joins.

Layout for the apex joins: apex ``u`` = 0 on the left, ``v`` = 1 on the
right, all path vertices on the vertical line between them, listed top to
bottom, paths stacked in the given order.  The optional edge ``uv`` runs
around the top.  Rotations are read clockwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import TooSmall
from .plane_map import PlaneMap, insert_vertex_in_face


@dataclass(frozen=True)
class ExtremalSpec:
    """n = 3t + r + 2 with t copies of P3 and one residual path on r vertices."""

    n: int

    def __post_init__(self):
        if self.n < 7:
            raise TooSmall(f"extremal construction needs n >= 7, got {self.n}")

    @property
    def t(self) -> int:
        return (self.n - 2) // 3

    @property
    def r(self) -> int:
        return (self.n - 2) % 3

    @property
    def paths(self) -> list[int]:
        return [3] * self.t + ([self.r] if self.r else [])

    @property
    def edge_count(self) -> int:
        return (8 * self.n - 13) // 3


def apex2_over_linear_forest(paths: list[int], with_apex_edge: bool = True) -> PlaneMap:
    """K2 (or 2K1) joined to disjoint paths with the given vertex counts."""
    if any(k < 1 for k in paths):
        raise ValueError("path lengths must be positive")
    if not paths:
        raise ValueError("need at least one path")
    u, v = 0, 1
    column: list[int] = []  # path vertices top to bottom
    above: dict[int, int] = {}
    below: dict[int, int] = {}
    nxt = 2
    for k in paths:
        block = list(range(nxt, nxt + k))
        nxt += k
        for a, b in zip(block, block[1:]):
            below[a] = b
            above[b] = a
        column.extend(block)
    rot: list[tuple[int, ...]] = [(), ()]
    arc = (v,) if with_apex_edge else ()
    rot[u] = arc + tuple(column)
    rot[v] = ((u,) if with_apex_edge else ()) + tuple(reversed(column))
    for x in column:
        r = []
        if x in above:
            r.append(above[x])
        r.append(v)
        if x in below:
            r.append(below[x])
        r.append(u)
        rot.append(tuple(r))
    m = PlaneMap(nxt, tuple(rot))
    if not m.is_spherical():
        raise AssertionError("apex layout is not spherical")
    return m


def extremal_c3c5(n: int) -> PlaneMap:
    """K2 ∨ (t·P3 ∪ P_r) with t = ⌊(n−2)/3⌋ and r = (n−2) mod 3, apex edge included."""
    spec = ExtremalSpec(n)
    return apex2_over_linear_forest(spec.paths, with_apex_edge=True)


def wheel(k: int) -> PlaneMap:
    """W_k = K1 ∨ C_{k-1}; hub 0, rim 1..k-1."""
    if k < 4:
        raise TooSmall("a wheel needs k >= 4")
    rim = list(range(1, k))
    rot = [tuple(rim)]
    for i, x in enumerate(rim):
        prev, nxt = rim[i - 1], rim[(i + 1) % len(rim)]
        rot.append((0, prev, nxt))
    return PlaneMap(k, tuple(rot))


def fan(k: int) -> PlaneMap:
    """F_k = K1 ∨ P_{k-1}; hub 0, path 1..k-1."""
    if k < 3:
        raise TooSmall("a fan needs k >= 3")
    path = list(range(1, k))
    rot = [tuple(path)]
    for i, x in enumerate(path):
        r = [0]
        if i > 0:
            r.append(path[i - 1])
        if i + 1 < len(path):
            r.append(path[i + 1])
        rot.append(tuple(r))
    m = PlaneMap(k, tuple(rot))
    return m


def random_plane_map(n: int, rng: random.Random, keep: float = 0.7) -> PlaneMap:
    """Random connected plane map: stacked triangulation, random flips, then edge deletions.

    Each non-bridge edge survives with probability about ``keep``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n <= 3:
        rots = {1: ((),), 2: ((1,), (0,)), 3: ((1, 2), (2, 0), (0, 1))}
        return PlaneMap(n, rots[n])
    rot = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]
    m = PlaneMap(4, tuple(map(tuple, rot)))
    while m.n < n:
        walks = m.face_walks()
        fi = rng.randrange(len(walks))
        m = insert_vertex_in_face(m, fi, walks[fi])
    for _ in range(2 * n):
        a, b = rng.choice(m.graph.sorted_edges())
        m = flip_edge(m, a, b) or m
    for a, b in rng.sample(m.graph.sorted_edges(), m.m):
        if rng.random() < keep:
            continue
        cand = m.remove_edge(a, b)
        if cand.graph.is_connected():
            m = cand
    return m


def flip_edge(m: PlaneMap, a: int, b: int) -> PlaneMap | None:
    """Replace edge ab (between two 3-faces abc, bad) by cd; None if cd exists."""
    c = m.next_dart((a, b))[1]
    d = m.next_dart((b, a))[1]
    if c == d or d in m.rotation[c]:
        return None
    rot = [list(r) for r in m.rotation]
    rot[a].remove(b)
    rot[b].remove(a)
    rot[c].insert(rot[c].index(b) + 1, d)
    rot[d].insert(rot[d].index(a) + 1, c)
    return PlaneMap(m.n, tuple(map(tuple, rot)))
