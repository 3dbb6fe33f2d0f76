"""Rotation systems on the sphere.

A dart is an ordered pair ``(u, v)`` for an edge ``uv``.  The rotation at
``u`` lists its neighbours in cyclic order; the face successor of ``(u, v)``
is ``(v, w)`` where ``w`` follows ``u`` in the rotation at ``v``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from .errors import BoundExceeded, DivergentBound, MalformedRotation, NotConsecutive, ParseError
from .graph_core import Graph, parse_vertex_lines

Dart = tuple[int, int]
Face = tuple[int, ...]


@dataclass(frozen=True)
class NonPlanar:
    """Verdict for a graph without a planar embedding; ``obstruction`` is a Kuratowski subgraph."""

    obstruction: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class PlaneMap:
    n: int
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rot = tuple(tuple(int(w) for w in r) for r in self.rotation)
        object.__setattr__(self, "rotation", rot)
        if len(rot) != self.n:
            raise MalformedRotation(f"expected {self.n} rotations, got {len(rot)}")
        darts = set()
        for u, r in enumerate(rot):
            darts.update((u, w) for w in r)
            if len(set(r)) != len(r) or u in r:
                raise MalformedRotation(f"loop or repeated neighbour at {u}")
        for u, w in darts:
            if not 0 <= w < self.n or (w, u) not in darts:
                raise MalformedRotation(f"dart {u}->{w} has no twin")

    @classmethod
    def from_rotation(cls, rotation: Sequence[Sequence[int]]) -> "PlaneMap":
        return cls(len(rotation), tuple(tuple(r) for r in rotation))

    @cached_property
    def graph(self) -> Graph:
        return Graph.from_edges(self.n, ((u, w) for u, r in enumerate(self.rotation) for w in r))

    @cached_property
    def _pos(self) -> dict[Dart, int]:
        return {(u, w): i for u, r in enumerate(self.rotation) for i, w in enumerate(r)}

    @property
    def m(self) -> int:
        return self.graph.m

    def darts(self) -> list[Dart]:
        return [(u, w) for u, r in enumerate(self.rotation) for w in r]

    def next_dart(self, d: Dart) -> Dart:
        u, v = d
        rv = self.rotation[v]
        return (v, rv[(self._pos[(v, u)] + 1) % len(rv)])

    @cached_property
    def face_darts(self) -> tuple[tuple[Dart, ...], ...]:
        seen = set()
        out = []
        for d in sorted(self.darts()):
            if d in seen:
                continue
            walk = []
            while d not in seen:
                seen.add(d)
                walk.append(d)
                d = self.next_dart(d)
            out.append(tuple(walk))
        # an isolated vertex bounds one empty face
        out.extend(() for r in self.rotation if not r)
        return tuple(out)

    @cached_property
    def face_of_dart(self) -> dict[Dart, int]:
        return {d: i for i, walk in enumerate(self.face_darts) for d in walk}

    def face_walks(self) -> list[Face]:
        return [tuple(d[0] for d in walk) for walk in self.face_darts]

    def face_profile(self) -> dict[int, int]:
        return dict(sorted(Counter(len(w) for w in self.face_darts).items()))

    def f3(self) -> int:
        return sum(1 for w in self.face_darts if len(w) == 3)

    def euler_characteristic(self) -> int:
        return self.n - self.m + len(self.face_darts)

    def is_spherical(self) -> bool:
        """Every component is genus 0; face orbits are per component, so chi = 2 * #components."""
        return self.euler_characteristic() == 2 * len(self.graph.components())

    def mirror(self) -> "PlaneMap":
        return PlaneMap(self.n, tuple(tuple(reversed(r)) for r in self.rotation))

    def relabel(self, perm: Sequence[int]) -> "PlaneMap":
        rot = [()] * self.n
        for u, r in enumerate(self.rotation):
            rot[perm[u]] = tuple(perm[w] for w in r)
        return PlaneMap(self.n, tuple(rot))

    def restrict(self, edges: Iterable[Sequence[int]]) -> "PlaneMap":
        """Sub-map on the given edges (rotation order inherited), vertices re-indexed."""
        keep = {(min(e), max(e)) for e in edges}
        verts = sorted({x for e in keep for x in e})
        index = {v: i for i, v in enumerate(verts)}
        rot = tuple(
            tuple(index[w] for w in self.rotation[v] if (min(v, w), max(v, w)) in keep)
            for v in verts
        )
        return PlaneMap(len(verts), rot)

    def remove_edge(self, u: int, v: int) -> "PlaneMap":
        if v not in self.rotation[u]:
            raise ValueError(f"no edge {u}-{v}")
        rot = list(self.rotation)
        rot[u] = tuple(w for w in rot[u] if w != v)
        rot[v] = tuple(w for w in rot[v] if w != u)
        return PlaneMap(self.n, tuple(rot))


def faces(m: PlaneMap) -> tuple[list[Face], dict[int, int]]:
    return m.face_walks(), m.face_profile()


# --- planarity ------------------------------------------------------------


def _to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def is_planar(g: Graph) -> bool:
    return nx.check_planarity(_to_nx(g), counterexample=False)[0]


def embed_planar(g: Graph) -> PlaneMap | NonPlanar:
    """Planar rotation system of ``g``, or a NonPlanar verdict.

    The embedding is validated with Euler's formula before it is returned.
    """
    ok, cert = nx.check_planarity(_to_nx(g), counterexample=True)
    if not ok:
        return NonPlanar(tuple(sorted((min(e), max(e)) for e in cert.edges)))
    m = PlaneMap(g.n, tuple(tuple(cert.neighbors_cw_order(v)) for v in range(g.n)))
    if not m.is_spherical():
        raise AssertionError("planarity certificate failed the Euler check")
    return m


def all_embeddings(g: Graph, bound: int = 8) -> list[PlaneMap]:
    """Every spherical rotation system of ``g`` up to plane isomorphism (mirrors identified).

    Edges are inserted one at a time keeping the partial map connected; a
    closing edge may only join two corners of one face, so the genus never
    leaves zero and every planar rotation system arises from exactly one
    sequence of choices.
    """
    if g.n > bound:
        raise BoundExceeded(f"n={g.n} exceeds embedding bound {bound}")
    if not g.is_connected() or g.n == 0:
        return []
    adj = g.adj
    order, placed = [0], {0}
    steps: list[tuple[int, int]] = []
    for x in order:
        for y in sorted(adj[x]):
            if y not in placed:
                placed.add(y)
                order.append(y)
                steps.append((x, y))
                steps.extend((y, z) for z in sorted(adj[y]) if z in placed and z != x)
    found: dict[bytes, PlaneMap] = {}

    def grow(rot: list[list[int]], k: int):
        if k == len(steps):
            m = PlaneMap(g.n, tuple(tuple(r) for r in rot))
            found.setdefault(plane_code(m), m)
            return
        a, b = steps[k]
        if not rot[b]:
            for i in range(max(1, len(rot[a]))):
                rot[a].insert(i + 1 if rot[a] else 0, b)
                rot[b].append(a)
                grow(rot, k + 1)
                rot[b].pop()
                rot[a].pop(i + 1 if len(rot[a]) > 1 else 0)
            return
        partial = _partial_map(rot)
        fid = partial.face_of_dart
        for i, x in enumerate(rot[a]):
            for j, y in enumerate(rot[b]):
                if fid[(x, a)] != fid[(y, b)]:
                    continue
                rot[a].insert(i + 1, b)
                rot[b].insert(j + 1, a)
                grow(rot, k + 1)
                rot[b].pop(j + 1)
                rot[a].pop(i + 1)

    grow([[] for _ in range(g.n)], 0)
    return [found[c] for c in sorted(found)]


def _partial_map(rot: list[list[int]]) -> PlaneMap:
    return PlaneMap(len(rot), tuple(tuple(r) for r in rot))


# --- plane isomorphism codes ----------------------------------------------


def _code_from(m: PlaneMap, start: Dart, mirrored: bool) -> tuple[int, ...]:
    rot = m.rotation
    label = {start[0]: 0}
    entry = {start[0]: start[1]}
    queue = [start[0]]
    code: list[int] = []
    for v in queue:
        r = rot[v]
        d = len(r)
        i0 = m._pos[(v, entry[v])]
        step = -1 if mirrored else 1
        code.append(d)
        for k in range(d):
            w = r[(i0 + step * k) % d]
            if w not in label:
                label[w] = len(queue)
                entry[w] = v
                queue.append(w)
            code.append(label[w])
    return tuple(code)


def plane_code(m: PlaneMap) -> bytes:
    """Code of the map up to relabelling and reflection (connected maps)."""
    if m.m == 0:
        return m.n.to_bytes(2, "big")
    best = min(
        _code_from(m, d, mirrored) for d in m.darts() for mirrored in (False, True)
    )
    return m.n.to_bytes(2, "big") + b"".join(x.to_bytes(2, "big") for x in best)


def plane_isomorphic(a: PlaneMap, b: PlaneMap) -> bool:
    return a.n == b.n and a.m == b.m and plane_code(a) == plane_code(b)


# --- local surgery --------------------------------------------------------


def insert_vertex_in_face(m: PlaneMap, face: int, attach: Sequence[int]) -> PlaneMap:
    """Add vertex ``m.n`` inside face ``face`` joined to ``attach``.

    ``attach`` must be consecutive along the face walk, in walk order.
    """
    walk = m.face_walks()[face]
    k, length = len(attach), len(walk)
    if k < 1 or len(set(attach)) != k:
        raise NotConsecutive("attach list must be non-empty and repeat-free")
    if k > length:
        raise NotConsecutive("attach list longer than the face")
    start = next(
        (s for s in range(length) if all(walk[(s + i) % length] == attach[i] for i in range(k))),
        None,
    )
    if start is None:
        raise NotConsecutive(f"{list(attach)} is not a consecutive run of face {walk}")
    z = m.n
    rot = [list(r) for r in m.rotation] + [list(reversed(attach))]
    for i in range(k):
        w = walk[(start + i) % length]
        prev = walk[(start + i - 1) % length]
        if length == 0:
            rot[w].append(z)
        else:
            rot[w].insert(rot[w].index(prev) + 1, z)
    out = PlaneMap(m.n + 1, tuple(tuple(r) for r in rot))
    if not out.is_spherical():
        raise AssertionError("vertex insertion broke the spherical embedding")
    return out


def discharge_bound(n: int, c, d) -> Fraction:
    """Largest ``e`` allowed by Euler's formula when ``f3 <= c*e + d``.

    From ``2e >= 3*f3 + 4*(f - f3)`` and ``f = e + 2 - n``.
    """
    c, d = Fraction(c), Fraction(d)
    if c >= 2:
        raise DivergentBound(f"c={c} gives no bound")
    return (4 * n - 8 + d) / (2 - c)


# --- text formats ---------------------------------------------------------


def format_rot(m: PlaneMap) -> str:
    lines = [str(m.n)]
    lines.extend(f"{v}: {' '.join(map(str, r))}".rstrip() for v, r in enumerate(m.rotation))
    return "\n".join(lines) + "\n"


def parse_rot(text: str) -> PlaneMap:
    n, rows = parse_vertex_lines(text)
    missing = [v for v in range(n) if v not in rows]
    if missing and n > 1:
        raise ParseError(f"no rotation given for vertices {missing}")
    try:
        return PlaneMap(n, tuple(tuple(rows.get(v, ())) for v in range(n)))
    except MalformedRotation as exc:
        raise ParseError(str(exc)) from None


def format_dot(m: PlaneMap) -> str:
    fid = m.face_of_dart
    lines = ["graph G {"]
    for u, v in m.graph.sorted_edges():
        a, b = sorted((fid[(u, v)], fid[(v, u)]))
        lines.append(f'  {u} -- {v} [faces="{a},{b}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
