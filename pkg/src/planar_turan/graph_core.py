"""Simple graphs on vertices 0..n-1, canonical codes and isomorphism.

Canonical form: colour refinement to an equitable ordered partition, then
individualisation/refinement backtracking; the canonical code is the largest
upper-triangle adjacency bit string over the leaves of the search tree.
Automorphisms found along the way (and all twin transpositions, seeded up
front) prune children lying in an already explored orbit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ParseError

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        normed = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            normed.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(normed))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, frozenset(_norm(int(u), int(v)) for u, v in edges))

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def add_edges(self, extra: Iterable[Sequence[int]]) -> "Graph":
        return Graph(self.n, self.edges | {_norm(u, v) for u, v in extra})

    def remove_edges(self, gone: Iterable[Sequence[int]]) -> "Graph":
        return Graph(self.n, self.edges - {_norm(u, v) for u, v in gone})

    def remove_vertices(self, gone: Iterable[int]) -> "Graph":
        """Delete vertices and re-index the survivors in increasing order."""
        gone = set(gone)
        keep = [v for v in range(self.n) if v not in gone]
        index = {v: i for i, v in enumerate(keep)}
        return Graph(
            len(keep),
            frozenset(
                (index[u], index[v]) for u, v in self.edges if u in index and v in index
            ),
        )

    def induced(self, vertices: Iterable[int]) -> "Graph":
        vs = set(vertices)
        return self.remove_vertices(v for v in range(self.n) if v not in vs)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Graph(self.n, frozenset(_norm(perm[u], perm[v]) for u, v in self.edges))

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1


# --- small constructors ---------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, frozenset(_norm(i, (i + 1) % n) for i in range(n)))


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = set(), 0
    for g in graphs:
        edges.update((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, frozenset(edges))


def join(a: Graph, b: Graph) -> Graph:
    """a ∨ b: disjoint union plus every edge between the two sides."""
    union = disjoint_union(a, b)
    cross = {(u, a.n + v) for u in range(a.n) for v in range(b.n)}
    return Graph(union.n, union.edges | cross)


def degree_sequence(g: Graph) -> list[int]:
    return sorted((len(s) for s in g.adj), reverse=True)


# --- canonical labelling --------------------------------------------------


def _refine(adj: Sequence[frozenset[int]], cells: list[list[int]]) -> list[list[int]]:
    while True:
        colour = {}
        for i, cell in enumerate(cells):
            for v in cell:
                colour[v] = i
        out: list[list[int]] = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            keyed: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                keyed.setdefault(tuple(sorted(colour[w] for w in adj[v])), []).append(v)
            if len(keyed) > 1:
                split = True
            out.extend(keyed[k] for k in sorted(keyed))
        cells = out
        if not split:
            return cells


def _code_int(adj: Sequence[frozenset[int]], order: Sequence[int]) -> int:
    code = 0
    n = len(order)
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | (order[j] in row)
    return code


def _twin_transpositions(adj: Sequence[frozenset[int]]) -> list[tuple[int, ...]]:
    n = len(adj)
    gens = []
    for a, b in combinations(range(n), 2):
        if adj[a] - {b} == adj[b] - {a}:
            perm = list(range(n))
            perm[a], perm[b] = b, a
            gens.append(tuple(perm))
    return gens


def canonical_labeling(g: Graph) -> tuple[bytes, list[int]]:
    """Return ``(code, order)``; ``order[i]`` is the vertex given canonical label i."""
    adj = g.adj
    n = g.n
    gens = _twin_transpositions(adj)
    best: list = [None, None]  # code int, order

    def search(cells: list[list[int]], prefix: list[int]):
        cells = _refine(adj, cells)
        idx = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if idx is None:
            order = [c[0] for c in cells]
            code = _code_int(adj, order)
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, order
            elif code == best[0]:
                # same code from two leaves: the leaf bijection is an automorphism
                perm = [0] * n
                for a, b in zip(order, best[1]):
                    perm[a] = b
                gens.append(tuple(perm))
            return
        cell = cells[idx]
        tried: list[int] = []
        for w in cell:
            if tried and not _new_orbit(w, tried, gens, prefix):
                continue
            tried.append(w)
            rest = [v for v in cell if v != w]
            search(cells[:idx] + [[w], rest] + cells[idx + 1 :], prefix + [w])

    search([list(range(n))], [])
    code_int, order = best
    total = n * (n - 1) // 2
    body = code_int.to_bytes((total + 7) // 8, "big") if total else b""
    return n.to_bytes(2, "big") + body, order


def _new_orbit(w: int, tried: list[int], gens, prefix) -> bool:
    usable = [g for g in gens if all(g[x] == x for x in prefix)]
    if not usable:
        return True
    seen = {w}
    frontier = [w]
    while frontier:
        x = frontier.pop()
        for g in usable:
            y = g[x]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return not any(t in seen for t in tried)


def canonical_code(g: Graph) -> bytes:
    return canonical_labeling(g)[0]


def canonical_form(g: Graph) -> Graph:
    _, order = canonical_labeling(g)
    perm = [0] * g.n
    for label, v in enumerate(order):
        perm[v] = label
    return g.relabel(perm)


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m or degree_sequence(a) != degree_sequence(b):
        return False
    return canonical_code(a) == canonical_code(b)


# --- adjlist v1 text format -----------------------------------------------

_VERTEX_LINE = re.compile(r"^\s*(\d+)\s*:(.*)$")


def format_adjlist(g: Graph) -> str:
    lines = [str(g.n)]
    for v in range(g.n):
        nbrs = " ".join(str(w) for w in sorted(g.adj[v]))
        lines.append(f"{v}: {nbrs}".rstrip())
    return "\n".join(lines) + "\n"


def parse_vertex_lines(text: str) -> tuple[int, dict[int, list[int]]]:
    """Shared reader for the adjlist/rot formats: header ``n`` then ``v: u1 u2 ...``."""
    n = None
    rows: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            if not line.isdigit():
                raise ParseError(f"expected vertex count, got {line!r}", lineno)
            n = int(line)
            continue
        match = _VERTEX_LINE.match(line)
        if not match:
            raise ParseError(f"expected 'v: neighbours', got {line!r}", lineno)
        v = int(match.group(1))
        try:
            nbrs = [int(tok) for tok in match.group(2).split()]
        except ValueError:
            raise ParseError("non-integer neighbour", lineno) from None
        if v >= n or any(not 0 <= w < n for w in nbrs):
            raise ParseError(f"vertex out of range (n={n})", lineno)
        if v in rows:
            raise ParseError(f"vertex {v} listed twice", lineno)
        if v in nbrs or len(set(nbrs)) != len(nbrs):
            raise ParseError(f"loop or repeated neighbour at vertex {v}", lineno)
        rows[v] = nbrs
    if n is None:
        raise ParseError("empty input")
    return n, rows


def parse_adjlist(text: str) -> Graph:
    n, rows = parse_vertex_lines(text)
    edges = set()
    for v, nbrs in rows.items():
        for w in nbrs:
            edges.add(_norm(v, w))
    for u, v in edges:
        if u in rows and v in rows and (v not in rows[u] or u not in rows[v]):
            raise ParseError(f"edge {u}-{v} listed on one side only")
    return Graph(n, frozenset(edges))
