"""Cycles and vertex-disjoint cycle unions.

Exact search.  Single cycles of a fixed length are found by peeling vertices
in decreasing degree order: each cycle is caught at its first peeled vertex,
and for lengths 3-5 the search through a vertex only touches its radius-3
ball (so a hub costs O(m) once instead of a blow-up in its degree).

For a union of cycles, the shortest requested cycle is chosen from the full
family of its vertex sets and the rest of the pattern is queried on the
remaining graph.  Queries are monotone under vertex deletion, so results are
cached as (found witness, known blocker) pairs, and a sunflower argument
collapses large groups of candidates sharing a core: if more than R
candidates are pairwise disjoint outside the core, where R bounds the size of
the remaining witness, then one of them survives any remaining witness.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ParseError
from .graph_core import Graph

Cycle = tuple[int, ...]
Witness = tuple[Cycle, ...]
Adj = Sequence[frozenset[int]]


@dataclass(frozen=True)
class CyclePattern:
    exact_lengths: tuple[int, ...] = ()
    wildcard_count: int = 0

    def __post_init__(self):
        lengths = tuple(sorted(int(k) for k in self.exact_lengths))
        object.__setattr__(self, "exact_lengths", lengths)
        if any(k < 3 for k in lengths):
            raise ValueError("cycle lengths must be at least 3")
        if self.wildcard_count < 0:
            raise ValueError("wildcard count must be non-negative")
        if not lengths and not self.wildcard_count:
            raise ValueError("empty pattern")

    @property
    def min_vertices(self) -> int:
        return sum(self.exact_lengths) + 3 * self.wildcard_count

    def __str__(self) -> str:
        parts = []
        for k in sorted(set(self.exact_lengths)):
            c = self.exact_lengths.count(k)
            parts.append(f"{c if c > 1 else ''}C{k}")
        if self.wildcard_count:
            c = self.wildcard_count
            parts.append(f"{c if c > 1 else ''}C")
        return "+".join(parts)


_TOKEN = re.compile(r"^(\d*)C(\d*)$")


def parse_pattern(text: str) -> CyclePattern:
    """``C3+C5``, ``2C3``, ``C3+C4``, ``3C``, ``2C`` ..."""
    lengths: list[int] = []
    wild = 0
    tokens = [t.strip() for t in text.strip().upper().split("+")]
    for tok in tokens:
        match = _TOKEN.match(tok)
        if not match:
            raise ParseError(f"bad pattern token {tok!r} in {text!r}")
        count = int(match.group(1)) if match.group(1) else 1
        if count < 1:
            raise ParseError(f"zero multiplicity in {text!r}")
        if match.group(2):
            k = int(match.group(2))
            if k < 3:
                raise ParseError(f"cycle length {k} < 3 in {text!r}")
            lengths.extend([k] * count)
        else:
            wild += count
    return CyclePattern(tuple(lengths), wild)


def normalize_cycle(cycle: Sequence[int]) -> Cycle:
    """Rotate to the smallest vertex and pick the direction with the smaller successor."""
    k = len(cycle)
    i = min(range(k), key=cycle.__getitem__)
    fwd = tuple(cycle[(i + j) % k] for j in range(k))
    bwd = tuple(cycle[(i - j) % k] for j in range(k))
    return min(fwd, bwd)


def is_cycle_of(adj: Adj, cycle: Sequence[int]) -> bool:
    k = len(cycle)
    return (
        k >= 3
        and len(set(cycle)) == k
        and all(cycle[(i + 1) % k] in adj[cycle[i]] for i in range(k))
    )


def validate_witness(g: Graph, p: CyclePattern, witness: Witness) -> bool:
    """Cycles exist in ``g``, are pairwise disjoint, and match the pattern."""
    if len(witness) != len(p.exact_lengths) + p.wildcard_count:
        return False
    if not all(is_cycle_of(g.adj, c) for c in witness):
        return False
    used = [v for c in witness for v in c]
    if len(set(used)) != len(used):
        return False
    lengths = sorted(len(c) for c in witness)
    # exact lengths must be matchable; wildcards take whatever is left
    pool = list(lengths)
    for k in p.exact_lengths:
        if k not in pool:
            return False
        pool.remove(k)
    return True


# --- single cycles --------------------------------------------------------


def _live_subgraph(adj: Adj, banned: frozenset[int]) -> dict[int, set[int]]:
    sub = {v: set(adj[v]) - banned for v in range(len(adj)) if v not in banned}
    _prune_low_degree(sub, list(sub))
    return sub


def _prune_low_degree(sub: dict[int, set[int]], candidates: Iterable[int]):
    stack = [v for v in candidates if v in sub and len(sub[v]) < 2]
    while stack:
        v = stack.pop()
        if v not in sub or len(sub[v]) >= 2:
            continue
        for w in sub.pop(v):
            nb = sub.get(w)
            if nb is not None:
                nb.discard(v)
                if len(nb) < 2:
                    stack.append(w)


def _pick(s: set[int], avoid: tuple[int, ...], limit: int = 2) -> list[int]:
    out = []
    for x in s:
        if x not in avoid:
            out.append(x)
            if len(out) == limit:
                break
    return out


def _cycle_through(sub: dict[int, set[int]], s: int, k: int) -> Optional[list[int]]:
    ns = sub[s]
    if len(ns) < 2:
        return None
    if k == 3:
        for a in sorted(ns):
            common = sub[a] & ns
            if common:
                return [s, a, min(common)]
        return None
    # link[b] = neighbours of s adjacent to b (b at distance <= 2 from s)
    link: dict[int, set[int]] = {}
    for a in ns:
        for b in sub[a]:
            if b != s and b not in link:
                nb = sub[b]
                link[b] = (nb & ns) if len(nb) < len(ns) else (ns & nb)
    if k == 4:
        for b in sorted(link):
            if len(link[b]) >= 2:
                a, d = sorted(link[b])[:2]
                return [s, a, b, d]
        return None
    if k == 5:
        for b in sorted(link):
            lb = link[b]
            for c in sub[b]:
                lc = link.get(c)
                if c == s or not lc:
                    continue
                aa = _pick(lb, (c,))
                dd = _pick(lc, (b,))
                if not aa or not dd:
                    continue
                for a in aa:
                    for d in dd:
                        if a != d:
                            return [s, a, b, c, d]
        return None
    return _dfs_cycle_through(sub, s, k)


def _dfs_cycle_through(sub: dict[int, set[int]], s: int, k: int) -> Optional[list[int]]:
    # BFS distances bound how far a partial path may wander from s
    dist = {s: 0}
    frontier = [s]
    while frontier:
        nxt = []
        for x in frontier:
            if dist[x] >= k // 2:
                continue
            for y in sub[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    ns = sub[s]
    path = [s]
    on_path = {s}

    def extend() -> bool:
        x = path[-1]
        depth = len(path)
        if depth == k:
            return x in ns
        remaining = k - depth
        for y in sorted(sub[x]):
            if y in on_path or dist.get(y, k) > remaining:
                continue
            path.append(y)
            on_path.add(y)
            if extend():
                return True
            path.pop()
            on_path.discard(y)
        return False

    return list(path) if extend() else None


def _find_cycle(adj: Adj, k: int, banned: frozenset[int] = frozenset()) -> Optional[Cycle]:
    sub = _live_subgraph(adj, banned)
    for s in sorted(sub, key=lambda v: (-len(sub[v]), v)):
        if s not in sub:
            continue
        found = _cycle_through(sub, s, k)
        if found:
            return normalize_cycle(found)
        nbrs = sub.pop(s)
        for w in nbrs:
            sub[w].discard(s)
        _prune_low_degree(sub, nbrs)
    return None


def find_cycle(g: Graph, k: int) -> Optional[Cycle]:
    """A ``k``-cycle of ``g`` (normalised), or None."""
    if k < 3:
        raise ValueError("cycle length must be at least 3")
    if k > g.n:
        return None
    return _find_cycle(g.adj, k)


def _any_cycle(adj: Adj, banned: frozenset[int]) -> Optional[Cycle]:
    """Some cycle of the graph minus ``banned`` (a shortest one through its first vertex)."""
    sub = _live_subgraph(adj, banned)
    if not sub:
        return None
    s = min(sub)
    parent = {s: None}
    depth = {s: 0}
    queue = [s]
    for x in queue:
        for y in sorted(sub[x]):
            if y == parent[x]:
                continue
            if y in parent:
                # climb both branches to their meeting point
                a, b = [x], [y]
                while a[-1] != b[-1]:
                    if depth[a[-1]] >= depth[b[-1]]:
                        a.append(parent[a[-1]])
                    else:
                        b.append(parent[b[-1]])
                return normalize_cycle(a + b[-2::-1])
            parent[y] = x
            depth[y] = depth[x] + 1
            queue.append(y)
    raise AssertionError("2-core without a cycle")


# --- cycle families -------------------------------------------------------


def _triangles(adj: Adj, banned: frozenset[int]) -> dict[frozenset[int], Cycle]:
    out = {}
    for u in range(len(adj)):
        if u in banned:
            continue
        nu = adj[u]
        for v in nu:
            if v <= u or v in banned:
                continue
            for w in nu & adj[v]:
                if w > v and w not in banned:
                    out[frozenset((u, v, w))] = (u, v, w)
    return out


def _k_cycles(adj: Adj, k: int, banned: frozenset[int]) -> dict[frozenset[int], Cycle]:
    if k == 3:
        return _triangles(adj, banned)
    out: dict[frozenset[int], Cycle] = {}
    n = len(adj)
    for r in range(n):
        if r in banned:
            continue
        path = [r]
        on = {r}

        def extend():
            x = path[-1]
            if len(path) == k:
                if r in adj[x]:
                    key = frozenset(path)
                    if key not in out:
                        out[key] = normalize_cycle(path)
                return
            for y in adj[x]:
                if y > r and y not in on and y not in banned:
                    path.append(y)
                    on.add(y)
                    extend()
                    path.pop()
                    on.discard(y)

        extend()
    return out


def chordless_cycles(adj: Adj, banned: frozenset[int] = frozenset()) -> list[Cycle]:
    """All induced cycles, each listed once (normalised)."""
    found = set()
    n = len(adj)
    for r in range(n):
        if r in banned:
            continue
        path = [r]

        def extend():
            x = path[-1]
            for y in adj[x]:
                if y <= r or y in banned or y in path:
                    continue
                # y may touch the path only at x and (to close) at r
                touches = [p for p in path[1:-1] if y in adj[p]]
                if touches:
                    continue
                if len(path) >= 2 and r in adj[y]:
                    found.add(normalize_cycle(path + [y]))
                    continue
                path.append(y)
                extend()
                path.pop()

        extend()
    return sorted(found, key=lambda c: (len(c), c))


# --- unions ---------------------------------------------------------------


class _MonotoneCache:
    """Memo for ``pattern in G - S`` queries; answers are monotone in S."""

    def __init__(self, compute):
        self.compute = compute
        self.hits: list[tuple[frozenset[int], Witness]] = []
        self.blockers: list[frozenset[int]] = []

    def __call__(self, removed: frozenset[int]) -> Optional[Witness]:
        for verts, wit in self.hits:
            if not verts & removed:
                return wit
        for blocker in self.blockers:
            if blocker <= removed:
                return None
        wit = self.compute(removed)
        if wit is None:
            self.blockers.append(removed)
        else:
            self.hits.append((frozenset(v for c in wit for v in c), wit))
        return wit


def _search_family(
    family: list[frozenset[int]],
    core: frozenset[int],
    query: _MonotoneCache,
    petal_bound: Optional[int],
) -> Optional[tuple[frozenset[int], Witness]]:
    if petal_bound is None or len(family) <= 4:
        for f in family:
            wit = query(f)
            if wit is not None:
                return f, wit
        return None
    chosen: list[frozenset[int]] = []
    used: set[int] = set()
    for f in family:
        petal = f - core
        if not petal & used:
            chosen.append(f)
            used |= petal
            if len(chosen) > petal_bound:
                break
    if len(chosen) > petal_bound:
        wit = query(core)
        if wit is None:
            return None
        verts = {v for c in wit for v in c}
        for f in chosen:
            if not f & verts:
                return f, wit
        raise AssertionError("sunflower petals exhausted by a bounded witness")
    remaining = family
    for x in sorted(used):
        hit = [f for f in remaining if x in f]
        remaining = [f for f in remaining if x not in f]
        if hit:
            res = _search_family(hit, core | {x}, query, petal_bound)
            if res is not None:
                return res
    return None


def _find_union(
    adj: Adj, lengths: tuple[int, ...], wild: int, banned: frozenset[int]
) -> Optional[Witness]:
    alive = len(adj) - len(banned)
    if sum(lengths) + 3 * wild > alive:
        return None
    if not lengths:
        if wild == 0:
            return ()
        if wild == 1:
            c = _any_cycle(adj, banned)
            return None if c is None else (c,)
        # order the chosen cycles by smallest vertex: later ones avoid everything below it
        for c in chordless_cycles(adj, banned):
            low = frozenset(range(min(c) + 1))
            rest = _find_union(adj, (), wild - 1, banned | frozenset(c) | low)
            if rest is not None:
                return (c,) + rest
        return None
    k, rest = lengths[0], lengths[1:]
    if not rest and wild == 0:
        c = _find_cycle(adj, k, banned)
        return None if c is None else (c,)

    def compute(removed: frozenset[int]) -> Optional[Witness]:
        return _find_union(adj, rest, wild, banned | removed)

    query = _MonotoneCache(compute)
    first = query(frozenset())
    if first is None:
        return None
    cycles = _k_cycles(adj, k, banned)
    verts = {v for c in first for v in c}
    for key, cyc in cycles.items():
        if not key & verts:
            return (cyc,) + first
    family = sorted(cycles, key=sorted)
    bound = sum(rest) if wild == 0 else None
    res = _search_family(family, frozenset(), query, bound)
    if res is None:
        return None
    key, wit = res
    return (cycles[key],) + wit


def find_pattern(g: Graph, p: CyclePattern) -> Optional[Witness]:
    """Pairwise vertex-disjoint cycles realising ``p``, or None if ``g`` is p-free."""
    wit = _find_union(g.adj, p.exact_lengths, p.wildcard_count, frozenset())
    if wit is None:
        return None
    wit = tuple(sorted((normalize_cycle(c) for c in wit), key=lambda c: (len(c), c)))
    if not validate_witness(g, p, wit):
        raise AssertionError(f"invalid witness {wit} for {p}")
    return wit


def is_free(g: Graph, p: CyclePattern) -> bool:
    return find_pattern(g, p) is None


class AllVacuous:
    """Returned by :func:`common_triangle_vertex` on triangle-free graphs."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ALL_VACUOUS"


ALL_VACUOUS = AllVacuous()


def common_triangle_vertex(g: Graph):
    """Smallest vertex lying on every triangle; None if there is none."""
    tris = _triangles(g.adj, frozenset())
    if not tris:
        return ALL_VACUOUS
    common = frozenset(range(g.n))
    for t in tris:
        common &= t
        if not common:
            return None
    return min(common)
