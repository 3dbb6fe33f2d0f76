"""Deliberately slow reference implementations used as test oracles."""

from itertools import combinations, permutations

import networkx as nx


def cycle_sets(adj, n):
    """Vertex sets of all cycles, grouped by length, by trying every cyclic order."""
    out = {}
    for k in range(3, n + 1):
        found = set()
        for verts in combinations(range(n), k):
            for perm in permutations(verts[1:]):
                c = (verts[0],) + perm
                if all(c[(i + 1) % k] in adj[c[i]] for i in range(k)):
                    found.add(frozenset(c))
                    break
        out[k] = sorted(found, key=sorted)
    return out


def naive_has(adj, n, lengths, wild, cyc=None):
    cyc = cyc if cyc is not None else cycle_sets(adj, n)
    every = [c for k in sorted(cyc) for c in cyc[k]]
    slots = list(lengths) + [None] * wild

    def rec(i, used):
        if i == len(slots):
            return True
        pool = cyc.get(slots[i], []) if slots[i] else every
        return any(used.isdisjoint(c) and rec(i + 1, used | c) for c in pool)

    return rec(0, frozenset())


def to_nx(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


def brute_ex(n, lengths, wild):
    """Max edges of a planar pattern-free graph on n labelled vertices, trying every edge set."""
    pairs = list(combinations(range(n), 2))
    for m in range(len(pairs), -1, -1):
        for es in combinations(pairs, m):
            adj = [set() for _ in range(n)]
            for a, b in es:
                adj[a].add(b)
                adj[b].add(a)
            if naive_has(adj, n, lengths, wild):
                continue
            if nx.check_planarity(to_nx(n, es))[0]:
                return m
    return 0
