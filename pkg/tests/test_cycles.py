import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st
from naive import naive_has

from planar_turan.constructions import extremal_c3c5, fan, wheel
from planar_turan.cycles import (
    ALL_VACUOUS,
    CyclePattern,
    common_triangle_vertex,
    find_cycle,
    find_pattern,
    is_free,
    parse_pattern,
    validate_witness,
)
from planar_turan.graph_core import Graph, complete_graph, cycle_graph, disjoint_union
from planar_turan.oracle import generate_graphs

PATTERNS = ["C3", "C4", "C5", "2C3", "C3+C4", "C3+C5", "2C", "3C", "C3+C"]


@pytest.mark.parametrize(
    "text, lengths, wild",
    [("C3+C5", (3, 5), 0), ("2C3", (3, 3), 0), ("C5+C3", (3, 5), 0), ("3C", (), 3), ("2C", (), 2), ("C3+C", (3,), 1)],
)
def test_parse_pattern(text, lengths, wild):
    p = parse_pattern(text)
    assert p == CyclePattern(lengths, wild)
    assert parse_pattern(str(p)) == p


@pytest.mark.parametrize("bad", ["", "C2", "3", "C3+", "D4", "0C3"])
def test_parse_pattern_rejects(bad):
    with pytest.raises(ValueError):
        parse_pattern(bad)


def test_find_cycle_examples():
    assert sorted(find_cycle(cycle_graph(5), 5)) == [0, 1, 2, 3, 4]
    assert find_cycle(complete_graph(4), 5) is None
    c = find_cycle(wheel(5).graph, 5)
    assert c is not None and 0 in c


def test_find_pattern_examples():
    g = disjoint_union(cycle_graph(3), cycle_graph(5))
    wit = find_pattern(g, parse_pattern("C3+C5"))
    assert wit is not None and validate_witness(g, parse_pattern("C3+C5"), wit)
    assert find_pattern(extremal_c3c5(14).graph, parse_pattern("C3+C5")) is None
    assert find_pattern(wheel(6).graph, parse_pattern("C3+C5")) is None


def test_is_free_examples():
    assert is_free(extremal_c3c5(20).graph, parse_pattern("C3+C5"))
    k5e = complete_graph(5).remove_edges([(0, 1)])
    assert not is_free(k5e, parse_pattern("C3"))
    assert is_free(wheel(10).graph, parse_pattern("2C"))


@given(st.integers(1, 12), st.randoms(use_true_random=False))
def test_forests_are_free_of_any_cycle(n, r):
    edges = [(v, r.randrange(v)) for v in range(1, n) if r.random() < 0.8]
    assert is_free(Graph.from_edges(n, edges), parse_pattern("C"))


def test_common_triangle_vertex():
    bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert common_triangle_vertex(bowtie) == 2
    assert common_triangle_vertex(complete_graph(4)) is None
    for k in (4, 6, 9):
        assert common_triangle_vertex(fan(k).graph) == 0
    assert common_triangle_vertex(cycle_graph(5)) is ALL_VACUOUS


@pytest.mark.parametrize("n", range(3, 7))
def test_detector_matches_naive_on_all_small_graphs(n):
    for g in generate_graphs(n):
        for text in PATTERNS:
            p = parse_pattern(text)
            wit = find_pattern(g, p)
            assert (wit is not None) == naive_has(g.adj, g.n, p.exact_lengths, p.wildcard_count), (g, text)
            if wit is not None:
                assert validate_witness(g, p, wit)


@st.composite
def dense_graphs(draw):
    n = draw(st.integers(5, 9))
    pairs = list(itertools.combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@given(dense_graphs(), st.sampled_from(PATTERNS + ["2C4", "C4+C5", "C6"]))
def test_detector_matches_naive_random(g, text):
    p = parse_pattern(text)
    assert (find_pattern(g, p) is not None) == naive_has(g.adj, g.n, p.exact_lengths, p.wildcard_count)


@given(dense_graphs(), st.sampled_from(PATTERNS), st.randoms(use_true_random=False))
def test_detector_relabel_invariant(g, text, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    p = parse_pattern(text)
    assert is_free(g, p) == is_free(g.relabel(perm), p)


def test_monotone_under_edge_deletion(rng):
    p = parse_pattern("C3+C5")
    g = extremal_c3c5(11).graph
    for _ in range(20):
        e = rng.choice(g.sorted_edges())
        assert is_free(g.remove_edges([e]), p)
