import pytest
from hypothesis import given
from hypothesis import strategies as st

from planar_turan.blocks import (
    bad_pairs,
    check_lemma3_list,
    classify,
    decompose,
    fan_partition,
    holes,
    is_fan,
    is_fan_graph,
    is_good,
    is_wheel,
    is_wheel_graph,
    lemma3_aliases,
)
from planar_turan.constructions import extremal_c3c5, fan, random_plane_map, wheel
from planar_turan.cycles import is_free, parse_pattern
from planar_turan.errors import TooSmall
from planar_turan.graph_core import Graph, complete_graph, cycle_graph, empty_graph, is_isomorphic, join, path_graph
from planar_turan.plane_map import all_embeddings, embed_planar, insert_vertex_in_face

BOWTIE = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
OCTAHEDRON = Graph.from_edges(6, [(a, b) for a in range(6) for b in range(a + 1, 6) if b - a != 3])


def only_block(m):
    (b,) = decompose(m)
    return b


def test_k4_is_one_block():
    b = only_block(embed_planar(complete_graph(4)))
    assert (b.e, b.f3_in_host) == (6, 4)
    assert classify(b).alias == "k4"
    assert holes(b) == []


def test_bowtie_two_triangles():
    blocks = decompose(embed_planar(BOWTIE))
    assert [b.e for b in blocks] == [3, 3]
    assert [classify(b).alias for b in blocks] == ["triangle", "triangle"]


def test_lone_edges_are_blocks():
    blocks = decompose(embed_planar(path_graph(4)))
    assert [(b.v, b.e, b.f3_in_host) for b in blocks] == [(2, 1, 0)] * 3
    assert classify(blocks[0]).alias == "edge"


@pytest.mark.parametrize("n", [14, 17, 20])
def test_extremal_minus_apex_edge_is_wheels(n):
    blocks = decompose(extremal_c3c5(n).remove_edge(0, 1))
    assert len(blocks) == (n - 2) // 3
    for b in blocks:
        assert (b.v, b.e, b.f3_in_host) == (5, 8, 4)
        assert classify(b).alias == "wheel5"


def test_hole_examples():
    assert [len(h) for h in holes(only_block(wheel(5)))] == [4]
    assert [len(h) for h in holes(only_block(fan(5)))] == [5]


def test_good_bad_examples():
    assert is_good(only_block(fan(7)))
    f6 = only_block(fan(6))
    assert not is_good(f6)
    # path 1..5 around hub 0: the pair at distance two from each end
    assert (2, 4) in bad_pairs(f6)
    assert is_good(only_block(embed_planar(OCTAHEDRON)))
    with pytest.raises(TooSmall):
        is_good(only_block(wheel(5)))


def test_classify_examples():
    d = only_block(embed_planar(Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])))
    c = classify(d)
    assert (c.alias, c.e, c.f3) == ("diamond", 5, 2)
    w = classify(only_block(wheel(5)))
    assert (w.alias, w.e, w.f3) == ("wheel5", 8, 4)
    assert classify(only_block(fan(20))).alias == "large"


@pytest.mark.parametrize("k", range(4, 12))
def test_wheel_fan_recognizers_match_isomorphism(k):
    w, f = wheel(k).graph, fan(k).graph
    assert is_wheel_graph(w) and not is_fan_graph(w)
    assert is_fan_graph(f) and not is_wheel_graph(f)
    assert is_isomorphic(w, join(empty_graph(1), cycle_graph(k - 1)))
    assert is_isomorphic(f, join(empty_graph(1), path_graph(k - 1)))


def test_octahedron_neither():
    b = only_block(embed_planar(OCTAHEDRON))
    assert not is_wheel(b) and not is_fan(b)


def test_wheel_and_fan_block_level():
    assert is_wheel(only_block(wheel(10)))
    assert is_fan(only_block(fan(10)))


def test_fan_partition_examples():
    (hub,) = fan_partition(wheel(7), 0)
    assert hub.closed and hub.triangles == 6
    (f,) = fan_partition(fan(7), 0)
    assert not f.closed and f.triangles == 5
    parts = fan_partition(embed_planar(BOWTIE), 2)
    assert sorted(p.triangles for p in parts) == [1, 1]


def test_admissible_list_on_extremal():
    rep = check_lemma3_list(extremal_c3c5(17), 0, 1)
    assert rep.removed_edge and rep.clean
    assert len(rep.blocks) == 5
    assert all({0, 1} <= set(r["vertices"]) for r in rep.blocks)


def test_admissible_list_flags_bipyramid():
    # apex pair over C5, without the apex edge (with it the graph is not planar)
    rep = check_lemma3_list(embed_planar(join(empty_graph(2), cycle_graph(5))), 0, 1)
    assert not rep.clean


def test_admissible_list_empty_when_no_common_block():
    rep = check_lemma3_list(embed_planar(Graph.from_edges(4, [(0, 2), (1, 3)])), 0, 1)
    assert rep.blocks == () and rep.clean


def test_admissible_aliases_include_the_bad_pair():
    allowed = lemma3_aliases()
    assert {"diamond", "fan5", "wheel5", "k4ear", "fan6", "strip6"} == set(allowed)


@given(st.integers(1, 16), st.randoms(use_true_random=False))
def test_partition_identities(n, r):
    m = random_plane_map(n, r, keep=r.uniform(0.3, 1.0))
    blocks = decompose(m)
    assert sum(b.e for b in blocks) == m.m
    assert sum(b.f3_in_host for b in blocks) == m.f3()
    edges = [e for b in blocks for e in b.edges]
    assert len(edges) == len(set(edges))


@given(st.integers(3, 14), st.randoms(use_true_random=False))
def test_decompose_ignores_seed_order(n, r):
    m = random_plane_map(n, r)
    order = m.graph.sorted_edges()
    r.shuffle(order)
    canon = {b.edges for b in decompose(m)}
    assert {b.edges for b in decompose(m, edge_order=order)} == canon


@given(st.integers(4, 9), st.randoms(use_true_random=False))
def test_listed_blocks_have_f3_at_most_half_e(n, r):
    m = random_plane_map(n, r, keep=r.uniform(0.4, 0.9))
    if not is_free(m.graph, parse_pattern("C3+C5")):
        return
    allowed = set(lemma3_aliases())
    for b in decompose(m):
        if classify(b).alias in allowed:
            assert 2 * b.f3_in_host <= b.e


def test_decomposition_depends_on_embedding():
    # wheel hub 0 rim 1-2-3-4 with a vertex on rim edge 1-2: inside vs outside the 4-face
    g = Graph.from_edges(6, [*wheel(5).graph.edges, (1, 5), (2, 5)])
    shapes = {tuple(sorted((b.v, b.e) for b in decompose(m))) for m in all_embeddings(g)}
    assert len(shapes) == 2


def test_observation1_on_wheel6_insertions():
    m = wheel(6)
    assert is_good(only_block(m))
    fi = next(i for i, w in enumerate(m.face_walks()) if len(w) == 5)
    walk = m.face_walks()[fi]
    for k in range(2, 6):
        blocks = decompose(insert_vertex_in_face(m, fi, walk[:k]))
        if len(blocks) == 1:
            assert is_good(blocks[0])
