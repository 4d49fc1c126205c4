from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from bendmin.corpus import corpus, cube, cycle, k4
from bendmin.errors import (
    DanglingIndex,
    DegreeExceeded,
    DuplicateEdge,
    NotPlanar,
    NotSmoothable,
    SelfLoop,
    SmoothWouldCreateMultiEdge,
)
from bendmin.graph import (
    block_cut_tree,
    build_graph,
    embed,
    faces_of,
    graph_from_json,
    graph_to_json,
    induced_block,
    smooth,
    subdivide,
)


@pytest.mark.parametrize(
    "edges,n,exc",
    [
        ([(0, 1), (1, 0)], 2, DuplicateEdge),
        ([(0, 0)], 1, SelfLoop),
        ([(0, 1), (0, 2), (0, 3), (0, 4)], 5, DegreeExceeded),
        ([(0, 5)], 2, DanglingIndex),
    ],
)
def test_build_graph_rejects(edges, n, exc):
    with pytest.raises(exc):
        build_graph(edges, n)


def test_edges_normalized_low_high():
    g = build_graph([(2, 0), (1, 2)], 3)
    assert g.edges == ((0, 2), (1, 2))
    assert g.edge_id(2, 0) == 0


def test_k33_not_planar():
    g = build_graph([(a, b) for a in range(3) for b in range(3, 6)], 6)
    with pytest.raises(NotPlanar):
        embed(g)


@pytest.mark.parametrize("g,faces", [(cycle(4), 2), (k4(), 4), (cube(), 6)])
def test_face_count(g, faces):
    assert len(faces_of(embed(g)).faces) == faces


def test_euler_on_corpus():
    for g in corpus(7, 2):
        fs = faces_of(embed(g))
        assert g.n - g.m + len(fs.faces) == 2


def test_json_round_trip():
    g = k4()
    emb = embed(g)
    g2, emb2 = graph_from_json(graph_to_json(g, emb))
    assert g2.edges == g.edges
    assert emb2.rotation == emb.rotation
    assert faces_of(emb2).external == faces_of(emb).external


def test_subdivide_then_smooth_is_identity():
    g = k4()
    h, w = subdivide(g, 2)
    assert h.n == 5 and h.degree(w) == 2
    assert smooth(h, w).edges == g.edges


def test_smooth_errors():
    with pytest.raises(NotSmoothable):
        smooth(k4(), 0)
    with pytest.raises(SmoothWouldCreateMultiEdge):
        smooth(cycle(3), 0)


def test_block_cut_tree_of_two_triangles_and_bridge():
    g = build_graph([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)], 6)
    bct = block_cut_tree(g)
    assert sorted(len(b.edges) for b in bct.blocks) == [1, 3, 3]
    assert bct.cut_vertices == (2, 3)
    sub, vmap, emap = induced_block(g, bct.blocks[bct.block_of_edge(0)])
    assert sub.m == 3 and sorted(vmap) == [0, 1, 2]


@given(st.integers(3, 12))
def test_blocks_partition_edges(n):
    h = nx.random_labeled_tree(n, seed=n) if hasattr(nx, "random_labeled_tree") else nx.random_tree(n, seed=n)
    h = nx.Graph((a, b) for a, b in h.edges() if h.degree(a) <= 3 and h.degree(b) <= 3)
    if h.number_of_edges() == 0 or not nx.is_connected(h) or max(d for _, d in h.degree()) > 3:
        return
    h = nx.convert_node_labels_to_integers(h)
    g = build_graph(list(h.edges()), h.number_of_nodes())
    bct = block_cut_tree(g)
    assert sorted(e for b in bct.blocks for e in b.edges) == list(range(g.m))
    assert all(b.trivial for b in bct.blocks)
