from __future__ import annotations

import pytest

from bendmin.corpus import corpus, cube, k4
from bendmin.graph import build_graph, is_biconnected
from bendmin.spqr import P, Q, R, S, build_spqr, check_3graph_properties, decompose, root_decomposition


def kinds(t):
    return sorted(nd.kind for nd in t.nodes if nd.kind != Q)


def test_cycle_is_one_s_node():
    g = build_graph([(0, 1), (1, 2), (2, 3), (0, 3)], 4)
    assert kinds(build_spqr(g, 0)) == [S]


def test_k4_is_one_r_node():
    assert kinds(build_spqr(k4(), 0)) == [R]


def test_theta_has_p_node():
    g = build_graph([(0, 1), (0, 5), (1, 2), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6)], 7)
    t = build_spqr(g, 0)
    assert P in kinds(t)
    assert t.nodes[t.root_child].kind == S


def test_properties_on_biconnected_corpus():
    n_checked = 0
    for g in corpus(8, 3):
        if not is_biconnected(g):
            continue
        dec = decompose(g)
        for e in range(g.m):
            rep = check_3graph_properties(root_decomposition(dec, e))
            assert rep.ok, (g.edges, e, rep.violations)
            n_checked += 1
    assert n_checked > 700


def test_rerooting_keeps_leaf_count():
    dec = decompose(cube())
    for e in range(12):
        t = root_decomposition(dec, e)
        assert sum(nd.kind == Q for nd in t.nodes) == 12
        assert t.ref_edge == e


def test_to_json_is_deterministic():
    assert build_spqr(cube(), 3).to_json() == build_spqr(cube(), 3).to_json()
