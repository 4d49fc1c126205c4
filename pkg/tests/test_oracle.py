from __future__ import annotations

import pytest

from bendmin.corpus import corpus, cycle, fig1a, k4
from bendmin.errors import TooLarge
from bendmin.graph import build_graph, embed, subdivide
from bendmin.oracle import brute_min_bends, enumerate_embeddings, min_bends_fixed_embedding


def test_c4_fixed_embedding_is_zero():
    assert min_bends_fixed_embedding(cycle(4), embed(cycle(4))) == 0


def test_k4_every_embedding_costs_four():
    assert {min_bends_fixed_embedding(k4(), emb) for emb in enumerate_embeddings(k4())} == {4}


def test_c4_has_one_rotation_and_two_faces():
    assert len(list(enumerate_embeddings(cycle(4)))) == 2


def test_k33_has_no_embedding():
    k33 = build_graph([(a, b) for a in range(3) for b in range(3, 6)], 6)
    assert list(enumerate_embeddings(k33)) == []


def test_too_large():
    with pytest.raises(TooLarge):
        list(enumerate_embeddings(cycle(9)))


def test_triangle_and_motivating_example():
    assert brute_min_bends(cycle(3)) == 1
    g, emb = fig1a()
    assert min_bends_fixed_embedding(g, emb) == 2
    assert brute_min_bends(g) == 0


def test_subdivision_never_increases_bends():
    for g in corpus(6, 2):
        base = brute_min_bends(g)
        for e in range(g.m):
            h, _ = subdivide(g, e)
            assert brute_min_bends(h) <= base
