from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from bendmin.corpus import cube, cycle, k4
from bendmin.errors import ConditionsViolated, NoRectangularDrawing
from bendmin.flow import FlowNetwork, solve, solve_lp
from bendmin.graph import build_graph, embed, faces_of
from bendmin.oracle import min_bends_fixed_embedding
from bendmin.ortho import validate_rep
from bendmin.rect import (
    REAL_TABLE,
    SkeletonInput,
    bad_cycles,
    check_shapes,
    min_bend_cubic_root,
    no_bend_conditions,
    no_bend_draw,
    rectangular_draw,
    rset_alg,
)

# 2 x 3 ladder: outer cycle 0-1-2-5-4-3, rungs 1-4
LADDER = build_graph([(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)], 6)


def outer_embedding(g, size):
    emb = embed(g)
    fs = faces_of(emb)
    for f in fs.faces:
        if len(f) == size:
            return emb.with_external(f.darts[0])
    raise AssertionError


def test_ladder_rectangular_drawing():
    emb = outer_embedding(LADDER, 6)
    rep = rectangular_draw(LADDER, emb, [0, 2, 3, 5])
    assert validate_rep(rep) and rep.bend_count() == 0
    fs = faces_of(rep.embedding)
    for i, f in enumerate(fs.faces):
        if i != fs.external:
            # four 90-degree corners, everything else straight
            angles = [rep.angle_in_face(e, rep.graph.other(e, t)) for t, e in f.darts]
            assert sorted(a for a in angles if a != 2) == [1, 1, 1, 1]


def test_rectangular_needs_degree_two_corners():
    with pytest.raises(NoRectangularDrawing):
        rectangular_draw(LADDER, outer_embedding(LADDER, 6), [0, 1, 3, 5])


def test_no_bend_conditions():
    assert no_bend_conditions(cycle(4), embed(cycle(4)))
    assert no_bend_conditions(cycle(3), embed(cycle(3))).condition == "i"
    assert not no_bend_conditions(cube(), embed(cube()))
    with pytest.raises(ConditionsViolated):
        no_bend_draw(cycle(3), embed(cycle(3)))
    rep = no_bend_draw(LADDER, outer_embedding(LADDER, 6))
    assert validate_rep(rep) and rep.bend_count() == 0


def test_bad_cycles_follow_corner_choice():
    emb = outer_embedding(LADDER, 6)
    assert bad_cycles(LADDER, emb, [0, 2, 3, 5]) == []
    # with corners only on the left square, the right square is a bad 2-legged cycle
    assert bad_cycles(LADDER, emb, [0, 3])


def test_cubic_root_matches_fixed_embedding_oracle():
    for g in (k4(), cube()):
        emb = embed(g)
        for f in faces_of(emb).faces:
            e_emb = emb.with_external(f.darts[0])
            skel = SkeletonInput(g, e_emb.rotation, f.darts[0], tuple([REAL_TABLE] * g.m))
            assert min_bend_cubic_root(skel).cost == min_bends_fixed_embedding(g, e_emb)


def k4_minus_edge() -> SkeletonInput:
    k = k4()
    emb = embed(k)
    g = build_graph([(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4)
    m = {1: 0, 2: 1, 3: 2, 4: 3, 5: 4}
    rot = tuple(tuple(m[e] for e in r if e != 0) for r in emb.rotation)
    r0 = emb.rotation[0]
    prev = r0[r0.index(0) - 1]
    return SkeletonInput(g, rot, (0, m[prev]), tuple([REAL_TABLE] * 5), (0, 1))


def test_rset_on_k4_minus_edge():
    skel = k4_minus_edge()
    res = rset_alg(skel)
    # both inner faces are triangles, so each needs a bend whatever the shape
    assert (res.x.cost, res.d.cost) == (2, 2)
    check_shapes(skel, res)


@st.composite
def networks(draw):
    n = draw(st.integers(2, 6))
    net = FlowNetwork()
    for i in range(n):
        net.add_node(i)
    for _ in range(draw(st.integers(1, 12))):
        a, b = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if a == b:
            continue
        lo = draw(st.integers(0, 1))
        net.add_arc(a, b, lo + draw(st.integers(0, 3)), draw(st.integers(0, 5)), lower=lo)
    s = draw(st.integers(0, 4))
    net.add_node(0, s)
    net.add_node(n - 1, -s)
    return net


@given(networks())
def test_flow_solver_agrees_with_lp(net):
    a, b = solve(net), solve_lp(net)
    assert (a is None) == (b is None)
    if a is not None:
        assert a.cost == b.cost
