from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from bendmin.corpus import corpus, cycle, k4
from bendmin.dp import bend_min_global, bend_min_ref_edge
from bendmin.errors import InvalidRepresentation
from bendmin.graph import build_graph, faces_of
from bendmin.ortho import (
    OrthoRep,
    classify_shape,
    invert_rectilinear,
    rectilinear_image,
    rep_from_shape,
    shape_of,
    spirality,
    transform_shape,
    turn_number,
    validate_rep,
)

THETA = build_graph([(0, 1), (0, 5), (1, 2), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6)], 7)


def square() -> OrthoRep:
    g = cycle(4)  # edges (0,1) (1,2) (2,3) (0,3)
    shape = {0: (0, 0, ""), 1: (1, 1, ""), 2: (2, 2, ""), 3: (3, 3, "")}
    return rep_from_shape(g, shape)


def test_square_is_valid_with_right_angles():
    rep = square()
    assert validate_rep(rep)
    assert rep.bend_count() == 0
    assert all(sorted(a) == [1, 3] for a in rep.angles)


def test_broken_angle_sum_is_reported():
    rep = square()
    bad = OrthoRep(rep.graph, rep.rotation, ((2, 2),) + rep.angles[1:], rep.bends, rep.external)
    report = validate_rep(bad)
    assert not report and report.reason


def test_two_edges_in_one_direction_rejected():
    g = build_graph([(0, 1), (0, 2)], 3)
    with pytest.raises(InvalidRepresentation):
        rep_from_shape(g, {0: (0, 0, ""), 1: (0, 0, "")})


def test_triangle_needs_one_bend_and_turns_add_up():
    rep = bend_min_global(cycle(3)).rep
    assert rep.bend_count() == 1 and validate_rep(rep)
    # the closed walk makes four turns; the path misses the one back at 0
    assert turn_number(rep, [0, 1, 2, 0]) == 3


def test_k4_bends_sit_on_external_face():
    rep = bend_min_global(k4()).rep
    fs = faces_of(rep.embedding)
    ext_edges = set(fs.faces[fs.external].edges())
    assert sum(len(rep.bends[e]) for e in ext_edges) == 4


def test_theta_components_classify():
    res = bend_min_ref_edge(THETA, THETA.edge_id(1, 2))
    rep = res.rep
    comp = [THETA.edge_id(*e) for e in ((0, 1), (0, 5), (1, 6), (5, 6))]
    assert classify_shape(rep, comp, (1, 5)).name in ("X", "D")
    series = [THETA.edge_id(*e) for e in ((1, 0), (0, 5))]
    assert spirality(rep, series, (1, 5)) == classify_shape(rep, series, (1, 5)).k


def test_rectilinear_image_round_trip_on_corpus():
    for g in corpus(7, 2):
        rep = bend_min_global(g).rep
        img = rectilinear_image(rep)
        assert img.rep.bend_count() == 0
        assert img.graph.n == g.n + rep.bend_count()
        assert validate_rep(img.rep)
        back = invert_rectilinear(img, g)
        assert back.bends == rep.bends and back.angles == rep.angles


@given(st.integers(0, 3), st.booleans(), st.sampled_from(range(6)))
def test_transform_keeps_validity(rot, mirror, e):
    g = k4()
    rep = bend_min_ref_edge(g, e).rep
    moved = rep_from_shape(g, transform_shape(shape_of(rep), rot, mirror))
    assert validate_rep(moved)
    assert moved.bend_count() == rep.bend_count()
