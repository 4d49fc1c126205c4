"""Drawing engines for plane 3-graphs: no-bend tests, rectangular drawings
and shaped minimum-bend representations of skeleton graphs.

All three engines share one angle/bend assignment network
(:func:`assign_angles`).  A vertex sends four right angles to its incident
faces; faces absorb angles and exchange bends.  Fixing angle ranges turns it
into a rectangularity test, forbidding bend arcs into a no-bend test, and
pricing bend arcs per edge (convex tables) into the shaped optimizer used for
R-node skeletons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConditionsViolated, InvalidRepresentation, NoRectangularDrawing
from .flow import FlowNetwork, ReusableFlow, solve
from .graph import (
    Graph,
    LeggedCycle,
    PlanarEmbedding,
    faces_of,
    is_bad_cycle,
    legged_cycles,
    trace_faces,
)
from .ortho import OrthoRep, classify_shape, validate_rep

REAL_TABLE = (0, 1, 2)


# ---------------------------------------------------------------------------
# Theorem-2 style conditions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NoBendReport:
    ok: bool
    condition: str = ""  # "i", "ii" or "iii"
    cycle: LeggedCycle | None = None

    def __bool__(self) -> bool:
        return self.ok


def no_bend_conditions(g: Graph, emb: PlanarEmbedding) -> NoBendReport:
    """Check the three cycle conditions for a no-bend orthogonal drawing."""
    fs = faces_of(emb)
    outer = {t for t, _ in fs.faces[fs.external].darts}
    if sum(1 for v in outer if g.degree(v) == 2) < 4:
        return NoBendReport(False, "i")
    for k, cond in ((2, "ii"), (3, "iii")):
        for c in legged_cycles(g, emb, k):
            if is_bad_cycle(c):
                return NoBendReport(False, cond, c)
    return NoBendReport(True)


def bad_cycles(g: Graph, emb: PlanarEmbedding, corners: Sequence[int]) -> list[LeggedCycle]:
    """2-legged cycles with fewer than two corners, 3-legged with none."""
    cs = set(corners)
    out = []
    for k, need in ((2, 2), (3, 1)):
        for c in legged_cycles(g, emb, k):
            if len(cs & set(c.vertices)) < need:
                out.append(c)
    return out


def _region(c: LeggedCycle) -> frozenset:
    return frozenset(c.vertices) | c.inside_vertices


def maximal_bad_cycles(g: Graph, emb: PlanarEmbedding, corners: Sequence[int]) -> list[LeggedCycle]:
    bad = bad_cycles(g, emb, corners)
    regions = [_region(c) for c in bad]
    out = []
    for i, c in enumerate(bad):
        if not any(j != i and regions[i] < regions[j] for j in range(len(bad))):
            if all(regions[i] != _region(d) for d in out):
                out.append(c)
    return out


# ---------------------------------------------------------------------------
# angle / bend assignment network
# ---------------------------------------------------------------------------


@dataclass
class AngleProblem:
    """Inputs of :func:`assign_angles`.

    ``angle_range[(v, i)]`` bounds the angle after ``rotation[v][i]``;
    missing keys default to ``[1, 3]`` (or ``4`` at a degree-one vertex).
    ``tables[e]`` prices 0..K bends on edge ``e`` (absent = no bends).
    ``split`` replaces the external face by its two pole-to-pole halves:
    ``(u, v, t_a, t_b)`` with the right-hand turn totals of the halves,
    excluding the pole angles.
    """

    graph: Graph
    rotation: tuple
    external: tuple  # dart with the external face on its right
    tables: dict = field(default_factory=dict)
    angle_range: dict = field(default_factory=dict)
    split: tuple | None = None


@dataclass(frozen=True)
class Assignment:
    cost: int
    rep: OrthoRep
    bends: tuple[int, ...]  # signed net bends per edge (positive = R from low end)


def _angle_faces(emb: PlanarEmbedding, face_of: dict) -> dict:
    out = {}
    for v, rot in enumerate(emb.rotation):
        for i, e in enumerate(rot):
            out[(v, i)] = face_of[(v, e)]
    return out


def _build(p: AngleProblem) -> tuple[FlowNetwork, dict, dict, list]:
    g = p.graph
    emb = PlanarEmbedding(g, p.rotation, p.external)
    faces, face_of = trace_faces(emb)
    ext = face_of[p.external]
    node_of_dart = {d: ("f", f) for d, f in face_of.items()}
    fixed: dict = {}
    net = FlowNetwork()
    if p.split is None:
        for i, f in enumerate(faces):
            deg = len(f.darts)
            net.add_node(("f", i), -(2 * deg + 4 if i == ext else 2 * deg - 4))
    else:
        u, v, t_a, t_b = p.split
        walk = list(faces[ext].darts)
        k = walk.index(p.external)
        walk = walk[k:] + walk[:k]
        if walk[0][0] != u:
            raise InvalidRepresentation("split dart must leave the first pole")
        half = "A"
        n_half = {"A": 0, "B": 0}
        for d in walk:
            if d[0] == v:
                half = "B"
            elif d[0] != u:
                n_half[half] += 1
            node_of_dart[d] = ("h", half)
        net.add_node(("h", "A"), -(2 * n_half["A"] - t_a))
        net.add_node(("h", "B"), -(2 * n_half["B"] - t_b))
        for i, f in enumerate(faces):
            if i != ext:
                net.add_node(("f", i), -(2 * len(f.darts) - 4))
        # poles: right angle inside, fixed
        for x in (u, v):
            rot = p.rotation[x]
            if len(rot) != 2:
                raise InvalidRepresentation("poles must have degree two")
            for i, e in enumerate(rot):
                if face_of[(x, e)] == ext:
                    fixed[(x, i)] = 3
                else:
                    fixed[(x, i)] = 1
                    net.add_node(("f", face_of[(x, e)]), 1)
    angle_arcs = {}
    for x, rot in enumerate(p.rotation):
        if not rot or any((x, i) in fixed for i in range(len(rot))):
            continue
        net.add_node(("v", x), 4)
        for i, e in enumerate(rot):
            if len(rot) == 1:
                lo, hi = 4, 4
            else:
                lo, hi = p.angle_range.get((x, i), (1, 3))
            angle_arcs[(x, i)] = net.add_arc(("v", x), node_of_dart[(x, e)], hi, 0, lower=lo)
    bend_arcs = []
    for e, (a, b) in enumerate(g.edges):
        table = p.tables.get(e)
        if not table or len(table) < 2:
            continue
        right, left = node_of_dart[(a, e)], node_of_dart[(b, e)]
        if right == left:
            continue
        start = len(net.arcs)
        net.add_convex_arc(right, left, table, ("R", e))
        net.add_convex_arc(left, right, table, ("L", e))
        bend_arcs.extend(range(start, len(net.arcs)))
    return net, fixed, angle_arcs, bend_arcs


def _extract(p: AngleProblem, net: FlowNetwork, fixed: dict, angle_arcs: dict,
             bend_arcs: list, res) -> Assignment:
    g = p.graph
    net_bends = [0] * g.m
    for j in bend_arcs:
        side, e = net.arcs[j][4]
        net_bends[e] += res.flow[j] if side == "R" else -res.flow[j]
    angles = []
    for x, rot in enumerate(p.rotation):
        row = []
        for i in range(len(rot)):
            row.append(fixed[(x, i)] if (x, i) in fixed else res.flow[angle_arcs[(x, i)]])
        angles.append(tuple(row))
    bends = tuple(("R" * b if b > 0 else "L" * -b) for b in net_bends)
    cost = 0
    for e in range(g.m):
        table = p.tables.get(e)
        if table:
            cost += table[abs(net_bends[e])]
    rep = OrthoRep(g, tuple(tuple(r) for r in p.rotation), tuple(angles), bends, p.external)
    return Assignment(cost, rep, tuple(net_bends))


def assign_angles(p: AngleProblem) -> Assignment | None:
    net, fixed, angle_arcs, bend_arcs = _build(p)
    res = solve(net)
    if res is None:
        return None
    return _extract(p, net, fixed, angle_arcs, bend_arcs, res)


class FaceSweep:
    """One plane skeleton solved with each face in turn as the external face.

    Only two face demands change between choices, so the network is built
    once and re-solved.
    """

    def __init__(self, graph: Graph, rotation: tuple, tables: dict, some_dart: tuple):
        self.p = AngleProblem(graph, rotation, some_dart, tables)
        self.net, self.fixed, self.angle_arcs, self.bend_arcs = _build(self.p)
        self.flow = ReusableFlow(self.net)
        _, self.face_of = trace_faces(PlanarEmbedding(graph, rotation, some_dart))
        self.base = self.face_of[some_dart]

    def _delta(self, dart: tuple) -> dict:
        f = self.face_of[dart]
        if f == self.base:
            return {}
        return {("f", self.base): 8, ("f", f): -8}

    def cost(self, dart: tuple) -> int | None:
        return self.flow.cost(self._delta(dart))

    def assignment(self, dart: tuple) -> Assignment:
        res = self.flow.solve(self._delta(dart))
        if res is None:
            raise InvalidRepresentation("skeleton admits no representation")
        p = AngleProblem(self.p.graph, self.p.rotation, dart, self.p.tables)
        return _extract(p, self.net, self.fixed, self.angle_arcs, self.bend_arcs, res)


# ---------------------------------------------------------------------------
# rectangular and no-bend drawings
# ---------------------------------------------------------------------------


def rectangular_draw(g: Graph, emb: PlanarEmbedding, corners: Sequence[int]) -> OrthoRep:
    """All faces rectangles; the four corners are the external convex corners."""
    cs = set(corners)
    if len(cs) != 4:
        raise NoRectangularDrawing("need four distinct corners")
    faces, face_of = trace_faces(emb)
    ext = face_of[emb.external]
    outer = {t for t, _ in faces[ext].darts}
    if not cs <= outer or any(g.degree(c) != 2 for c in cs):
        raise NoRectangularDrawing("corners must be degree-2 vertices on the external face")
    rng = {}
    for v, rot in enumerate(emb.rotation):
        for i, e in enumerate(rot):
            if face_of[(v, e)] == ext:
                rng[(v, i)] = (3, 3) if v in cs else (2, 2)
            else:
                rng[(v, i)] = (1, 2)
    a = assign_angles(AngleProblem(g, emb.rotation, emb.external, {}, rng))
    if a is None:
        raise NoRectangularDrawing("angle constraints are infeasible")
    return a.rep


def no_bend_draw(g: Graph, emb: PlanarEmbedding, corners: Sequence[int] | None = None) -> OrthoRep:
    """A representation without bends; raises when the conditions fail."""
    report = no_bend_conditions(g, emb)
    if not report:
        raise ConditionsViolated(f"condition ({report.condition}) fails")
    faces, face_of = trace_faces(emb)
    ext = face_of[emb.external]
    rng = {}
    if corners is not None:
        cs = set(corners)
        for v, rot in enumerate(emb.rotation):
            for i, e in enumerate(rot):
                if v in cs and face_of[(v, e)] == ext:
                    rng[(v, i)] = (3, 3)
    a = assign_angles(AngleProblem(g, emb.rotation, emb.external, {}, rng))
    if a is None:
        raise ConditionsViolated("no bend-free angle assignment with these corners")
    return a.rep


# ---------------------------------------------------------------------------
# R-node skeletons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SkeletonInput:
    """A skeleton graph with its embedding and per-edge bend cost tables.

    For inner use the reference edge is already removed and ``poles`` are the
    two degree-two vertices; ``outer`` is the dart leaving ``poles[0]`` with
    the external face on its right.
    """

    graph: Graph
    rotation: tuple
    outer: tuple
    tables: tuple  # per edge: costs for 0, 1, ... bends
    poles: tuple[int, int] | None = None


@dataclass(frozen=True)
class RsetResult:
    x: Assignment
    d: Assignment
    d_variant: int  # 0: first contour flat, 1: second contour flat


def rset_alg(skel: SkeletonInput) -> RsetResult:
    """Cheapest X- and D-shaped representations of a skeleton minus its reference edge."""
    u, v = skel.poles
    tables = dict(enumerate(skel.tables))

    def run(t_a: int, t_b: int) -> Assignment:
        a = assign_angles(AngleProblem(skel.graph, skel.rotation, skel.outer, tables, {}, (u, v, t_a, t_b)))
        if a is None:
            raise InvalidRepresentation(f"no representation with contour turns {(t_a, t_b)}")
        return a

    x = run(-1, -1)
    d0, d1 = run(0, -2), run(-2, 0)
    d, var = (d0, 0) if d0.cost <= d1.cost else (d1, 1)
    return RsetResult(x, d, var)


def check_shapes(skel: SkeletonInput, res: RsetResult) -> None:
    """Postcondition: outputs are valid and classify as X and D."""
    edges = range(skel.graph.m)
    for a, name in ((res.x, "X"), (res.d, "D")):
        rep = a.rep
        if not validate_rep(rep):
            raise InvalidRepresentation(f"{name} output fails validation")
        if classify_shape(rep, edges, skel.poles).name != name:
            raise InvalidRepresentation(f"{name} output has the wrong shape")


def min_bend_cubic_root(skel: SkeletonInput) -> Assignment:
    """Minimum-cost representation of a full skeleton with the given external face."""
    a = assign_angles(AngleProblem(skel.graph, skel.rotation, skel.outer, dict(enumerate(skel.tables))))
    if a is None:
        raise InvalidRepresentation("skeleton admits no representation")
    return a
