"""Brute-force bend minimization for small graphs.

Per fixed embedding we solve the classic angle/bend min-cost flow with
networkx; over all embeddings we enumerate rotation systems and external
faces.  Nothing here shares code with the production solver beyond the graph
and face-tracing primitives.
"""

from __future__ import annotations

from typing import Iterator

import networkx as nx

from .errors import NonPlanarRotation, NotPlanarEmbedding, TooLarge
from .graph import Graph, PlanarEmbedding, all_rotations, faces_of

MAX_ORACLE_N = 8


def min_bends_fixed_embedding(g: Graph, emb: PlanarEmbedding) -> int:
    """Minimum bends of an orthogonal representation preserving ``emb``."""
    if g.m == 0:
        return 0
    try:
        fs = faces_of(emb)
    except NonPlanarRotation as exc:
        raise NotPlanarEmbedding(str(exc)) from exc
    h = nx.DiGraph()
    demand: dict = {}
    for i, f in enumerate(fs.faces):
        deg = len(f.darts)
        demand[("f", i)] = 2 * deg + 4 if i == fs.external else 2 * deg - 4
    # every angle is at least 90 degrees: route that unit directly
    for v in range(g.n):
        d = g.degree(v)
        if d == 0:
            continue
        demand[("v", v)] = -(4 - d)
        for e in emb.graph.adj[v]:
            f = ("f", fs.face_of[(v, e)])
            demand[f] -= 4 if d == 1 else 1
            if d > 1:
                h.add_edge(("v", v), f, capacity=2, weight=0)
        if d == 1:
            demand[("v", v)] = 0
    for e, (a, b) in enumerate(g.edges):
        f1, f2 = fs.face_of[(a, e)], fs.face_of[(b, e)]
        if f1 == f2:
            continue
        for x, y in ((f1, f2), (f2, f1)):
            key = (("f", x), ("f", y))
            if h.has_edge(*key):
                continue  # parallel face adjacencies share one uncapacitated arc
            h.add_edge(*key, weight=1)
    for node, d in demand.items():
        h.add_node(node)
        h.nodes[node]["demand"] = d
    flow = nx.min_cost_flow(h)
    return int(nx.cost_of_flow(h, flow))


def enumerate_embeddings(g: Graph, max_n: int = MAX_ORACLE_N, mirror_free: bool = False
                         ) -> Iterator[PlanarEmbedding]:
    """All planar rotation systems with every choice of external face.

    With ``mirror_free`` one vertex of degree three keeps a fixed cyclic
    order, which drops mirror images (their bend minima are equal).
    """
    if g.n > max_n:
        raise TooLarge(f"{g.n} vertices exceeds the oracle limit {max_n}")
    pivot = next((v for v in range(g.n) if g.degree(v) == 3), None)
    for rot in all_rotations(g):
        if mirror_free and pivot is not None and rot[pivot] != tuple(g.adj[pivot]):
            continue
        emb = PlanarEmbedding(g, rot, None)
        if g.m == 0:
            yield emb
            continue
        try:
            fs = faces_of(emb.with_external(next(iter(_darts(g)))))
        except NonPlanarRotation:
            continue
        for f in fs.faces:
            yield emb.with_external(f.darts[0])


def _darts(g: Graph):
    for e, (a, b) in enumerate(g.edges):
        yield (a, e)
        yield (b, e)


def brute_min_bends(g: Graph, max_n: int = MAX_ORACLE_N) -> int:
    return min(min_bends_fixed_embedding(g, emb)
               for emb in enumerate_embeddings(g, max_n, mirror_free=True))


def _on_external(emb: PlanarEmbedding, e: int) -> bool:
    fs = faces_of(emb)
    a, b = emb.graph.edges[e]
    return fs.face_of[(a, e)] == fs.external or fs.face_of[(b, e)] == fs.external


def brute_min_bends_edge(g: Graph, e: int, max_n: int = MAX_ORACLE_N) -> int:
    """Minimum over embeddings with edge ``e`` on the external face."""
    return min(min_bends_fixed_embedding(g, emb)
               for emb in enumerate_embeddings(g, max_n) if _on_external(emb, e))


def brute_min_bends_vertex(g: Graph, v: int, max_n: int = MAX_ORACLE_N) -> int:
    return min(brute_min_bends_edge(g, e, max_n) for e in g.adj[v])
