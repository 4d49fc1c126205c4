"""Small-graph corpora: exhaustive connected planar 3-graphs and random cubic graphs."""

from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx
from networkx.generators.atlas import graph_atlas_g

from .graph import Graph, PlanarEmbedding, build_graph, embed, faces_of


def _ok(h: nx.Graph) -> bool:
    return (
        h.number_of_nodes() >= 1
        and nx.is_connected(h)
        and max((d for _, d in h.degree()), default=0) <= 3
        and nx.check_planarity(h)[0]
    )


@lru_cache(maxsize=None)
def _atlas_by_n() -> dict:
    out: dict = {}
    for h in graph_atlas_g():
        if h.number_of_nodes() and _ok(h):
            out.setdefault(h.number_of_nodes(), []).append(h)
    return out


def _extend(prev: list[nx.Graph], n: int) -> list[nx.Graph]:
    """Connected graphs on ``n`` vertices from those on ``n - 1``: every
    connected graph has a non-cut vertex, so adding one vertex suffices."""
    buckets: dict = {}
    out = []
    for h in prev:
        free = [v for v in h.nodes if h.degree(v) < 3]
        for r in (1, 2, 3):
            for nbrs in _subsets(free, r):
                x = h.copy()
                x.add_node(n - 1)
                x.add_edges_from((n - 1, v) for v in nbrs)
                if not _ok(x):
                    continue
                key = nx.weisfeiler_lehman_graph_hash(x)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(x, y) for y in bucket):
                    continue
                bucket.append(x)
                out.append(x)
    return out


def _subsets(items, r):
    from itertools import combinations

    return combinations(items, r)


@lru_cache(maxsize=None)
def small_graphs(n: int) -> tuple[nx.Graph, ...]:
    """All connected planar graphs of max degree 3 on exactly ``n`` vertices."""
    atlas = _atlas_by_n()
    if n in atlas:
        return tuple(atlas[n])
    return tuple(_extend(list(small_graphs(n - 1)), n))


def to_graph(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h, ordering="sorted")
    return build_graph(sorted(tuple(sorted(e)) for e in h.edges()), h.number_of_nodes())


def corpus(max_n: int = 8, min_n: int = 1) -> list[Graph]:
    out = []
    for n in range(min_n, max_n + 1):
        out.extend(to_graph(h) for h in small_graphs(n))
    return out


def random_cubic_planar(n: int, seed: int = 0) -> Graph:
    """Random 3-connected planar cubic graph: dual of a random triangulation.

    Random points are Delaunay-triangulated and an apex is joined to the
    convex hull, giving a maximal planar graph on ``n // 2 + 2`` vertices
    whose dual is cubic with ``n`` vertices.
    """
    import numpy as np
    from scipy.spatial import Delaunay

    if n % 2 or n < 4:
        raise ValueError("cubic graphs need an even n >= 4")
    rng = np.random.default_rng(seed)
    k = n // 2 + 1
    while True:
        pts = rng.random((k, 2))
        tri = Delaunay(pts)
        hull = tri.convex_hull
        apex = k
        # dual: one node per bounded triangle plus one per hull edge (apex triangles)
        faces = [tuple(sorted(map(int, s))) for s in tri.simplices]
        faces += [tuple(sorted((int(a), int(b), apex))) for a, b in hull]
        edge_faces: dict = {}
        for i, f in enumerate(faces):
            for a, b in ((f[0], f[1]), (f[1], f[2]), (f[0], f[2])):
                edge_faces.setdefault((a, b), []).append(i)
        d = nx.Graph()
        d.add_nodes_from(range(len(faces)))
        for fs in edge_faces.values():
            if len(fs) == 2:
                d.add_edge(*fs)
        if d.number_of_nodes() == n and all(x == 3 for _, x in d.degree()):
            order = list(d.nodes)
            random.Random(seed).shuffle(order)
            d = nx.relabel_nodes(d, {v: i for i, v in enumerate(order)})
            return build_graph(sorted(tuple(sorted(e)) for e in d.edges()), n)


# ---------------------------------------------------------------------------
# named graphs
# ---------------------------------------------------------------------------


def cycle(n: int) -> Graph:
    return build_graph([(i, (i + 1) % n) for i in range(n)], n)


def k4() -> Graph:
    return build_graph([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 4)


def cube() -> Graph:
    return to_graph(nx.hypercube_graph(3))


def prism() -> Graph:
    return to_graph(nx.circular_ladder_graph(3))


def fig1a() -> tuple[Graph, PlanarEmbedding]:
    """Hexagon with one chord, embedded with the chord on the external face.

    Reconstructed from the motivating example: preserving this embedding
    costs two bends, while moving the chord inside allows a bend-free drawing.
    """
    g = build_graph([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)], 6)
    emb = embed(g)
    chord = g.edge_id(0, 3)
    fs = faces_of(emb.with_external((0, chord)))
    for f in fs.faces:
        if chord in f.edges() and len(f) == 4:
            return g, emb.with_external(f.darts[0])
    raise AssertionError("unreachable")
