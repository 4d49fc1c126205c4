"""Simple graphs of maximum degree three and their planar embeddings.

Edges are identified by their index in ``Graph.edges``; each edge is stored
as ``(low, high)``.  A rotation system lists, for every vertex, its incident
edge ids in clockwise order.  Faces are traced with the face on the right of
each dart, so internal faces come out clockwise and the external face
counterclockwise.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    DanglingIndex,
    DegreeExceeded,
    Disconnected,
    DuplicateEdge,
    NonPlanarRotation,
    NotPlanar,
    NotSmoothable,
    SelfLoop,
    SmoothWouldCreateMultiEdge,
)

MAX_DEGREE = 3

# provenance tags for dummy vertices
BEND = "bend"
CORNER = "corner"
SUBDIVISION = "subdivision"

Dart = tuple[int, int]  # (tail vertex, edge id)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[tuple[int, ...], ...]
    dummy: tuple[str | None, ...]
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self.adj[v]]

    def edge_id(self, u: int, v: int) -> int | None:
        return self._index.get((min(u, v), max(u, v)))

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def to_nx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        for i, (a, b) in enumerate(self.edges):
            h.add_edge(a, b, id=i)
        return h


def build_graph(
    edges: Iterable[Sequence[int]],
    n: int,
    dummy: Sequence[str | None] | None = None,
    max_degree: int = MAX_DEGREE,
) -> Graph:
    """Validate an edge list and build a :class:`Graph`."""
    norm: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise DanglingIndex(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in index:
            raise DuplicateEdge(f"edge {key} given twice")
        index[key] = len(norm)
        adj[u].append(len(norm))
        adj[v].append(len(norm))
        norm.append(key)
    for v in range(n):
        if len(adj[v]) > max_degree:
            raise DegreeExceeded(f"vertex {v} has degree {len(adj[v])}")
    tags = tuple(dummy) if dummy is not None else (None,) * n
    return Graph(n, tuple(norm), tuple(tuple(a) for a in adj), tags, index)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def is_biconnected(g: Graph) -> bool:
    if g.n < 3 or not is_connected(g):
        return False
    return nx.is_biconnected(g.to_nx())


# ---------------------------------------------------------------------------
# embeddings and faces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    darts: tuple[Dart, ...]

    def vertices(self) -> list[int]:
        return [t for t, _ in self.darts]

    def edges(self) -> list[int]:
        return [e for _, e in self.darts]

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(frozen=True)
class FaceSet:
    faces: tuple[Face, ...]
    face_of: dict  # dart -> face index
    external: int

    def __iter__(self):
        return iter(self.faces)

    def __len__(self) -> int:
        return len(self.faces)


@dataclass(frozen=True)
class PlanarEmbedding:
    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    external: Dart | None = None  # a dart with the external face on its right

    def next_dart(self, dart: Dart) -> Dart:
        t, e = dart
        h = self.graph.other(e, t)
        rot = self.rotation[h]
        i = rot.index(e)
        return (h, rot[i - 1])

    def with_external(self, dart: Dart) -> "PlanarEmbedding":
        return PlanarEmbedding(self.graph, self.rotation, dart)


def trace_faces(emb: PlanarEmbedding) -> tuple[list[Face], dict]:
    g = emb.graph
    pos = [{e: i for i, e in enumerate(rot)} for rot in emb.rotation]
    face_of: dict[Dart, int] = {}
    faces: list[Face] = []
    for e, (a, b) in enumerate(g.edges):
        for start in ((a, e), (b, e)):
            if start in face_of:
                continue
            darts = []
            d = start
            while d not in face_of:
                face_of[d] = len(faces)
                darts.append(d)
                t, ed = d
                h = g.other(ed, t)
                rot = emb.rotation[h]
                d = (h, rot[pos[h][ed] - 1])
            faces.append(Face(tuple(darts)))
    return faces, face_of


def faces_of(emb: PlanarEmbedding, g: Graph | None = None) -> FaceSet:
    """Trace all faces; raise :class:`NonPlanarRotation` if Euler fails."""
    g = g or emb.graph
    _check_rotation(emb)
    faces, face_of = trace_faces(emb)
    if g.m == 0:
        return FaceSet((), {}, -1)
    comps = _component_count(g)
    if g.n - g.m + len(faces) != 1 + comps:
        raise NonPlanarRotation(
            f"n - m + f = {g.n - g.m + len(faces)}, expected {1 + comps}"
        )
    ext = face_of[emb.external] if emb.external is not None else 0
    return FaceSet(tuple(faces), face_of, ext)


def _component_count(g: Graph) -> int:
    h = g.to_nx()
    h.remove_nodes_from([v for v in range(g.n) if g.degree(v) == 0])
    return nx.number_connected_components(h)


def _check_rotation(emb: PlanarEmbedding) -> None:
    g = emb.graph
    for v in range(g.n):
        if sorted(emb.rotation[v]) != sorted(g.adj[v]):
            raise NonPlanarRotation(f"rotation at {v} does not match its edges")


def embed(g: Graph) -> PlanarEmbedding:
    """Some planar embedding of ``g`` (networkx LR-planarity)."""
    ok, cert = nx.check_planarity(g.to_nx())
    if not ok:
        raise NotPlanar("graph is not planar")
    rotation = []
    for v in range(g.n):
        if g.degree(v) == 0:
            rotation.append(())
            continue
        order = list(cert.neighbors_cw_order(v))
        rotation.append(tuple(g.edge_id(v, w) for w in order))
    emb = PlanarEmbedding(g, tuple(rotation))
    if g.m:
        e = 0
        emb = emb.with_external((g.edges[e][0], e))
    return emb


def embedding_from_rotation(
    g: Graph, rotation: Sequence[Sequence[int]], external_face: int | None = None
) -> PlanarEmbedding:
    emb = PlanarEmbedding(g, tuple(tuple(r) for r in rotation))
    fs = faces_of(emb)
    if g.m and external_face is not None:
        emb = emb.with_external(fs.faces[external_face].darts[0])
    elif g.m:
        emb = emb.with_external(fs.faces[0].darts[0])
    return emb


def graph_from_json(text: str) -> tuple[Graph, PlanarEmbedding | None]:
    data = json.loads(text)
    g = build_graph([tuple(e) for e in data["edges"]], int(data["n"]))
    emb = None
    if data.get("rotation") is not None:
        emb = embedding_from_rotation(g, data["rotation"], data.get("external_face"))
    return g, emb


def graph_to_json(g: Graph, emb: PlanarEmbedding | None = None) -> str:
    data: dict = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if emb is not None:
        data["rotation"] = [list(r) for r in emb.rotation]
        fs = faces_of(emb)
        data["external_face"] = fs.external
    return json.dumps(data)


# ---------------------------------------------------------------------------
# legged cycles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LeggedCycle:
    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    legs: tuple[int, ...]
    leg_vertices: tuple[int, ...]
    degree2: tuple[int, ...]  # cycle vertices of degree two in the host graph
    inside_vertices: frozenset = frozenset()
    inside_edges: frozenset = frozenset()

    @property
    def k(self) -> int:
        return len(self.legs)


def simple_cycles(g: Graph) -> list[list[int]]:
    """All simple cycles as vertex lists (brute force, small graphs)."""
    return [c for c in nx.simple_cycles(g.to_nx()) if len(c) >= 3]


def cycle_interior(emb: PlanarEmbedding, cyc_edges: set[int]) -> set[int]:
    """Face indices strictly inside the cycle (the external face is outside)."""
    faces, face_of = trace_faces(emb)
    g = emb.graph
    ext = face_of[emb.external]
    adj: dict[int, set[int]] = {i: set() for i in range(len(faces))}
    for e, (a, b) in enumerate(g.edges):
        if e in cyc_edges:
            continue
        f1, f2 = face_of[(a, e)], face_of[(b, e)]
        adj[f1].add(f2)
        adj[f2].add(f1)
    outside = {ext}
    stack = [ext]
    while stack:
        f = stack.pop()
        for h in adj[f]:
            if h not in outside:
                outside.add(h)
                stack.append(h)
    return set(range(len(faces))) - outside


def legged_cycle(emb: PlanarEmbedding, cycle: Sequence[int]) -> LeggedCycle | None:
    """Describe ``cycle`` (vertex list) as a legged cycle, or None if it has an outside chord."""
    g = emb.graph
    cyc_edges = []
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        cyc_edges.append(g.edge_id(a, b))
    cset = set(cyc_edges)
    cverts = set(cycle)
    faces, face_of = trace_faces(emb)
    inside_faces = cycle_interior(emb, cset)
    inside_edges = set()
    inside_vertices = set()
    for e, (a, b) in enumerate(g.edges):
        if e in cset:
            continue
        if face_of[(a, e)] in inside_faces:
            inside_edges.add(e)
            inside_vertices.update({a, b} - cverts)
    legs = []
    for e, (a, b) in enumerate(g.edges):
        if e in cset or e in inside_edges:
            continue
        on = (a in cverts) + (b in cverts)
        if on == 2:
            return None
        if on == 1:
            legs.append(e)
    leg_vertices = tuple(sorted(a if a in cverts else b for a, b in (g.edges[e] for e in legs)))
    deg2 = tuple(sorted(v for v in cverts if g.degree(v) == 2))
    return LeggedCycle(
        tuple(cycle), tuple(cyc_edges), tuple(sorted(legs)), leg_vertices, deg2,
        frozenset(inside_vertices), frozenset(inside_edges),
    )


def legged_cycles(g: Graph, emb: PlanarEmbedding, k: int) -> list[LeggedCycle]:
    """All k-legged cycles of the plane graph (brute-force cycle enumeration)."""
    out = []
    for cyc in simple_cycles(g):
        c = legged_cycle(emb, cyc)
        if c is not None and c.k == k:
            out.append(c)
    out.sort(key=lambda c: sorted(c.edges))
    return out


def is_bad_cycle(c: LeggedCycle) -> bool:
    if c.k == 2:
        return len(c.degree2) < 2
    if c.k == 3:
        return len(c.degree2) < 1
    return False


# ---------------------------------------------------------------------------
# subdivision / smoothing
# ---------------------------------------------------------------------------


def subdivide(g: Graph, e: int, tag: str = SUBDIVISION) -> tuple[Graph, int]:
    """Insert a dummy vertex on edge ``e``; returns the new graph and vertex.

    Edge ``e`` keeps its id and becomes ``(u, w)``; ``(w, v)`` is appended.
    """
    u, v = g.edges[e]
    w = g.n
    edges = list(g.edges)
    edges[e] = (u, w)
    edges.append((w, v))
    return build_graph(edges, g.n + 1, list(g.dummy) + [tag]), w


def smooth(g: Graph, w: int) -> Graph:
    """Replace the two edges at degree-2 vertex ``w`` by one edge."""
    if g.degree(w) != 2:
        raise NotSmoothable(f"vertex {w} has degree {g.degree(w)}")
    e1, e2 = sorted(g.adj[w])
    a, b = g.other(e1, w), g.other(e2, w)
    if g.edge_id(a, b) is not None:
        raise SmoothWouldCreateMultiEdge(f"{a} and {b} already adjacent")
    relabel = lambda x: x - 1 if x > w else x  # noqa: E731
    edges = []
    for i, (x, y) in enumerate(g.edges):
        if i == e2:
            continue
        if i == e1:
            x, y = a, b
        edges.append((relabel(x), relabel(y)))
    dummy = [t for i, t in enumerate(g.dummy) if i != w]
    return build_graph(edges, g.n - 1, dummy)


# ---------------------------------------------------------------------------
# block-cut tree
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    edges: tuple[int, ...]
    vertices: tuple[int, ...]

    @property
    def trivial(self) -> bool:
        return len(self.edges) == 1


@dataclass(frozen=True)
class BlockCutTree:
    blocks: tuple[Block, ...]
    cut_vertices: tuple[int, ...]
    # block index -> cut vertices in it; cut vertex -> block indices
    block_cuts: tuple[tuple[int, ...], ...]
    cut_blocks: dict

    def block_of_edge(self, e: int) -> int:
        for i, b in enumerate(self.blocks):
            if e in b.edges:
                return i
        raise KeyError(e)


def block_cut_tree(g: Graph) -> BlockCutTree:
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    h = g.to_nx()
    comps = []
    for comp in nx.biconnected_component_edges(h):
        es = sorted(g.edge_id(a, b) for a, b in comp)
        comps.append(es)
    comps.sort()
    blocks = []
    for es in comps:
        vs = sorted({x for e in es for x in g.edges[e]})
        blocks.append(Block(tuple(es), tuple(vs)))
    count: dict[int, int] = {}
    for b in blocks:
        for v in b.vertices:
            count[v] = count.get(v, 0) + 1
    cuts = tuple(sorted(v for v, c in count.items() if c > 1))
    cutset = set(cuts)
    block_cuts = tuple(tuple(v for v in b.vertices if v in cutset) for b in blocks)
    cut_blocks = {v: tuple(i for i, b in enumerate(blocks) if v in b.vertices) for v in cuts}
    return BlockCutTree(tuple(blocks), cuts, block_cuts, cut_blocks)


def induced_block(g: Graph, block: Block) -> tuple[Graph, list[int], list[int]]:
    """Block as a standalone graph plus vertex and edge maps back to ``g``."""
    vmap = list(block.vertices)
    inv = {v: i for i, v in enumerate(vmap)}
    emap = list(block.edges)
    sub = build_graph([(inv[g.edges[e][0]], inv[g.edges[e][1]]) for e in emap], len(vmap))
    return sub, vmap, emap


def all_rotations(g: Graph) -> Iterable[tuple[tuple[int, ...], ...]]:
    """Every rotation system (cyclic orders fixed at their first edge)."""
    per_vertex = []
    for v in range(g.n):
        es = g.adj[v]
        if len(es) <= 2:
            per_vertex.append([tuple(es)])
        else:
            first, rest = es[0], es[1:]
            per_vertex.append([(first,) + p for p in itertools.permutations(rest)])
    return itertools.product(*per_vertex)
