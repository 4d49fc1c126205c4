"""Orthogonal representations: angles, bends, turn numbers, shapes.

Directions are integers mod 4 with ``0=E, 1=S, 2=W, 3=N``; adding one is a
clockwise quarter turn, so a right turn adds one to the heading.  Angles are
stored in units of 90 degrees.  ``angles[v][i]`` is the clockwise angle from
``rotation[v][i]`` to ``rotation[v][i + 1]``.  Bend strings are over
``{"L", "R"}`` and read walking from the lower endpoint to the higher one.

A *shape* (``dict`` edge id -> ``(tail, heading at tail, bends from tail)``)
is the direction-level view of a representation.  Composition, mirroring and
replacement all happen on shapes; :func:`rep_from_shape` turns one back into
an :class:`OrthoRep`.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    InvalidRepresentation,
    NotEquivalent,
    OrientationUnresolvable,
    PathNotInGraph,
    PathsDisagree,
    UnclassifiedShape,
)
from .graph import BEND, Graph, PlanarEmbedding, build_graph, faces_of, trace_faces

Shape = dict  # edge id -> (tail, heading, bends walking from tail)


def flip(bends: str) -> str:
    """Bend string read from the other end."""
    return "".join("L" if c == "R" else "R" for c in reversed(bends))


def mirror_bends(bends: str) -> str:
    return "".join("L" if c == "R" else "R" for c in bends)


def bend_turn(bends: str) -> int:
    return bends.count("R") - bends.count("L")


def heading_change(arrive: int, leave: int) -> int:
    d = (leave - arrive) % 4
    if d == 2:
        raise InvalidRepresentation("path reverses on itself")
    return {0: 0, 1: 1, 3: -1}[d]


@dataclass(frozen=True)
class OrthoRep:
    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    angles: tuple[tuple[int, ...], ...]
    bends: tuple[str, ...]
    external: tuple[int, int] | None  # dart (tail, edge) with the external face on its right

    @property
    def embedding(self) -> PlanarEmbedding:
        return PlanarEmbedding(self.graph, self.rotation, self.external)

    def bend_count(self) -> int:
        return sum(len(b) for b in self.bends)

    def bends_from(self, e: int, tail: int) -> str:
        s = self.bends[e]
        return s if self.graph.edges[e][0] == tail else flip(s)

    def angle_in_face(self, arrive_edge: int, v: int) -> int:
        """Angle at ``v`` in the face entered along ``arrive_edge``."""
        rot = self.rotation[v]
        i = rot.index(arrive_edge)
        return self.angles[v][i - 1]

    def to_json(self) -> str:
        fs = faces_of(self.embedding)
        return json.dumps(
            {
                "n": self.graph.n,
                "edges": [list(e) for e in self.graph.edges],
                "rotation": [list(r) for r in self.rotation],
                "angles": [[90 * a for a in row] for row in self.angles],
                "bends": list(self.bends),
                "external_face": fs.external,
            },
            sort_keys=True,
        )


# ---------------------------------------------------------------------------
# shapes <-> representations
# ---------------------------------------------------------------------------


def shape_of(rep: OrthoRep) -> Shape:
    """Headings for every edge, fixed by giving the first edge heading east."""
    g = rep.graph
    heading: dict[tuple[int, int], int] = {}
    shape: Shape = {}
    for root in range(g.n):
        if not g.adj[root] or (root, g.adj[root][0]) in heading:
            continue
        start = (root, rep.rotation[root][0])
        stack = [(start, 0)]
        while stack:
            (v, e), d = stack.pop()
            if (v, e) in heading:
                if heading[(v, e)] != d % 4:
                    raise InvalidRepresentation(f"inconsistent headings at vertex {v}")
                continue
            rot = rep.rotation[v]
            i = rot.index(e)
            acc = d
            for k in range(len(rot)):
                ek = rot[(i + k) % len(rot)]
                if (v, ek) in heading:
                    if heading[(v, ek)] != acc % 4:
                        raise InvalidRepresentation(f"inconsistent headings at vertex {v}")
                else:
                    heading[(v, ek)] = acc % 4
                    b = rep.bends_from(ek, v)
                    w = g.other(ek, v)
                    shape.setdefault(ek, (v, acc % 4, b))
                    stack.append(((w, ek), acc + bend_turn(b) + 2))
                acc += rep.angles[v][(i + k) % len(rot)]
    return shape


def shape_heading(g: Graph, shape: Shape, v: int, e: int) -> int:
    t, d, b = shape[e]
    if t == v:
        return d % 4
    return (d + bend_turn(b) + 2) % 4


def shape_bends_from(g: Graph, shape: Shape, e: int, tail: int) -> str:
    t, _, b = shape[e]
    return b if t == tail else flip(b)


def transform_shape(shape: Shape, rot: int = 0, mirror: bool = False) -> Shape:
    out = {}
    for e, (t, d, b) in shape.items():
        if mirror:
            d, b = (-d) % 4, mirror_bends(b)
        out[e] = (t, (d + rot) % 4, b)
    return out


def edge_shape(tail: int, heading: int, bends: str) -> tuple[int, int, str]:
    return (tail, heading % 4, bends)


def rep_from_shape(g: Graph, shape: Shape) -> OrthoRep:
    """Build the representation determined by edge headings and bends."""
    rotation = []
    angles = []
    for v in range(g.n):
        items = sorted((shape_heading(g, shape, v, e), e) for e in g.adj[v])
        ds = [d for d, _ in items]
        if len(set(ds)) != len(ds):
            raise InvalidRepresentation(f"two edges leave vertex {v} in the same direction")
        rotation.append(tuple(e for _, e in items))
        if len(items) == 1:
            angles.append((4,))
        else:
            angles.append(tuple((ds[(i + 1) % len(ds)] - ds[i]) % 4 for i in range(len(ds))))
    bends = tuple(shape_bends_from(g, shape, e, g.edges[e][0]) for e in range(g.m))
    rep = OrthoRep(g, tuple(rotation), tuple(tuple(a) for a in angles), bends, None)
    if g.m == 0:
        return rep
    faces, _ = trace_faces(rep.embedding)
    ext = [i for i, f in enumerate(faces) if _raw_face_turn(rep, f.darts) == -4]
    if len(ext) != 1:
        raise InvalidRepresentation(f"{len(ext)} faces close counterclockwise")
    return OrthoRep(g, rep.rotation, rep.angles, rep.bends, faces[ext[0]].darts[0])


# ---------------------------------------------------------------------------
# turn numbers and validation
# ---------------------------------------------------------------------------


def _raw_face_turn(rep: OrthoRep, darts: Sequence[tuple[int, int]]) -> int:
    """Right minus left turns walking the face with the face on the right."""
    g = rep.graph
    total = 0
    for t, e in darts:
        total += bend_turn(rep.bends_from(e, t))
        h = g.other(e, t)
        total += 2 - rep.angle_in_face(e, h)
    return total


def face_turn_number(rep: OrthoRep, darts, external: bool) -> int:
    """Face turn number with internal 90 -> +1 and external 270 -> +1."""
    raw = _raw_face_turn(rep, darts)
    return -raw if external else raw


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    reason: str = ""
    face: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_rep(rep: OrthoRep) -> ValidationReport:
    g = rep.graph
    for v in range(g.n):
        if sorted(rep.rotation[v]) != sorted(g.adj[v]):
            return ValidationReport(False, f"rotation at {v} does not match edges")
        a = rep.angles[v]
        if len(a) != len(rep.rotation[v]):
            return ValidationReport(False, f"angle count at {v}")
        if g.degree(v) and sum(a) != 4:
            return ValidationReport(False, f"angles at {v} sum to {90 * sum(a)}")
        if g.degree(v) > 1 and any(x not in (1, 2, 3) for x in a):
            return ValidationReport(False, f"bad angle at {v}")
    for e, b in enumerate(rep.bends):
        if set(b) - {"L", "R"}:
            return ValidationReport(False, f"bad bend string on edge {e}")
    if g.m == 0:
        return ValidationReport(True)
    try:
        fs = faces_of(rep.embedding)
    except Exception as exc:  # non-planar rotation
        return ValidationReport(False, str(exc))
    for i, f in enumerate(fs.faces):
        want = 4
        got = face_turn_number(rep, f.darts, external=(i == fs.external))
        if got != want:
            return ValidationReport(False, f"face {i} has turn number {got}", i)
    return ValidationReport(True)


def path_edges(g: Graph, path: Sequence[int]) -> list[int]:
    out = []
    for a, b in zip(path, path[1:]):
        e = g.edge_id(a, b)
        if e is None:
            raise PathNotInGraph(f"no edge between {a} and {b}")
        out.append(e)
    return out


def signed_turn(rep: OrthoRep, path: Sequence[int], shape: Shape | None = None) -> int:
    """Right minus left turns walking ``path`` (vertex list)."""
    g = rep.graph
    es = path_edges(g, path)
    shape = shape if shape is not None else shape_of(rep)
    total = 0
    for i, e in enumerate(es):
        total += bend_turn(rep.bends_from(e, path[i]))
        if i + 1 < len(es):
            w = path[i + 1]
            arrive = (shape_heading(g, shape, w, e) + 2) % 4
            leave = shape_heading(g, shape, w, es[i + 1])
            total += heading_change(arrive, leave)
    return total


def turn_number(rep: OrthoRep, path: Sequence[int], shape: Shape | None = None) -> int:
    return abs(signed_turn(rep, path, shape))


# ---------------------------------------------------------------------------
# components: contour paths, spirality, shapes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShapeClass:
    name: str  # "C", "D", "L", "X" or "spiral"
    k: int | None = None

    def __str__(self) -> str:
        return f"{self.k}-spiral" if self.name == "spiral" else f"{self.name}-shape"


_SHAPES = {(2, 4): "C", (0, 2): "D", (1, 3): "L", (1, 1): "X"}


@dataclass(frozen=True)
class ContourPaths:
    left: tuple[int, ...]
    right: tuple[int, ...]
    t_left: int
    t_right: int


def contour_paths(rep: OrthoRep, comp_edges: Iterable[int], poles: tuple[int, int]) -> ContourPaths:
    """The two pole-to-pole paths on the outer boundary of a component."""
    g = rep.graph
    ce = set(comp_edges)
    u, v = poles
    full = rep.rotation[u]
    # the component edge just before an outside edge has the outer side on its right
    start = None
    for i, e in enumerate(full):
        if e in ce and full[(i + 1) % len(full)] not in ce:
            start = e
            break
    if start is None:
        fs = faces_of(rep.embedding)
        outer = fs.faces[fs.external].darts
        start = next(e for t, e in outer if t == u)
    sub_rot = {x: [e for e in rep.rotation[x] if e in ce] for x in {y for e in ce for y in g.edges[e]}}
    walk = [u]
    dart = (u, start)
    for _ in range(4 * len(ce) + 4):
        t, e = dart
        h = g.other(e, t)
        walk.append(h)
        if h == u:
            break
        r = sub_rot[h]
        dart = (h, r[r.index(e) - 1])
    iv = walk.index(v)
    p1 = walk[: iv + 1]
    p2 = list(reversed(walk[iv:]))
    shape = shape_of(rep)
    return ContourPaths(tuple(p1), tuple(p2), turn_number(rep, p1, shape), turn_number(rep, p2, shape))


def spirality(rep: OrthoRep, comp_edges: Iterable[int], poles: tuple[int, int],
              samples: int | None = None, seed: int = 0) -> int:
    """Turn number of pole-to-pole paths; raises if two paths disagree."""
    g = rep.graph
    ce = sorted(set(comp_edges))
    h = nx.Graph()
    for e in ce:
        h.add_edge(*g.edges[e])
    paths = list(nx.all_simple_paths(h, poles[0], poles[1]))
    if samples is not None and len(paths) > samples:
        paths = random.Random(seed).sample(paths, samples)
    shape = shape_of(rep)
    values = {turn_number(rep, p, shape) for p in paths}
    if len(values) != 1:
        raise PathsDisagree(f"pole-to-pole turn numbers {sorted(values)}")
    return values.pop()


def classify_shape(rep: OrthoRep, comp_edges: Iterable[int], poles: tuple[int, int]) -> ShapeClass:
    g = rep.graph
    ce = set(comp_edges)
    deg_u = sum(1 for e in g.adj[poles[0]] if e in ce)
    deg_v = sum(1 for e in g.adj[poles[1]] if e in ce)
    if deg_u == 1 and deg_v == 1:
        return ShapeClass("spiral", spirality(rep, ce, poles))
    cp = contour_paths(rep, ce, poles)
    key = tuple(sorted((cp.t_left, cp.t_right)))
    if key not in _SHAPES:
        raise UnclassifiedShape(f"contour turn numbers {key}")
    return ShapeClass(_SHAPES[key])


# ---------------------------------------------------------------------------
# rectilinear image
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RectilinearImage:
    graph: Graph
    rep: OrthoRep
    chains: tuple[tuple[int, ...], ...]  # original edge -> vertex chain low..high
    n_original: int


def rectilinear_image(rep: OrthoRep) -> RectilinearImage:
    """Replace every bend by a degree-2 bend vertex."""
    g = rep.graph
    shape = shape_of(rep) if g.m else {}
    n = g.n
    edges: list[tuple[int, int]] = []
    new_shape: Shape = {}
    chains = []
    tags = list(g.dummy)
    pending = []
    for e, (a, b) in enumerate(g.edges):
        s = rep.bends[e]
        chain = [a] + list(range(n, n + len(s))) + [b]
        n += len(s)
        tags.extend([BEND] * len(s))
        chains.append(tuple(chain))
        d = shape_heading(g, shape, a, e)
        segs = []
        for i in range(len(chain) - 1):
            segs.append((chain[i], chain[i + 1], d))
            if i < len(s):
                d += 1 if s[i] == "R" else -1
        pending.append(segs)
    # original edges keep their ids as the first segment
    for segs in pending:
        edges.append((segs[0][0], segs[0][1]))
    extra = []
    for segs in pending:
        extra.extend(segs[1:])
    for x, y, _ in extra:
        edges.append((x, y))
    img = build_graph(edges, n, tags)
    for i, segs in enumerate(pending):
        x, y, d = segs[0]
        new_shape[i] = (x, d % 4, "")
    for j, (x, y, d) in enumerate(extra):
        new_shape[g.m + j] = (x, d % 4, "")
    return RectilinearImage(img, rep_from_shape(img, new_shape), tuple(chains), g.n)


def invert_rectilinear(img: RectilinearImage, g: Graph) -> OrthoRep:
    shape = shape_of(img.rep)
    ig = img.graph
    out: Shape = {}
    for e, chain in enumerate(img.chains):
        bends = []
        start = None
        for i in range(len(chain) - 1):
            f = ig.edge_id(chain[i], chain[i + 1])
            d = shape_heading(ig, shape, chain[i], f)
            if start is None:
                start = d
            if i > 0:
                prev_f = ig.edge_id(chain[i - 1], chain[i])
                arrive = (shape_heading(ig, shape, chain[i], prev_f) + 2) % 4
                bends.append("R" if heading_change(arrive, d) == 1 else "L")
        out[e] = (chain[0], start, "".join(bends))
    return rep_from_shape(g, out)


# ---------------------------------------------------------------------------
# replacement
# ---------------------------------------------------------------------------


def _pole_dirs(g: Graph, shape: Shape, comp: set[int], x: int) -> set[int]:
    return {shape_heading(g, shape, x, e) for e in g.adj[x] if e in comp}


def replace_component(
    h: OrthoRep,
    comp_edges: Iterable[int],
    poles: tuple[int, int],
    replacement: OrthoRep,
    vmap: Sequence[int],
    emap: Sequence[int],
) -> OrthoRep:
    """Swap the restriction of ``h`` to a component for an equivalent one.

    ``replacement`` is a representation of the component as a standalone
    graph; ``vmap``/``emap`` send its vertices/edges to those of ``h``.
    """
    g = h.graph
    comp = set(comp_edges)
    if set(emap) != comp:
        raise NotEquivalent("replacement covers different edges")
    inv = {v: i for i, v in enumerate(vmap)}
    sub_poles = (inv[poles[0]], inv[poles[1]])
    old = classify_shape(h, comp, poles)
    new = classify_shape(replacement, range(replacement.graph.m), sub_poles)
    if old != new or old.name not in ("D", "X", "spiral"):
        raise NotEquivalent(f"{old} vs {new}")
    base = shape_of(h)
    rshape = shape_of(replacement)
    lifted = {emap[e]: (vmap[t], d, b) for e, (t, d, b) in rshape.items()}
    want_u = _pole_dirs(g, base, comp, poles[0])
    want_v = _pole_dirs(g, base, comp, poles[1])
    for mirror in (False, True):
        for r in range(4):
            cand = transform_shape(lifted, r, mirror)
            merged = {e: s for e, s in base.items() if e not in comp}
            merged.update(cand)
            if _pole_dirs(g, merged, comp, poles[0]) != want_u:
                continue
            if _pole_dirs(g, merged, comp, poles[1]) != want_v:
                continue
            try:
                rep = rep_from_shape(g, merged)
            except InvalidRepresentation:
                continue
            if validate_rep(rep):
                return rep
    raise OrientationUnresolvable("no rotation or mirror of the replacement fits")
