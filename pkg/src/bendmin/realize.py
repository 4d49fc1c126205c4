"""Grid coordinates for orthogonal representations, plus SVG/JSON output.

Compaction works on the rectilinear image (bends become vertices).  A frame
rectangle is tied to the external face by one straight edge, every face is
then refined into rectangles by shooting a segment from each reflex corner
to the first boundary edge it must hit, and coordinates come from longest
paths over the horizontal and vertical chains.  Refinement edges and the
frame are dropped at the end.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from xml.sax.saxutils import escape

import networkx as nx

from .errors import InvalidRepresentation
from .graph import Graph
from .ortho import OrthoRep, Shape, rep_from_shape, shape_of, validate_rep

# unit steps per direction (E, S, W, N) with y pointing up
STEP = ((1, 0), (0, -1), (-1, 0), (0, 1))


@dataclass(frozen=True)
class GridDrawing:
    graph: Graph
    coords: tuple[tuple[int, int], ...]
    bend_points: tuple[tuple[tuple[int, int], ...], ...]  # per edge, from its low endpoint

    def polyline(self, e: int) -> list[tuple[int, int]]:
        a, b = self.graph.edges[e]
        return [self.coords[a], *self.bend_points[e], self.coords[b]]

    def width(self) -> int:
        xs = [p[0] for p in self.coords]
        return max(xs) - min(xs) if xs else 0

    def height(self) -> int:
        ys = [p[1] for p in self.coords]
        return max(ys) - min(ys) if ys else 0


class _Ortho:
    """Rectilinear image as ``nbr[v][d] = (w, owner)``; owner is an original
    edge id, or ``None`` for refinement and frame edges."""

    def __init__(self):
        self.nbr: list[list] = []

    def add_vertex(self) -> int:
        self.nbr.append([None] * 4)
        return len(self.nbr) - 1

    def link(self, a: int, b: int, d: int, owner) -> None:
        if self.nbr[a][d] is not None or self.nbr[b][(d + 2) % 4] is not None:
            raise InvalidRepresentation("two edges leave a vertex in one direction")
        self.nbr[a][d] = (b, owner)
        self.nbr[b][(d + 2) % 4] = (a, owner)

    def unlink(self, a: int, d: int) -> None:
        b, _ = self.nbr[a][d]
        self.nbr[a][d] = None
        self.nbr[b][(d + 2) % 4] = None

    def next_dart(self, v: int, h: int) -> int:
        """Leaving direction at ``v`` after arriving with heading ``h``,
        keeping the face on the right."""
        for t in (1, 0, -1, -2):
            d = (h + t) % 4
            if self.nbr[v][d] is not None:
                return d
        raise InvalidRepresentation("isolated vertex in the image")

    def faces(self) -> list[list[tuple[int, int]]]:
        """Faces as lists of darts ``(tail, heading)``."""
        seen = set()
        out = []
        for a in range(len(self.nbr)):
            for d in range(4):
                if self.nbr[a][d] is None or (a, d) in seen:
                    continue
                face = []
                x, h = a, d
                while (x, h) not in seen:
                    seen.add((x, h))
                    face.append((x, h))
                    y = self.nbr[x][h][0]
                    x, h = y, self.next_dart(y, h)
                out.append(face)
        return out


def _turns(img: _Ortho, face) -> list[int]:
    out = []
    for i, (x, h) in enumerate(face):
        h2 = face[(i + 1) % len(face)][1]
        t = (h2 - h) % 4
        out.append(-2 if t == 2 else (t if t < 2 else -1))
    # a U-turn at a degree-one vertex is the only way to get t == 2
    return out


def _image(rep: OrthoRep) -> tuple[_Ortho, dict]:
    """Image plus the bend vertices of each edge, listed from its low end."""
    g = rep.graph
    img = _Ortho()
    for _ in range(g.n):
        img.add_vertex()
    chains = {}
    for e, (tail, h, bends) in sorted(shape_of(rep).items()):
        x = tail
        chain = []
        for c in bends:
            y = img.add_vertex()
            img.link(x, y, h, e)
            chain.append(y)
            x, h = y, (h + (1 if c == "R" else -1)) % 4
        img.link(x, g.other(e, tail), h, e)
        chains[e] = chain if g.edges[e][0] == tail else chain[::-1]
    return img, chains


def _attach_frame(img: _Ortho) -> None:
    faces = img.faces()
    ext = min(faces, key=lambda f: (sum(_turns(img, f)), f[0]))
    turns = _turns(img, ext)
    i = next(k for k, t in enumerate(turns) if t < 0)
    x, h = ext[i]
    v = img.nbr[x][h][0]
    # frame: w on one side, corners c0..c3 walked clockwise from w
    w = img.add_vertex()
    img.link(v, w, h, None)
    corners = [img.add_vertex() for _ in range(4)]
    img.link(w, corners[0], (h + 1) % 4, None)
    img.link(corners[0], corners[1], (h + 2) % 4, None)
    img.link(corners[1], corners[2], (h + 3) % 4, None)
    img.link(corners[2], corners[3], h, None)
    img.link(corners[3], w, (h + 1) % 4, None)


def _refine(img: _Ortho, external_sum: int = -4) -> None:
    while True:
        changed = False
        touched: set = set()
        for face in img.faces():
            turns = _turns(img, face)
            if sum(turns) == external_sum:
                continue
            if any(d in touched for d in face):
                continue
            k = len(face)
            for i in range(k):
                if turns[i] >= 0:
                    continue
                s = 0
                front = None
                for step in range(k):
                    s += turns[(i + step) % k]
                    if s == 1:
                        front = (i + step + 1) % k
                        break
                if front is None:
                    continue
                x, h = face[i]
                v = img.nbr[x][h][0]
                a, hf = face[front]
                b, owner = img.nbr[a][hf]
                touched.add((b, (hf + 2) % 4))
                img.unlink(a, hf)
                w = img.add_vertex()
                img.link(a, w, hf, owner)
                img.link(w, b, hf, owner)
                img.link(v, w, h, None)
                changed = True
                break
        if not changed:
            return


def _levels(img: _Ortho, axis: int) -> list[int]:
    """Coordinate per vertex along x (axis 0) or y (axis 1)."""
    n = len(img.nbr)
    along = (0, 2) if axis == 0 else (3, 1)  # positive then negative direction
    across = (1, 3) if axis == 0 else (0, 2)
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in range(n):
        for d in across:
            if img.nbr[a][d] is not None:
                parent[find(a)] = find(img.nbr[a][d][0])
    dag = nx.DiGraph()
    dag.add_nodes_from({find(a) for a in range(n)})
    for a in range(n):
        if img.nbr[a][along[0]] is not None:
            dag.add_edge(find(a), find(img.nbr[a][along[0]][0]))
    level = {}
    for c in nx.topological_sort(dag):
        level[c] = max((level[p] + 1 for p in dag.predecessors(c)), default=0)
    return [level[find(a)] for a in range(n)]


def compact(rep: OrthoRep) -> GridDrawing:
    report = validate_rep(rep)
    if not report:
        raise InvalidRepresentation(f"cannot draw an invalid representation: {report.reason}")
    g = rep.graph
    if g.m == 0:
        return GridDrawing(g, tuple((0, 0) for _ in range(g.n)), ())
    img, chains = _image(rep)
    n_image = len(img.nbr)
    _attach_frame(img)
    _refine(img)
    xs, ys = _levels(img, 0), _levels(img, 1)
    pts = [(xs[a], ys[a]) for a in range(n_image)]
    x0 = min(p[0] for p in pts)
    y0 = min(p[1] for p in pts)
    pts = [(x - x0, y - y0) for x, y in pts]
    coords = tuple(pts[v] for v in range(g.n))
    bend_points = tuple(tuple(pts[x] for x in chains[e]) for e in range(g.m))
    return GridDrawing(g, coords, bend_points)


# ---------------------------------------------------------------------------
# geometry checks
# ---------------------------------------------------------------------------


def _heading(p, q) -> int:
    dx, dy = q[0] - p[0], q[1] - p[1]
    if (dx == 0) == (dy == 0):
        raise InvalidRepresentation(f"segment {p}-{q} is not axis-parallel")
    if dx:
        return 0 if dx > 0 else 2
    return 3 if dy > 0 else 1


def extract_shape(d: GridDrawing) -> Shape:
    g = d.graph
    shape: Shape = {}
    for e, (a, _) in enumerate(g.edges):
        line = d.polyline(e)
        hs = [_heading(p, q) for p, q in zip(line, line[1:])]
        bends = []
        for h1, h2 in zip(hs, hs[1:]):
            t = (h2 - h1) % 4
            if t not in (1, 3):
                raise InvalidRepresentation(f"edge {e} has a straight or reversed bend point")
            bends.append("R" if t == 1 else "L")
        shape[e] = (a, hs[0], "".join(bends))
    return shape


def extract_rep(d: GridDrawing) -> OrthoRep:
    return rep_from_shape(d.graph, extract_shape(d))


def same_rep(a: OrthoRep, b: OrthoRep) -> bool:
    """Equal rotations (up to cyclic shift), angles, bends and external face."""
    if a.graph.edges != b.graph.edges or a.bends != b.bends:
        return False

    def table(r: OrthoRep):
        out = {}
        for v, rot in enumerate(r.rotation):
            for i, e in enumerate(rot):
                out[(v, e)] = (rot[(i + 1) % len(rot)], r.angles[v][i])
        return out

    if table(a) != table(b):
        return False
    from .graph import faces_of

    if a.graph.m == 0:
        return True
    fa, fb = faces_of(a.embedding), faces_of(b.embedding)
    return set(fa.faces[fa.external].darts) == set(fb.faces[fb.external].darts)


def crossing_violations(d: GridDrawing) -> list[tuple]:
    """Pairs of segments that touch anywhere other than a shared endpoint
    belonging to both of them, plus coincident vertices."""
    g = d.graph
    segs = []
    for e in range(g.m):
        line = d.polyline(e)
        for k, (p, q) in enumerate(zip(line, line[1:])):
            segs.append((e, k, p, q))
    out = []
    if len(set(d.coords)) != len(d.coords):
        out.append(("vertices coincide",))
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if not _ok_pair(segs[i], segs[j], d):
                out.append((segs[i], segs[j]))
    return out


def _box(p, q):
    return min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1])


def _ok_pair(s, t, d: GridDrawing) -> bool:
    e1, k1, p1, q1 = s
    e2, k2, p2, q2 = t
    a = _box(p1, q1)
    b = _box(p2, q2)
    lo_x, hi_x = max(a[0], b[0]), min(a[1], b[1])
    lo_y, hi_y = max(a[2], b[2]), min(a[3], b[3])
    if lo_x > hi_x or lo_y > hi_y:
        return True
    if lo_x != hi_x or lo_y != hi_y:
        return False  # overlap of positive length
    pt = (lo_x, lo_y)
    if pt not in (p1, q1) or pt not in (p2, q2):
        return False
    if e1 == e2:
        return abs(k1 - k2) == 1
    shared = set(d.graph.edges[e1]) & set(d.graph.edges[e2])
    return any(d.coords[v] == pt for v in shared)


def check_drawing(rep: OrthoRep, d: GridDrawing) -> list[str]:
    """Problems found when re-reading ``d`` against ``rep``; empty when fine."""
    problems = []
    try:
        if not same_rep(rep, extract_rep(d)):
            problems.append("re-extracted representation differs")
    except InvalidRepresentation as exc:
        problems.append(str(exc))
    if crossing_violations(d):
        problems.append("segments intersect improperly")
    return problems


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def emit_json(d: GridDrawing) -> str:
    g = d.graph
    data = {
        "vertices": [list(p) for p in d.coords],
        "edges": [
            {"u": a, "v": b, "bends": [list(p) for p in d.bend_points[e]]}
            for e, (a, b) in enumerate(g.edges)
        ],
    }
    return json.dumps(data, sort_keys=True)


def emit_svg(d: GridDrawing, scale: int = 40, margin: int = 20) -> str:
    h = d.height() if d.coords else 0
    w = d.width() if d.coords else 0

    def sx(p) -> str:
        return f"{margin + scale * p[0]},{margin + scale * (h - p[1])}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{2 * margin + scale * w}" height="{2 * margin + scale * h}">',
    ]
    for e in range(d.graph.m):
        pts = " ".join(sx(p) for p in d.polyline(e))
        lines.append(f'  <polyline id="e{e}" points="{escape(pts)}" fill="none" stroke="black"/>')
    for v, p in enumerate(d.coords):
        cx, cy = sx(p).split(",")
        lines.append(f'  <circle id="v{v}" cx="{cx}" cy="{cy}" r="4" fill="black"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
