"""Candidate-set dynamic program over the SPQR-tree.

Every node stores a small cost table: Q and S nodes by spirality, P and R
nodes by shape (X or D).  Tables carry enough links to expand the winning
root solution into a *shape* (edge headings and bends) once, at the end.

Expanded sub-shapes are normalized:

* a spiral (Q or S) of spirality ``k`` leaves its start pole heading east
  and turns ``+k`` (right) before reaching the other pole;
* a P/R component leaves its start pole with contour A heading east and
  contour B heading south; A turns ``+1`` and B ``-1`` for X, A turns ``0``
  and B ``-2`` for D.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import networkx as nx

from .errors import (
    Disconnected,
    EdgeNotFound,
    InvalidRepresentation,
    InvariantError,
    IsolatedVertex,
    MalformedPNode,
    MalformedRNode,
    MalformedSNode,
    NotPlanar,
    OrientationUnresolvable,
)
from .graph import (
    Graph,
    PlanarEmbedding,
    block_cut_tree,
    build_graph,
    faces_of,
    induced_block,
    is_connected,
)
from .ortho import (
    OrthoRep,
    classify_shape,
    Shape,
    bend_turn,
    heading_change,
    rep_from_shape,
    shape_heading,
    shape_of,
    transform_shape,
    validate_rep,
)
from .rect import Assignment, FaceSweep, RsetResult, SkeletonInput, rset_alg
from .spqr import (
    P,
    Q,
    R,
    S,
    Decomposition,
    SpqrTree,
    decompose,
    root_decomposition,
    s_chain,
    skeleton_embeddings,
    subtree_edges,
)

SPIRAL_MAX = 4
Q_TABLE = (0, 1, 2)

# pole darts and contour turns of the normalized P/R templates
_TEMPLATE = {
    "X": {"u": (0, 1), "t": (1, -1)},
    "D": {"u": (0, 1), "t": (0, -2)},
}


def _template_v(kind: str) -> tuple[int, int]:
    (da, db), (ta, tb) = _TEMPLATE[kind]["u"], _TEMPLATE[kind]["t"]
    return ((da + ta + 2) % 4, (db + tb + 2) % 4)


# ---------------------------------------------------------------------------
# candidate sets
# ---------------------------------------------------------------------------


@dataclass
class CandidateSet:
    kind: str
    costs: tuple  # Q/S: by spirality; P/R: (X cost, D cost)
    c0: int = 0
    n_q: int = 0
    n_d: int = 0
    links: dict = field(default_factory=dict)

    @property
    def free(self) -> int:
        """Largest spirality reachable at the 0-spiral cost."""
        if self.kind == Q:
            return 0
        return self.n_q + self.n_d - 1

    def cheapest_shape(self) -> str:
        x, d = self.costs
        return "D" if d <= x else "X"

    def cheapest(self) -> int:
        return min(self.costs)


def s_table(c0: int, n_q: int, n_d: int, kmax: int = SPIRAL_MAX) -> tuple[int, ...]:
    free = n_q + n_d - 1
    return tuple(c0 + max(0, k - free) for k in range(kmax + 1))


def candidates_Q() -> CandidateSet:
    return _Q_SET


_Q_SET = CandidateSet(Q, Q_TABLE)


def _chain_summary(elements, sets) -> tuple[int, int, int, dict]:
    c0 = n_q = n_d = 0
    shapes = {}
    for el in elements:
        if el[0] == "Q":
            n_q += 1
        else:
            cs = sets[el[1]]
            c0 += cs.cheapest()
            shapes[el[1]] = cs.cheapest_shape()
            n_d += shapes[el[1]] == "D"
    return c0, n_q, n_d, shapes


def chain_elements(t: SpqrTree, mu: int, start: int | None = None) -> list[tuple]:
    """S-chain as ``("Q", edge, a, b)`` / ``("V", child, a, b)`` items."""
    nd = t.nodes[mu]
    out = []
    for idx, a, b in s_chain(t, mu, start):
        se = nd.edges[idx]
        if se.real is not None:
            out.append(("Q", se.real, a, b))
        else:
            out.append(("V", t.skeleton_child(mu, idx), a, b))
    return out


def candidates_S(t: SpqrTree, mu: int, sets: dict) -> CandidateSet:
    elements = chain_elements(t, mu)
    if elements[0][0] != "Q" or elements[-1][0] != "Q":
        raise MalformedSNode(f"S-node {mu} does not start and end with real edges")
    for a, b in zip(elements, elements[1:]):
        if a[0] == "V" and b[0] == "V":
            raise MalformedSNode(f"S-node {mu} has adjacent virtual edges")
    for el in elements:
        if el[0] == "V" and t.nodes[el[1]].kind not in (P, R):
            raise MalformedSNode(f"S-node {mu} has a {t.nodes[el[1]].kind} child")
    c0, n_q, n_d, shapes = _chain_summary(elements, sets)
    return CandidateSet(S, s_table(c0, n_q, n_d), c0, n_q, n_d, {"shapes": shapes})


def _non_ref(t: SpqrTree, mu: int) -> list[int]:
    nd = t.nodes[mu]
    return [i for i in range(len(nd.edges)) if i != nd.ref]


def candidates_P(t: SpqrTree, mu: int, sets: dict) -> CandidateSet:
    idx = _non_ref(t, mu)
    kids = [t.skeleton_child(mu, i) for i in idx]
    kinds = sorted(t.nodes[k].kind for k in kids)
    if len(kids) != 2 or kinds not in ([Q, S], [S, S]):
        raise MalformedPNode(f"P-node {mu} has children {kinds}")
    c1, c2 = sets[kids[0]].costs, sets[kids[1]].costs
    x = c1[1] + c2[1]
    d_first = c1[2] + c2[0]
    d_second = c1[0] + c2[2]
    bulge = 0 if d_first <= d_second else 1
    return CandidateSet(P, (x, min(d_first, d_second)), links={"kids": kids, "bulge": bulge})


# ---------------------------------------------------------------------------
# R skeletons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SkelMap:
    skel: SkeletonInput
    verts: tuple[int, ...]  # local vertex -> vertex of G
    sk_index: tuple[int, ...]  # local edge -> skeleton edge index


def _skel_struct(t: SpqrTree, mu: int, with_ref: bool, cache: dict | None):
    key = ("struct", mu, with_ref, None if with_ref else t.nodes[mu].ref)
    if cache is not None and key in cache:
        return cache[key]
    nd = t.nodes[mu]
    rkey = ("rot", mu)
    if cache is not None and rkey in cache:
        rot = cache[rkey]
    else:
        rot = skeleton_embeddings(t, mu)[0]
        if cache is not None:
            cache[rkey] = rot
    verts = tuple(sorted(rot))
    inv = {v: i for i, v in enumerate(verts)}
    keep = tuple(i for i in range(len(nd.edges)) if with_ref or i != nd.ref)
    local_of = {sk: j for j, sk in enumerate(keep)}
    g = build_graph([(inv[nd.edges[i].a], inv[nd.edges[i].b]) for i in keep], len(verts))
    rotation = tuple(tuple(local_of[i] for i in rot[v] if i in local_of) for v in verts)
    out = (g, rotation, verts, inv, keep, local_of, rot)
    if cache is not None:
        cache[key] = out
    return out


def r_skeleton(t: SpqrTree, mu: int, sets: dict, with_ref: bool, outer_end: int = 0,
               cache: dict | None = None) -> SkelMap:
    """Local graph, rotation and cost tables of an R skeleton.

    Without the reference edge the outer dart leaves the first pole; with it,
    the external face is the one on the right of the reference edge walked
    from endpoint ``outer_end`` (0 or 1).
    """
    nd = t.nodes[mu]
    g, rotation, verts, inv, keep, local_of, rot = _skel_struct(t, mu, with_ref, cache)
    tables = []
    for i in keep:
        se = nd.edges[i]
        if se.real is not None:
            tables.append(Q_TABLE)
        else:
            ch = t.skeleton_child(mu, i)
            if t.nodes[ch].kind not in (S, Q):
                raise MalformedRNode(f"R-node {mu} has a {t.nodes[ch].kind} child")
            tables.append(sets[ch].costs)
    ref = nd.edges[nd.ref]
    if with_ref:
        a = (ref.a, ref.b)[outer_end]
        outer = (inv[a], local_of[nd.ref])
        poles = None
    else:
        u, v = ref.a, ref.b
        r = rot[u]
        prev = r[r.index(nd.ref) - 1]
        outer = (inv[u], local_of[prev])
        poles = (inv[u], inv[v])
    return SkelMap(SkeletonInput(g, rotation, outer, tuple(tables), poles), verts, keep)


def candidates_R(t: SpqrTree, mu: int, sets: dict, cache: dict | None = None) -> CandidateSet:
    sm = r_skeleton(t, mu, sets, with_ref=False, cache=cache)
    key = (mu, t.nodes[mu].ref, sm.skel.tables)
    if cache is not None and key in cache:
        res = cache[key]
    else:
        res = rset_alg(sm.skel)
        if cache is not None:
            cache[key] = res
    return CandidateSet(R, (res.x.cost, res.d.cost), links={"rset": res, "map": sm})


def compute_sets(t: SpqrTree, cache: dict | None = None) -> dict:
    """Candidate sets for every inner node (children before parents)."""
    order = []
    stack = [t.root_child]
    while stack:
        x = stack.pop()
        order.append(x)
        stack.extend(c for c in t.nodes[x].children if t.nodes[c].kind != Q)
    sets: dict = {}
    q_set = candidates_Q()
    for q in t.q_of_edge.values():
        sets[q] = q_set
    for mu in reversed(order[1:]):
        kind = t.nodes[mu].kind
        if kind == S:
            sets[mu] = candidates_S(t, mu, sets)
        elif kind == P:
            sets[mu] = candidates_P(t, mu, sets)
        else:
            sets[mu] = candidates_R(t, mu, sets, cache)
    return sets


# ---------------------------------------------------------------------------
# expansion
# ---------------------------------------------------------------------------


def _merge(dst: Shape, src: Shape) -> None:
    for e, val in src.items():
        if e in dst:
            raise InvalidRepresentation(f"edge {e} expanded twice")
        dst[e] = val


def _transform_dir(d: int, mirror: bool, rot: int) -> int:
    return ((-d if mirror else d) + rot) % 4


def _child_fit(kind: str, h: int, c: int) -> tuple[bool, int] | None:
    """Transform placing a normalized P/R child after incoming heading ``h``
    so that it contributes ``c`` to the spirality of the enclosing chain."""
    du = _TEMPLATE[kind]["u"]
    dv = _template_v(kind)
    ta = _TEMPLATE[kind]["t"][0]
    for mirror in (False, True):
        for r in range(4):
            at_u = {_transform_dir(d, mirror, r) for d in du}
            if (h + 2) % 4 in at_u:
                continue
            at_v = {_transform_dir(d, mirror, r) for d in dv}
            da = _transform_dir(du[0], mirror, r)
            ta_t = -ta if mirror else ta
            t_in = heading_change(h, da)
            arrive = da + ta_t
            for o in range(4):
                if o in at_v or (o - arrive) % 4 == 2:
                    continue
                if t_in + ta_t + heading_change(arrive, o) == c:
                    return mirror, r
    return None


def child_contributions(kind: str) -> set[int]:
    """Spirality contributions a P/R child of this shape can make in a chain."""
    out = set()
    for c in range(-4, 5):
        if _child_fit(kind, 0, c) is not None:
            out.add(c)
    return out


_FREE_CONTRIB = {"D": 2, "X": 1}


class Expander:
    def __init__(self, t: SpqrTree, sets: dict):
        self.t = t
        self.sets = sets
        self.g = t.graph

    # spirals ---------------------------------------------------------------

    def spiral(self, mu: int, k: int, start: int) -> Shape:
        nd = self.t.nodes[mu]
        if nd.kind == Q:
            if k > 2:
                raise InvalidRepresentation("a real edge takes at most two bends")
            return {nd.edges[0].real: (start, 0, "R" * k)}
        shapes, _ = self.chain(chain_elements(self.t, mu, start), k)
        return shapes

    def chain(self, elements: list[tuple], k: int, last_qs: tuple = ()) -> tuple[Shape, dict]:
        """Expand a chain with total spirality ``k`` leaving heading east.

        Returns the merged shape of real edges and child components, plus the
        per-element ``(tail, heading, bends)`` of every Q item (keyed by the
        item's second field).  Items listed in ``last_qs`` take extra bends
        last.
        """
        sets = self.sets
        _, _, _, shapes = _chain_summary(elements, sets)
        contrib = [0] * len(elements)
        rem = k
        for i, el in enumerate(elements):
            if rem <= 0:
                break
            if el[0] == "V":
                step = min(rem, _FREE_CONTRIB[shapes[el[1]]])
            elif i + 1 < len(elements) and elements[i + 1][0] == "Q":
                step = min(rem, 1)  # joint after this edge
            else:
                continue
            contrib[i] = step
            rem -= step
        bends = {i: 0 for i, el in enumerate(elements) if el[0] == "Q"}
        order = [i for i in bends if elements[i][1] not in last_qs] + [
            i for i in bends if elements[i][1] in last_qs
        ]
        for _ in range(2):
            for i in order:
                if rem > 0:
                    bends[i] += 1
                    rem -= 1
        if rem > 0:
            raise InvalidRepresentation(f"spirality {k} out of reach")
        out: Shape = {}
        qs: dict = {}
        h = 0
        for i, el in enumerate(elements):
            kind, key, a, b = el
            if kind == "Q":
                qs[key] = (a, h % 4, "R" * bends[i])
                if isinstance(key, int):
                    out[key] = qs[key]
                h += bends[i] + contrib[i]
            else:
                shape = shapes[key]
                fit = _child_fit(shape, h % 4, contrib[i])
                if fit is None:
                    raise OrientationUnresolvable(f"child {key} cannot turn {contrib[i]}")
                sub = self.pr(key, shape, a)
                _merge(out, transform_shape(sub, fit[1], fit[0]))
                h += contrib[i]
        return out, qs

    # P and R components ------------------------------------------------------

    def pr(self, mu: int, kind: str, start: int) -> Shape:
        nd = self.t.nodes[mu]
        if nd.kind == P:
            return self._p(mu, kind, start)
        return self._r(mu, kind, start)

    def _p(self, mu: int, kind: str, start: int) -> Shape:
        cs = self.sets[mu]
        k1, k2 = cs.links["kids"]
        if kind == "X":
            a, b, ka, kb = k1, k2, 1, 1
        else:
            bulge = (k1, k2)[cs.links["bulge"]]
            a = k2 if bulge == k1 else k1
            b, ka, kb = bulge, 0, 2
        out = dict(self.spiral(a, ka, start))
        _merge(out, transform_shape(self.spiral(b, kb, start), 1, True))
        return out

    def skeleton_shape(self, mu: int, sm: SkelMap, assignment: Assignment) -> Shape:
        nd = self.t.nodes[mu]
        local = shape_of(assignment.rep)
        out: Shape = {}
        for le, (tl, hd, b) in local.items():
            idx = sm.sk_index[le]
            se = nd.edges[idx]
            tail = sm.verts[tl]
            if se.real is not None:
                _merge(out, {se.real: (tail, hd, b)})
                continue
            child = self.t.skeleton_child(mu, idx)
            sub = self.spiral(child, len(b), tail)
            _merge(out, transform_shape(sub, hd, bool(b) and b[0] == "L"))
        return out

    def _r(self, mu: int, kind: str, start: int) -> Shape:
        cs = self.sets[mu]
        res: RsetResult = cs.links["rset"]
        sm: SkelMap = cs.links["map"]
        raw = self.skeleton_shape(mu, sm, res.x if kind == "X" else res.d)
        u, v = self.t.nodes[mu].poles
        other = v if start == u else u
        return normalize_pr(self.g, raw, start, other, kind)


def _walk_contour(g: Graph, shape: Shape, first: int, start: int, stop: int, leftmost: bool) -> int:
    """Signed turn of the contour from ``start`` along ``first`` to ``stop``."""
    total = 0
    e, x = first, start
    for _ in range(len(shape) + 1):
        total += bend_turn(shape[e][2] if shape[e][0] == x else _flip(shape[e][2]))
        w = g.other(e, x)
        if w == stop:
            return total
        arrive = (shape_heading(g, shape, w, e) + 2) % 4
        best = None
        for f in g.adj[w]:
            if f == e or f not in shape:
                continue
            tv = heading_change(arrive, shape_heading(g, shape, w, f))
            if best is None or (tv < best[0] if leftmost else tv > best[0]):
                best = (tv, f)
        total += best[0]
        e, x = best[1], w
    raise InvalidRepresentation("contour walk did not reach the other pole")


def _flip(b: str) -> str:
    return "".join("L" if c == "R" else "R" for c in reversed(b))


def normalize_pr(g: Graph, shape: Shape, u: int, v: int, kind: str) -> Shape:
    """Rotate/mirror a P/R component shape into the normalized template."""
    want = _TEMPLATE[kind]["t"]
    at_u = [e for e in g.adj[u] if e in shape]
    for mirror in (False, True):
        cand0 = transform_shape(shape, 0, mirror)
        for r in range(4):
            cand = transform_shape(cand0, r, False)
            hs = {shape_heading(g, cand, u, e): e for e in at_u}
            if 0 not in hs or 1 not in hs:
                continue
            ta = _walk_contour(g, cand, hs[0], u, v, leftmost=True)
            tb = _walk_contour(g, cand, hs[1], u, v, leftmost=False)
            if (ta, tb) == want:
                return cand
    raise OrientationUnresolvable(f"component at pole {u} does not match the {kind} template")


# ---------------------------------------------------------------------------
# root children
# ---------------------------------------------------------------------------


@dataclass
class RootPlan:
    cost: int
    kind: str
    tree: SpqrTree
    sets: dict
    data: dict


def bundle_layout(mags: tuple[int, int, int]):
    """Headings and signed turns for three parallel pole-to-pole paths.

    Path 2 is the reference edge and must lie on the external face.  Returns
    ``(headings at the first pole, signed turns)`` or None.
    """
    for dirs in itertools.permutations(range(4), 3):
        for signs in itertools.product((1, -1), repeat=3):
            s = [sg * m for sg, m in zip(signs, mags)]
            at_v = [(d + x + 2) % 4 for d, x in zip(dirs, s)]
            if len(set(at_v)) != 3:
                continue
            order_u = sorted(range(3), key=lambda i: dirs[i])
            order_v = sorted(range(3), key=lambda i: at_v[i])
            sums = []
            ok = True
            for j in range(3):
                x, y = order_u[j], order_u[(j + 1) % 3]
                if order_v[(order_v.index(y) + 1) % 3] != x:
                    ok = False
                    break
                if (dirs[x] - dirs[y] - 2) % 4 == 2 or (at_v[y] - dirs[x] - s[x]) % 4 == 2:
                    ok = False
                    break
                turn_u = heading_change((dirs[y] + 2) % 4, dirs[x])
                turn_v = heading_change((dirs[x] + s[x]) % 4, at_v[y])
                sums.append((turn_u + turn_v + s[x] - s[y], {x, y}))
            if not ok:
                continue
            ext = [f for f in sums if f[0] == -4]
            if len(ext) == 1 and all(f[0] == 4 for f in sums if f[0] != -4) and 2 in ext[0][1]:
                return dirs, tuple(s)
    return None


def p_root_cases(k1: int, k2: int) -> tuple[int, int, int]:
    """Spiralities of (first child, second child, reference edge); k1 >= k2."""
    if k1 >= 4:
        return (4, 2, 0)
    if k1 == 3:
        return (3, 1, 1)
    return (2, 0, 2)


def p_root_child(t: SpqrTree, sets: dict) -> RootPlan:
    mu = t.root_child
    kids = [t.skeleton_child(mu, i) for i in _non_ref(t, mu)]
    if len(kids) != 2 or any(t.nodes[k].kind != S for k in kids):
        raise MalformedPNode(f"root-child P-node {mu} needs two S children")
    a, b = kids
    if sets[b].free > sets[a].free:
        a, b = b, a
    s1, s2, se = p_root_cases(sets[a].free, sets[b].free)
    cost = sets[a].costs[s1] + sets[b].costs[s2] + se
    return RootPlan(cost, P, t, sets, {"kids": (a, b), "mags": (s1, s2, se)})


def _s_root_elements(t: SpqrTree, sets: dict):
    mu = t.root_child
    e = t.ref_edge
    p, q = t.graph.edges[e]
    chain = chain_elements(t, mu, p)
    first_q, last_q = chain[0][0] == "Q", chain[-1][0] == "Q"
    if first_q and last_q:
        return "a", chain, 2
    if first_q or last_q:
        if not first_q:
            chain = chain_elements(t, mu, q)
            p, q = q, p
        return "b", chain + [("Q", e, q, p)], 3
    return "c", [("Q", ("e1",), "w", p)] + chain + [("Q", ("e2",), q, "w")], 4


def s_root_child(t: SpqrTree, sets: dict) -> RootPlan:
    case, elements, k = _s_root_elements(t, sets)
    c0, n_q, n_d, _ = _chain_summary(elements, sets)
    cost = s_table(c0, n_q, n_d)[k]
    return RootPlan(cost, S, t, sets, {"case": case, "elements": elements, "k": k})


def _face_key(sm: SkelMap) -> tuple:
    emb = PlanarEmbedding(sm.skel.graph, sm.skel.rotation, sm.skel.outer)
    darts = []
    d = sm.skel.outer
    while True:
        darts.append(d)
        d = emb.next_dart(d)
        if d == sm.skel.outer:
            break
    return min(darts)


def r_root_child(t: SpqrTree, sets: dict, cache: dict | None = None) -> RootPlan:
    mu = t.root_child
    cache = {} if cache is None else cache
    best = None
    for end in (0, 1):
        sm = r_skeleton(t, mu, sets, with_ref=True, outer_end=end, cache=cache)
        sk = sm.skel
        skey = ("sweep", mu, sk.tables)
        if skey not in cache:
            cache[skey] = FaceSweep(sk.graph, sk.rotation, dict(enumerate(sk.tables)), sk.outer)
        sweep = cache[skey]
        key = ("root", mu, _face_key(sm), sk.tables)
        if key not in cache:
            cost = sweep.cost(sk.outer)
            if cost is None:
                raise InvalidRepresentation("skeleton admits no representation")
            cache[key] = cost
        if best is None or cache[key] < best[0]:
            best = (cache[key], sweep, sm)
    cost, sweep, sm = best
    return RootPlan(cost, R, t, sets, {"sweep": sweep, "map": sm})


def solve_tree(t: SpqrTree, cache: dict | None = None) -> RootPlan:
    sets = compute_sets(t, cache)
    kind = t.nodes[t.root_child].kind
    if kind == P:
        return p_root_child(t, sets)
    if kind == S:
        return s_root_child(t, sets)
    return r_root_child(t, sets, cache)


def expand_plan(plan: RootPlan) -> Shape:
    """Shape of the whole (biconnected) graph for a root plan."""
    t, ex = plan.tree, Expander(plan.tree, plan.sets)
    e = t.ref_edge
    if plan.kind == R:
        sm = plan.data["map"]
        return ex.skeleton_shape(t.root_child, sm, plan.data["sweep"].assignment(sm.skel.outer))
    if plan.kind == S:
        out, qs = ex.chain(plan.data["elements"], plan.data["k"], last_qs=(("e1",), ("e2",)))
        case = plan.data["case"]
        if case == "a":
            q = plan.data["elements"][-1][3]
            out[e] = (q, 3, "")
        elif case == "c":
            tail, hd, b2 = qs[("e2",)]
            b1 = qs[("e1",)][2]
            out[e] = (tail, hd, b2 + b1)
        return out
    a, b = plan.data["kids"]
    p = t.graph.edges[e][0]
    layout = bundle_layout(plan.data["mags"])
    if layout is None:
        raise OrientationUnresolvable("no bundle layout for the root P-node")
    dirs, s = layout
    out: Shape = {}
    for kid, d, x in ((a, dirs[0], s[0]), (b, dirs[1], s[1])):
        _merge(out, transform_shape(ex.spiral(kid, abs(x), p), d, x < 0))
    out[e] = (p, dirs[2], "R" * s[2] if s[2] > 0 else "L" * -s[2])
    return out


# ---------------------------------------------------------------------------
# blocks and drivers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolverConfig:
    jobs: int = 1
    validate: bool = True


@dataclass(frozen=True)
class SolveResult:
    rep: OrthoRep
    bends: int
    ref_edge: int | None
    edge_bends: tuple[str, ...]


class BlockSolver:
    """Bend-minimum costs of one biconnected block per reference edge."""

    def __init__(self, g: Graph, planar_checked: bool = False):
        self.g = g
        self.dec: Decomposition = decompose(g, planar_checked)
        self.cache: dict = {}
        self.costs: dict[int, int] = {}
        self._last: tuple[int, RootPlan] | None = None

    def plan(self, e: int) -> RootPlan:
        # keep only the latest plan: cost() then shape() on the same edge
        # is the common pattern, and plans for every edge would pile up
        if self._last is None or self._last[0] != e:
            self._last = (e, solve_tree(root_decomposition(self.dec, e), self.cache))
        return self._last[1]

    def cost(self, e: int) -> int:
        if e not in self.costs:
            self.costs[e] = self.plan(e).cost
        return self.costs[e]

    def shape(self, e: int) -> Shape:
        return expand_plan(self.plan(e))


class GraphSolver:
    """Block-cut extension: one root block plus attached child blocks.

    Expects input already accepted by the driver checks (planar, connected).
    """

    def __init__(self, g: Graph):
        if g.n == 0:
            raise InvalidRepresentation("empty graph")
        self.g = g
        self.bct = block_cut_tree(g)
        self.block_of = {}
        for i, b in enumerate(self.bct.blocks):
            for e in b.edges:
                self.block_of[e] = i
        self.local: dict = {}
        self.solvers: dict = {}

    def _block(self, i: int):
        if i not in self.local:
            self.local[i] = induced_block(self.g, self.bct.blocks[i])
        return self.local[i]

    def block_cost(self, i: int, e: int) -> int:
        """Cost of block ``i`` with global edge ``e`` external."""
        if self.bct.blocks[i].trivial:
            return 0
        gb, vmap, emap = self._block(i)
        if i not in self.solvers:
            self.solvers[i] = BlockSolver(gb, planar_checked=True)
        return self.solvers[i].cost(emap.index(e))

    def attach_choice(self, i: int, v: int) -> tuple[int, int]:
        """Cheapest (cost, edge) of block ``i`` with vertex ``v`` external."""
        es = [e for e in self.bct.blocks[i].edges if v in self.g.edges[e]]
        return min((self.block_cost(i, e), e) for e in es)

    def layout(self, e: int) -> list[tuple[int, int, int | None]]:
        """Blocks in attach order as ``(block, reference edge, cut vertex)``."""
        root = self.block_of[e]
        out = [(root, e, None)]
        seen = {root}
        queue = [root]
        while queue:
            b = queue.pop(0)
            for v in self.bct.block_cuts[b]:
                for c in self.bct.cut_blocks[v]:
                    if c in seen:
                        continue
                    seen.add(c)
                    out.append((c, self.attach_choice(c, v)[1], v))
                    queue.append(c)
        return out

    def total_cost(self, e: int) -> int:
        return sum(self.block_cost(b, f) for b, f, _ in self.layout(e))

    def realize(self, e: int) -> Shape:
        g = self.g
        shape: Shape = {}
        for b, f, v in self.layout(e):
            sub = self._block_shape(b, f)
            if v is not None:
                sub = self._fit(shape, sub, v, b)
            _merge(shape, sub)
        return shape

    def _block_shape(self, i: int, e: int) -> Shape:
        if self.bct.blocks[i].trivial:
            a, _ = self.g.edges[e]
            return {e: (a, 0, "")}
        self.block_cost(i, e)
        gb, vmap, emap = self._block(i)
        local = self.solvers[i].shape(emap.index(e))
        return {emap[le]: (vmap[t], d, b) for le, (t, d, b) in local.items()}

    def _fit(self, placed: Shape, sub: Shape, v: int, i: int) -> Shape:
        """Rotate a child block so it sits in a free angle at ``v`` with its
        outer face towards the edges already placed there."""
        g = self.g
        used = {shape_heading(g, placed, v, e) for e in g.adj[v] if e in placed}
        mine = [e for e in g.adj[v] if e in sub]
        outer = None
        if len(mine) == 2:
            gb, vmap, emap = self._block(i)
            inv = {x: k for k, x in enumerate(vmap)}
            local = {emap.index(e): (inv[t], d, b) for e, (t, d, b) in sub.items()}
            rep = rep_from_shape(gb, local)
            fs = faces_of(rep.embedding)
            lv = inv[v]
            first = next(le for t, le in fs.faces[fs.external].darts if t == lv)
            k = rep.rotation[lv].index(first)
            d0 = shape_heading(gb, local, lv, first)
            outer = {(d0 + j) % 4 for j in range(1, rep.angles[lv][k])}
        for r in range(4):
            dirs = {(shape_heading(g, sub, v, e) + r) % 4 for e in mine}
            if dirs & used:
                continue
            if outer is not None and not {(d + r) % 4 for d in outer} >= used:
                continue
            return transform_shape(sub, r)
        raise OrientationUnresolvable(f"no free angle for a block at vertex {v}")


def _result(g: Graph, shape: Shape, e: int | None, validate: bool) -> SolveResult:
    rep = rep_from_shape(g, shape)
    if validate:
        report = validate_rep(rep)
        if not report:
            raise InvariantError(f"solver output invalid: {report.reason}")
        if e is not None:
            fs = faces_of(rep.embedding)
            a, b = g.edges[e]
            if fs.external not in (fs.face_of[(a, e)], fs.face_of[(b, e)]):
                raise InvariantError("reference edge left the external face")
    return SolveResult(rep, rep.bend_count(), e, rep.bends)


def _trivial(g: Graph) -> SolveResult:
    rep = OrthoRep(g, tuple(() for _ in range(g.n)), tuple(() for _ in range(g.n)), (), None)
    return SolveResult(rep, 0, None, ())


def _check_input(g: Graph) -> None:
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    if g.m and not nx.check_planarity(g.to_nx())[0]:
        raise NotPlanar("graph is not planar")


def bend_min_ref_edge(g: Graph, e: int, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Bend-minimum representation over all embeddings with ``e`` external."""
    _check_input(g)
    if not 0 <= e < g.m:
        raise EdgeNotFound(f"no edge {e}")
    gs = GraphSolver(g)
    return _result(g, gs.realize(e), e, config.validate)


def bend_min_vertex(g: Graph, v: int, config: SolverConfig = SolverConfig()) -> SolveResult:
    _check_input(g)
    if not 0 <= v < g.n:
        raise IsolatedVertex(f"no vertex {v}")
    if g.degree(v) == 0:
        if g.n == 1:
            return _trivial(g)
        raise IsolatedVertex(f"vertex {v} has no edges")
    gs = GraphSolver(g)
    best = min((gs.total_cost(e), e) for e in g.adj[v])
    return _result(g, gs.realize(best[1]), best[1], config.validate)


def _costs_chunk(args) -> list[tuple[int, int]]:
    g, edges = args
    gs = GraphSolver(g)
    return [(gs.total_cost(e), e) for e in edges]


def bend_min_global(g: Graph, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Minimum over every reference edge; ties go to the smallest edge id."""
    _check_input(g)
    if g.m == 0:
        return _trivial(g)
    edges = list(range(g.m))
    if config.jobs > 1 and g.m > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [edges[i:: config.jobs] for i in range(config.jobs)]
        with ProcessPoolExecutor(config.jobs) as pool:
            pairs = [p for part in pool.map(_costs_chunk, [(g, c) for c in chunks if c]) for p in part]
        gs = GraphSolver(g)
    else:
        gs = GraphSolver(g)
        pairs = [(gs.total_cost(e), e) for e in edges]
    best = min(pairs)
    return _result(g, gs.realize(best[1]), best[1], config.validate)


def structure_violations(g: Graph, res: SolveResult) -> list[str]:
    """Checks of a solver output against the optimality properties: at most
    two bends per edge, inner P/R components X- or D-shaped, inner series
    components at most 4-spiral."""
    out = []
    if not validate_rep(res.rep):
        out.append("representation fails validation")
    out += [f"edge {e} has {len(b)} bends" for e, b in enumerate(res.rep.bends) if len(b) > 2]
    if res.ref_edge is None:
        return out
    gs = GraphSolver(g)
    for b, e, _ in gs.layout(res.ref_edge):
        if gs.bct.blocks[b].trivial:
            continue
        gb, vmap, emap = gs._block(b)
        t = root_decomposition(decompose(gb), emap.index(e))
        for mu, nd in enumerate(t.nodes):
            if nd.kind == Q or not t.is_inner(mu):
                continue
            comp = [emap[x] for x in subtree_edges(t, mu)]
            poles = tuple(vmap[x] for x in nd.poles)
            sc = classify_shape(res.rep, comp, poles)
            if nd.kind == S and (sc.name != "spiral" or sc.k > SPIRAL_MAX):
                out.append(f"series component at {poles} is {sc}")
            if nd.kind in (P, R) and sc.name not in ("X", "D"):
                out.append(f"{nd.kind} component at {poles} is {sc}")
    return out
