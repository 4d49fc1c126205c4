"""SPQR-trees of biconnected planar graphs with maximum degree three.

With degree at most three, the tree has a rigid structure: P- and R-nodes
are only ever adjacent to S-nodes (and Q-leaves), so S-nodes are exactly
the classes of edges that pairwise form 2-edge-cuts.  Those classes come
from cycle-space labels: every non-tree edge of a DFS tree gets its own
bit, a tree edge gets the XOR of the non-tree edges covering it, and two
edges form a cut iff their labels are equal.  Removing a class splits the
graph into pieces arranged along a cycle; each non-trivial piece is a
virtual edge of the S-node.  The remaining edges plus those virtual edges
fall apart into connected groups, one per P- or R-node.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .errors import NotBiconnected, NotPlanar, RootHasNoPertinent, DegreeExceeded
from .graph import Graph, build_graph, is_biconnected

S, P, Q, R = "S", "P", "Q", "R"


@dataclass
class SkelEdge:
    a: int
    b: int
    real: int | None = None  # edge id of G when real
    twin: tuple[int, int] | None = None  # (node, skeleton edge index) when virtual

    @property
    def virtual(self) -> bool:
        return self.real is None

    def other(self, x: int) -> int:
        return self.b if x == self.a else self.a


@dataclass
class SpqrNode:
    id: int
    kind: str
    edges: list[SkelEdge]
    # S-nodes: polygon vertices in cyclic order, edge i joins cycle[i], cycle[i+1]
    cycle: list[int] | None = None
    parent: int | None = None
    ref: int | None = None  # index of the reference edge in ``edges``
    children: list[int] = field(default_factory=list)  # child node ids (Q included)

    @property
    def vertices(self) -> list[int]:
        return sorted({x for se in self.edges for x in (se.a, se.b)})

    @property
    def poles(self) -> tuple[int, int] | None:
        if self.ref is None:
            return None
        se = self.edges[self.ref]
        return (se.a, se.b)


@dataclass
class Decomposition:
    """Unrooted SPQR structure (Q-leaves implicit in real skeleton edges)."""

    graph: Graph
    nodes: list[SpqrNode]
    edge_node: dict  # G edge id -> (node id, skeleton edge index)
    q_edges: list | None = None  # shared Q-node skeletons, built on first rooting


@dataclass
class SpqrTree:
    graph: Graph
    ref_edge: int
    nodes: list[SpqrNode]  # inner nodes followed by one Q node per G edge
    root: int
    root_child: int
    q_of_edge: dict

    def node(self, i: int) -> SpqrNode:
        return self.nodes[i]

    def skeleton_child(self, mu: int, idx: int) -> int:
        """Child node behind skeleton edge ``idx`` of ``mu``."""
        se = self.nodes[mu].edges[idx]
        if se.real is not None:
            return self.q_of_edge[se.real]
        return se.twin[0]

    def is_inner(self, mu: int) -> bool:
        return mu not in (self.root, self.root_child)

    def to_json(self) -> str:
        out = []
        for nd in self.nodes:
            out.append(
                {
                    "id": nd.id,
                    "kind": nd.kind,
                    "parent": nd.parent,
                    "poles": list(nd.poles) if nd.poles else None,
                    "skeleton": [
                        {"u": se.a, "v": se.b, "real": se.real is not None,
                         "edge": se.real, "node": None if se.twin is None else se.twin[0]}
                        for se in nd.edges
                    ],
                }
            )
        return json.dumps({"ref_edge": self.ref_edge, "root": self.root, "nodes": out},
                          sort_keys=True)


# ---------------------------------------------------------------------------
# unrooted decomposition
# ---------------------------------------------------------------------------


def _dfs(g: Graph):
    parent_edge = [-1] * g.n
    depth = [-1] * g.n
    order = []
    depth[0] = 0
    stack = [(0, iter(g.adj[0]))]
    order.append(0)
    while stack:
        v, it = stack[-1]
        for e in it:
            w = g.other(e, v)
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent_edge[w] = e
                order.append(w)
                stack.append((w, iter(g.adj[w])))
                break
        else:
            stack.pop()
    return parent_edge, depth, order


def _cut_labels(g: Graph, parent_edge, order) -> list[int]:
    tree = set(e for e in parent_edge if e >= 0)
    label = [0] * g.m
    bit = 0
    for e in range(g.m):
        if e not in tree:
            label[e] = 1 << bit
            bit += 1
    acc = [0] * g.n
    for v in range(g.n):
        for e in g.adj[v]:
            if e not in tree:
                acc[v] ^= label[e]
    for v in reversed(order):
        pe = parent_edge[v]
        if pe < 0:
            continue
        label[pe] = acc[v]
        p = g.other(pe, v)
        acc[p] ^= acc[v]
    return label


def decompose(g: Graph, planar_checked: bool = False) -> Decomposition:
    """SPQR decomposition; ``planar_checked`` skips the planarity test when
    the caller has already run it on a supergraph."""
    if g.max_degree() > 3:
        raise DegreeExceeded("degree above three")
    if not is_biconnected(g):
        raise NotBiconnected("graph is not biconnected")
    if not planar_checked and not nx.check_planarity(g.to_nx())[0]:
        raise NotPlanar("graph is not planar")
    parent_edge, depth, order = _dfs(g)
    label = _cut_labels(g, parent_edge, order)
    tree = set(e for e in parent_edge if e >= 0)

    classes: dict[int, list[int]] = {}
    for e in range(g.m):
        classes.setdefault(label[e], []).append(e)

    def child_of(e):
        a, b = g.edges[e]
        return a if depth[a] > depth[b] else b

    s_polys = []  # (polygon vertices, edge specs) where spec = int (real) or None (piece)
    in_s = set()
    for lab in sorted(classes, key=lambda k: min(classes[k])):
        es = classes[lab]
        if len(es) < 2:
            continue
        in_s.update(es)
        tes = sorted((e for e in es if e in tree), key=lambda e: depth[child_of(e)])
        nts = [e for e in es if e not in tree]
        seq = []  # list of ("e", id, from, to) / ("p", x, y)
        if nts:
            (nt,) = nts
            a, b = g.edges[nt]
            lo, hi = (a, b) if depth[a] > depth[b] else (b, a)
            # walk: hi -> piece -> e1 -> ... -> ek -> piece -> lo -> nt -> hi
            cur = hi
        else:
            cur = None
        for i, e in enumerate(tes):
            c = child_of(e)
            p = g.other(e, c)
            if cur is not None:
                seq.append(("p", cur, p))
            seq.append(("e", e, p, c))
            cur = c
        if nts:
            seq.append(("p", cur, lo))
            seq.append(("e", nt, lo, hi))
        else:
            first_p = seq[0][2]
            seq.append(("p", cur, first_p))
        cycle = []
        specs = []
        for item in seq:
            if item[0] == "p":
                if item[1] != item[2]:
                    cycle.append(item[1])
                    specs.append(None)
            else:
                cycle.append(item[2])
                specs.append(item[1])
        s_polys.append((cycle, specs))

    nodes: list[SpqrNode] = []
    edge_node: dict[int, tuple[int, int]] = {}
    pole_virtual: list[tuple[int, int, int, int]] = []  # (x, y, s node, edge idx)
    for cycle, specs in s_polys:
        nid = len(nodes)
        sk = []
        L = len(cycle)
        for i, spec in enumerate(specs):
            x, y = cycle[i], cycle[(i + 1) % L]
            if spec is None:
                sk.append(SkelEdge(x, y))
                pole_virtual.append((x, y, nid, i))
            else:
                sk.append(SkelEdge(x, y, real=spec))
                edge_node[spec] = (nid, i)
        nodes.append(SpqrNode(nid, S, sk, cycle=list(cycle)))

    # P/R nodes: connected groups of remaining real edges and piece edges
    rest = [e for e in range(g.m) if e not in in_s]
    uf = list(range(g.n))

    def find(x):
        while uf[x] != x:
            uf[x] = uf[uf[x]]
            x = uf[x]
        return x

    for e in rest:
        a, b = g.edges[e]
        uf[find(a)] = find(b)
    for x, y, _, _ in pole_virtual:
        uf[find(x)] = find(y)
    groups: dict[int, list] = {}
    for e in rest:
        groups.setdefault(find(g.edges[e][0]), []).append(("e", e))
    for item in pole_virtual:
        groups.setdefault(find(item[0]), []).append(("v", item))
    for key in sorted(groups, key=lambda k: min(_group_key(it) for it in groups[k])):
        items = groups[key]
        nid = len(nodes)
        sk = []
        for it in items:
            if it[0] == "e":
                a, b = g.edges[it[1]]
                edge_node[it[1]] = (nid, len(sk))
                sk.append(SkelEdge(a, b, real=it[1]))
            else:
                x, y, s_id, s_idx = it[1]
                sk.append(SkelEdge(x, y, twin=(s_id, s_idx)))
                nodes[s_id].edges[s_idx].twin = (nid, len(sk) - 1)
        verts = {x for se in sk for x in (se.a, se.b)}
        kind = P if len(verts) == 2 else R
        nodes.append(SpqrNode(nid, kind, sk))
    if not nodes:
        raise NotBiconnected("no decomposition")
    return Decomposition(g, nodes, edge_node)


def _group_key(it):
    if it[0] == "e":
        return (0, it[1])
    return (1, it[1][2], it[1][3])


# ---------------------------------------------------------------------------
# rooting
# ---------------------------------------------------------------------------


def root_decomposition(dec: Decomposition, ref_edge: int) -> SpqrTree:
    g = dec.graph
    # skeleton edges are never modified after decomposition, so rootings share them
    nodes = [SpqrNode(nd.id, nd.kind, nd.edges, cycle=nd.cycle) for nd in dec.nodes]
    n_inner = len(nodes)
    if dec.q_edges is None:
        dec.q_edges = [[SkelEdge(a, b, real=e)] * 2 for e, (a, b) in enumerate(g.edges)]
    q_of_edge = {e: n_inner + e for e in range(g.m)}
    nodes.extend(SpqrNode(n_inner + e, Q, dec.q_edges[e]) for e in range(g.m))
    root = q_of_edge[ref_edge]
    rc, rc_idx = dec.edge_node[ref_edge]
    nodes[root].children = [rc]
    nodes[rc].parent = root
    nodes[rc].ref = rc_idx
    queue = deque([rc])
    while queue:
        mu = queue.popleft()
        nd = nodes[mu]
        for i, se in enumerate(nd.edges):
            if i == nd.ref:
                continue
            if se.real is not None:
                q = q_of_edge[se.real]
                nodes[q].parent = mu
                nodes[q].ref = 0
                nd.children.append(q)
            else:
                ch, idx = se.twin
                nodes[ch].parent = mu
                nodes[ch].ref = idx
                nd.children.append(ch)
                queue.append(ch)
    return SpqrTree(g, ref_edge, nodes, root, rc, q_of_edge)


def build_spqr(g: Graph, ref_edge: int) -> SpqrTree:
    """SPQR-tree of ``g`` rooted at the Q-node of ``ref_edge``."""
    return root_decomposition(decompose(g), ref_edge)


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------


def subtree_edges(t: SpqrTree, mu: int) -> list[int]:
    out = []
    stack = [mu]
    while stack:
        x = stack.pop()
        nd = t.nodes[x]
        if nd.kind == Q:
            out.append(nd.edges[0].real)
        else:
            stack.extend(nd.children)
    return sorted(out)


def pertinent_graph(t: SpqrTree, mu: int) -> tuple[Graph, list[int], list[int]]:
    """Pertinent graph of ``mu`` with vertex and edge maps into the input graph."""
    if mu == t.root:
        raise RootHasNoPertinent("the root Q-node has no pertinent graph")
    es = subtree_edges(t, mu)
    g = t.graph
    vs = sorted({x for e in es for x in g.edges[e]})
    inv = {v: i for i, v in enumerate(vs)}
    sub = build_graph([(inv[g.edges[e][0]], inv[g.edges[e][1]]) for e in es], len(vs))
    return sub, vs, es


def s_chain(t: SpqrTree, mu: int, start: int | None = None) -> list[tuple[int, int, int]]:
    """Skeleton edges of an S-node minus its reference edge, walked from a pole.

    Returns ``(skeleton edge index, from vertex, to vertex)`` triples.
    """
    nd = t.nodes[mu]
    L = len(nd.edges)
    r = nd.ref
    a, b = nd.cycle[r], nd.cycle[(r + 1) % L]
    # forward from b goes around to a
    seq = [((r + 1 + i) % L) for i in range(L - 1)]
    walk = [(i, nd.cycle[i], nd.cycle[(i + 1) % L]) for i in seq]
    if start is not None and start != b:
        walk = [(i, y, x) for i, x, y in reversed(walk)]
    return walk


@dataclass
class PropertyReport:
    ok: bool
    violations: list[str]


def check_3graph_properties(t: SpqrTree) -> PropertyReport:
    """Check T1-T3 and the no-adjacent-S/P rule on a rooted tree."""
    bad = []
    g = t.graph
    for nd in t.nodes:
        if nd.kind == Q:
            continue
        kinds = [t.nodes[c].kind for c in nd.children]
        par = t.nodes[nd.parent] if nd.parent is not None else None
        if par is not None and par.kind == nd.kind and nd.kind in (S, P):
            bad.append(f"adjacent {nd.kind}-nodes {par.id}, {nd.id}")
        if nd.kind == P:
            if len(nd.children) != 2 or S not in kinds or any(k not in (S, Q) for k in kinds):
                bad.append(f"T1: P-node {nd.id} children {kinds}")
            if nd.id == t.root_child and kinds != [S, S]:
                bad.append(f"T1: root-child P-node {nd.id} children {kinds}")
            if len(nd.edges) < 3:
                bad.append(f"P-node {nd.id} has {len(nd.edges)} edges")
        elif nd.kind == R:
            if any(k not in (S, Q) for k in kinds):
                bad.append(f"T2: R-node {nd.id} children {kinds}")
            sk = nx.MultiGraph()
            sk.add_edges_from((se.a, se.b) for se in nd.edges)
            if sk.number_of_nodes() >= 4 and nx.node_connectivity(nx.Graph(sk)) < 3:
                bad.append(f"R-node {nd.id} skeleton not triconnected")
        elif nd.kind == S:
            if len(nd.edges) < 3:
                bad.append(f"S-node {nd.id} skeleton shorter than 3")
            if t.is_inner(nd.id):
                chain = s_chain(t, nd.id)
                if nd.edges[chain[0][0]].virtual or nd.edges[chain[-1][0]].virtual:
                    bad.append(f"T3: S-node {nd.id} pole edge virtual")
                for (i, _, _), (j, _, _) in zip(chain, chain[1:]):
                    if nd.edges[i].virtual and nd.edges[j].virtual:
                        bad.append(f"T3: S-node {nd.id} adjacent virtual edges")
    # reconstruction
    es = subtree_edges(t, t.root_child) + [t.ref_edge]
    if sorted(es) != list(range(g.m)):
        bad.append("virtual-edge expansion does not reproduce the edge set")
    return PropertyReport(not bad, bad)


def skeleton_rotation(t: SpqrTree, mu: int) -> dict[int, list[int]]:
    """A planar rotation of an R/P skeleton: vertex -> skeleton edge indices clockwise."""
    nd = t.nodes[mu]
    if nd.kind == P:
        a = nd.edges[0].a
        b = nd.edges[0].other(a)
        idx = list(range(len(nd.edges)))
        return {a: idx, b: list(reversed(idx))}
    h = nx.Graph()
    emap = {}
    for i, se in enumerate(nd.edges):
        h.add_edge(se.a, se.b)
        emap[(min(se.a, se.b), max(se.a, se.b))] = i
    ok, cert = nx.check_planarity(h)
    if not ok:
        raise NotPlanar("skeleton not planar")
    rot = {}
    for v in sorted(h.nodes):
        rot[v] = [emap[(min(v, w), max(v, w))] for w in cert.neighbors_cw_order(v)]
    return rot


def skeleton_embeddings(t: SpqrTree, mu: int) -> list[dict[int, list[int]]]:
    """All skeleton embeddings: P permutes the non-reference edges, R flips."""
    nd = t.nodes[mu]
    if nd.kind == R:
        rot = skeleton_rotation(t, mu)
        return [rot, {v: list(reversed(r)) for v, r in rot.items()}]
    if nd.kind == P:
        a = nd.edges[0].a
        b = nd.edges[0].other(a)
        ref = nd.ref if nd.ref is not None else 0
        others = [i for i in range(len(nd.edges)) if i != ref]
        out = []
        for perm in itertools.permutations(others):
            order = [ref] + list(perm)
            out.append({a: order, b: [order[0]] + list(reversed(order[1:]))})
        return out
    return []
