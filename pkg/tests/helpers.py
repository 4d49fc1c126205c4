"""Shared builders and brute-force references for the test-suite."""

from __future__ import annotations

from bendmin.graph import build_graph


def chain_graph(pattern: str):
    """Cycle whose non-closing edges follow ``pattern`` ("q" = edge,
    "v" = diamond between consecutive path vertices); the closing edge is
    the last edge id.  Returns the graph and that edge."""
    edges = []
    n = len(pattern) + 1
    for i, c in enumerate(pattern):
        if c == "q":
            edges.append((i, i + 1))
        else:
            a, b = n, n + 1
            n += 2
            edges += [(i, a), (a, i + 1), (i, b), (b, i + 1)]
    edges.append((0, len(pattern)))
    g = build_graph(edges, n)
    return g, g.edge_id(0, len(pattern))


def brute_chain_costs(elements, kmax: int = 4) -> list[int]:
    """Cheapest cost per spirality 0..kmax from per-element turn options.

    ``elements`` holds ``("Q",)`` or ``("V", x_cost, d_cost)``.  A real edge
    with b <= 2 bends turns by any of -b, -b+2, .., b; a degree-two joint
    between two real edges turns by -1, 0 or 1; an X child (poles included)
    by -1..1, a D child by -2..2.
    """
    options = []
    for i, el in enumerate(elements):
        if el[0] == "Q":
            options.append([(t, b) for b in range(3) for t in range(-b, b + 1, 2)])
            if i + 1 < len(elements) and elements[i + 1][0] == "Q":
                options.append([(-1, 0), (0, 0), (1, 0)])
        else:
            _, x, d = el
            options.append([(t, x) for t in (-1, 0, 1)] + [(t, d) for t in range(-2, 3)])
    # exact min-plus convolution over the options (same result as trying
    # every combination, without the exponential blow-up)
    reach = {0: 0}
    for opts in options:
        nxt: dict = {}
        for s, c in reach.items():
            for t, dc in opts:
                if nxt.get(s + t, 1 << 30) > c + dc:
                    nxt[s + t] = c + dc
        reach = nxt
    return [min(reach.get(k, 1 << 30), reach.get(-k, 1 << 30)) for k in range(kmax + 1)]


def s_case(pattern: str, child_costs):
    """``candidates_S`` on a real S-chain whose P children get synthetic
    ``(X, D)`` tables, next to the brute-force reference."""
    from bendmin.dp import CandidateSet, candidates_S, chain_elements, compute_sets
    from bendmin.spqr import P, build_spqr

    g, ref = chain_graph(pattern)
    t = build_spqr(g, ref)
    sets = compute_sets(t)
    mu = t.root_child
    elements = chain_elements(t, mu)
    it = iter(child_costs)
    brute_in = []
    for el in elements:
        if el[0] == "V":
            x, d = next(it)
            sets[el[1]] = CandidateSet(P, (x, d))
            brute_in.append(("V", x, d))
        else:
            brute_in.append(("Q",))
    return candidates_S(t, mu, sets), brute_chain_costs(brute_in)
