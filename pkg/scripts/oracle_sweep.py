"""Compare the solver with the brute-force oracle over the small-graph corpus.

Global mode is checked for every graph; edge mode for every edge of graphs up
to ``edge_max_n``.  Mismatches are printed and written to results/.
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from bendmin.corpus import corpus
from bendmin.dp import bend_min_global, bend_min_ref_edge
from bendmin.oracle import brute_min_bends, brute_min_bends_edge


@dataclass
class SweepConfig:
    max_n: int = 8
    edge_max_n: int = 6
    out: str = "results/oracle_sweep.json"


def run(cfg: SweepConfig) -> dict:
    t = time.perf_counter()
    graphs = corpus(cfg.max_n, 1)
    glob_bad, edge_bad, pairs = [], [], 0
    for g in graphs:
        got, want = bend_min_global(g).bends, brute_min_bends(g)
        if got != want:
            glob_bad.append({"edges": g.edges, "got": got, "oracle": want})
        if g.n <= cfg.edge_max_n:
            for e in range(g.m):
                pairs += 1
                got, want = bend_min_ref_edge(g, e).bends, brute_min_bends_edge(g, e)
                if got != want:
                    edge_bad.append({"edges": g.edges, "edge": e, "got": got, "oracle": want})
    res = {"config": asdict(cfg), "graphs": len(graphs), "edge_pairs": pairs,
           "global_mismatches": glob_bad, "edge_mismatches": edge_bad,
           "seconds": time.perf_counter() - t}
    print(f"global: {len(graphs)} graphs, {len(glob_bad)} mismatches")
    print(f"edge:   {pairs} (graph, edge) pairs, {len(edge_bad)} mismatches")
    for row in edge_bad[:10]:
        print("  ", row)
    return res


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=SweepConfig.max_n)
    ap.add_argument("--edge-max-n", type=int, default=SweepConfig.edge_max_n)
    ap.add_argument("--out", default=SweepConfig.out)
    a = ap.parse_args()
    cfg = SweepConfig(a.max_n, a.edge_max_n, a.out)
    res = run(cfg)
    with open(cfg.out, "w") as fh:
        json.dump(res, fh, indent=1, default=list)
