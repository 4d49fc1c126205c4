"""Runtime of edge and global mode on random 3-connected cubic planar graphs.

Prints one row per size and the log-log slopes; writes results/scaling.json.
"""

from __future__ import annotations

import argparse
import gc
import json
import math
import os
import time
from dataclasses import asdict, dataclass

from bendmin.corpus import random_cubic_planar
from bendmin.dp import SolverConfig, bend_min_global, bend_min_ref_edge


@dataclass
class ScalingConfig:
    sizes: tuple = (250, 500, 1000, 2000)
    seed: int = 7
    validate: bool = True
    edge_repeats: int = 3  # edge runs are sub-second; keep the best of a few
    out: str = "results/scaling.json"


def slope(xs, ys) -> float:
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    return sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / sum((a - mx) ** 2 for a in lx)


def timed(fn, *args):
    """Wall time of one call with the collector paused, as timeit does, so
    unrelated live objects in the process do not skew the measurement."""
    gc.collect()
    was = gc.isenabled()
    gc.disable()
    try:
        t = time.perf_counter()
        out = fn(*args)
        return out, time.perf_counter() - t
    finally:
        if was:
            gc.enable()


def run(cfg: ScalingConfig) -> dict:
    rows = []
    solver = SolverConfig(validate=cfg.validate)
    for n in cfg.sizes:
        g = random_cubic_planar(n, cfg.seed)
        t_edge = math.inf
        for _ in range(cfg.edge_repeats):
            edge, dt = timed(bend_min_ref_edge, g, 0, solver)
            t_edge = min(t_edge, dt)
        glob, t_glob = timed(bend_min_global, g, solver)
        rows.append({"n": n, "edge_bends": edge.bends, "global_bends": glob.bends,
                     "edge_s": t_edge, "global_s": t_glob})
        print(f"n={n:5d}  edge {t_edge:8.3f}s ({edge.bends} bends)  "
              f"global {t_glob:8.3f}s ({glob.bends} bends)", flush=True)
    ns = [r["n"] for r in rows]
    res = {
        "config": asdict(cfg),
        "rows": rows,
        "edge_slope": slope(ns, [r["edge_s"] for r in rows]),
        "global_slope": slope(ns, [r["global_s"] for r in rows]),
    }
    print(f"log-log slope: edge {res['edge_slope']:.2f}, global {res['global_slope']:.2f}")
    return res


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=list(ScalingConfig.sizes))
    p.add_argument("--seed", type=int, default=ScalingConfig.seed)
    p.add_argument("--out", default=ScalingConfig.out)
    a = p.parse_args()
    res = run(ScalingConfig(sizes=tuple(a.sizes), seed=a.seed, out=a.out))
    os.makedirs(os.path.dirname(a.out) or ".", exist_ok=True)
    with open(a.out, "w", encoding="utf-8") as fh:
        json.dump(res, fh, indent=2)


if __name__ == "__main__":
    main()
