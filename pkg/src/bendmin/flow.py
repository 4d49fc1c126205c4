"""Min-cost flow with lower bounds.

The production path uses the OR-Tools cost-scaling solver; a HiGHS linear
program (network matrices are totally unimodular, so vertex solutions are
integral) is kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import coo_matrix


@dataclass
class FlowNetwork:
    supply: dict = field(default_factory=dict)  # node -> supply (negative = demand)
    arcs: list = field(default_factory=list)  # (tail, head, capacity, cost, tag, lower)

    def add_node(self, x, supply: int = 0) -> None:
        self.supply[x] = self.supply.get(x, 0) + supply

    def add_arc(self, tail, head, capacity: float, cost: float, tag=None, lower: int = 0) -> int:
        self.supply.setdefault(tail, 0)
        self.supply.setdefault(head, 0)
        self.arcs.append((tail, head, capacity, cost, tag, lower))
        return len(self.arcs) - 1

    def add_convex_arc(self, tail, head, table, tag=None) -> None:
        """Unit arcs pricing the k-th unit at ``table[k] - table[k - 1]``."""
        steps = [table[k] - table[k - 1] for k in range(1, len(table))]
        if any(b < a for a, b in zip(steps, steps[1:])):
            raise ValueError(f"cost table {table} is not convex")
        for c in steps:
            self.add_arc(tail, head, 1, c, tag)


@dataclass(frozen=True)
class FlowResult:
    cost: int
    flow: tuple[int, ...]


class ReusableFlow:
    """A network built once in the OR-Tools solver and re-solved for
    different supplies (the arcs stay fixed)."""

    def __init__(self, net: FlowNetwork):
        from ortools.graph.python import min_cost_flow

        self.net = net
        self.idx = {x: i for i, x in enumerate(net.supply)}
        self.base = [net.supply[x] for x in self.idx]
        self.mcf = min_cost_flow.SimpleMinCostFlow()
        self.feasible = True
        self.fixed_cost = 0
        big = sum(abs(v) for v in self.base) + sum(a[5] for a in net.arcs) + 8
        for a, b, cap, cost, _tag, lower in net.arcs:
            cap = big if cap == float("inf") else int(cap)
            if cap < lower:
                self.feasible = False
            # a lower bound is pre-routed and removed from the capacity
            self.base[self.idx[a]] -= lower
            self.base[self.idx[b]] += lower
            self.fixed_cost += lower * cost
            self.mcf.add_arc_with_capacity_and_unit_cost(self.idx[a], self.idx[b], max(0, cap - lower), int(cost))

    def _run(self, delta: dict) -> bool:
        supply = list(self.base)
        for x, d in delta.items():
            supply[self.idx[x]] += d
        if not self.feasible or sum(supply) != 0:
            return False
        if not self.net.arcs:
            return all(v == 0 for v in supply)
        for i, v in enumerate(supply):
            self.mcf.set_node_supply(i, v)
        return self.mcf.solve() == self.mcf.OPTIMAL

    def cost(self, delta: dict | None = None) -> int | None:
        if not self._run(delta or {}):
            return None
        if not self.net.arcs:
            return 0
        return int(self.mcf.optimal_cost()) + int(self.fixed_cost)

    def solve(self, delta: dict | None = None) -> FlowResult | None:
        if not self._run(delta or {}):
            return None
        arcs = self.net.arcs
        if not arcs:
            return FlowResult(0, ())
        flow = tuple(int(self.mcf.flow(j)) + arcs[j][5] for j in range(len(arcs)))
        return FlowResult(int(self.mcf.optimal_cost()) + int(self.fixed_cost), flow)


def solve(net: FlowNetwork) -> FlowResult | None:
    """Minimum-cost flow meeting every supply exactly, or ``None``."""
    if sum(net.supply.values()) != 0:
        return None
    return ReusableFlow(net).solve()


def solve_lp(net: FlowNetwork) -> FlowResult | None:
    """The same problem as a HiGHS linear program."""
    if sum(net.supply.values()) != 0:
        return None
    nodes = list(net.supply)
    idx = {x: i for i, x in enumerate(nodes)}
    m = len(net.arcs)
    if m == 0:
        return FlowResult(0, ()) if all(s == 0 for s in net.supply.values()) else None
    rows, cols, vals = [], [], []
    for j, (a, b, *_) in enumerate(net.arcs):
        rows += [idx[a], idx[b]]
        cols += [j, j]
        vals += [1.0, -1.0]
    A = coo_matrix((vals, (rows, cols)), shape=(len(nodes), m)).tocsr()
    b = np.array([net.supply[x] for x in nodes], dtype=float)
    c = np.array([arc[3] for arc in net.arcs], dtype=float)
    bounds = [(arc[5], arc[2]) for arc in net.arcs]
    res = linprog(c, A_eq=A, b_eq=b, bounds=bounds, method="highs-ds")
    if res.status != 0:
        return None
    x = np.rint(res.x).astype(int)
    if np.any(np.abs(A @ x - b) > 0):
        raise ArithmeticError("flow solution is not integral")
    return FlowResult(int(round(float(c @ x))), tuple(int(v) for v in x))
