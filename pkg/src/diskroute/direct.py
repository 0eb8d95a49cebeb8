"""Next-hop routing for graphs of diameter below 2.

In that regime the graph is tiny after netting, so every site simply stores
its first hop toward every other site.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geom import UnitDiskGraph, all_shortest_paths, graph_diameter, is_connected
from .hierarchy import DisconnectedError
from .router import RouteTrace, RoutingError


@dataclass(eq=False)
class DirectScheme:
    points: np.ndarray
    next_hop: np.ndarray  # next_hop[s, t]: first site after s on a shortest s-t path
    diameter: float
    stats: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def labels(self) -> np.ndarray:
        return np.arange(1, self.n + 1)


def build_direct_scheme(g: UnitDiskGraph) -> DirectScheme:
    if not is_connected(g):
        raise DisconnectedError("direct scheme needs a connected graph")
    trees = all_shortest_paths(g)
    n = g.n
    nxt = np.empty((n, n), dtype=np.int64)
    for t, spt in enumerate(trees):
        # parent pointers of the tree rooted at t lead every site toward t
        nxt[:, t] = spt.parent
        nxt[t, t] = t
    lbits = max(1, math.ceil(math.log2(n + 1)))
    stats = {"n": n, "label_bits": lbits, "max_table_bits": n * lbits, "mode": "direct"}
    return DirectScheme(g.points, nxt, graph_diameter(g, trees), stats)


def route_direct(scheme: DirectScheme, s: int, t: int, step_limit: int | None = None) -> RouteTrace:
    limit = step_limit or 2 * scheme.n + 2
    trace = RouteTrace([s])
    cur = s
    while cur != t:
        if trace.step_count >= limit:
            raise RoutingError(f"direct route {s}->{t} did not terminate")
        nxt = int(scheme.next_hop[cur, t])
        trace.distance += math.dist(scheme.points[cur], scheme.points[nxt])
        trace.path.append(nxt)
        trace.step_count += 1
        cur = nxt
    trace.step_count += 1  # final delivery step
    trace.delivered = True
    return trace
