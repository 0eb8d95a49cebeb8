"""Planar sites, unit disk graphs and shortest paths.

All distances are Euclidean.  Two distinct sites are adjacent iff their
distance is at most 1 (closed disk), and the edge weight is that distance.
"""
from __future__ import annotations

import heapq
import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Site:
    id: int
    pos: tuple[float, float]


@dataclass(eq=False)
class UnitDiskGraph:
    """Immutable unit disk graph over ``points`` (an ``(n, 2)`` float array).

    ``adjacency[s]`` is a list of ``(t, |st|)`` sorted by neighbor id.
    """

    points: np.ndarray
    adjacency: list[list[tuple[int, float]]]
    _nbr_sets: list[frozenset] = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def sites(self) -> list[Site]:
        return [Site(i, (float(x), float(y))) for i, (x, y) in enumerate(self.points)]

    def neighbors(self, s: int) -> frozenset:
        if self._nbr_sets is None:
            self._nbr_sets = [frozenset(t for t, _ in adj) for adj in self.adjacency]
        return self._nbr_sets[s]

    def is_edge(self, s: int, t: int) -> bool:
        return t in self.neighbors(s)

    def dist(self, s: int, t: int) -> float:
        """Euclidean distance |st|."""
        (x1, y1), (x2, y2) = self.points[s], self.points[t]
        return math.hypot(x1 - x2, y1 - y2)

    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2


@dataclass
class ShortestPathTree:
    source: int
    dist: np.ndarray
    parent: np.ndarray  # -1 for the source and unreachable sites

    def path_to(self, t: int) -> list[int]:
        """Tree path from the source to ``t`` (inclusive)."""
        if not math.isfinite(self.dist[t]):
            raise ValueError(f"site {t} unreachable from {self.source}")
        path = [t]
        while path[-1] != self.source:
            path.append(int(self.parent[path[-1]]))
        path.reverse()
        return path

    def children(self) -> list[list[int]]:
        kids: list[list[int]] = [[] for _ in range(len(self.dist))]
        for t, p in enumerate(self.parent):
            if p >= 0:
                kids[p].append(t)
        return kids


def as_points(sites) -> np.ndarray:
    """Accept a list of Site, an ``(n, 2)`` array, or a list of pairs."""
    if len(sites) and isinstance(sites[0], Site):
        ids = [s.id for s in sites]
        if sorted(ids) != list(range(len(ids))):
            raise ValueError("site ids must be unique and contiguous 0..n-1")
        pts = np.empty((len(sites), 2))
        for s in sites:
            pts[s.id] = s.pos
    else:
        pts = np.asarray(sites, dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(pts)):
        raise ValueError("site coordinates must be finite")
    return pts


def grid_buckets(points: np.ndarray, width: float) -> dict[tuple[int, int], list[int]]:
    cells: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, (x, y) in enumerate(points):
        cells[(math.floor(x / width), math.floor(y / width))].append(i)
    return cells


def build_udg(sites) -> UnitDiskGraph:
    """Unit disk graph with the closed condition ``|st| <= 1``.

    Coincident sites are adjacent with weight 0.
    """
    pts = as_points(sites)
    if len(pts) == 0:
        raise ValueError("need at least one site")
    cells = grid_buckets(pts, 1.0)
    adj: list[list[tuple[int, float]]] = [[] for _ in range(len(pts))]
    for (cx, cy), members in cells.items():
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                other = cells.get((cx + dx, cy + dy))
                if not other:
                    continue
                for s in members:
                    xs, ys = pts[s]
                    for t in other:
                        if t == s:
                            continue
                        w = math.hypot(xs - pts[t][0], ys - pts[t][1])
                        if w <= 1.0:
                            adj[s].append((t, w))
    for a in adj:
        a.sort()
    return UnitDiskGraph(pts, adj)


def shortest_paths(g: UnitDiskGraph, source: int) -> ShortestPathTree:
    """Dijkstra from ``source``.

    Ties in the queue are broken by site id and a parent is only replaced on a
    strict improvement, so the tree is reproducible.
    """
    n = g.n
    if not 0 <= source < n:
        raise IndexError(source)
    dist = np.full(n, math.inf)
    parent = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, s = heapq.heappop(heap)
        if done[s]:
            continue
        done[s] = True
        for t, w in g.adjacency[s]:
            nd = d + w
            if nd < dist[t]:
                dist[t] = nd
                parent[t] = s
                heapq.heappush(heap, (nd, t))
    return ShortestPathTree(source, dist, parent)


def all_shortest_paths(g: UnitDiskGraph) -> list[ShortestPathTree]:
    return [shortest_paths(g, s) for s in range(g.n)]


def components(g: UnitDiskGraph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest member."""
    seen = np.zeros(g.n, dtype=bool)
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y, _ in g.adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def is_connected(g: UnitDiskGraph) -> bool:
    return len(components(g)) == 1


def component_diameters(g: UnitDiskGraph, trees: list[ShortestPathTree] | None = None) -> list[float]:
    """Shortest-path diameter of each component, in ``components(g)`` order."""
    if trees is None:
        trees = all_shortest_paths(g)
    out = []
    for comp in components(g):
        out.append(max(float(trees[s].dist[comp].max()) for s in comp))
    return out


def graph_diameter(g: UnitDiskGraph, trees: list[ShortestPathTree] | None = None) -> float:
    """Maximum shortest-path distance, taken over components if disconnected."""
    return max(component_diameters(g, trees))


def density_upper_bound(sites) -> int:
    """Upper bound on the max number of sites in a unit disk.

    Any unit disk fits in a 3x3 block of unit grid cells, so the largest
    block count bounds the density.
    """
    pts = as_points(sites)
    if len(pts) == 0:
        return 0
    counts = {k: len(v) for k, v in grid_buckets(pts, 1.0).items()}
    best = 0
    for cx, cy in counts:
        for ax in (cx - 2, cx - 1, cx):
            for ay in (cy - 2, cy - 1, cy):
                total = sum(counts.get((ax + i, ay + j), 0) for i in range(3) for j in range(3))
                best = max(best, total)
    return best
