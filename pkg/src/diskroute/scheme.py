"""Preprocessing: labels, local tables and global tables for every site."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .geom import (
    ShortestPathTree,
    UnitDiskGraph,
    all_shortest_paths,
    build_udg,
    graph_diameter,
    is_connected,
)
from .heap import PairingHeap
from .hierarchy import DisconnectedError, Hierarchy, build_emst, build_hierarchy
from .wspd import Wspd, WspdPair, build_wspd

DEFAULT_ALPHA = 200.0
MIN_C = 13.0


class LocalTable(NamedTuple):
    tree_neighbors: tuple  # ((label, level), ...) counterclockwise
    ud_neighbors: frozenset  # labels of all unit disk neighbors
    own_depth: int


class GlobalEntry(NamedTuple):
    lo: int
    hi: int
    middle: int | None  # label of the middle site, None if rep(v) is a neighbor

    def covers(self, label: int) -> bool:
        return self.lo <= label <= self.hi


class SiteTable(NamedTuple):
    label: int
    local: LocalTable
    entries: tuple  # GlobalEntry, ...


@dataclass(eq=False)
class RoutingScheme:
    c: float
    epsilon: float
    alpha: float
    diameter: float
    points: np.ndarray
    labels: np.ndarray  # site -> label
    tables: list[SiteTable]
    stats: dict = field(default_factory=dict)
    artifacts: dict | None = field(default=None, repr=False)

    def __post_init__(self):
        self.site_of_label = np.zeros(len(self.labels) + 1, dtype=np.int64)
        self.site_of_label[self.labels] = np.arange(len(self.labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def label_bits(self) -> int:
        return label_bits(self.n)


def label_bits(n: int) -> int:
    return max(1, math.ceil(math.log2(n + 1)))


def choose_c(epsilon: float, D: float, alpha: float = DEFAULT_ALPHA) -> float:
    """``max(13, (alpha / epsilon) * log2 D)``."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if D < 2:
        raise ValueError(f"diameter {D} < 2: use direct small-diameter routing")
    return max(MIN_C, alpha / epsilon * math.log2(D))


def _middle_key(spt: ShortestPathTree, m: int, t: int):
    dm = spt.dist[m]
    return (max(dm, spt.dist[t] - dm), dm, m)


def middle_site(spt: ShortestPathTree, target: int) -> int:
    """Scan the tree path to ``target`` for the vertex minimizing the larger of
    its distances to the two ends; ties go to the vertex nearer the source,
    then to the smaller id."""
    path = spt.path_to(target)
    return min(path, key=lambda m: _middle_key(spt, m, target))


def compute_middle_sites_fast(g: UnitDiskGraph, s: int, spt: ShortestPathTree | None = None,
                              stats: dict | None = None) -> np.ndarray:
    """Middle sites from ``s`` to every reachable target in one postorder pass.

    Each vertex melds its children's max-heaps (keyed by distance from ``s``),
    inserts itself, and then settles the farthest pending targets for which
    its parent is not a better middle.  Returns ``middle[t]`` (-1 if
    unreachable).
    """
    if spt is None:
        from .geom import shortest_paths
        spt = shortest_paths(g, s)
    if stats is None:
        stats = {"insert": 0, "extract": 0, "meld": 0}
    n = len(spt.dist)
    middle = np.full(n, -1, dtype=np.int64)
    kids = spt.children()
    heaps: list[PairingHeap | None] = [None] * n
    order = []
    stack = [s]
    while stack:
        x = stack.pop()
        order.append(x)
        stack.extend(kids[x])
    dist = spt.dist
    for m in reversed(order):
        hm = PairingHeap(stats)
        for ch in kids[m]:
            hm.meld(heaps[ch])
            heaps[ch] = None
        hm.insert((dist[m], m), m)
        parent = int(spt.parent[m])
        while hm:
            _, t = hm.peek()
            if parent >= 0 and _middle_key(spt, parent, t) < _middle_key(spt, m, t):
                break
            hm.extract_max()
            middle[t] = m
        heaps[m] = hm
    return middle


def assign_pairs(w: Wspd, h: Hierarchy) -> list[list[WspdPair]]:
    """Distribute oriented pairs ``(u, v)`` round-robin over ``S_u`` in label order."""
    per_site: list[list[WspdPair]] = [[] for _ in range(len(h.leaf_of))]
    served = {}
    for p in w.pairs:
        for q in (p, p.reversed()):
            u = q.u
            k = served.get(u.id, 0)
            served[u.id] = k + 1
            site = int(h.site_of_label[u.interval[0] + k % u.size])
            per_site[site].append(q)
    return per_site


def _table_bits(table: SiteTable, lbits: int, vbits: int) -> tuple[int, int]:
    local = len(table.local.tree_neighbors) * (lbits + vbits) + len(table.local.ud_neighbors) * lbits + vbits
    glob = sum(2 * lbits + 1 + (lbits if e.middle is not None else 0) for e in table.entries)
    return local, glob


def build_scheme(sites, epsilon: float = 1.0, c_override: float | None = None,
                 alpha: float = DEFAULT_ALPHA) -> RoutingScheme:
    """Full preprocessing pipeline over a connected unit disk graph.

    ``sites`` may be a prebuilt :class:`UnitDiskGraph`.  With no override,
    ``c = choose_c(epsilon, max(D, 2), alpha)``.
    """
    g = sites if isinstance(sites, UnitDiskGraph) else build_udg(sites)
    if c_override is not None and c_override < MIN_C:
        raise ValueError(f"c_override must be at least {MIN_C}")
    if not is_connected(g):
        raise DisconnectedError("build_scheme needs a connected unit disk graph")
    trees = all_shortest_paths(g)
    D = graph_diameter(g, trees)
    c = c_override if c_override is not None else choose_c(epsilon, max(D, 2.0), alpha)

    emst = build_emst(g)
    h = build_hierarchy(emst)
    w = build_wspd(h, c)
    assigned = assign_pairs(w, h)
    labels = h.labels

    heap_stats = {"insert": 0, "extract": 0, "meld": 0}
    middles = {}
    tables = []
    for r in range(g.n):
        nbrs = g.neighbors(r)
        local = LocalTable(
            tuple((int(labels[x]), emst.level(r, x)) for x in emst.neighbors[r]),
            frozenset(int(labels[x]) for x in nbrs),
            h.leaf_of[r].depth,
        )
        entries = []
        for q in assigned[r]:
            target = q.rep_v
            mid = None
            if target not in nbrs:
                if r not in middles:
                    middles[r] = compute_middle_sites_fast(g, r, trees[r], heap_stats)
                mid = int(labels[middles[r][target]])
            entries.append(GlobalEntry(q.v.interval[0], q.v.interval[1], mid))
        tables.append(SiteTable(int(labels[r]), local, tuple(entries)))

    lbits = label_bits(g.n)
    vbits = max(1, math.ceil(math.log2(h.height + 1)))
    sizes = [_table_bits(t, lbits, vbits) for t in tables]
    stats = {
        "n": g.n,
        "num_pairs": len(w),
        "height": h.height,
        "max_degree": emst.max_degree(),
        "label_bits": lbits,
        "level_bits": vbits,
        "max_local_bits": max(a for a, _ in sizes),
        "max_global_bits": max(b for _, b in sizes),
        "max_table_bits": max(a + b for a, b in sizes),
        "max_entries": max(len(t.entries) for t in tables),
        "heap_ops": heap_stats,
    }
    artifacts = {"graph": g, "trees": trees, "emst": emst, "hierarchy": h, "wspd": w,
                 "assigned": assigned, "middles": middles}
    return RoutingScheme(float(c), float(epsilon), float(alpha), float(D), g.points,
                         labels, tables, stats, artifacts)
