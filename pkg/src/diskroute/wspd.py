"""Well-separated pair decomposition over the hierarchical decomposition.

Pairs are produced by the Callahan-Kosaraju refinement with hierarchy nodes in
place of quadtree cells.  A pair ``(u, v)`` is accepted once

    (c + 2) * max(|S_u| - 1, |S_v| - 1) <= |rep(u) rep(v)|

where ``rep`` is the minimum-label site of a node.  Each stored pair is
unordered and serves both orientations; diagonal pairs ``(s, s)`` are not
represented.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .hierarchy import Hierarchy, HierarchyNode


@dataclass(frozen=True, eq=False)
class WspdPair:
    u: HierarchyNode
    v: HierarchyNode

    @property
    def rep_u(self) -> int:
        return self.u.rep

    @property
    def rep_v(self) -> int:
        return self.v.rep

    def reversed(self) -> WspdPair:
        return WspdPair(self.v, self.u)


@dataclass(eq=False)
class Wspd:
    pairs: list[WspdPair]
    c: float
    hierarchy: Hierarchy
    per_node_count: Counter = field(default_factory=Counter)

    def __len__(self):
        return len(self.pairs)

    def dump(self) -> str:
        """``|S_u| |S_v| rep_u rep_v sep_lhs sep_rhs`` per pair."""
        pts = self.hierarchy.points
        out = []
        for p in self.pairs:
            lhs, rhs = separation_sides(p.u, p.v, self.c, pts)
            out.append(f"{p.u.size} {p.v.size} {p.rep_u} {p.rep_v} {lhs!r} {rhs!r}")
        return "\n".join(out) + "\n"


def separation_sides(u: HierarchyNode, v: HierarchyNode, c: float, points: np.ndarray):
    k = max(u.size - 1, v.size - 1)
    (x1, y1), (x2, y2) = points[u.rep], points[v.rep]
    return (c + 2) * k, math.hypot(x1 - x2, y1 - y2)


def separated_exact(k: int, c: float, p, q) -> bool:
    """``(c + 2) k <= |pq|`` decided in rational arithmetic on the float inputs."""
    if k == 0:
        return True
    lhs = (Fraction(c) + 2) * k
    dx = Fraction(float(p[0])) - Fraction(float(q[0]))
    dy = Fraction(float(p[1])) - Fraction(float(q[1]))
    return lhs * lhs <= dx * dx + dy * dy


def is_well_separated(u: HierarchyNode, v: HierarchyNode, c: float, points: np.ndarray) -> bool:
    k = max(u.size - 1, v.size - 1)
    if k == 0:
        return True
    lhs, rhs = separation_sides(u, v, c, points)
    if abs(lhs - rhs) > 1e-9 * max(1.0, rhs):
        return lhs <= rhs
    return separated_exact(k, c, points[u.rep], points[v.rep])


def build_wspd(h: Hierarchy, c: float) -> Wspd:
    if c < 1:
        raise ValueError("separation parameter must be at least 1")
    if h.labels is None:
        raise ValueError("hierarchy must be labeled")
    pts = h.points
    pairs: list[WspdPair] = []
    count: Counter = Counter()
    # explicit stack, processed in LIFO order; children pushed reversed so the
    # output order matches a left-to-right recursive traversal
    stack = [(h.root, h.root)]
    while stack:
        u, v = stack.pop()
        if u is v:
            if u.is_leaf:
                continue
            a, b = u.children
            stack.extend([(a, b), (b, b), (a, a)])
        elif is_well_separated(u, v, c, pts):
            pairs.append(WspdPair(u, v))
            count[u.id] += 1
            count[v.id] += 1
        elif u.size >= v.size:
            a, b = u.children
            stack.extend([(b, v), (a, v)])
        else:
            a, b = v.children
            stack.extend([(u, b), (u, a)])
    return Wspd(pairs, c, h, count)


def find_representing_pair(w: Wspd, s: int, t: int) -> tuple[WspdPair, bool]:
    """Scan for the pair with ``s`` in one side and ``t`` in the other.

    Returns ``(pair, reversed)`` where ``reversed`` is True when ``s`` lies in
    the stored pair's ``v`` side.  Debug/test helper: linear in the number of
    pairs.
    """
    if s == t:
        raise ValueError("diagonal pairs are not represented")
    hits = []
    for p in w.pairs:
        su, sv = set(p.u.sites), set(p.v.sites)
        if s in su and t in sv:
            hits.append((p, False))
        if s in sv and t in su:
            hits.append((p, True))
    if len(hits) != 1:
        raise LookupError(f"{len(hits)} pairs represent ({s}, {t})")
    return hits[0]


def representation_counts(w: Wspd) -> np.ndarray:
    """``counts[s, t]`` = number of oriented pairs representing ``(s, t)``.

    Uses each node's member list, not its label interval.
    """
    n = len(w.hierarchy.leaf_of)
    counts = np.zeros((n, n), dtype=np.int64)
    for p in w.pairs:
        su, sv = np.array(p.u.sites), np.array(p.v.sites)
        counts[np.ix_(su, sv)] += 1
        counts[np.ix_(sv, su)] += 1
    return counts
