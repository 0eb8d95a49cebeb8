"""Euclidean minimum spanning tree and its balanced hierarchical decomposition.

The decomposition repeatedly removes an edge of the current subtree that
splits it into two parts of at least ``ceil((size - 1) / 6)`` sites each.
The level of an edge is the depth of the hierarchy node that removed it, and
a postorder traversal of the hierarchy yields interval labels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geom import UnitDiskGraph, components


class DisconnectedError(ValueError):
    pass


@dataclass(eq=False)
class Emst:
    points: np.ndarray
    edges: list[tuple[int, int]]  # (a, b) with a < b, in acceptance order; index = edge id
    neighbors: list[list[int]]  # counterclockwise about each site
    edge_level: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        self.edge_id = {e: i for i, e in enumerate(self.edges)}

    @property
    def n(self) -> int:
        return len(self.neighbors)

    def max_degree(self) -> int:
        return max((len(a) for a in self.neighbors), default=0)

    def level(self, a: int, b: int) -> int:
        return self.edge_level[(min(a, b), max(a, b))]

    def weight(self) -> float:
        return sum(math.dist(self.points[a], self.points[b]) for a, b in self.edges)


@dataclass(eq=False)
class HierarchyNode:
    id: int
    depth: int
    sites: list[int]
    parent: HierarchyNode | None = None
    children: tuple = ()
    edge: tuple[int, int] | None = None
    site: int | None = None
    interval: tuple[int, int] | None = None

    @property
    def size(self) -> int:
        return len(self.sites)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def rep(self) -> int:
        # min-label site; the interval's low end is always a member
        return self._rep

    def __repr__(self):
        return f"HierarchyNode(id={self.id}, depth={self.depth}, size={self.size}, interval={self.interval})"


@dataclass(eq=False)
class Hierarchy:
    root: HierarchyNode
    nodes: list[HierarchyNode]  # preorder
    leaf_of: list[HierarchyNode]
    tree: Emst
    labels: np.ndarray | None = None  # site -> label (1..n)
    site_of_label: np.ndarray | None = None  # label -> site, index 0 unused

    @property
    def height(self) -> int:
        return max(v.depth for v in self.nodes)

    @property
    def points(self) -> np.ndarray:
        return self.tree.points

    def ancestors(self, s: int) -> list[HierarchyNode]:
        """Leaf of ``s`` followed by its ancestors up to the root."""
        out = []
        v = self.leaf_of[s]
        while v is not None:
            out.append(v)
            v = v.parent
        return out

    def dump(self) -> str:
        """One line per node: ``depth size lo hi edge_u edge_v`` (-1 at leaves)."""
        lines = []
        for v in self.nodes:
            lo, hi = v.interval if v.interval else (-1, -1)
            eu, ev = v.edge if v.edge else (-1, -1)
            lines.append(f"{v.depth} {v.size} {lo} {hi} {eu} {ev}")
        return "\n".join(lines) + "\n"


def _ccw_order(points: np.ndarray, s: int, nbrs: list[int]) -> list[int]:
    x, y = points[s]
    return sorted(nbrs, key=lambda t: (math.atan2(points[t][1] - y, points[t][0] - x), t))


def build_emst(g: UnitDiskGraph) -> Emst:
    """Kruskal over the unit disk graph edges, ties by (length, min id, max id)."""
    comps = components(g)
    if len(comps) > 1:
        raise DisconnectedError(
            f"unit disk graph is disconnected: site {comps[0][0]} and site {comps[1][0]} "
            f"lie in different components ({len(comps)} components)"
        )
    cand = sorted((w, s, t) for s in range(g.n) for t, w in g.adjacency[s] if s < t)
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    for _, s, t in cand:
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[rs] = rt
            edges.append((s, t))
            if len(edges) == g.n - 1:
                break
    nbrs: list[list[int]] = [[] for _ in range(g.n)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    nbrs = [_ccw_order(g.points, s, ns) for s, ns in enumerate(nbrs)]
    return Emst(g.points, edges, nbrs)


def _subtree_sizes(tree: Emst, vertices: list[int], allowed: set[int]):
    """Root the subtree at its smallest vertex; return (order, parent, size)."""
    root = min(vertices)
    parent = {root: -1}
    order = [root]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in tree.neighbors[x]:
            if y in allowed and y not in parent:
                parent[y] = x
                order.append(y)
    if len(order) != len(vertices):
        raise ValueError("vertex set does not induce a connected subtree")
    size = {x: 1 for x in order}
    for x in reversed(order[1:]):
        size[parent[x]] += size[x]
    return order, parent, size


def balanced_edge(tree: Emst, vertices) -> tuple[int, int]:
    """Most balanced edge of the subtree induced by ``vertices``.

    Returns the edge maximizing the smaller side, ties by smaller edge id.
    """
    vertices = list(vertices)
    if len(vertices) < 2:
        raise ValueError("need at least two vertices")
    allowed = set(vertices)
    order, parent, size = _subtree_sizes(tree, vertices, allowed)
    total = len(vertices)
    best = None
    for x in order[1:]:
        e = (min(x, parent[x]), max(x, parent[x]))
        side = min(size[x], total - size[x])
        key = (-side, tree.edge_id[e])
        if best is None or key < best[0]:
            best = (key, e)
    return best[1]


def _split(tree: Emst, vertices: list[int], edge: tuple[int, int]) -> tuple[list[int], list[int]]:
    """Sites on the ``edge[0]`` side and on the ``edge[1]`` side."""
    allowed = set(vertices)
    a, b = edge
    side = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in tree.neighbors[x]:
            if y in allowed and y not in side and {x, y} != {a, b}:
                side.add(y)
                stack.append(y)
    first = sorted(side)
    second = sorted(allowed - side)
    return first, second


def build_hierarchy(tree: Emst) -> Hierarchy:
    """Recursive balanced decomposition; fills ``tree.edge_level`` and assigns labels."""
    n = tree.n
    root = HierarchyNode(0, 0, list(range(n)))
    nodes = [root]
    leaf_of: list[HierarchyNode | None] = [None] * n
    stack = [root]
    levels = {}
    while stack:
        v = stack.pop()
        if v.size == 1:
            v.site = v.sites[0]
            leaf_of[v.site] = v
            continue
        e = balanced_edge(tree, v.sites)
        v.edge = e
        levels[e] = v.depth
        kids = []
        for part in _split(tree, v.sites, e):
            c = HierarchyNode(0, v.depth + 1, part, parent=v)
            kids.append(c)
        v.children = tuple(kids)
        # push right child first so preorder visits the left child next
        stack.extend(reversed(kids))
    # renumber in preorder
    nodes = []
    stack = [root]
    while stack:
        v = stack.pop()
        v.id = len(nodes)
        nodes.append(v)
        stack.extend(reversed(v.children))
    tree.edge_level = levels
    h = Hierarchy(root, nodes, leaf_of, tree)
    assign_labels(h)
    return h


def assign_labels(h: Hierarchy) -> np.ndarray:
    """Postorder labeling 1..n; every node gets the interval of its leaves' labels."""
    n = len(h.leaf_of)
    labels = np.zeros(n, dtype=np.int64)
    counter = 1
    # iterative postorder
    stack = [(h.root, False)]
    while stack:
        v, expanded = stack.pop()
        if v.is_leaf:
            labels[v.site] = counter
            v.interval = (counter, counter)
            counter += 1
        elif expanded:
            v.interval = (v.children[0].interval[0], v.children[-1].interval[1])
        else:
            stack.append((v, True))
            for c in reversed(v.children):
                stack.append((c, False))
    site_of_label = np.zeros(n + 1, dtype=np.int64)
    site_of_label[labels] = np.arange(n)
    for v in h.nodes:
        v._rep = int(site_of_label[v.interval[0]])
    h.labels = labels
    h.site_of_label = site_of_label
    return labels


def height_bound(n: int) -> int:
    """Height guaranteed by the 11/12 shrink factor."""
    if n <= 1:
        return 0
    return math.ceil(math.log(n) / math.log(12 / 11)) + 1
