"""Routing on point sets of arbitrary density.

Sites are thinned to an eps1-net ``R``; for every pair of net sites that are
not adjacent but are linked through a short path of original sites, one bridge
``(p, q)`` is added.  The bounded-density scheme is built over
``Z = R + bridges`` and a packet travels ``s -> s' -> ... -> t' -> t`` where
``s'`` and ``t'`` are the net sites closest to ``s`` and ``t``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .direct import DirectScheme, build_direct_scheme, route_direct
from .geom import UnitDiskGraph, as_points, build_udg, graph_diameter, grid_buckets, is_connected
from .hierarchy import DisconnectedError
from .router import RouteTrace, route
from .scheme import DEFAULT_ALPHA, RoutingScheme, build_scheme

NET_SHRINK = 103


@dataclass
class NetSets:
    R: list[int]
    bridges: list[tuple[tuple[int, int], tuple[int, int]]]  # ((s, t), (p, q))
    Z: list[int]

    def dump(self) -> str:
        lines = ["R: " + " ".join(map(str, self.R))]
        lines += [f"{s} {t} {p} {q}" for (s, t), (p, q) in self.bridges]
        return "\n".join(lines) + "\n"


def _near(points, cells, width, x, y, radius):
    """Sites of a width-``width`` grid within ``radius`` (<= width) of (x, y)."""
    cx, cy = math.floor(x / width), math.floor(y / width)
    out = []
    for dx in (-1, 0, 1):
        for dy in (-1, 0, 1):
            for j in cells.get((cx + dx, cy + dy), ()):
                if math.hypot(points[j][0] - x, points[j][1] - y) <= radius:
                    out.append(j)
    return out


def build_net(sites, eps1: float) -> list[int]:
    """Greedy eps1-net in id order: a site joins unless a member is closer than eps1."""
    if eps1 <= 0:
        raise ValueError("eps1 must be positive")
    pts = as_points(sites)
    members: dict[tuple[int, int], list[int]] = {}
    R = []
    for i, (x, y) in enumerate(pts):
        cx, cy = math.floor(x / eps1), math.floor(y / eps1)
        blocked = False
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for j in members.get((cx + dx, cy + dy), ()):
                    if math.hypot(pts[j][0] - x, pts[j][1] - y) < eps1:
                        blocked = True
                        break
                if blocked:
                    break
            if blocked:
                break
        if not blocked:
            R.append(i)
            members.setdefault((cx, cy), []).append(i)
    return R


def find_bridges(sites, R: list[int], eps1: float) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """One bridge per neighboring net pair, the lexicographically smallest ``(p, q)``."""
    pts = as_points(sites)
    cells = grid_buckets(pts, eps1)
    reach = 1 + 2 * eps1
    rcells = grid_buckets(pts[R], reach)
    out = []
    for a, s in enumerate(R):
        xs, ys = pts[s]
        for b in _near(pts[R], rcells, reach, xs, ys, reach):
            t = R[b]
            if t <= s:
                continue
            if math.hypot(xs - pts[t][0], ys - pts[t][1]) <= 1.0:
                continue
            P = sorted(_near(pts, cells, eps1, xs, ys, eps1))
            Q = sorted(_near(pts, cells, eps1, pts[t][0], pts[t][1], eps1))
            found = None
            for p in P:
                for q in Q:
                    if p != q and math.hypot(pts[p][0] - pts[q][0], pts[p][1] - pts[q][1]) <= 1.0:
                        found = (p, q)
                        break
                if found:
                    break
            if found:
                out.append(((s, t), found))
    return out


def closest_net_sites(sites, R: list[int], eps1: float) -> np.ndarray:
    pts = as_points(sites)
    rc = grid_buckets(pts[R], eps1)
    out = np.empty(len(pts), dtype=np.int64)
    for i, (x, y) in enumerate(pts):
        cand = _near(pts[R], rc, eps1, x, y, eps1)
        if not cand:
            raise ValueError(f"site {i} is not covered by the net")
        out[i] = R[min(cand, key=lambda j: (math.hypot(pts[R[j]][0] - x, pts[R[j]][1] - y), R[j]))]
    return out


def build_net_sets(sites, eps1: float) -> NetSets:
    R = build_net(sites, eps1)
    bridges = find_bridges(sites, R, eps1)
    Z = set(R)
    for _, (p, q) in bridges:
        Z.update((p, q))
    return NetSets(R, bridges, sorted(Z))


@dataclass(eq=False)
class ExtendedScheme:
    inner: RoutingScheme | DirectScheme
    points: np.ndarray
    z_sites: np.ndarray  # Z index -> site id
    z_index: np.ndarray  # site id -> Z index or -1
    closest_net: np.ndarray  # site id -> nearest net site id
    labels: np.ndarray  # site id -> extended own label
    ud_neighbors: list[frozenset]  # per site, extended labels of its unit disk neighbors
    epsilon: float
    epsilon1: float
    nets: NetSets
    stats: dict

    @property
    def n(self) -> int:
        return len(self.points)


def build_extended_scheme(sites, epsilon: float, alpha: float = DEFAULT_ALPHA,
                          c_override: float | None = None) -> ExtendedScheme:
    g = sites if isinstance(sites, UnitDiskGraph) else build_udg(sites)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not is_connected(g):
        raise DisconnectedError("extended scheme needs a connected unit disk graph")
    eps1 = epsilon / NET_SHRINK
    nets = build_net_sets(g.points, eps1)
    z_sites = np.array(nets.Z, dtype=np.int64)
    gz = build_udg(g.points[z_sites])
    if gz.n == 1 or graph_diameter(gz) < 2:
        inner = build_direct_scheme(gz)
    else:
        inner = build_scheme(gz, eps1, c_override=c_override, alpha=alpha)
    z_index = np.full(g.n, -1, dtype=np.int64)
    z_index[z_sites] = np.arange(len(z_sites))
    labels = np.empty(g.n, dtype=np.int64)
    labels[z_sites] = inner.labels
    rest = [i for i in range(g.n) if z_index[i] < 0]
    labels[rest] = np.arange(len(z_sites) + 1, g.n + 1)
    closest = closest_net_sites(g.points, nets.R, eps1)
    ud = [frozenset(int(labels[t]) for t in g.neighbors(s)) for s in range(g.n)]
    lbits = max(1, math.ceil(math.log2(g.n + 1)))
    stats = dict(inner.stats)
    stats.update({
        "n": g.n,
        "net_size": len(nets.R),
        "num_bridges": len(nets.bridges),
        "z_size": len(nets.Z),
        "label_bits": 2 * lbits,  # own label plus nearest net label
        "mode": "extended",
    })
    return ExtendedScheme(inner, g.points, z_sites, z_index, closest, labels, ud,
                          float(epsilon), eps1, nets, stats)


def _route_inner(ext: ExtendedScheme, a: int, b: int) -> RouteTrace:
    za, zb = int(ext.z_index[a]), int(ext.z_index[b])
    if isinstance(ext.inner, DirectScheme):
        tr = route_direct(ext.inner, za, zb)
    else:
        tr = route(ext.inner, za, zb)
    tr.path = [int(ext.z_sites[x]) for x in tr.path]
    return tr


def route_extended(ext: ExtendedScheme, g: UnitDiskGraph, s: int, t: int) -> RouteTrace:
    """Direct hop if ``t`` is a neighbor, else ``s -> s' -> (inner route) -> t' -> t``."""
    if s == t:
        tr = RouteTrace([s], step_count=1, delivered=True)
        return tr
    if int(ext.labels[t]) in ext.ud_neighbors[s]:
        return RouteTrace([s, t], distance=math.dist(ext.points[s], ext.points[t]),
                          step_count=2, delivered=True)
    s1, t1 = int(ext.closest_net[s]), int(ext.closest_net[t])
    tr = _route_inner(ext, s1, t1)
    path = list(tr.path)
    dist = tr.distance
    steps = tr.step_count
    if s1 != s:
        path.insert(0, s)
        dist += math.dist(ext.points[s], ext.points[s1])
        steps += 1
    if t1 != t:
        path.append(t)
        dist += math.dist(ext.points[t1], ext.points[t])
        steps += 1
    return RouteTrace(path, dist, steps, tr.max_header_bits, tr.max_stack, tr.events, tr.phases, True)
