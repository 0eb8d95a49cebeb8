"""Invariant checks.  Each check returns a list of failure strings with witnesses;
an empty list means the invariant holds."""
from __future__ import annotations

import math
from collections import Counter

import numpy as np

from .density import ExtendedScheme, route_extended
from .geom import UnitDiskGraph, all_shortest_paths, build_udg, shortest_paths
from .hierarchy import Emst, Hierarchy
from .router import RoutingError, check_stack_discipline, route
from .scheme import RoutingScheme, compute_middle_sites_fast, middle_site
from .wspd import Wspd, representation_counts, separated_exact

TOL = 1e-9
LOCAL_TOL = 1e-6


def distance_matrix(g: UnitDiskGraph, trees=None) -> np.ndarray:
    trees = trees or all_shortest_paths(g)
    return np.vstack([t.dist for t in trees])


def check_hierarchy(h: Hierarchy) -> list[str]:
    from .hierarchy import height_bound
    bad = []
    t: Emst = h.tree
    balanced = t.max_degree() <= 6
    for v in h.nodes:
        if v.is_leaf:
            continue
        a, b = v.children
        need = math.ceil((v.size - 1) / 6)
        if balanced and min(a.size, b.size) < need:
            bad.append(f"node {v.id}: children {a.size},{b.size} < {need}")
        if a.interval[1] + 1 != b.interval[0] or (a.interval[0], b.interval[1]) != v.interval:
            bad.append(f"node {v.id}: intervals {a.interval} {b.interval} vs {v.interval}")
        if t.level(*v.edge) != v.depth:
            bad.append(f"node {v.id}: edge {v.edge} level {t.level(*v.edge)} != depth {v.depth}")
        if balanced:
            for c in (a, b):
                if c.size > 11 / 12 * v.size + 1e-12:
                    bad.append(f"node {c.id}: size {c.size} > 11/12 of parent {v.size}")
    if len(t.edge_level) != len(t.edges):
        bad.append("not every tree edge has a level")
    # T_v is the component of the >= depth(v) forest containing v's sites
    for v in h.nodes:
        if v.is_leaf:
            continue
        members = set(v.sites)
        start = v.sites[0]
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in t.neighbors[x]:
                if y not in comp and t.level(x, y) >= v.depth:
                    comp.add(y)
                    stack.append(y)
        if comp != members:
            bad.append(f"node {v.id}: level-forest component differs from its site set")
    if balanced and h.height > height_bound(len(h.leaf_of)):
        bad.append(f"height {h.height} exceeds {height_bound(len(h.leaf_of))}")
    return bad


def check_wspd_partition(w: Wspd) -> list[str]:
    counts = representation_counts(w)
    np.fill_diagonal(counts, 1)
    bad = np.argwhere(counts != 1)
    return [f"pair ({s}, {t}) represented {counts[s, t]} times" for s, t in bad[:20]]


def check_separation(w: Wspd) -> list[str]:
    pts = w.hierarchy.points
    bad = []
    for p in w.pairs:
        k = max(p.u.size - 1, p.v.size - 1)
        if not separated_exact(k, w.c, pts[p.rep_u], pts[p.rep_v]):
            bad.append(f"pair sizes {p.u.size},{p.v.size} reps {p.rep_u},{p.rep_v} not {w.c}-separated")
    return bad


def check_wspd_lemmas(w: Wspd, dist: np.ndarray) -> list[str]:
    """c(|S_u|-1) <= d(s,t) for every represented pair, and singletons below c."""
    bad = []
    c = w.c
    for p in w.pairs:
        su, sv = np.array(p.u.sites), np.array(p.v.sites)
        block = dist[np.ix_(su, sv)]
        dmin = float(block.min())
        if c * (max(p.u.size, p.v.size) - 1) > dmin + TOL:
            bad.append(f"diameter lemma: sizes {p.u.size},{p.v.size} with d={dmin}")
        if dmin < c and (p.u.size > 1 or p.v.size > 1):
            i, j = np.unravel_index(int(block.argmin()), block.shape)
            bad.append(f"singleton lemma: ({su[i]}, {sv[j]}) d={dmin} < c={c} "
                       f"represented by sizes {p.u.size},{p.v.size}")
    return bad


def check_middle_sites(g: UnitDiskGraph, trees=None, sources=None) -> list[str]:
    """Heap-based middle sites equal the path scan for every reachable target."""
    trees = trees or all_shortest_paths(g)
    bad = []
    for s in sources if sources is not None else range(g.n):
        fast = compute_middle_sites_fast(g, s, trees[s])
        for t in range(g.n):
            if not math.isfinite(trees[s].dist[t]):
                continue
            m = middle_site(trees[s], t)
            if fast[t] != m:
                bad.append(f"middle({s}, {t}): fast {fast[t]} vs scan {m}")
    return bad


def check_middle_lemma(scheme: RoutingScheme, dist: np.ndarray) -> list[str]:
    """For every stored pair with middle m and every t on its far side with d >= c."""
    a = scheme.artifacts
    c = scheme.c
    bad = []
    if c < 13:
        return bad
    for r, pairs in enumerate(a["assigned"]):
        for q in pairs:
            if q.rep_v in a["graph"].neighbors(r):
                continue
            m = int(a["middles"][r][q.rep_v])
            for t in q.v.sites:
                d = dist[r, t]
                if d < c:
                    continue
                if dist[r, m] + dist[m, t] > (1 + 2 / c) * d + TOL:
                    bad.append(f"middle lemma (i): r={r} m={m} t={t}")
                if max(dist[r, m], dist[m, t]) > 5 / 8 * d + TOL:
                    bad.append(f"middle lemma (ii): r={r} m={m} t={t}")
    return bad


def _expected_entries(scheme: RoutingScheme):
    a = scheme.artifacts
    for r, pairs in enumerate(a["assigned"]):
        for k, q in enumerate(pairs):
            yield r, k, q


def check_tables(scheme: RoutingScheme, reference: RoutingScheme | None = None) -> list[str]:
    """Audit the global tables of ``scheme`` against the pairs of ``reference``.

    Every oriented pair must sit at its assigned site with interval ``I_v``, and
    for each site ``s`` of ``S_u`` and ``t`` of ``S_v`` the assigned site must have
    exactly one entry covering ``t``.
    """
    ref = reference or scheme
    labels = ref.labels
    bad = []
    for r, k, q in _expected_entries(ref):
        table = scheme.tables[r]
        if k >= len(table.entries):
            bad.append(f"site {r}: missing entry {k}")
            continue
        e = table.entries[k]
        if (e.lo, e.hi) != q.v.interval:
            bad.append(f"site {r} entry {k}: interval {(e.lo, e.hi)} != {q.v.interval}")
        for t in q.v.sites:
            hits = sum(x.covers(int(labels[t])) for x in table.entries)
            if hits != 1:
                bad.append(f"partition audit: pair ({q.u.sites[0]}, {t}) via site {r} has {hits} covering entries")
                break
    expected = Counter(r for r, _, _ in _expected_entries(ref))
    for r, t in enumerate(scheme.tables):
        if len(t.entries) != expected[r]:
            bad.append(f"site {r}: {len(t.entries)} entries, expected {expected[r]}")
    return bad


def stretch_bound(scheme: RoutingScheme) -> float:
    """Ratio bound ``1 + (alpha / c) log2 D`` from the stretch induction."""
    return 1 + scheme.alpha / scheme.c * math.log2(max(scheme.diameter, 1.0))


def check_routes(scheme: RoutingScheme, dist: np.ndarray, pairs, ratio_bound: float | None = None) -> dict:
    """Route every pair and check delivery, stack discipline, exactness below c,
    the local-routing cost bound and an optional ratio bound."""
    out = {"delivery": [], "stack": [], "exact_below_c": [], "local_cost": [], "stretch": []}
    c = scheme.c
    max_ratio = 1.0
    for s, t in pairs:
        try:
            tr = route(scheme, s, t)
        except RoutingError as exc:
            out["delivery"].append(f"({s}, {t}): {exc}")
            continue
        d = dist[s, t]
        out["stack"] += [f"({s}, {t}): {p}" for p in check_stack_discipline(tr)]
        if d < c and abs(tr.distance - d) > TOL:
            out["exact_below_c"].append(f"({s}, {t}): d_rho={tr.distance} d={d}")
        for ph in tr.phases:
            dd = dist[ph.origin, ph.target]
            if dd >= c and ph.distance > 48 / c * dd + LOCAL_TOL:
                out["local_cost"].append(f"({ph.origin}, {ph.target}): local {ph.distance} > 48/c*{dd}")
        if s != t and d > 0:
            ratio = tr.distance / d
            max_ratio = max(max_ratio, ratio)
            if ratio_bound is not None and ratio > ratio_bound + TOL:
                out["stretch"].append(f"({s}, {t}): ratio {ratio} > {ratio_bound}")
    out["max_ratio"] = max_ratio
    return out


def check_net(points: np.ndarray, nets, eps1: float) -> list[str]:
    bad = []
    R = np.array(nets.R)
    P = points[R]
    for i in range(len(R)):
        d = np.hypot(*(P[i + 1:] - P[i]).T)
        for j in np.flatnonzero(d < eps1):
            bad.append(f"packing: net sites {R[i]}, {R[i + 1 + j]} at {d[j]} < {eps1}")
    for s, (x, y) in enumerate(points):
        if np.hypot(P[:, 0] - x, P[:, 1] - y).min() > eps1:
            bad.append(f"covering: site {s} farther than {eps1} from the net")
    for (s, t), (p, q) in nets.bridges:
        hop = [math.dist(points[a], points[b]) for a, b in ((s, p), (p, q), (q, t))]
        if math.dist(points[s], points[t]) <= 1 or hop[0] > eps1 or hop[2] > eps1 or max(hop) > 1:
            bad.append(f"bridge {(s, t)} via {(p, q)} invalid: {hop}")
    return bad


def check_net_distances(g: UnitDiskGraph, nets, eps1: float, sample) -> list[str]:
    """d^Z(s,t) <= (1 + 12 eps1) d(s,t) + 12 eps1 for net pairs."""
    Z = np.array(nets.Z)
    gz = build_udg(g.points[Z])
    zi = {int(z): i for i, z in enumerate(Z)}
    bad = []
    cache_s, cache_z = {}, {}
    for s, t in sample:
        if s not in cache_s:
            cache_s[s] = shortest_paths(g, s).dist
            cache_z[s] = shortest_paths(gz, zi[s]).dist
        d, dz = cache_s[s][t], cache_z[s][zi[t]]
        if dz > (1 + 12 * eps1) * d + 12 * eps1 + TOL:
            bad.append(f"net distance ({s}, {t}): dZ={dz} d={d}")
    return bad


def check_extended_routes(ext: ExtendedScheme, g: UnitDiskGraph, dist: np.ndarray, pairs) -> dict:
    out = {"stretch": [], "max_ratio": 1.0}
    for s, t in pairs:
        d = dist[s, t]
        tr = route_extended(ext, g, s, t)
        if tr.path[0] != s or tr.path[-1] != t:
            out["stretch"].append(f"({s}, {t}): path ends {tr.path[0]}, {tr.path[-1]}")
        for a, b in zip(tr.path, tr.path[1:]):
            if not g.is_edge(a, b):
                out["stretch"].append(f"({s}, {t}): hop {a}-{b} is not an edge")
        if s == t or d == 0:
            continue
        ratio = tr.distance / d
        out["max_ratio"] = max(out["max_ratio"], ratio)
        bound = 1 + ext.epsilon if d > 1 else 1.0
        if ratio > bound + TOL:
            out["stretch"].append(f"({s}, {t}): ratio {ratio} > {bound}")
    return out


def run_suite(points: np.ndarray, epsilon: float = 1.0, c_override: float | None = None,
              alpha: float = 200.0, pairs=None, audited: RoutingScheme | None = None,
              extended: bool = False) -> dict[str, list[str]]:
    """Build a scheme for ``points`` and run every invariant suite.

    ``audited`` is an externally supplied scheme (e.g. loaded from a file)
    whose tables are audited against the fresh build.
    """
    from .scheme import build_scheme

    g = build_udg(points)
    trees = all_shortest_paths(g)
    dist = distance_matrix(g, trees)
    n = g.n
    if pairs is None:
        pairs = [(s, t) for s in range(n) for t in range(n)]
    results: dict[str, list[str]] = {}
    sc = build_scheme(g, epsilon, c_override=c_override, alpha=alpha)
    a = sc.artifacts
    results["hierarchy"] = check_hierarchy(a["hierarchy"])
    results["wspd_partition"] = check_wspd_partition(a["wspd"])
    results["wspd_separation"] = check_separation(a["wspd"])
    results["wspd_lemmas"] = check_wspd_lemmas(a["wspd"], dist)
    results["middle_sites"] = check_middle_sites(g, trees)
    results["middle_lemma"] = check_middle_lemma(sc, dist)
    results["table_audit"] = check_tables(audited if audited is not None else sc, sc)
    rt = check_routes(sc, dist, pairs, stretch_bound(sc))
    for k in ("delivery", "stack", "exact_below_c", "local_cost", "stretch"):
        results["route_" + k] = rt[k]
    if extended:
        from .density import build_extended_scheme
        ext = build_extended_scheme(g, epsilon, alpha=alpha)
        results["net"] = check_net(g.points, ext.nets, ext.epsilon1)
        R = ext.nets.R
        sample = [(s, t) for s in R[:20] for t in R if t != s]
        results["net_distance"] = check_net_distances(g, ext.nets, ext.epsilon1, sample)
        results["extended_routes"] = check_extended_routes(ext, g, dist, pairs)["stretch"]
    return results
