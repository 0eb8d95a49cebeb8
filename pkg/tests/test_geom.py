import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bellman_ford_all_pairs, floyd_warshall
from diskroute.geom import (
    Site,
    build_udg,
    component_diameters,
    density_upper_bound,
    graph_diameter,
    shortest_paths,
)

coords = st.floats(min_value=-4, max_value=4, allow_nan=False, allow_infinity=False)
point_sets = st.lists(st.tuples(coords, coords), min_size=1, max_size=25)


def test_half_unit_edge():
    g = build_udg([(0, 0), (0.5, 0)])
    assert g.adjacency[0] == [(1, 0.5)]
    assert g.adjacency[1] == [(0, 0.5)]


def test_closed_disk_boundary():
    g = build_udg([(0, 0), (1.0, 0)])
    assert g.is_edge(0, 1)


def test_just_beyond_unit():
    g = build_udg([(0, 0), (1.0 + 1e-9, 0)])
    assert g.num_edges() == 0


def test_site_objects_and_contiguity():
    g = build_udg([Site(1, (0.5, 0)), Site(0, (0, 0))])
    assert g.points.tolist() == [[0, 0], [0.5, 0]]
    with pytest.raises(ValueError):
        build_udg([Site(0, (0, 0)), Site(2, (1, 0))])


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        build_udg([(0, 0), (math.nan, 1)])
    with pytest.raises(ValueError):
        build_udg([(0, math.inf)])


def test_coincident_sites_are_adjacent():
    g = build_udg([(2, 2), (2, 2)])
    assert g.adjacency[0] == [(1, 0.0)]


@given(point_sets)
def test_adjacency_matches_definition(pts):
    pts = np.array(pts, dtype=float)
    g = build_udg(pts)
    for s, t in itertools.permutations(range(len(pts)), 2):
        expect = math.hypot(*(pts[s] - pts[t])) <= 1.0
        assert g.is_edge(s, t) == expect
        assert g.is_edge(s, t) == g.is_edge(t, s)


def test_chain_distances(unit_chain):
    spt = shortest_paths(build_udg(unit_chain(4)), 0)
    assert spt.dist[3] == 3
    assert spt.path_to(3) == [0, 1, 2, 3]


def test_single_site():
    spt = shortest_paths(build_udg([(0, 0)]), 0)
    assert spt.dist.tolist() == [0.0]
    assert spt.parent.tolist() == [-1]


def test_unreachable_is_infinite():
    spt = shortest_paths(build_udg([(0, 0), (5, 0)]), 0)
    assert spt.dist[1] == math.inf


@pytest.mark.parametrize("seed", range(5))
def test_dijkstra_matches_relaxation_oracle(seed):
    pts = np.random.default_rng(seed).uniform(0, 2, (10, 2))
    g = build_udg(pts)
    oracle = bellman_ford_all_pairs(pts)
    for s in range(10):
        spt = shortest_paths(g, s)
        fin = np.isfinite(oracle[s])
        assert np.array_equal(fin, np.isfinite(spt.dist))
        assert np.allclose(spt.dist[fin], oracle[s][fin], rtol=0, atol=1e-12)
        for t in np.flatnonzero(fin):
            if t != s:
                p = spt.parent[t]
                assert spt.dist[t] == pytest.approx(spt.dist[p] + g.dist(p, t), abs=1e-12)


def test_shortest_path_tree_is_reproducible(random_instance):
    g = build_udg(random_instance(60, seed=4))
    a, b = shortest_paths(g, 7), shortest_paths(g, 7)
    assert np.array_equal(a.parent, b.parent)


@settings(max_examples=30, deadline=None)
@given(point_sets)
def test_graph_metric(pts):
    pts = np.array(pts, dtype=float)
    g = build_udg(pts)
    d = np.vstack([shortest_paths(g, s).dist for s in range(g.n)])
    n = g.n
    for a, b, c in itertools.product(range(min(n, 8)), repeat=3):
        if np.isfinite(d[a, b]) and np.isfinite(d[b, c]):
            assert d[a, c] <= d[a, b] + d[b, c] + 1e-9
    for s, t in itertools.product(range(n), repeat=2):
        assert d[s, t] >= math.hypot(*(pts[s] - pts[t])) - 1e-12


def test_diameter_chain(unit_chain):
    assert graph_diameter(build_udg(unit_chain(4))) == 3


def test_diameter_single():
    assert graph_diameter(build_udg([(1, 1)])) == 0


@pytest.mark.parametrize("seed", range(3))
def test_diameter_matches_floyd_warshall(random_instance, seed):
    pts = random_instance(20, seed=seed)
    fw = floyd_warshall(pts)
    assert graph_diameter(build_udg(pts)) == pytest.approx(fw.max(), abs=1e-9)


def test_diameter_per_component(unit_chain):
    pts = np.vstack([unit_chain(3), unit_chain(5) + [0, 10]])
    g = build_udg(pts)
    assert component_diameters(g) == [2, 4]
    assert graph_diameter(g) == 4


def test_density_coincident():
    assert density_upper_bound([(0.3, 0.3)] * 7) >= 7


def test_density_chain(unit_chain):
    assert density_upper_bound(unit_chain(10)) <= 12


def test_density_empty_regions():
    pts = [(0.1, 0.1), (0.2, 0.2), (50.5, 50.5)]
    assert density_upper_bound(pts) == 2


def true_density(pts):
    """Max closed unit disk count over every site and every two-point circle center."""
    centers = [p for p in pts]
    for p, q in itertools.combinations(pts, 2):
        d = math.dist(p, q)
        if 0 < d <= 2:
            mid = (p + q) / 2
            h = math.sqrt(max(0.0, 1 - (d / 2) ** 2))
            perp = np.array([-(q - p)[1], (q - p)[0]]) / d
            centers += [mid + h * perp, mid - h * perp]
    return max(int(np.sum(np.hypot(*(pts - c).T) <= 1 + 1e-9)) for c in centers)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 3), st.floats(0, 3)), min_size=1, max_size=15))
def test_density_bound_dominates_exhaustive(pts):
    pts = np.array(pts, dtype=float)
    assert density_upper_bound(pts) >= true_density(pts)
