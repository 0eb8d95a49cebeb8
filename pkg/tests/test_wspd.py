import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import floyd_warshall
from diskroute.geom import build_udg, is_connected
from diskroute.hierarchy import HierarchyNode, build_emst, build_hierarchy
from diskroute.wspd import build_wspd, find_representing_pair, is_well_separated
from diskroute.verify import check_separation, check_wspd_lemmas, check_wspd_partition


def hierarchy_for(points):
    return build_hierarchy(build_emst(build_udg(points)))


def fake_node(size, rep):
    v = HierarchyNode(0, 0, list(range(rep, rep + size)))
    v._rep = rep
    return v


def test_singletons_always_separated():
    pts = np.array([[0, 0], [1e-3, 0]])
    assert is_well_separated(fake_node(1, 0), fake_node(1, 1), 1e6, pts)


@pytest.mark.parametrize("gap, expect", [(6.0, True), (5.9, False)])
def test_separation_arithmetic(gap, expect):
    pts = np.zeros((5, 2))
    pts[3] = (gap, 0)
    u, v = fake_node(3, 0), fake_node(2, 3)
    assert is_well_separated(u, v, 1.0, pts) is expect


def test_two_sites_single_pair():
    w = build_wspd(hierarchy_for([(0, 0), (1, 0)]), 2.0)
    assert len(w) == 1
    p = w.pairs[0]
    assert (p.u.size, p.v.size) == (1, 1)


@pytest.mark.parametrize("n", [5, 12, 25])
def test_huge_c_gives_all_singletons(random_instance, n):
    pts = random_instance(n, seed=n)
    D = floyd_warshall(pts).max()
    w = build_wspd(hierarchy_for(pts), c=max(n + 1.0, D + 1))
    assert len(w) == n * (n - 1) // 2
    assert all(p.u.size == 1 and p.v.size == 1 for p in w.pairs)


def test_partition_random_pairs(random_instance):
    pts = random_instance(30, seed=2)
    w = build_wspd(hierarchy_for(pts), 2.0)
    rng = random.Random(0)
    for _ in range(200):
        s, t = rng.sample(range(30), 2)
        matches = [(p, p.u, p.v) for p in w.pairs if s in p.u.sites and t in p.v.sites]
        matches += [(p, p.v, p.u) for p in w.pairs if s in p.v.sites and t in p.u.sites]
        assert len(matches) == 1
        pair, rev = find_representing_pair(w, s, t)
        assert pair is matches[0][0]
    assert check_separation(w) == []


def test_find_pair_orientation():
    w = build_wspd(hierarchy_for([(0, 0), (1, 0)]), 2.0)
    (p1, r1), (p2, r2) = find_representing_pair(w, 0, 1), find_representing_pair(w, 1, 0)
    assert p1 is p2 and r1 != r2
    with pytest.raises(ValueError):
        find_representing_pair(w, 0, 0)


def test_broken_partition_is_reported(random_instance):
    w = build_wspd(hierarchy_for(random_instance(20, seed=1)), 2.0)
    w.pairs.append(w.pairs[0])
    p = w.pairs[0]
    with pytest.raises(LookupError):
        find_representing_pair(w, p.u.sites[0], p.v.sites[0])
    assert check_wspd_partition(w)


@pytest.mark.parametrize("seed", range(3))
@pytest.mark.parametrize("c", [1.0, 2.0, 13.0])
def test_exhaustive_partition_and_lemmas(random_instance, seed, c):
    pts = random_instance(120, seed=seed)
    w = build_wspd(hierarchy_for(pts), c)
    assert check_wspd_partition(w) == []
    assert check_separation(w) == []
    assert check_wspd_lemmas(w, floyd_warshall(pts)) == []


@pytest.mark.parametrize("c", [13.0, 40.0])
def test_chain_lemmas(unit_chain, c):
    pts = unit_chain(150)
    w = build_wspd(hierarchy_for(pts), c)
    assert check_wspd_partition(w) == []
    dist = np.abs(np.arange(150)[:, None] - np.arange(150)[None, :]).astype(float)
    assert check_wspd_lemmas(w, dist) == []
    assert any(p.u.size > 1 for p in w.pairs)


def test_per_node_counts_consistent(random_instance):
    w = build_wspd(hierarchy_for(random_instance(50, seed=5)), 2.0)
    expect = {}
    for p in w.pairs:
        for v in (p.u, p.v):
            expect[v.id] = expect.get(v.id, 0) + 1
    assert dict(w.per_node_count) == expect


def test_dump_fields(random_instance):
    w = build_wspd(hierarchy_for(random_instance(15, seed=0)), 2.0)
    lines = w.dump().splitlines()
    assert len(lines) == len(w)
    for line, p in zip(lines, w.pairs):
        su, sv, ru, rv, lhs, rhs = line.split()
        assert (int(su), int(sv), int(ru), int(rv)) == (p.u.size, p.v.size, p.rep_u, p.rep_v)
        assert float(lhs) <= float(rhs)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.floats(0, 3), st.floats(0, 3)), min_size=2, max_size=30),
       st.sampled_from([1.0, 2.0, 5.0]))
def test_partition_property(pts, c):
    pts = np.array(pts, dtype=float)
    if not is_connected(build_udg(pts)):
        return
    w = build_wspd(hierarchy_for(pts), c)
    assert check_wspd_partition(w) == []
    assert check_separation(w) == []
