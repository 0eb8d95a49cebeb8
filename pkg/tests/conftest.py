import math

import numpy as np
import pytest

from diskroute.instances import generate


def bellman_ford_all_pairs(points):
    """Repeated relaxation to a fixpoint over the closed unit-disk edges."""
    n = len(points)
    diff = points[:, None, :] - points[None, :, :]
    w = np.sqrt((diff ** 2).sum(-1))
    edge = (w <= 1.0) & ~np.eye(n, dtype=bool)
    dist = np.where(edge, w, math.inf)
    np.fill_diagonal(dist, 0.0)
    while True:
        # d[s, t] <- min_k d[s, k] + w[k, t]
        step = np.min(dist[:, :, None] + np.where(edge, w, math.inf)[None, :, :], axis=1)
        new = np.minimum(dist, step)
        if np.array_equal(new, dist):
            return dist
        dist = new


def floyd_warshall(points):
    n = len(points)
    dist = np.full((n, n), math.inf)
    for i in range(n):
        dist[i, i] = 0.0
        for j in range(n):
            if i != j:
                d = math.dist(points[i], points[j])
                if d <= 1.0:
                    dist[i, j] = d
    for k in range(n):
        dist = np.minimum(dist, dist[:, k:k + 1] + dist[k:k + 1, :])
    return dist


@pytest.fixture
def unit_chain():
    def make(n):
        return np.c_[np.arange(n, dtype=float), np.zeros(n)]
    return make


@pytest.fixture
def random_instance():
    def make(n, seed=0, kind="uniform-square"):
        return generate(kind, n, seed)
    return make


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
