"""Instance files and seeded instance generators.

File format: first line ``n``, then ``n`` lines ``id x y``.  Coordinates are
written with ``repr`` so a read-back is exact.
"""
from __future__ import annotations

import hashlib
import math
from pathlib import Path

import numpy as np

from .geom import build_udg, is_connected

GENERATORS = ("chain", "uniform-square", "clustered", "grid", "strip")


class InstanceFormatError(ValueError):
    pass


def format_instance(points: np.ndarray) -> str:
    lines = [str(len(points))]
    lines += [f"{i} {float(x)!r} {float(y)!r}" for i, (x, y) in enumerate(points)]
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> np.ndarray:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows:
        raise InstanceFormatError("empty instance")
    try:
        n = int(rows[0][0])
        if len(rows) - 1 != n:
            raise InstanceFormatError(f"header says {n} sites, found {len(rows) - 1}")
        pts = np.empty((n, 2))
        seen = set()
        for r in rows[1:]:
            i, x, y = int(r[0]), float(r[1]), float(r[2])
            if not 0 <= i < n or i in seen:
                raise InstanceFormatError(f"bad or duplicate site id {i}")
            seen.add(i)
            pts[i] = (x, y)
    except (IndexError, ValueError) as exc:
        if isinstance(exc, InstanceFormatError):
            raise
        raise InstanceFormatError(str(exc)) from exc
    if not np.all(np.isfinite(pts)):
        raise InstanceFormatError("non-finite coordinate")
    return pts


def write_instance(path, points) -> None:
    Path(path).write_text(format_instance(np.asarray(points, dtype=float)))


def read_instance(path) -> np.ndarray:
    return parse_instance(Path(path).read_text())


def instance_hash(points) -> str:
    return hashlib.sha256(format_instance(np.asarray(points, dtype=float)).encode()).hexdigest()


def chain(n: int) -> np.ndarray:
    return np.c_[np.arange(n, dtype=float), np.zeros(n)]


def _uniform_square(n, rng):
    side = math.sqrt(n) / 2
    return rng.uniform(0, side, size=(n, 2))


def _strip(n, rng):
    # about 4 sites per unit area in a band of width 1.5
    return np.c_[rng.uniform(0, n / 6, n), rng.uniform(0, 1.5, n)]


def _grid(n, rng):
    k = math.ceil(math.sqrt(n))
    idx = np.arange(n)
    base = np.c_[idx % k, idx // k] * 0.9
    return base + rng.uniform(-0.01, 0.01, size=(n, 2))


def _clustered(n, rng, cluster_size=30, radius=0.004):
    k = max(1, math.ceil(n / cluster_size))
    centers = [np.zeros(2)]
    for _ in range(k - 1):
        ang = rng.uniform(0, 2 * math.pi)
        step = rng.uniform(0.7, 1.006)
        centers.append(centers[-1] + step * np.array([math.cos(ang), math.sin(ang)]))
    pts = []
    for i in range(n):
        r = radius * math.sqrt(rng.uniform())
        a = rng.uniform(0, 2 * math.pi)
        pts.append(centers[i % k] + r * np.array([math.cos(a), math.sin(a)]))
    return np.array(pts)


_MAKERS = {"uniform-square": _uniform_square, "strip": _strip, "grid": _grid, "clustered": _clustered}


def generate(kind: str, n: int, seed: int = 0, max_tries: int = 200) -> np.ndarray:
    """Seeded instance whose unit disk graph is connected.

    Random generators resample until connected; raises after ``max_tries``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if kind == "chain":
        return chain(n)
    if kind not in _MAKERS:
        raise ValueError(f"unknown generator {kind!r}; choose from {GENERATORS}")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        pts = _MAKERS[kind](n, rng)
        if is_connected(build_udg(pts)):
            return pts
    raise RuntimeError(f"no connected {kind} instance with n={n} after {max_tries} tries")
