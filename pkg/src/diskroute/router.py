"""The routing function and the driver that iterates it.

``route_step`` only reads the current site's table, the target label and the
header.  Local routing walks an Euler tour of growing tree components; global
routing recurses through stored middle sites using a stack of targets in the
header.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .geom import UnitDiskGraph, shortest_paths
from .scheme import RoutingScheme, SiteTable


class RoutingError(RuntimeError):
    pass


class HeaderError(RoutingError):
    pass


class StepLimitExceeded(RoutingError):
    def __init__(self, msg, trace):
        super().__init__(msg)
        self.trace = trace


@dataclass(frozen=True)
class Header:
    stack: tuple = ()
    level: int | None = None
    start_edge: tuple[int, int] | None = None  # (from label, to label)
    prev_vertex: int | None = None

    def clear_local(self) -> Header:
        return replace(self, level=None, start_edge=None, prev_vertex=None)

    def bits(self, lbits: int, vbits: int) -> int:
        b = len(self.stack) * lbits
        if self.level is not None:
            b += vbits
        if self.start_edge is not None:
            b += 2 * lbits
        if self.prev_vertex is not None:
            b += lbits
        return b


EMPTY_HEADER = Header()


@dataclass(frozen=True)
class StepResult:
    next_site: int
    next_target: int | None
    header: Header
    action: str  # deliver | pop | direct | push | local-init | local | local-restart


def _local_step(table: SiteTable, h: Header) -> tuple[int, Header, str]:
    me = table.label
    nbrs = table.local.tree_neighbors
    if h.start_edge is None:
        level = table.local.own_depth - 1
        cands = [x for x, lv in nbrs if lv == level]
        if len(cands) != 1:
            raise RoutingError(f"site {me}: no unique tree edge at level {level}")
        r = cands[0]
        return r, Header(h.stack, level, (me, r), me), "local-init"
    if h.level is None or h.prev_vertex is None:
        raise HeaderError("start edge set without level or previous vertex")
    labels = [x for x, _ in nbrs]
    try:
        i = labels.index(h.prev_vertex)
    except ValueError:
        raise HeaderError(f"previous vertex {h.prev_vertex} is not a tree neighbor of {me}") from None
    k = len(nbrs)
    for j in range(1, k + 1):
        r, lv = nbrs[(i - j) % k]
        if lv >= h.level:
            break
    else:
        raise HeaderError(f"site {me}: no tree edge of level >= {h.level}")
    level, action = h.level, "local"
    if (me, r) == h.start_edge:
        level -= 1
        action = "local-restart"
        if level < 0:
            raise RoutingError(f"Euler tour exhausted the whole tree at {me} without finding a pair")
    return r, Header(h.stack, level, h.start_edge, me), action


def step_on_table(table: SiteTable, target: int, h: Header) -> tuple[int, int | None, Header, str]:
    """One application of the routing function, in terms of labels only."""
    me = table.label
    if me == target:
        if not h.stack:
            return me, None, EMPTY_HEADER, "deliver"
        return me, h.stack[-1], Header(h.stack[:-1]), "pop"
    for e in table.entries:
        if e.covers(target):
            h = h.clear_local()
            if target in table.local.ud_neighbors:
                return target, target, h, "direct"
            if e.middle is None:
                raise RoutingError(f"site {me}: pair for target {target} has no middle site")
            return me, e.middle, replace(h, stack=h.stack + (target,)), "push"
    r, h2, action = _local_step(table, h)
    return r, target, h2, action


def route_step(scheme: RoutingScheme, s: int, target: int, h: Header) -> StepResult:
    if not 1 <= target <= scheme.n:
        raise ValueError(f"invalid target label {target}")
    nxt, tgt, hdr, action = step_on_table(scheme.tables[s], target, h)
    return StepResult(int(scheme.site_of_label[nxt]), tgt, hdr, action)


@dataclass
class LocalPhase:
    origin: int
    target: int  # site id
    distance: float = 0.0
    steps: int = 0


@dataclass
class RouteTrace:
    path: list[int]
    distance: float = 0.0
    step_count: int = 0
    max_header_bits: int = 0
    max_stack: int = 0
    events: list = field(default_factory=list)  # (kind, step, label, depth)
    phases: list[LocalPhase] = field(default_factory=list)
    delivered: bool = False


def stack_capacity(D: float) -> int:
    if D <= 1:
        return 2
    return math.ceil(math.log(D) / math.log(8 / 5)) + 2


def default_step_limit(scheme: RoutingScheme) -> int:
    return 50 * scheme.n * stack_capacity(scheme.diameter)


def route(scheme: RoutingScheme, s: int, t: int, step_limit: int | None = None) -> RouteTrace:
    """Iterate the routing function from ``s`` toward ``t`` until delivery."""
    if step_limit is None:
        step_limit = default_step_limit(scheme)
    pts = scheme.points
    lbits = scheme.label_bits
    vbits = scheme.stats.get("level_bits", 1)
    trace = RouteTrace([s])
    target = int(scheme.labels[t])
    h = EMPTY_HEADER
    cur = s
    phase = None
    while True:
        if trace.step_count >= step_limit:
            raise StepLimitExceeded(f"route {s}->{t} exceeded {step_limit} steps", trace)
        res = route_step(scheme, cur, target, h)
        trace.step_count += 1
        depth = len(res.header.stack)
        if res.action in ("deliver", "pop"):
            trace.events.append(("arrive", trace.step_count, int(scheme.labels[cur]), len(h.stack)))
        if res.action == "pop":
            trace.events.append(("pop", trace.step_count, res.next_target, depth))
        elif res.action == "push":
            trace.events.append(("push", trace.step_count, res.header.stack[-1], depth - 1))
        if res.action == "deliver":
            trace.delivered = True
            break
        step_len = 0.0
        if res.next_site != cur:
            (x1, y1), (x2, y2) = pts[cur], pts[res.next_site]
            step_len = math.hypot(x1 - x2, y1 - y2)
            trace.distance += step_len
            trace.path.append(res.next_site)
        if res.action == "local-init":
            phase = LocalPhase(cur, int(scheme.site_of_label[target]))
            trace.phases.append(phase)
        if res.header.start_edge is not None and phase is not None:
            phase.distance += step_len
            phase.steps += 1
        else:
            phase = None
        trace.max_header_bits = max(trace.max_header_bits, res.header.bits(lbits, vbits))
        trace.max_stack = max(trace.max_stack, depth)
        cur, target, h = res.next_site, res.next_target, res.header
    if cur != t or h.stack:
        raise RoutingError(f"route {s}->{t} ended at {cur} with stack {h.stack}")
    return trace


def check_stack_discipline(trace: RouteTrace) -> list[str]:
    """Every push is matched by a pop of the same label, and the packet next
    arrives at that label with the stack back at its pre-push depth."""
    problems = []
    open_pushes = []
    awaiting = []  # (label, depth) after a pop
    for kind, step, label, depth in trace.events:
        if kind == "push":
            # a popped target pushed again is still pending under the new push
            if awaiting and awaiting[-1] == (label, depth):
                awaiting.pop()
            open_pushes.append((label, depth))
        elif kind == "pop":
            if not open_pushes:
                problems.append(f"step {step}: pop of {label} without push")
                continue
            pl, pd = open_pushes.pop()
            if pl != label or pd != depth:
                problems.append(f"step {step}: popped {label}@{depth}, expected {pl}@{pd}")
            awaiting.append((label, depth))
        elif kind == "arrive":
            if awaiting and awaiting[-1][0] == label:
                al, ad = awaiting.pop()
                if ad != depth:
                    problems.append(f"step {step}: reached {label} with depth {depth}, expected {ad}")
    if open_pushes:
        problems.append(f"unmatched pushes: {open_pushes}")
    if awaiting:
        problems.append(f"popped targets never reached: {awaiting}")
    return problems


@dataclass
class StretchRecord:
    src: int
    dst: int
    path: list[int]
    d_rho: float
    d_opt: float
    ratio: float
    steps: int
    max_header_bits: int

    def to_json(self) -> dict:
        return {"src": self.src, "dst": self.dst, "path": self.path, "d_rho": self.d_rho,
                "d_opt": self.d_opt, "ratio": self.ratio, "steps": self.steps,
                "max_header_bits": self.max_header_bits}


def measure_stretch(scheme, g: UnitDiskGraph, pairs, dist: np.ndarray | None = None,
                    router=None) -> list[StretchRecord]:
    """Route each ``(s, t)`` and compare with Dijkstra distances.

    ``router(scheme, s, t)`` defaults to :func:`route`; pairs with ``s == t``
    get ratio 1.
    """
    router = router or route
    cache = {}
    out = []
    for s, t in pairs:
        if dist is not None:
            d = float(dist[s, t])
        else:
            if s not in cache:
                cache[s] = shortest_paths(g, s).dist
            d = float(cache[s][t])
        tr = router(scheme, s, t)
        ratio = 1.0 if s == t or d == 0 else tr.distance / d
        out.append(StretchRecord(s, t, tr.path, tr.distance, d, ratio, tr.step_count, tr.max_header_bits))
    return out


def summarize(records: list[StretchRecord]) -> dict:
    ratios = [r.ratio for r in records if r.src != r.dst] or [1.0]
    return {"pairs": len(records), "max_ratio": max(ratios), "mean_ratio": float(np.mean(ratios)),
            "max_header_bits": max((r.max_header_bits for r in records), default=0),
            "max_steps": max((r.steps for r in records), default=0)}
