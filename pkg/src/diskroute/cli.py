"""``diskroute gen|build|route|verify``.

Exit codes: 0 ok, 1 usage, 2 invariant failure, 3 I/O or format error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

import numpy as np

from .density import ExtendedScheme, build_extended_scheme, route_extended
from .direct import DirectScheme, build_direct_scheme, route_direct
from .geom import build_udg, components, density_upper_bound, graph_diameter, shortest_paths
from .instances import GENERATORS, InstanceFormatError, generate, instance_hash, read_instance, write_instance
from .report import ReportRow, rows_to_csv, rows_to_json
from .router import route
from .scheme import RoutingScheme, build_scheme
from .serialize import SchemeFormatError, bundle_from_json, bundle_to_json

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _warn(msg):
    print(f"warning: {msg}", file=sys.stderr)


def _write(out, text):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def build_components(points, epsilon=1.0, c_override=None, alpha=200.0, density_threshold=24):
    """One scheme per connected component; returns ``[(site ids, scheme), ...]``."""
    g = build_udg(points)
    comps = components(g)
    if len(comps) > 1:
        _warn(f"instance has {len(comps)} components; building one scheme per component")
    out = []
    for sites in comps:
        sub = build_udg(points[sites])
        if sub.n == 1 or graph_diameter(sub) < 2:
            sc = build_direct_scheme(sub)
        elif density_upper_bound(sub.points) > density_threshold:
            sc = build_extended_scheme(sub, epsilon, alpha=alpha, c_override=c_override)
        else:
            sc = build_scheme(sub, epsilon, c_override=c_override, alpha=alpha)
        out.append((sites, sc))
    return out


def route_in(sc, g_local, s, t):
    if isinstance(sc, RoutingScheme):
        return route(sc, s, t)
    if isinstance(sc, DirectScheme):
        return route_direct(sc, s, t)
    if isinstance(sc, ExtendedScheme):
        return route_extended(sc, g_local, s, t)
    raise TypeError(type(sc).__name__)


def _mode(sc):
    return {RoutingScheme: "wspd", DirectScheme: "direct", ExtendedScheme: "extended"}[type(sc)]


def _parse_pairs(text, comps, n, seed):
    where = {}
    for ci, (sites, _) in enumerate(comps):
        for k, s in enumerate(sites):
            where[s] = (ci, k)
    if text == "all":
        return [(s, t) for sites, _ in comps for s in sites for t in sites if s != t]
    if text.isdigit():
        rng = random.Random(seed)
        big = [sites for sites, _ in comps if len(sites) > 1]
        if not big:
            return []
        out = []
        for _ in range(int(text)):
            sites = rng.choice(big)
            s, t = rng.sample(list(sites), 2)
            out.append((s, t))
        return out
    out = []
    for tok in text.split(","):
        try:
            s, t = (int(x) for x in tok.split(":"))
        except ValueError:
            raise UsageError(f"bad pair {tok!r}; use all, a count, or s:t,s:t") from None
        if not (0 <= s < n and 0 <= t < n):
            raise UsageError(f"pair {tok} out of range")
        if where[s][0] != where[t][0]:
            raise UsageError(f"sites {s} and {t} lie in different components")
        out.append((s, t))
    return out


def cmd_gen(args):
    pts = generate(args.generator, args.n, args.seed)
    if args.out:
        write_instance(args.out, pts)
    else:
        from .instances import format_instance
        sys.stdout.write(format_instance(pts))
    return EXIT_OK


def cmd_build(args):
    pts = read_instance(args.instance)
    t0 = time.perf_counter()
    comps = build_components(pts, args.eps, args.c, args.alpha, args.density_threshold)
    elapsed = time.perf_counter() - t0
    _write(args.out, bundle_to_json(comps, instance_hash(pts)))
    if args.report:
        row = _row(pts, comps, [], elapsed)
        Path(args.report).write_text(rows_to_json([row]))
    return EXIT_OK


def _row(pts, comps, records, elapsed):
    stats = [sc.stats for _, sc in comps]
    Ds = [sc.diameter if not isinstance(sc, ExtendedScheme) else sc.inner.diameter for _, sc in comps]
    cs = [sc.c for _, sc in comps if isinstance(sc, RoutingScheme)]
    cs += [sc.inner.c for _, sc in comps if isinstance(sc, ExtendedScheme) and isinstance(sc.inner, RoutingScheme)]
    ratios = [r["ratio"] for r in records if r["src"] != r["dst"]] or [1.0]
    modes = sorted({_mode(sc) for _, sc in comps})
    return ReportRow(
        instance=instance_hash(pts)[:12],
        n=len(pts),
        D=float(max(Ds)),
        density=density_upper_bound(pts),
        c=float(max(cs, default=0.0)),
        pairs=int(sum(s.get("num_pairs", 0) for s in stats)),
        max_stretch=float(max(ratios)),
        mean_stretch=float(np.mean(ratios)),
        max_table_bits=int(max(s.get("max_table_bits", 0) for s in stats)),
        max_label_bits=int(max(s.get("label_bits", 0) for s in stats)),
        max_header_bits=int(max((r["max_header_bits"] for r in records), default=0)),
        preprocess_seconds=float(elapsed),
        mode="+".join(modes),
    )


def cmd_route(args):
    pts = read_instance(args.instance)
    comps, h = bundle_from_json(Path(args.scheme).read_text())
    if h != instance_hash(pts):
        raise SchemeFormatError("scheme was built for a different instance (hash mismatch)")
    pairs = _parse_pairs(args.pairs, comps, len(pts), args.seed)
    where = {}
    for ci, (sites, _) in enumerate(comps):
        for k, s in enumerate(sites):
            where[s] = (ci, k)
    graphs = [build_udg(pts[sites]) for sites, _ in comps]
    records = []
    dcache = {}
    for s, t in pairs:
        ci, ls = where[s]
        _, lt = where[t]
        sites, sc = comps[ci]
        g = graphs[ci]
        tr = route_in(sc, g, ls, lt)
        if (ci, ls) not in dcache:
            dcache[(ci, ls)] = shortest_paths(g, ls).dist
        d = float(dcache[(ci, ls)][lt])
        records.append({
            "src": s, "dst": t, "path": [int(sites[x]) for x in tr.path],
            "d_rho": tr.distance, "d_opt": d, "ratio": 1.0 if s == t or d == 0 else tr.distance / d,
            "steps": tr.step_count, "max_header_bits": tr.max_header_bits,
        })
    row = _row(pts, comps, records, 0.0)
    if args.traces:
        Path(args.traces).write_text("\n".join(json.dumps(r) for r in records) + "\n")
    if args.format == "csv":
        _write(args.out, rows_to_csv([row]))
    else:
        _write(args.out, rows_to_json([row], traces=records))
    return EXIT_OK


def cmd_verify(args):
    from .scheme import RoutingScheme
    from .verify import run_suite

    pts = read_instance(args.instance)
    audited = None
    if args.scheme:
        comps, h = bundle_from_json(Path(args.scheme).read_text())
        if h != instance_hash(pts):
            raise SchemeFormatError("scheme was built for a different instance (hash mismatch)")
        audited = {tuple(sites): sc for sites, sc in comps if isinstance(sc, RoutingScheme)}
    g = build_udg(pts)
    failed = False
    for sites in components(g):
        sub = pts[sites]
        if len(sites) == 1:
            continue
        pairs = None
        if args.pairs != "all":
            rng = random.Random(args.seed)
            pairs = [tuple(rng.sample(range(len(sites)), 2)) for _ in range(int(args.pairs))]
        results = run_suite(sub, args.eps, args.c, args.alpha, pairs=pairs,
                            audited=audited.get(tuple(sites)) if audited else None,
                            extended=density_upper_bound(sub) > args.density_threshold or args.extended)
        for name, problems in results.items():
            status = "PASS" if not problems else f"FAIL ({len(problems)})"
            print(f"{status:<10} {name}")
            for p in problems[:5]:
                print(f"    witness: {p}")
            failed |= bool(problems)
    return EXIT_INVARIANT if failed else EXIT_OK


def make_parser():
    p = _Parser(prog="diskroute", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--eps", type=float, default=1.0)
        sp.add_argument("--c", type=float, default=None, help="override the separation parameter (>= 13)")
        sp.add_argument("--alpha", type=float, default=200.0)
        sp.add_argument("--density-threshold", type=int, default=24,
                        help="use the net-based extension above this density bound")

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("--generator", choices=GENERATORS, default="uniform-square")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("build", help="preprocess an instance into a scheme file")
    b.add_argument("instance")
    common(b)
    b.add_argument("--out")
    b.add_argument("--report", help="write a JSON report row with the preprocessing time")
    b.set_defaults(func=cmd_build)

    r = sub.add_parser("route", help="route pairs and report stretch")
    r.add_argument("scheme")
    r.add_argument("instance")
    r.add_argument("--pairs", default="all", help="all, a sample count, or s:t,s:t")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--format", choices=("csv", "json"), default="json")
    r.add_argument("--traces", help="also write one JSON trace record per line")
    r.add_argument("--out")
    r.set_defaults(func=cmd_route)

    v = sub.add_parser("verify", help="run the invariant suites")
    v.add_argument("instance")
    common(v)
    v.add_argument("--scheme", help="audit the tables of this scheme file")
    v.add_argument("--pairs", default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--extended", action="store_true", help="also run the net suites")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    if getattr(args, "c", None) is not None and args.c < 13:
        print("diskroute: error: --c must be at least 13", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"diskroute: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, InstanceFormatError, SchemeFormatError) as exc:
        print(f"diskroute: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
