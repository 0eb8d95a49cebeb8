"""JSON serialization of routing schemes.

A scheme file holds one scheme per connected component of the instance, the
component's site ids, and the hash of the instance it was built from.
"""
from __future__ import annotations

import json

import numpy as np

from .density import ExtendedScheme, NetSets
from .direct import DirectScheme
from .scheme import GlobalEntry, LocalTable, RoutingScheme, SiteTable

FORMAT = "diskroute-scheme"
VERSION = 1


class SchemeFormatError(ValueError):
    pass


def _stats(d):
    return json.loads(json.dumps(d))


def scheme_to_dict(sc) -> dict:
    if isinstance(sc, RoutingScheme):
        return {
            "kind": "wspd",
            "c": sc.c, "epsilon": sc.epsilon, "alpha": sc.alpha, "diameter": sc.diameter,
            "points": sc.points.tolist(),
            "labels": sc.labels.tolist(),
            "tables": [
                {
                    "label": t.label,
                    "tree": [list(x) for x in t.local.tree_neighbors],
                    "ud": sorted(t.local.ud_neighbors),
                    "depth": t.local.own_depth,
                    "entries": [[e.lo, e.hi, e.middle] for e in t.entries],
                }
                for t in sc.tables
            ],
            "stats": _stats(sc.stats),
        }
    if isinstance(sc, DirectScheme):
        return {"kind": "direct", "points": sc.points.tolist(), "next_hop": sc.next_hop.tolist(),
                "diameter": sc.diameter, "stats": _stats(sc.stats)}
    if isinstance(sc, ExtendedScheme):
        return {
            "kind": "extended",
            "inner": scheme_to_dict(sc.inner),
            "points": sc.points.tolist(),
            "z_sites": sc.z_sites.tolist(),
            "closest_net": sc.closest_net.tolist(),
            "labels": sc.labels.tolist(),
            "ud": [sorted(x) for x in sc.ud_neighbors],
            "epsilon": sc.epsilon, "epsilon1": sc.epsilon1,
            "nets": {"R": sc.nets.R, "bridges": [[list(a), list(b)] for a, b in sc.nets.bridges],
                     "Z": sc.nets.Z},
            "stats": _stats(sc.stats),
        }
    raise TypeError(f"cannot serialize {type(sc).__name__}")


def scheme_from_dict(d: dict):
    kind = d.get("kind")
    if kind == "wspd":
        tables = [
            SiteTable(
                t["label"],
                LocalTable(tuple(tuple(x) for x in t["tree"]), frozenset(t["ud"]), t["depth"]),
                tuple(GlobalEntry(*e) for e in t["entries"]),
            )
            for t in d["tables"]
        ]
        return RoutingScheme(d["c"], d["epsilon"], d["alpha"], d["diameter"],
                             np.array(d["points"], dtype=float).reshape(-1, 2),
                             np.array(d["labels"], dtype=np.int64), tables, d["stats"])
    if kind == "direct":
        return DirectScheme(np.array(d["points"], dtype=float).reshape(-1, 2),
                            np.array(d["next_hop"], dtype=np.int64), d["diameter"], d["stats"])
    if kind == "extended":
        nets = NetSets(d["nets"]["R"], [(tuple(a), tuple(b)) for a, b in d["nets"]["bridges"]],
                       d["nets"]["Z"])
        z_sites = np.array(d["z_sites"], dtype=np.int64)
        n = len(d["labels"])
        z_index = np.full(n, -1, dtype=np.int64)
        z_index[z_sites] = np.arange(len(z_sites))
        return ExtendedScheme(scheme_from_dict(d["inner"]), np.array(d["points"], dtype=float).reshape(-1, 2),
                              z_sites, z_index, np.array(d["closest_net"], dtype=np.int64),
                              np.array(d["labels"], dtype=np.int64), [frozenset(x) for x in d["ud"]],
                              d["epsilon"], d["epsilon1"], nets, d["stats"])
    raise SchemeFormatError(f"unknown scheme kind {kind!r}")


def bundle_to_json(components: list[tuple[list[int], object]], instance_hash: str) -> str:
    payload = {
        "format": FORMAT,
        "version": VERSION,
        "instance_hash": instance_hash,
        "components": [{"sites": list(map(int, sites)), "scheme": scheme_to_dict(sc)}
                       for sites, sc in components],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def bundle_from_json(text: str) -> tuple[list[tuple[list[int], object]], str]:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemeFormatError(str(exc)) from exc
    if d.get("format") != FORMAT:
        raise SchemeFormatError("not a diskroute scheme file")
    if d.get("version") != VERSION:
        raise SchemeFormatError(f"unsupported version {d.get('version')}")
    comps = [(c["sites"], scheme_from_dict(c["scheme"])) for c in d["components"]]
    return comps, d["instance_hash"]
