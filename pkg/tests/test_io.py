import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diskroute.direct import build_direct_scheme, route_direct
from diskroute.geom import build_udg, is_connected, shortest_paths
from diskroute.instances import (
    GENERATORS,
    InstanceFormatError,
    format_instance,
    generate,
    instance_hash,
    parse_instance,
)
from diskroute.report import ReportRow, rows_from_csv, rows_from_json, rows_to_csv, rows_to_json
from diskroute.serialize import SchemeFormatError, bundle_from_json, bundle_to_json

finite = st.floats(-1e6, 1e6, allow_nan=False)


@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=20))
def test_instance_round_trip(pts):
    pts = np.array(pts, dtype=float)
    assert np.array_equal(parse_instance(format_instance(pts)), pts)


@pytest.mark.parametrize("text", ["", "2\n0 0 0\n", "1\n0 0 nan\n", "2\n0 0 0\n0 1 1\n", "1\n0 x 0\n"])
def test_instance_format_errors(text):
    with pytest.raises(InstanceFormatError):
        parse_instance(text)


@pytest.mark.parametrize("kind", GENERATORS)
def test_generators_connected_and_seeded(kind):
    a = generate(kind, 90, 3)
    assert a.shape == (90, 2)
    assert is_connected(build_udg(a))
    assert instance_hash(a) == instance_hash(generate(kind, 90, 3))


def test_generator_errors():
    with pytest.raises(ValueError):
        generate("spiral", 10)
    with pytest.raises(ValueError):
        generate("chain", 0)


row = ReportRow("abc", 10, 3.1, 4, 13.0, 20, 1.0000000000000002, 1 / 3, 100, 4, 12, 0.1, "wspd")


def test_report_round_trips():
    assert rows_from_csv(rows_to_csv([row, row])) == [row, row]
    assert rows_from_json(rows_to_json([row], traces=[])) == [row]


def test_direct_scheme_exact():
    pts = np.array([[0, 0], [0.6, 0], [0.6, 0.6], [0.1, 0.9]])
    g = build_udg(pts)
    sc = build_direct_scheme(g)
    for s in range(4):
        d = shortest_paths(g, s).dist
        for t in range(4):
            assert route_direct(sc, s, t).distance == pytest.approx(d[t])


def test_bundle_round_trip_and_errors():
    g = build_udg([(0, 0), (0.5, 0)])
    text = bundle_to_json([([0, 1], build_direct_scheme(g))], "h")
    comps, h = bundle_from_json(text)
    assert h == "h" and comps[0][0] == [0, 1]
    assert np.array_equal(comps[0][1].next_hop, build_direct_scheme(g).next_hop)
    for bad in ("{", '{"format": "other"}', '{"format": "diskroute-scheme", "version": 99}'):
        with pytest.raises(SchemeFormatError):
            bundle_from_json(bad)
