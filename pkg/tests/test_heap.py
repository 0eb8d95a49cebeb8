import heapq
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diskroute.heap import PairingHeap


def test_empty_heap_errors():
    h = PairingHeap()
    assert not h
    with pytest.raises(IndexError):
        h.peek()
    with pytest.raises(IndexError):
        h.extract_max()


def test_meld_empties_other_and_shares_counts():
    stats = {"insert": 0, "extract": 0, "meld": 0}
    a, b = PairingHeap(stats), PairingHeap(stats)
    a.insert(1, "a")
    b.insert(5, "b")
    a.meld(b)
    assert len(a) == 2 and len(b) == 0
    assert a.peek() == (5, "b")
    assert stats == {"insert": 2, "extract": 0, "meld": 1}


@given(st.lists(st.integers(-1000, 1000)), st.lists(st.integers(-1000, 1000)))
def test_drains_in_descending_order(xs, ys):
    a, b = PairingHeap(), PairingHeap()
    for i, x in enumerate(xs):
        a.insert((x, i), i)
    for j, y in enumerate(ys):
        b.insert((y, len(xs) + j), j)
    a.meld(b)
    out = [a.extract_max()[0] for _ in range(len(a))]
    assert out == sorted(out, reverse=True)
    assert len(out) == len(xs) + len(ys)


def test_against_heapq_interleaved():
    rng = random.Random(7)
    h, ref = PairingHeap(), []
    for k in range(2000):
        if ref and rng.random() < 0.4:
            top = heapq.heappop(ref)
            assert h.extract_max()[0] == (-top[0], -top[1])
        else:
            key = (rng.random(), k)
            h.insert(key, k)
            heapq.heappush(ref, (-key[0], -key[1]))
    rest = []
    while h:
        rest.append(h.extract_max()[0])
    assert rest == sorted(rest, reverse=True)
    assert len(rest) == len(ref)
