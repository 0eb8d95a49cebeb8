"""Meldable max-heap (pairing heap) with operation counters."""
from __future__ import annotations


class _Node:
    __slots__ = ("key", "item", "child", "sibling")

    def __init__(self, key, item):
        self.key = key
        self.item = item
        self.child = None
        self.sibling = None


def _link(a: _Node, b: _Node) -> _Node:
    if b.key > a.key:
        a, b = b, a
    b.sibling = a.child
    a.child = b
    return a


class PairingHeap:
    """Max-heap supporting O(1) ``meld``.

    ``stats`` is shared between heaps that are melded together, so one
    counter dictionary can track every operation of a whole computation.
    """

    def __init__(self, stats: dict | None = None):
        self.root: _Node | None = None
        self.size = 0
        self.stats = stats if stats is not None else {"insert": 0, "extract": 0, "meld": 0}

    def __len__(self):
        return self.size

    def __bool__(self):
        return self.size > 0

    def insert(self, key, item) -> None:
        self.stats["insert"] += 1
        node = _Node(key, item)
        self.root = node if self.root is None else _link(self.root, node)
        self.size += 1

    def peek(self):
        if self.root is None:
            raise IndexError("peek from empty heap")
        return self.root.key, self.root.item

    def meld(self, other: PairingHeap) -> PairingHeap:
        """Absorb ``other`` into this heap; ``other`` is left empty."""
        self.stats["meld"] += 1
        if other.root is not None:
            self.root = other.root if self.root is None else _link(self.root, other.root)
            self.size += other.size
        other.root, other.size = None, 0
        return self

    def extract_max(self):
        if self.root is None:
            raise IndexError("extract from empty heap")
        self.stats["extract"] += 1
        top = self.root
        # two-pass pairing of the root's children
        kids = []
        c = top.child
        while c is not None:
            nxt = c.sibling
            c.sibling = None
            kids.append(c)
            c = nxt
        paired = [_link(kids[i], kids[i + 1]) if i + 1 < len(kids) else kids[i]
                  for i in range(0, len(kids), 2)]
        root = None
        for node in reversed(paired):
            root = node if root is None else _link(root, node)
        self.root = root
        self.size -= 1
        return top.key, top.item
