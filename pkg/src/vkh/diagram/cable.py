"""Blackboard-framed cabling D_k of a diagram."""

from __future__ import annotations

from vkh.diagram.core import Crossing, HalfEdge, VirtualDiagram, id_key


def _port(k: int, slot: int, j: int):
    """Grid position and grid slot of the j-th copy (from the left, facing out) at a slot."""
    if slot == 0:
        return (k - 1 - j, 0), 0
    if slot == 2:
        return (j, k - 1), 2
    if slot == 1:
        return (k - 1, k - 1 - j), 1
    return (0, j), 3


def cable(d: VirtualDiagram, k: int) -> VirtualDiagram:
    """k parallel copies of every component, parallel in the blackboard framing.

    Each crossing becomes a k-by-k grid of crossings: copies of the
    under-strand run through slots 0/2 of a column, copies of the
    over-strand through slots 1/3 of a row.  Every grid crossing inherits the
    source sign, since all copies run parallel to their source strand.
    """
    if k < 1:
        raise ValueError("cable multiplicity must be positive")
    if k == 1:
        return d

    def gid(cid, x, y):
        return f"{cid}/{x}/{y}"

    crossings, edges = [], []
    for c in d.crossings:
        for x in range(k):
            for y in range(k):
                crossings.append(Crossing(gid(c.id, x, y), c.sign))
                if y + 1 < k:
                    edges.append((HalfEdge(gid(c.id, x, y), 2), HalfEdge(gid(c.id, x, y + 1), 0)))
                if x + 1 < k:
                    edges.append((HalfEdge(gid(c.id, x, y), 1), HalfEdge(gid(c.id, x + 1, y), 3)))
    for a, b in d.edges:
        for j in range(k):
            (xa, ya), sa = _port(k, a.slot, j)
            (xb, yb), sb = _port(k, b.slot, k - 1 - j)
            edges.append((HalfEdge(gid(a.crossing, xa, ya), sa), HalfEdge(gid(b.crossing, xb, yb), sb)))

    order = sorted(
        (c.id for c in crossings),
        key=lambda g: (id_key(g.rsplit("/", 2)[0]),) + tuple(int(t) for t in g.rsplit("/", 2)[1:]),
    )
    names = {g: str(i + 1) for i, g in enumerate(order)}
    return VirtualDiagram(
        tuple(Crossing(names[c.id], c.sign) for c in crossings),
        tuple((HalfEdge(names[a.crossing], a.slot), HalfEdge(names[b.crossing], b.slot)) for a, b in edges),
        d.free_loops * k,
    )
