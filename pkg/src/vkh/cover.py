"""The orienting double cover of a diagram, built from a spanning forest of its frame."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from vkh.diagram.core import Crossing, HalfEdge, VirtualDiagram, frame_components
from vkh.errors import InvalidPath
from vkh.khovanov.homology import BettiTable
from vkh.khovanov.local import kh_table

GOOD, BAD = "good", "bad"


@dataclass(frozen=True)
class CyclePath:
    """A closed walk on the frame as (crossing, entry slot, exit slot) steps.

    The exit slot of each step is joined by a diagram edge to the entry slot
    of the next step, cyclically.
    """

    steps: tuple

    def edges(self):
        m = len(self.steps)
        for k in range(m):
            c, _, out = self.steps[k]
            nc, inn, _ = self.steps[(k + 1) % m]
            yield HalfEdge(c, out), HalfEdge(nc, inn)


def cycle_parity(d: VirtualDiagram, c: CyclePath) -> str:
    """'good' when the walk passes straight through crossings an even number of times."""
    if not c.steps:
        raise InvalidPath("a cycle needs at least one step")
    for cid, inn, out in c.steps:
        if cid not in d.signs:
            raise InvalidPath(f"unknown crossing {cid}")
        if not (0 <= inn < 4 and 0 <= out < 4) or inn == out:
            raise InvalidPath(f"bad slots {inn}->{out} at crossing {cid}")
    for a, b in c.edges():
        if d.partner.get(a) != b:
            raise InvalidPath(f"{a} and {b} are not joined by an edge")
    straight = sum(1 for _, inn, out in c.steps if (inn - out) % 4 == 2)
    return GOOD if straight % 2 == 0 else BAD


def spanning_forest(d: VirtualDiagram, seed=None) -> set:
    """Edges of a spanning forest of the frame (one tree per frame component).

    With a seed the tree is a random BFS tree from a random root with
    shuffled neighbour order; without one it is the BFS tree from the
    smallest crossing.
    """
    rng = random.Random(seed) if seed is not None else None
    by_crossing = {c: [] for c in d.crossing_ids}
    for e in d.edges:
        a, b = e
        by_crossing[a.crossing].append(e)
        if b.crossing != a.crossing:
            by_crossing[b.crossing].append(e)
    tree = set()
    for comp in frame_components(d):
        comp = sorted(comp, key=lambda c: d.crossing_ids.index(c))
        root = rng.choice(comp) if rng else comp[0]
        seen = {root}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            nbrs = list(by_crossing[v])
            if rng:
                rng.shuffle(nbrs)
            for e in nbrs:
                a, b = e
                w = b.crossing if a.crossing == v else a.crossing
                if w not in seen:
                    seen.add(w)
                    tree.add(e)
                    queue.append(w)
    return tree


def _tree_paths(d: VirtualDiagram, tree: set):
    """For every crossing, its parent edge toward the root of its tree."""
    up = {}
    adj = {c: [] for c in d.crossing_ids}
    for e in tree:
        a, b = e
        adj[a.crossing].append((b.crossing, a, b))
        adj[b.crossing].append((a.crossing, b, a))
    for root in d.crossing_ids:
        if root in up:
            continue
        up[root] = None
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, here, there in adj[v]:
                if w not in up:
                    up[w] = (there, here)  # from w's slot to v's slot
                    queue.append(w)
    return up


def fundamental_cycle(d: VirtualDiagram, tree: set, edge) -> CyclePath:
    """The closed walk formed by a non-tree edge and the tree path between its ends."""
    up = _tree_paths(d, tree)
    a, b = edge

    def to_root(v):
        path = [v]
        while up[path[-1]] is not None:
            path.append(up[path[-1]][1].crossing)
        return path

    pa, pb = to_root(a.crossing), to_root(b.crossing)
    on_a = set(pa)
    lca = next(v for v in pb if v in on_a)
    # walk: leave a along the edge, enter b, climb from b to lca, descend to a
    hops = []  # (from slot half-edge, to slot half-edge) along the walk after the edge
    v = b.crossing
    while v != lca:
        here, there = up[v]
        hops.append((here, there))
        v = there.crossing
    down = []
    v = a.crossing
    while v != lca:
        here, there = up[v]
        down.append((there, here))
        v = there.crossing
    hops.extend(reversed(down))
    steps = []
    entry = b
    for out, nxt in hops:
        steps.append((entry.crossing, entry.slot, out.slot))
        entry = nxt
    steps.append((entry.crossing, entry.slot, a.slot))
    return CyclePath(tuple(steps))


def _sheet(cid: str, k: int) -> str:
    return cid + "'" * (k + 1)


def double_cover(d: VirtualDiagram, tree: set = None, seed=None) -> VirtualDiagram:
    """Two copies of every crossing; tree edges join copies on the same sheet,
    every other edge joins the same sheet exactly when its fundamental cycle
    is good.  Free loops lift to pairs of free loops."""
    if tree is None:
        tree = spanning_forest(d, seed)
    crossings = [Crossing(_sheet(c.id, k), c.sign) for c in d.crossings for k in (0, 1)]
    edges = []
    for e in d.edges:
        a, b = e
        cross = e not in tree and cycle_parity(d, fundamental_cycle(d, tree, e)) == BAD
        for k in (0, 1):
            edges.append((HalfEdge(_sheet(a.crossing, k), a.slot),
                          HalfEdge(_sheet(b.crossing, k ^ cross), b.slot)))
    return VirtualDiagram(tuple(crossings), tuple(edges), 2 * d.free_loops)


def cover_invariant(d: VirtualDiagram, field="z2", method: str = "auto") -> BettiTable:
    """Khovanov homology of the orienting double cover."""
    return kh_table(double_cover(d), field, method)
