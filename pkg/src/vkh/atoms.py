"""Atoms of diagrams: the checkerboard surface glued from the all-A and all-B circles."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from vkh.diagram.core import HalfEdge, VirtualDiagram, frame_components
from vkh.state_sum import gamma_table, smoothing_partner, state_word

OPPOSITE_PAIRS = ((0, 2), (1, 3))
BLACK_ANGLES = ((0, 1), (2, 3))


@dataclass(frozen=True)
class OrientabilityVerdict:
    orientable: bool
    witness: Optional[dict] = None  # cell index -> +1 / -1
    obstruction: Optional[tuple] = None  # diagram edges along an inconsistent cycle of cells

    def __bool__(self):
        return self.orientable


@dataclass(frozen=True)
class Atom:
    """Frame, vertex structures and the two families of cells.

    Cells are given as tuples of half-edges in traversal order: each cell
    runs (h, smoothing partner of h, edge partner of that, ...).  Free loops
    add one black and one white cell each and are only counted.
    """

    crossing_ids: tuple
    frame_edges: tuple
    a_structure: dict
    b_structure: dict
    black_cells: tuple
    white_cells: tuple
    free_loops: int
    euler_characteristic: int
    components: int
    verdict: OrientabilityVerdict

    @property
    def orientable(self) -> bool:
        return self.verdict.orientable


def _cells(d: VirtualDiagram, bit: int) -> list:
    w = d.wiring
    seen = set()
    cells = []
    for start in range(4 * w.n):
        if start in seen:
            continue
        cell, h = [], start
        while h not in seen:
            k = smoothing_partner(h, bit)
            seen.add(h)
            seen.add(k)
            cell.extend((h, k))
            h = w.partner[k]
        cells.append(tuple(cell))
    return cells


def _edge_directions(cells):
    """Map each edge (lo, hi) to (cell index, 0 if traversed lo->hi else 1)."""
    out = {}
    for idx, cell in enumerate(cells):
        m = len(cell)
        for pos in range(1, m, 2):
            a, b = cell[pos], cell[(pos + 1) % m]
            out[(min(a, b), max(a, b))] = (idx, 0 if a < b else 1)
    return out


def _orient(d: VirtualDiagram, black, white) -> OrientabilityVerdict:
    """Two-colour the cells so every edge gets opposite directions from its two cells."""
    nb = len(black)
    bdir, wdir = _edge_directions(black), _edge_directions(white)
    adj = {c: [] for c in range(nb + len(white))}
    for e, (cb, db) in bdir.items():
        cw, dw = wdir[e]
        cw += nb
        parity = 1 ^ db ^ dw
        adj[cb].append((cw, parity, e))
        adj[cw].append((cb, parity, e))
    colour, parent = {}, {}
    for root in adj:
        if root in colour:
            continue
        colour[root] = 0
        parent[root] = None
        queue = deque([root])
        while queue:
            c = queue.popleft()
            for nxt, parity, e in adj[c]:
                want = colour[c] ^ parity
                if nxt not in colour:
                    colour[nxt] = want
                    parent[nxt] = (c, e)
                    queue.append(nxt)
                elif colour[nxt] != want:
                    return OrientabilityVerdict(False, obstruction=_cycle(d, parent, c, nxt, e))
    return OrientabilityVerdict(True, witness={c: 1 - 2 * v for c, v in colour.items()})


def _cycle(d, parent, a, b, closing) -> tuple:
    def chain(c):
        out = []
        while parent[c] is not None:
            prev, e = parent[c]
            out.append((c, e))
            c = prev
        out.append((c, None))
        return out

    pa, pb = chain(a), chain(b)
    on_b = {c for c, _ in pb}
    edges = []
    for c, e in pa:
        if c in on_b:
            lca = c
            break
        edges.append(e)
    for c, e in pb:
        if c == lca:
            break
        edges.append(e)
    edges.append(closing)
    ids = d.crossing_ids

    def he(h):
        return HalfEdge(ids[h >> 2], h & 3)

    return tuple((he(x), he(y)) for x, y in edges)


def atom_of(d: VirtualDiagram) -> Atom:
    black = _cells(d, 0)
    white = _cells(d, 1)
    n = d.n
    euler = len(black) + len(white) + 2 * d.free_loops - n
    ids = d.crossing_ids

    def named(cells):
        return tuple(tuple(HalfEdge(ids[h >> 2], h & 3) for h in c) for c in cells)

    return Atom(
        crossing_ids=ids,
        frame_edges=d.edges,
        a_structure={c: OPPOSITE_PAIRS for c in ids},
        b_structure={c: BLACK_ANGLES for c in ids},
        black_cells=named(black),
        white_cells=named(white),
        free_loops=d.free_loops,
        euler_characteristic=euler,
        components=len(frame_components(d)) + d.free_loops,
        verdict=_orient(d, black, white),
    )


def is_orientable(atom: Atom) -> OrientabilityVerdict:
    return atom.verdict


class BadEdge(NamedTuple):
    """A cube edge along which the number of circles stays the same."""

    source: str
    target: str
    crossing: str


def detect_one_one(d: VirtualDiagram) -> list:
    """All cube edges whose smoothing change turns one circle into one circle."""
    gam = gamma_table(d)
    ids = d.crossing_ids
    masks = np.arange(len(gam))
    found = []
    for i in range(d.n):
        bit = 1 << i
        src = masks[(masks & bit) == 0]
        for mask in src[gam[src] == gam[src | bit]]:
            found.append((int(mask), i))
    found.sort()
    return [BadEdge(state_word(m, d.n), state_word(m | (1 << i), d.n), ids[i]) for m, i in found]


@dataclass(frozen=True)
class AtomReport:
    orientable: bool
    euler: int
    genus: Optional[int]
    crosscap: Optional[int]
    good: bool
    bad_edges: tuple

    def as_dict(self) -> dict:
        out = {"orientable": self.orientable, "euler": self.euler, "good": self.good,
               "bad_edges": [list(e) for e in self.bad_edges]}
        if self.orientable:
            out["genus"] = self.genus
        else:
            out["crosscap"] = self.crosscap
        return out


def atom_report(d: VirtualDiagram) -> AtomReport:
    """Orientability, Euler characteristic, genus or crosscap number, and goodness.

    For a disconnected atom the genus (crosscap number) is summed over its
    connected pieces, i.e. computed from 2 * pieces - chi.
    """
    atom = atom_of(d)
    bad = tuple(detect_one_one(d))
    deficit = 2 * atom.components - atom.euler_characteristic
    if atom.orientable:
        return AtomReport(True, atom.euler_characteristic, deficit // 2, None, not bad, bad)
    return AtomReport(False, atom.euler_characteristic, None, deficit, not bad, bad)
