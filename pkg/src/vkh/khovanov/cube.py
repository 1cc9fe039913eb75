"""The cube of resolutions with its circle bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass

from vkh.budget import check_states
from vkh.diagram.core import VirtualDiagram
from vkh.state_sum import circles, state_word

SPLIT, MERGE, ONE_ONE = "split", "merge", "one_one"


@dataclass(frozen=True)
class Vertex:
    mask: int
    gamma: int
    labels: tuple  # circle index of every half-edge
    circles: tuple  # half-edge lists; free loops appear as empty tuples at the end


@dataclass(frozen=True)
class CubeEdge:
    source: int
    crossing: int
    kind: str
    src_circles: tuple  # touched circles of the source, sorted
    tgt_circles: tuple  # touched circles of the target, sorted
    untouched: tuple  # (source circle, target circle) pairs

    @property
    def target(self) -> int:
        return self.source | (1 << self.crossing)


@dataclass(frozen=True)
class PerestroikaCube:
    n: int
    crossing_ids: tuple
    vertices: tuple
    edges: tuple

    def vertex(self, state) -> Vertex:
        return self.vertices[state]

    def edges_from(self, mask: int) -> list:
        return [self.edge(mask, i) for i in range(self.n) if not (mask >> i) & 1]

    def edge(self, mask: int, i: int) -> CubeEdge:
        return self._index[(mask, i)]

    @property
    def _index(self) -> dict:
        cache = self.__dict__.get("_edge_index")
        if cache is None:
            cache = {(e.source, e.crossing): e for e in self.edges}
            object.__setattr__(self, "_edge_index", cache)
        return cache

    def one_one_edges(self) -> list:
        return [e for e in self.edges if e.kind == ONE_ONE]

    def describe(self, e: CubeEdge) -> str:
        return f"{state_word(e.source, self.n)}->{state_word(e.target, self.n)} {e.kind}"


def _vertex(w, mask: int) -> Vertex:
    circ = circles(w, mask)
    labels = [0] * (4 * w.n)
    for k, cyc in enumerate(circ):
        for h in cyc:
            labels[h] = k
    all_circles = tuple(tuple(c) for c in circ) + ((),) * w.free_loops
    return Vertex(mask, len(all_circles), tuple(labels), all_circles)


def _edge(src: Vertex, tgt: Vertex, i: int) -> CubeEdge:
    at = range(4 * i, 4 * i + 4)
    s_touch = sorted({src.labels[h] for h in at})
    t_touch = sorted({tgt.labels[h] for h in at})
    pairs = []
    for k, cyc in enumerate(src.circles):
        if k in s_touch:
            continue
        pairs.append((k, tgt.labels[cyc[0]] if cyc else None))
    # free loops are never touched and keep their relative order
    free_src = [k for k, c in enumerate(src.circles) if not c]
    free_tgt = [k for k, c in enumerate(tgt.circles) if not c]
    fmap = dict(zip(free_src, free_tgt))
    pairs = tuple((a, b if b is not None else fmap[a]) for a, b in pairs)
    if len(s_touch) == 1 and len(t_touch) == 2:
        kind = SPLIT
    elif len(s_touch) == 2 and len(t_touch) == 1:
        kind = MERGE
    elif len(s_touch) == 1 and len(t_touch) == 1:
        kind = ONE_ONE
    else:
        raise AssertionError("a single smoothing change touches at most two circles")
    return CubeEdge(src.mask, i, kind, tuple(s_touch), tuple(t_touch), pairs)


def build_cube(d: VirtualDiagram) -> PerestroikaCube:
    """All 2^n resolutions and all n 2^(n-1) edges of the cube."""
    check_states(d.n)
    w = d.wiring
    verts = tuple(_vertex(w, mask) for mask in range(1 << d.n))
    edges = []
    for mask in range(1 << d.n):
        for i in range(d.n):
            if not (mask >> i) & 1:
                edges.append(_edge(verts[mask], verts[mask | (1 << i)], i))
    return PerestroikaCube(d.n, d.crossing_ids, verts, tuple(edges))
