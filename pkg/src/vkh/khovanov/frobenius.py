"""The Frobenius algebra V = <v+, v-> and the edge maps of the cube.

A tensor factor is stored as one bit: 0 for v+ (degree +1), 1 for v- (degree -1).
"""

from __future__ import annotations

from vkh.errors import ArityMismatch
from vkh.khovanov.cube import MERGE, ONE_ONE, SPLIT, CubeEdge

PLUS, MINUS = 0, 1

_MERGE = {
    (PLUS, PLUS): ((PLUS,),),
    (PLUS, MINUS): ((MINUS,),),
    (MINUS, PLUS): ((MINUS,),),
    (MINUS, MINUS): (),
}
_SPLIT = {
    (PLUS,): ((PLUS, MINUS), (MINUS, PLUS)),
    (MINUS,): ((MINUS, MINUS),),
}
_ONE_ONE = {(PLUS,): (), (MINUS,): ()}
_TABLES = {MERGE: _MERGE, SPLIT: _SPLIT, ONE_ONE: _ONE_ONE}
_ARITY = {MERGE: (2, 1), SPLIT: (1, 2), ONE_ONE: (1, 1)}


def edge_map(kind: str, src_circles, tgt_circles) -> dict:
    """Local map on the touched factors: input bit tuple -> tuple of output bit tuples.

    Every output term has coefficient 1; signs are applied by the caller.
    """
    arity = _ARITY.get(kind)
    if arity is None:
        raise ValueError(f"unknown transition kind {kind!r}")
    if (len(src_circles), len(tgt_circles)) != arity:
        raise ArityMismatch(f"{kind} needs {arity[0]} -> {arity[1]} circles, "
                            f"got {len(src_circles)} -> {len(tgt_circles)}")
    return dict(_TABLES[kind])


def apply_edge(e: CubeEdge, bits: int) -> list:
    """Images of a source basis vector (bit mask over circles) along a cube edge."""
    base = 0
    for s, t in e.untouched:
        if (bits >> s) & 1:
            base |= 1 << t
    local_in = tuple((bits >> c) & 1 for c in e.src_circles)
    out = []
    for image in _TABLES[e.kind][local_in]:
        v = base
        for c, b in zip(e.tgt_circles, image):
            if b:
                v |= 1 << c
        out.append(v)
    return out
