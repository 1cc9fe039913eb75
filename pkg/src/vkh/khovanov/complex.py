"""The graded Khovanov chain complex of a diagram, assembled from the cube."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

from vkh.diagram.core import VirtualDiagram
from vkh.errors import OneOneEdge
from vkh.khovanov.cube import PerestroikaCube, build_cube
from vkh.khovanov.frobenius import apply_edge
from vkh.state_sum import state_word

Z2, QQ = "z2", "q"
_FIELD_ALIASES = {
    "z2": Z2, "gf2": Z2, "gf(2)": Z2, "f2": Z2, "2": Z2,
    "q": QQ, "qq": QQ, "rationals": QQ, "rational": QQ, "0": QQ,
}


def normalize_field(name) -> str:
    key = str(name).strip().lower()
    if key not in _FIELD_ALIASES:
        raise ValueError(f"unknown coefficient field {name!r} (use z2 or q)")
    return _FIELD_ALIASES[key]


def standard_sign(mask: int, i: int) -> int:
    """(-1) to the number of B-smoothings before crossing i."""
    return -1 if (mask & ((1 << i) - 1)).bit_count() & 1 else 1


@dataclass
class GradedComplex:
    """Chain groups C^{i,j} with bases of (state mask, circle bits) and the differential.

    ``rows[(i, j)][k]`` maps positions in block ``(i + 1, j)`` to the
    coefficient of the image of the k-th generator of block ``(i, j)``.
    Gradings are stored after the global shifts.
    """

    field: str
    degree_shift: int
    height_shift: int
    blocks: dict
    rows: dict
    cube: Optional[PerestroikaCube] = None
    sign: Callable = standard_sign
    index: dict = dc_field(default_factory=dict)

    def dims(self) -> dict:
        return {k: len(v) for k, v in self.blocks.items() if v}

    def height_dims(self) -> dict:
        """Chain dimension per homological degree, before splitting by j."""
        out = {}
        for (i, _), gens in self.blocks.items():
            out[i] = out.get(i, 0) + len(gens)
        return dict(sorted(out.items()))

    def grading(self, mask: int, bits: int):
        v = self.cube.vertices[mask]
        h = mask.bit_count()
        deg = v.gamma - 2 * bits.bit_count() + h
        return h - self.height_shift, deg + self.degree_shift


def _images(cube, sign, mask: int, bits: int, field: str) -> dict:
    """Image of one generator: {(target mask, target bits): coefficient}."""
    out = {}
    for e in cube.edges_from(mask):
        s = 1 if field == Z2 else sign(mask, e.crossing)
        for tb in apply_edge(e, bits):
            key = (e.target, tb)
            out[key] = out.get(key, 0) + s
    if field == Z2:
        return {k: v & 1 for k, v in out.items() if v & 1}
    return {k: v for k, v in out.items() if v}


def chain_complex(d: VirtualDiagram, field="z2", sign: Callable = None, check: bool = True,
                  cube: PerestroikaCube = None) -> GradedComplex:
    """Khovanov complex of ``d`` over GF(2) or Q.

    Over Q every cube edge needs an honest merge or split; a 1->1 edge
    raises OneOneEdge.  ``sign`` overrides the per-edge sign rule (used to
    build deliberately broken complexes); ``check`` runs verify_d2 and
    raises AssertionError on failure.
    """
    field = normalize_field(field)
    cube = cube or build_cube(d)
    if field == QQ:
        bad = cube.one_one_edges()
        if bad:
            raise OneOneEdge(f"1->1 edge {cube.describe(bad[0])}; rational coefficients need a good diagram")
    sign = sign or standard_sign
    cx = GradedComplex(field, d.n_plus - 2 * d.n_minus, d.n_minus, {}, {}, cube, sign)
    for v in cube.vertices:
        for bits in range(1 << v.gamma):
            key = cx.grading(v.mask, bits)
            block = cx.blocks.setdefault(key, [])
            cx.index[(v.mask, bits)] = (key, len(block))
            block.append((v.mask, bits))
    for key, gens in cx.blocks.items():
        rows = []
        for mask, bits in gens:
            row = {}
            for tgt, c in _images(cube, sign, mask, bits, field).items():
                tkey, pos = cx.index[tgt]
                assert tkey == (key[0] + 1, key[1]), "differential must preserve j and raise i"
                row[pos] = c
            rows.append(row)
        cx.rows[key] = rows
    if check:
        failure = verify_d2(cx, faces=False)
        if failure is not None:
            raise AssertionError(f"d^2 != 0: {failure}")
    return cx


@dataclass(frozen=True)
class FaceFailure:
    source: str
    crossings: tuple
    generator: int
    via_first: dict
    via_second: dict

    def __str__(self):
        return (f"face at {self.source} over crossings {self.crossings}, generator bits "
                f"{self.generator}: {self.via_first} vs {self.via_second}")


def _compose(cube, sign, field, mask, bits, first, second) -> dict:
    out = {}
    s1 = 1 if field == Z2 else sign(mask, first)
    e1 = cube.edge(mask, first)
    for mid in apply_edge(e1, bits):
        m2 = e1.target
        s2 = 1 if field == Z2 else sign(m2, second)
        e2 = cube.edge(m2, second)
        for tb in apply_edge(e2, mid):
            out[tb] = out.get(tb, 0) + s1 * s2
    if field == Z2:
        return {k: v & 1 for k, v in out.items() if v & 1}
    return {k: v for k, v in out.items() if v}


def face_maps(cx: GradedComplex, mask: int, i: int, j: int, bits: int):
    """The two composites around the square spanned by crossings i, j at ``mask``."""
    cube, sign, field = cx.cube, cx.sign, cx.field
    return (_compose(cube, sign, field, mask, bits, i, j),
            _compose(cube, sign, field, mask, bits, j, i))


def _product_check(cx: GradedComplex) -> Optional[FaceFailure]:
    n = cx.cube.n
    for (i, j), rows in cx.rows.items():
        nxt = cx.rows.get((i + 1, j))
        if not nxt:
            continue
        for k, row in enumerate(rows):
            acc = {}
            for mid, c in row.items():
                for t, c2 in nxt[mid].items():
                    acc[t] = acc.get(t, 0) + c * c2
            for t, x in acc.items():
                if (x & 1) if cx.field == Z2 else x:
                    mask, bits = cx.blocks[(i, j)][k]
                    tmask = cx.blocks[(i + 2, j)][t][0]
                    a, b = [c for c in range(n) if ((tmask ^ mask) >> c) & 1]
                    p, q = face_maps(cx, mask, a, b, bits)
                    return FaceFailure(state_word(mask, n), (cx.cube.crossing_ids[a], cx.cube.crossing_ids[b]),
                                       bits, p, q)
    return None


def verify_d2(cx: GradedComplex, faces: bool = True) -> Optional[FaceFailure]:
    """None when d.d = 0 blockwise and every square (anti)commutes, else a failing face.

    Both composites of the failing square are returned for diagnosis.  The
    blockwise product already detects every bad square (distinct squares
    land on distinct target states); ``faces`` adds the direct scan.
    """
    failure = _product_check(cx)
    if failure is not None or not faces:
        return failure
    cube = cx.cube
    n = cube.n
    for v in cube.vertices:
        free = [i for i in range(n) if not (v.mask >> i) & 1]
        for a in range(len(free)):
            for b in range(a + 1, len(free)):
                i, j = free[a], free[b]
                for bits in range(1 << v.gamma):
                    p, q = face_maps(cx, v.mask, i, j, bits)
                    if cx.field == Z2:
                        ok = p == q
                    else:
                        ok = all(p.get(k, 0) + q.get(k, 0) == 0 for k in set(p) | set(q))
                    if not ok:
                        return FaceFailure(state_word(v.mask, n), (cube.crossing_ids[i], cube.crossing_ids[j]),
                                           bits, p, q)
    return None
