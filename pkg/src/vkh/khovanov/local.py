"""Khovanov homology by scanning crossings one at a time.

The diagram is cut into a growing tangle.  A chain complex of the tangle
has crossingless matchings of its boundary points as objects; a morphism
between matchings M1 -> M2 is a combination of dotted disks, one disk per
loop of M1 u M2 (dot = v-, no dot = v+).  Adding a crossing forms the cone
of its saddle, closed circles are split off (delooping), and every identity
arrow between equal objects is cancelled by Gaussian elimination, which
keeps the complex small.

Cobordisms are glued abstractly, as band attachments on boundary circles:
a band joining two circles acts by m, a band on one circle acts by Delta
when it cuts the circle in two and by zero (a 1->1 move) otherwise.  Over
Q a 1->1 move raises OneOneEdge.
"""

from __future__ import annotations

import os
from itertools import count
from typing import Optional

from vkh.diagram.core import VirtualDiagram
from vkh.errors import OneOneEdge
from vkh.khovanov.complex import QQ, Z2, normalize_field
from vkh.khovanov.homology import BettiTable, khovanov
from vkh.khovanov.linalg import rank_gf2, rank_q


class _Surface:
    """Boundary circles of an abstract cobordism and its TQFT vector.

    Pieces are edges between nodes; every node has exactly two pieces, so
    the pieces form disjoint cycles, the boundary circles.  The vector maps
    a frozenset of dotted circle ids to a coefficient.
    """

    def __init__(self, field: str):
        self.field = field
        self.ends = {}
        self.at = {}
        self.circle_of = {}
        self.members = {}
        self.vec = {frozenset(): 1}
        self._ids = count()

    def _add_piece(self, pid, a, b):
        self.ends[pid] = [a, b]
        self.at.setdefault(a, []).append(pid)
        self.at.setdefault(b, []).append(pid)

    def _trace(self, start) -> list:
        cyc, pid, node = [], start, self.ends[start][0]
        while True:
            cyc.append(pid)
            a, b = self.ends[pid]
            node = b if node == a else a
            p1, p2 = self.at[node]
            pid = p2 if p1 == pid else p1
            if pid == start:
                return cyc

    def add_part(self, pieces, key, vec):
        """Add pieces forming whole circles; ``vec`` is keyed by ``key(circle pieces)``."""
        for pid, a, b in pieces:
            self._add_piece(pid, a, b)
        by_key = {}
        for pid, _, _ in pieces:
            if pid in self.circle_of:
                continue
            cyc = self._trace(pid)
            cid = next(self._ids)
            self.members[cid] = cyc
            for p in cyc:
                self.circle_of[p] = cid
            by_key[key(cyc)] = cid
        part = {}
        for dots, c in vec.items():
            part[frozenset(by_key[k] for k in dots)] = c
        self.vec = {a | b: ca * cb for a, ca in self.vec.items() for b, cb in part.items()}

    def glue(self, p1, p2, pairs):
        """Identify piece p1 with p2 (node pairs given) and apply the band map."""
        old = {self.circle_of[p1], self.circle_of[p2]}
        for p in (p1, p2):
            for node in self.ends.pop(p):
                self.at[node].remove(p)
        for n, m in pairs:
            moved = self.at.pop(m)
            for p in moved:
                e = self.ends[p]
                e[e.index(m)] = n
            self.at[n].extend(moved)
        rest = [p for c in old for p in self.members.pop(c) if p not in (p1, p2)]
        for p in rest:
            del self.circle_of[p]
        new = []
        for p in rest:
            if p in self.circle_of:
                continue
            cyc = self._trace(p)
            cid = next(self._ids)
            self.members[cid] = cyc
            for q in cyc:
                self.circle_of[q] = cid
            new.append(cid)
        old = sorted(old)
        if len(old) == 2 and len(new) == 1:
            self._merge(old[0], old[1], new[0])
        elif len(old) == 1 and len(new) == 2:
            self._split(old[0], new[0], new[1])
        elif len(old) == 1 and len(new) == 1:
            if self.field == QQ:
                raise OneOneEdge("a non-orientable band appeared; rational coefficients need an orientable atom")
            self.vec = {}
        else:
            raise AssertionError(f"band changed {len(old)} circles into {len(new)}")

    def _merge(self, a, b, c):
        out = {}
        for dots, v in self.vec.items():
            da, db = a in dots, b in dots
            if da and db:
                continue
            key = (dots - {a, b}) | ({c} if (da or db) else frozenset())
            out[key] = out.get(key, 0) + v
        self.vec = _clean(out, self.field)

    def _split(self, a, b, c):
        out = {}
        for dots, v in self.vec.items():
            rest = dots - {a}
            if a in dots:
                terms = (rest | {b, c},)
            else:
                terms = (rest | {b}, rest | {c})
            for key in terms:
                out[key] = out.get(key, 0) + v
        self.vec = _clean(out, self.field)

    def circles(self):
        return self.members.items()


def _clean(vec: dict, field: str) -> dict:
    if field == Z2:
        return {k: 1 for k, v in vec.items() if v & 1}
    return {k: v for k, v in vec.items() if v}


def _hom_part(tag, m1, m2, lo, hi):
    """Pieces of the dotted-disk cobordism M1 -> M2 between two levels."""
    pieces = []
    points = sorted({p for pair in m1 for p in pair})
    for a, b in m1:
        pieces.append(((tag, "s", a, b), (tag, a, lo), (tag, b, lo)))
    for a, b in m2:
        pieces.append(((tag, "t", a, b), (tag, a, hi), (tag, b, hi)))
    for p in points:
        pieces.append(((tag, "v", p), (tag, p, lo), (tag, p, hi)))
    return pieces


def _vertical_key(cyc) -> int:
    return min(pid[2] for pid in cyc if pid[1] == "v")


class _Scanner:
    def __init__(self, d: VirtualDiagram, field: str):
        self.field = field
        self.w = d.wiring
        self.order = self._order()
        self.compose_cache = {}

    def _order(self) -> list:
        """Greedy order: next the crossing with most edges into the processed part."""
        w = self.w
        if w.n == 0:
            return []
        nbrs = [[w.partner[4 * i + s] >> 2 for s in range(4)] for i in range(w.n)]
        done, order = set(), []
        while len(order) < w.n:
            best, best_key = None, None
            for i in range(w.n):
                if i in done:
                    continue
                inside = sum(1 for j in nbrs[i] if j in done)
                selfish = sum(1 for j in nbrs[i] if j == i)
                key = (inside, selfish, -i)
                if best_key is None or key > best_key:
                    best, best_key = i, key
            order.append(best)
            done.add(best)
        return order

    # -- one crossing -------------------------------------------------------

    def setup_crossing(self, x: int, boundary: frozenset):
        w = self.w
        hx = [4 * x + s for s in range(4)]
        self.x_half = hx
        self.old_at_x = [h for h in hx if h in boundary]
        self.links = []  # (x half-edge, other end, is_self)
        seen = set()
        new_points = []
        for h in hx:
            if h in boundary:
                continue
            p = w.partner[h]
            if p >> 2 == x:
                if h in seen:
                    continue
                seen.add(h)
                seen.add(p)
                self.links.append((h, p, True))
            else:
                self.links.append((h, p, False))
                new_points.append(p)
        self.new_boundary = (boundary - set(hx)) | set(new_points)
        self.res_cache = {}
        self.ext_cache = {}

    def resolve(self, m, sigma: int):
        """New matching and sorted circle keys of matching ``m`` with crossing smoothed."""
        key = (m, sigma)
        hit = self.res_cache.get(key)
        if hit is not None:
            return hit
        edges = []
        inc = {}

        def link(a, b):
            inc.setdefault(a, []).append(len(edges))
            inc.setdefault(b, []).append(len(edges))
            edges.append((a, b))

        for a, b in m:
            link(a, b)
        base = self.x_half[0]
        pairs = ((0, 1), (2, 3)) if sigma == 0 else ((0, 3), (1, 2))
        for s, t in pairs:
            link(base + s, base + t)
        for h, p, _ in self.links:
            link(h, p)

        def walk(start):
            """Nodes met following the strand from ``start`` until an end or back to start."""
            nodes, cur, via = [start], start, None
            while True:
                nxt_edges = [e for e in inc[cur] if e != via]
                if not nxt_edges:
                    return nodes
                via = nxt_edges[0]
                a, b = edges[via]
                cur = b if a == cur else a
                if cur == start:
                    return nodes
                nodes.append(cur)

        seen, new_m = set(), []
        for e in sorted(self.new_boundary):
            if e not in seen:
                nodes = walk(e)
                seen.update(nodes)
                new_m.append((min(e, nodes[-1]), max(e, nodes[-1])))
        circles = []
        for h in self.x_half:
            if h not in seen:
                nodes = walk(h)
                seen.update(nodes)
                circles.append(min(p for p in nodes if p >> 2 == base >> 2))
        out = (tuple(sorted(new_m)), tuple(sorted(circles)))
        self.res_cache[key] = out
        return out

    def _x_part(self, kind):
        """Pieces of the cobordism at the new crossing: identity on a smoothing, or the saddle."""
        base = self.x_half[0]
        pieces = []
        if kind == "saddle":
            for s in range(4):
                pieces.append((("X", "v", base + s), ("X", base + s, 0), ("X", base + s, 1)))
            for s, t in ((0, 1), (2, 3)):
                pieces.append((("X", "a", s), ("X", base + s, 0), ("X", base + t, 0)))
            for s, t in ((1, 2), (3, 0)):
                pieces.append((("X", "b", s), ("X", base + s, 1), ("X", base + t, 1)))
            return [pieces]
        pairs = ((0, 1), (2, 3)) if kind == 0 else ((0, 3), (1, 2))
        parts = []
        for s, t in pairs:
            a, b = base + s, base + t
            parts.append([
                (("X", "v", a), ("X", a, 0), ("X", a, 1)),
                (("X", "v", b), ("X", b, 0), ("X", b, 1)),
                (("X", "s", a), ("X", a, 0), ("X", b, 0)),
                (("X", "t", a), ("X", a, 1), ("X", b, 1)),
            ])
        return parts

    def extend(self, m1, m2, dots, kind):
        """Tensor a basis morphism M1 -> M2 with the crossing part, then deloop.

        Returns {(source choice, target choice): {dotted loop keys: coeff}}
        where a choice has bit t set when circle t carries v-.
        """
        ck = (m1, m2, dots, kind)
        hit = self.ext_cache.get(ck)
        if hit is not None:
            return hit
        surf = _Surface(self.field)
        surf.add_part(_hom_part("F", m1, m2, 0, 1), _vertical_key, {dots: 1})
        for piece_list in self._x_part(kind):
            surf.add_part(piece_list, lambda cyc: 0, {frozenset(): 1})
        for h, p, is_self in self.links:
            tag = ("L", h)
            pieces = [
                ((tag, "v", h), (tag, h, 0), (tag, h, 1)),
                ((tag, "v", p), (tag, p, 0), (tag, p, 1)),
                ((tag, "s"), (tag, h, 0), (tag, p, 0)),
                ((tag, "t"), (tag, h, 1), (tag, p, 1)),
            ]
            surf.add_part(pieces, lambda cyc: 0, {frozenset(): 1})
        for h in self.old_at_x:
            surf.glue(("F", "v", h), ("X", "v", h), ((("F", h, 0), ("X", h, 0)), (("F", h, 1), ("X", h, 1))))
        for h, p, is_self in self.links:
            tag = ("L", h)
            surf.glue((tag, "v", h), ("X", "v", h), (((tag, h, 0), ("X", h, 0)), ((tag, h, 1), ("X", h, 1))))
            if is_self:
                surf.glue((tag, "v", p), ("X", "v", p), (((tag, p, 0), ("X", p, 0)), ((tag, p, 1), ("X", p, 1))))
        result = self._read_out(surf, m1, m2, kind)
        self.ext_cache[ck] = result
        return result

    def _read_out(self, surf, m1, m2, kind):
        src_sig = 0 if kind in (0, "saddle") else 1
        tgt_sig = 1 if kind == "saddle" else src_sig
        _, src_circ = self.resolve(m1, src_sig)
        _, tgt_circ = self.resolve(m2, tgt_sig)
        xc = self.x_half[0] >> 2
        role = {}
        for cid, cyc in surf.circles():
            levels = set()
            verticals = []
            xs = []
            for pid in cyc:
                a, b = surf.ends[pid]
                if pid[1] == "v" and a[2] != b[2]:
                    verticals.append(pid[-1])
                else:
                    levels.add(a[2])
                for node in (a, b):
                    if node[1] >> 2 == xc:
                        xs.append(node[1])
            if verticals:
                role[cid] = ("loop", min(verticals))
            else:
                (lvl,) = levels
                circle = min(xs)
                idx = (src_circ if lvl == 0 else tgt_circ).index(circle)
                role[cid] = ("src" if lvl == 0 else "tgt", idx)
        out = {}
        for dots, c in surf.vec.items():
            dotted_src = {role[k][1] for k in dots if role[k][0] == "src"}
            dotted_tgt = {role[k][1] for k in dots if role[k][0] == "tgt"}
            # a v+ source circle pairs with a dotted cap, a v- one with an undotted cap
            sc = sum(1 << t for t in range(len(src_circ)) if t not in dotted_src)
            tc = sum(1 << t for t in dotted_tgt)
            loops = frozenset(role[k][1] for k in dots if role[k][0] == "loop")
            slot = out.setdefault((sc, tc), {})
            slot[loops] = slot.get(loops, 0) + c
        return {k: _clean(v, self.field) for k, v in out.items() if _clean(v, self.field)}

    def compose(self, m1, f, m2, g, m3):
        """g after f, for f: M1 -> M2 and g: M2 -> M3."""
        out = {}
        for fd, fc in f.items():
            for gd, gc in g.items():
                for k, v in self._compose_basis(m1, m2, m3, fd, gd).items():
                    out[k] = out.get(k, 0) + fc * gc * v
        return _clean(out, self.field)

    def _compose_basis(self, m1, m2, m3, fd, gd):
        ck = (m1, m2, m3, fd, gd)
        hit = self.compose_cache.get(ck)
        if hit is not None:
            return hit
        surf = _Surface(self.field)
        surf.add_part(_hom_part("F", m1, m2, 0, 1), _vertical_key, {fd: 1})
        surf.add_part(_hom_part("G", m2, m3, 1, 2), _vertical_key, {gd: 1})
        for a, b in m2:
            surf.glue(("F", "t", a, b), ("G", "s", a, b),
                      ((("F", a, 1), ("G", a, 1)), (("F", b, 1), ("G", b, 1))))
        key_of = {}
        for cid, cyc in surf.circles():
            key_of[cid] = min(pid[2] for pid in cyc if pid[1] == "v")
        out = {}
        for dots, c in surf.vec.items():
            k = frozenset(key_of[x] for x in dots)
            out[k] = out.get(k, 0) + c
        out = _clean(out, self.field)
        self.compose_cache[ck] = out
        return out


class _Complex:
    """Objects (matching, q, h) with sparse morphism arrows."""

    def __init__(self, field):
        self.field = field
        self.obj = {}
        self.out = {}
        self.inc = {}
        self._ids = count()

    def add(self, m, q, h) -> int:
        oid = next(self._ids)
        self.obj[oid] = (m, q, h)
        self.out[oid] = {}
        self.inc[oid] = {}
        return oid

    def add_arrow(self, a, b, morph):
        if not morph:
            return
        cur = self.out[a].get(b)
        if cur is None:
            self.out[a][b] = dict(morph)
            self.inc[b][a] = self.out[a][b]
            return
        for k, v in morph.items():
            cur[k] = cur.get(k, 0) + v
        cleaned = _clean(cur, self.field)
        if cleaned:
            cur.clear()
            cur.update(cleaned)
        else:
            del self.out[a][b]
            del self.inc[b][a]

    def remove(self, oid):
        for b in self.out.pop(oid):
            del self.inc[b][oid]
        for a in self.inc.pop(oid):
            del self.out[a][oid]
        del self.obj[oid]


def _invertible(morph: dict, field: str):
    if len(morph) != 1:
        return None
    (dots, c), = morph.items()
    if dots or not c:
        return None
    if field == Z2:
        return 1
    return c if c in (1, -1) else None


def _cancel(cx: _Complex, sc: _Scanner, a: int, b: int, c: int):
    """Remove an isomorphism a -> b (scalar c times identity) by Gaussian elimination."""
    m_ab = cx.obj[a][0]
    sources = [(y, beta) for y, beta in cx.inc[b].items() if y != a]
    targets = [(z, delta) for z, delta in cx.out[a].items() if z != b]
    for y, beta in sources:
        my = cx.obj[y][0]
        for z, delta in targets:
            comp = sc.compose(my, beta, m_ab, delta, cx.obj[z][0])
            if comp:
                # c is a unit equal to its own inverse
                cx.add_arrow(y, z, {k: -c * v for k, v in comp.items()})
    cx.remove(a)
    cx.remove(b)


def _eliminate(cx: _Complex, sc: _Scanner):
    while True:
        candidates = []
        for a, outs in cx.out.items():
            ma, qa, _ = cx.obj[a]
            for b in outs:
                mb, qb, _ = cx.obj[b]
                if ma == mb and qa == qb:
                    candidates.append((a, b))
        progress = False
        for a, b in candidates:
            morph = cx.out.get(a, {}).get(b)
            if morph is None:
                continue
            c = _invertible(morph, cx.field)
            if c is not None:
                _cancel(cx, sc, a, b, c)
                progress = True
        if not progress:
            return


def scan_homology(d: VirtualDiagram, field="z2", check: Optional[bool] = None) -> BettiTable:
    """Khovanov homology of ``d`` by crossing-by-crossing scanning with cancellation.

    ``check`` verifies d.d = 0 after every crossing; by default it is on
    when the environment variable VKH_CHECK_D2 is set to a non-empty value
    other than 0.
    """
    field = normalize_field(field)
    if check is None:
        check = os.environ.get("VKH_CHECK_D2", "0") not in ("", "0")
    sc = _Scanner(d, field)
    cx = _Complex(field)
    f = d.free_loops
    for k in range(1 << f):
        cx.add((), f - 2 * k.bit_count(), 0)
    boundary = frozenset()
    for x in sc.order:
        sc.setup_crossing(x, boundary)
        new = _Complex(field)
        new._ids = cx._ids
        layer = {}
        for oid, (m, q, h) in cx.obj.items():
            for sigma in (0, 1):
                m2, circ = sc.resolve(m, sigma)
                for choice in range(1 << len(circ)):
                    dq = len(circ) - 2 * choice.bit_count()
                    layer[(oid, sigma, choice)] = new.add(m2, q + sigma + dq, h + sigma)
        for a, outs in cx.out.items():
            ma = cx.obj[a][0]
            for b, morph in outs.items():
                mb = cx.obj[b][0]
                for sigma in (0, 1):
                    sign = 1 if sigma == 0 else -1
                    for dots, c in morph.items():
                        for (sch, tch), mm in sc.extend(ma, mb, dots, sigma).items():
                            new.add_arrow(layer[(a, sigma, sch)], layer[(b, sigma, tch)],
                                          {k: sign * c * v for k, v in mm.items()})
        for a, (m, _, _) in cx.obj.items():
            for (sch, tch), mm in sc.extend(m, m, frozenset(), "saddle").items():
                new.add_arrow(layer[(a, 0, sch)], layer[(a, 1, tch)], mm)
        boundary = frozenset(sc.new_boundary)
        cx = new
        if check:
            _check_d2(cx, sc)
        _eliminate(cx, sc)
    return _final_table(cx, d, field)


def _check_d2(cx: _Complex, sc: _Scanner):
    for a, outs in cx.out.items():
        acc = {}
        for b, f in outs.items():
            for c, g in cx.out[b].items():
                comp = sc.compose(cx.obj[a][0], f, cx.obj[b][0], g, cx.obj[c][0])
                slot = acc.setdefault(c, {})
                for k, v in comp.items():
                    slot[k] = slot.get(k, 0) + v
        for c, slot in acc.items():
            if _clean(slot, cx.field):
                raise AssertionError(f"d^2 != 0 in the scanned complex between objects {a} and {c}")


def _final_table(cx: _Complex, d: VirtualDiagram, field: str) -> BettiTable:
    blocks = {}
    for oid, (m, q, h) in cx.obj.items():
        assert m == ()
        blocks.setdefault((h, q), []).append(oid)
    pos = {oid: k for gens in blocks.values() for k, oid in enumerate(gens)}
    ranks = {}
    for (h, q), gens in blocks.items():
        rows = []
        for oid in gens:
            row = {}
            for b, morph in cx.out[oid].items():
                c = morph.get(frozenset(), 0)
                if c:
                    row[pos[b]] = c
            rows.append(row)
        if field == Z2:
            ranks[(h, q)] = rank_gf2(sum(1 << k for k in r) for r in rows)
        else:
            ranks[(h, q)] = rank_q(rows)
    dims = {}
    for (h, q), gens in blocks.items():
        b = len(gens) - ranks[(h, q)] - ranks.get((h - 1, q), 0)
        if b:
            key = (h - d.n_minus, q + d.n_plus - 2 * d.n_minus)
            dims[key] = dims.get(key, 0) + b
    return BettiTable.from_dict(field, dims)


CUBE_LIMIT = 10


def kh_table(d: VirtualDiagram, field="z2", method: str = "auto") -> BettiTable:
    """Khovanov homology by the full cube ("cube"), by scanning ("scan"), or
    by the cube for small diagrams and scanning beyond CUBE_LIMIT crossings."""
    if method == "auto":
        method = "cube" if d.n <= CUBE_LIMIT else "scan"
    if method == "cube":
        return khovanov(d, field)
    if method == "scan":
        return scan_homology(d, field)
    raise ValueError(f"unknown method {method!r}")
