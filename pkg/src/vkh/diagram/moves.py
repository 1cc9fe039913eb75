"""Generalised Reidemeister moves on abstract diagrams.

Detour moves are identities in this representation, so only the classical
moves appear.  Insert moves always succeed on any edge or free loop; the
delete moves and R3 need their local pattern to be present.

Sites
-----
edge site      an edge ``(HalfEdge, HalfEdge)`` of the diagram, or
               ``("loop", k)`` for the k-th free loop
R1_delete      crossing id of the kink
R1sq_delete    ``(x, y)`` ids of two adjacent kinks of opposite sign
R2_insert      ``(site_under, site_over)``; both may name the same edge
R2_delete      ``(edge_1, edge_2)``: the two edges of the bigon
R3             ``(e_xy, e_yz, e_zx)``: the three triangle edges in order
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from vkh.diagram.core import (
    Crossing,
    HalfEdge,
    VirtualDiagram,
    geometric_sign,
    id_key,
    orientation,
)
from vkh.errors import PatternNotFound

KINDS = ("R1_insert", "R1_delete", "R1sq_insert", "R1sq_delete", "R2_insert", "R2_delete", "R3")
FRAMED_KINDS = ("R1sq_insert", "R1sq_delete", "R2_insert", "R2_delete", "R3")


@dataclass(frozen=True)
class MoveSpec:
    kind: str
    site: Any
    sign: int = 1          # kink sign for R1 moves (first kink for R1sq)
    left: bool = True      # R2 bigon chirality
    reverse: bool = False  # R2: traverse the over-strand against its site direction

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")


# -- helpers -----------------------------------------------------------------


def fresh_ids(d: VirtualDiagram, count: int) -> list:
    used = set(d.crossing_ids)
    nxt = 1 + max((int(c) for c in used if c.isdigit()), default=0)
    out = []
    while len(out) < count:
        if str(nxt) not in used:
            out.append(str(nxt))
        nxt += 1
    return out


def _directed(d: VirtualDiagram, site, entries):
    """Return (tail, head) of an edge site following the diagram orientation."""
    a, b = site
    ids = d.crossing_ids
    ib = 4 * ids.index(b.crossing) + b.slot
    return (a, b) if ib in entries else (b, a)


def _splice(d: VirtualDiagram, runs, new_ids) -> VirtualDiagram:
    """Thread new crossings into edge sites.

    ``runs`` is a list of ``(site, passages)``; each passage is
    ``(crossing_id, entry_slot, exit_slot)`` listed in the direction of
    travel along the site.  Signs of the new crossings are read off from the
    orientation of the sites, so the result stays orientation-consistent.
    """
    entries = orientation(d) if d.n else set()
    edges = set(d.edges)
    loops = d.free_loops
    under_in, over_in = {}, {}
    for site, passages in runs:
        for cid, a, _ in passages:
            (under_in if a % 2 == 0 else over_in)[cid] = a
        if site[0] == "loop":
            loops -= 1
            chain = [(HalfEdge(c, a), HalfEdge(c, b)) for c, a, b in passages]
            for k, (_, ex) in enumerate(chain):
                edges.add((ex, chain[(k + 1) % len(chain)][0]))
            continue
        tail, head = _directed(d, site, entries)
        edges.discard(tuple(site))
        edges.discard((site[1], site[0]))
        prev = tail
        for c, a, b in passages:
            edges.add((prev, HalfEdge(c, a)))
            prev = HalfEdge(c, b)
        edges.add((prev, head))
    if loops < 0:
        raise PatternNotFound("not enough free loops for this move")
    new = [Crossing(c, geometric_sign(under_in[c], over_in[c])) for c in new_ids]
    return VirtualDiagram(d.crossings + tuple(new), tuple(edges), loops)


def _excise(d: VirtualDiagram, removed) -> VirtualDiagram:
    """Replace crossings by straight passages of both strands and delete them."""
    removed = set(removed)
    partner = d.partner
    edges = [e for e in d.edges if e[0].crossing not in removed and e[1].crossing not in removed]
    visited = set()
    for a, b in d.edges:
        for h, p in ((a, b), (b, a)):
            if h.crossing in removed or p.crossing not in removed or p in visited:
                continue
            cur = p
            while True:
                visited.add(cur)
                through = HalfEdge(cur.crossing, (cur.slot + 2) % 4)
                visited.add(through)
                q = partner[through]
                if q.crossing not in removed:
                    break
                cur = q
            if (q, h) not in edges:
                edges.append((h, q))
    loops = d.free_loops
    for cid in removed:
        for s in range(4):
            start = HalfEdge(cid, s)
            if start in visited:
                continue
            cur = start
            while cur not in visited:
                visited.add(cur)
                through = HalfEdge(cur.crossing, (cur.slot + 2) % 4)
                visited.add(through)
                cur = partner[through]
            loops += 1
    crossings = tuple(c for c in d.crossings if c.id not in removed)
    return VirtualDiagram(crossings, tuple(edges), loops)


def _kink_passages(cid: str, sign: int):
    # entry at slot 0; the loop joins slot 2 to slot 3 (+) or to slot 1 (-)
    return [(cid, 0, 2), (cid, 3, 1)] if sign > 0 else [(cid, 0, 2), (cid, 1, 3)]


def _is_kink(d: VirtualDiagram, cid: str):
    """Slot ``a`` such that an edge joins slots a and a+1 of the crossing, or None."""
    for a in range(4):
        p = d.partner[HalfEdge(cid, a)]
        if p.crossing == cid and p.slot == (a + 1) % 4:
            return a
    return None


# -- site enumeration ----------------------------------------------------------


def edge_sites(d: VirtualDiagram) -> list:
    return list(d.edges) + [("loop", k) for k in range(d.free_loops)]


def r1_sites(d: VirtualDiagram) -> list:
    return [cid for cid in d.crossing_ids if _is_kink(d, cid) is not None]


def r1sq_sites(d: VirtualDiagram) -> list:
    kinks = set(r1_sites(d))
    out = []
    for x in sorted(kinks, key=id_key):
        a = _is_kink(d, x)
        for s in ((a + 2) % 4, (a + 3) % 4):
            p = d.partner[HalfEdge(x, s)]
            y = p.crossing
            if y in kinks and y != x and d.signs[x] != d.signs[y]:
                b = _is_kink(d, y)
                if p.slot in ((b + 2) % 4, (b + 3) % 4):
                    pair = tuple(sorted((x, y), key=id_key))
                    if pair not in out:
                        out.append(pair)
    return out


def r2_delete_sites(d: VirtualDiagram) -> list:
    between = {}
    for e in d.edges:
        a, b = e
        if a.crossing != b.crossing:
            between.setdefault(frozenset((a.crossing, b.crossing)), []).append(e)
    out = []
    for pair, es in between.items():
        if len(es) < 2 or d.signs[es[0][0].crossing] == d.signs[es[0][1].crossing]:
            continue
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                if _bigon(es[i], es[j]):
                    out.append((es[i], es[j]))
    return out


def _bigon(e1, e2) -> bool:
    (x1, y1), (x2, y2) = e1, e2
    if x1.crossing != x2.crossing:
        x2, y2 = y2, x2
    a, b, a2, b2 = x1.slot, y1.slot, x2.slot, y2.slot
    if (a - b) % 2 or (a2 - b2) % 2:
        return False
    left = a == (a2 - 1) % 4 and b2 == (b - 1) % 4
    right = a == (a2 + 1) % 4 and b2 == (b + 1) % 4
    return left or right


def r3_sites(d: VirtualDiagram) -> list:
    out, seen = [], set()
    partner = d.partner
    for x in d.crossing_ids:
        for turn in (-1, 1):
            for s_xy in range(4):
                s_xz = (s_xy - turn) % 4
                hy = partner[HalfEdge(x, s_xy)]
                hz = partner[HalfEdge(x, s_xz)]
                y, z = hy.crossing, hz.crossing
                if len({x, y, z}) < 3:
                    continue
                s_yz = (hy.slot + turn) % 4
                hzy = partner[HalfEdge(y, s_yz)]
                if hzy.crossing != z or (hzy.slot + turn) % 4 != hz.slot:
                    continue
                tri = (
                    (HalfEdge(x, s_xy), hy),
                    (HalfEdge(y, s_yz), hzy),
                    (HalfEdge(z, hz.slot), HalfEdge(x, s_xz)),
                )
                # an edge's strand is over at a crossing iff it sits on an odd slot
                overs = [(p.slot % 2) + (q.slot % 2) for p, q in tri]
                if sorted(overs) != [0, 1, 2]:
                    continue
                key = frozenset(frozenset(e) for e in tri)
                if key not in seen:
                    seen.add(key)
                    out.append(tri)
    return out


def sites(d: VirtualDiagram, kind: str) -> list:
    """All sites at which a move of the given kind applies."""
    if kind in ("R1_insert", "R1sq_insert"):
        return edge_sites(d)
    if kind == "R2_insert":
        es = edge_sites(d)
        return [(s, t) for s in es for t in es]
    if kind == "R1_delete":
        return r1_sites(d)
    if kind == "R1sq_delete":
        return r1sq_sites(d)
    if kind == "R2_delete":
        return r2_delete_sites(d)
    if kind == "R3":
        return r3_sites(d)
    raise ValueError(f"unknown move kind {kind!r}")


# -- rewrites ------------------------------------------------------------------


def _check_edge_site(d, site):
    if site[0] == "loop":
        if not 0 <= site[1] < d.free_loops:
            raise PatternNotFound(f"no free loop {site[1]}")
        return
    a, b = HalfEdge(*site[0]), HalfEdge(*site[1])
    if d.partner.get(a) != b:
        raise PatternNotFound(f"{a}-{b} is not an edge")


def _norm_site(site):
    if site[0] == "loop":
        return ("loop", site[1])
    return (HalfEdge(*site[0]), HalfEdge(*site[1]))


def apply_move(d: VirtualDiagram, m: MoveSpec) -> VirtualDiagram:
    """Apply one Reidemeister move; raises PatternNotFound if it does not fit."""
    kind = m.kind
    if kind in ("R1_insert", "R1sq_insert"):
        site = _norm_site(m.site)
        _check_edge_site(d, site)
        if kind == "R1_insert":
            (x,) = fresh_ids(d, 1)
            return _splice(d, [(site, _kink_passages(x, m.sign))], [x])
        x, y = fresh_ids(d, 2)
        passages = _kink_passages(x, m.sign) + _kink_passages(y, -m.sign)
        return _splice(d, [(site, passages)], [x, y])

    if kind == "R1_delete":
        cid = m.site
        if cid not in d.signs or _is_kink(d, cid) is None:
            raise PatternNotFound(f"no kink at crossing {cid}")
        return _excise(d, [cid])

    if kind == "R1sq_delete":
        pair = tuple(sorted(m.site, key=id_key))
        if pair not in r1sq_sites(d):
            raise PatternNotFound(f"no adjacent opposite kinks at {m.site}")
        return _excise(d, pair)

    if kind == "R2_insert":
        su, so = (_norm_site(s) for s in m.site)
        _check_edge_site(d, su)
        _check_edge_site(d, so)
        x, y = fresh_ids(d, 2)
        under = [(x, 0, 2), (y, 0, 2)]
        over = [(x, 1, 3), (y, 3, 1)] if m.left else [(x, 3, 1), (y, 1, 3)]
        if m.reverse:
            over = [(c, b, a) for c, a, b in reversed(over)]
        if su == so:
            return _splice(d, [(su, under + over)], [x, y])
        return _splice(d, [(su, under), (so, over)], [x, y])

    if kind == "R2_delete":
        e1, e2 = (_norm_site(e) for e in m.site)
        for e in (e1, e2):
            _check_edge_site(d, e)
        x, y = e1[0].crossing, e1[1].crossing
        if {x, y} != {e2[0].crossing, e2[1].crossing} or x == y or not _bigon(e1, e2) \
                or d.signs[x] == d.signs[y]:
            raise PatternNotFound(f"no removable bigon at {m.site}")
        return _excise(d, [x, y])

    if kind == "R3":
        return _r3(d, m.site)
    raise ValueError(kind)


def _r3(d: VirtualDiagram, tri) -> VirtualDiagram:
    tri = tuple(_norm_site(e) for e in tri)
    if not any(
        frozenset(frozenset(e) for e in t) == frozenset(frozenset(e) for e in tri)
        for t in r3_sites(d)
    ):
        raise PatternNotFound(f"no R3 triangle at {tri}")
    interior = {frozenset(e) for e in tri}
    phi = {}
    new_edges = []
    for p_h, q_h in tri:
        # strand passes P from slot p+2 to p, then Q from q to q+2
        p_in = HalfEdge(p_h.crossing, (p_h.slot + 2) % 4)
        q_out = HalfEdge(q_h.crossing, (q_h.slot + 2) % 4)
        phi[p_in] = q_h
        phi[q_out] = p_h
        new_edges.append((q_out, p_in))
    for a, b in d.edges:
        if frozenset((a, b)) in interior:
            continue
        new_edges.append((phi.get(a, a), phi.get(b, b)))
    return d.replace(edges=new_edges)
