"""Abstract 4-valent diagrams: the detour-quotient model of virtual links.

A diagram stores only classical crossings and how their half-edges are
paired by edges.  Virtual crossings and planar positions are never stored;
two virtual diagrams related by detour moves have the same representation.

Slot convention at a crossing: four sockets numbered counterclockwise,
slots 0 and 2 carry the under-strand, slots 1 and 3 the over-strand.  With
the under-strand entering at slot 0, the crossing is positive iff the
over-strand runs from slot 3 to slot 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

from vkh.errors import SignInconsistent, UnknownCrossing


class HalfEdge(NamedTuple):
    crossing: str
    slot: int

    def __str__(self):
        return f"{self.crossing}:{self.slot}"


@dataclass(frozen=True)
class Crossing:
    id: str
    sign: int  # +1 or -1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"crossing sign must be +1 or -1, got {self.sign!r}")


def id_key(cid: str):
    """Sort key putting numeric ids in numeric order before other ids."""
    return (0, int(cid), "") if cid.isdigit() else (1, 0, cid)


def _edge_key(edge):
    a, b = edge
    return (id_key(a.crossing), a.slot, id_key(b.crossing), b.slot)


def _norm_edge(a: HalfEdge, b: HalfEdge):
    a, b = HalfEdge(*a), HalfEdge(*b)
    if (id_key(b.crossing), b.slot) < (id_key(a.crossing), a.slot):
        a, b = b, a
    return (a, b)


@dataclass(frozen=True)
class Wiring:
    """Integer view of a diagram used by the enumeration kernels.

    Half-edge ``4*i + s`` is slot ``s`` of the ``i``-th crossing in sorted
    id order.
    """

    n: int
    partner: tuple
    signs: tuple
    free_loops: int


@dataclass(frozen=True, eq=True)
class VirtualDiagram:
    """Classical crossings, an edge matching on their half-edges, free loops.

    Instances are not validated on construction (so that broken inputs can
    be reported by :func:`validate`); every operation that builds a diagram
    from user input validates it first.
    """

    crossings: tuple = ()
    edges: tuple = ()
    free_loops: int = 0

    def __post_init__(self):
        cs = tuple(sorted(self.crossings, key=lambda c: id_key(c.id)))
        es = tuple(sorted((_norm_edge(a, b) for a, b in self.edges), key=_edge_key))
        object.__setattr__(self, "crossings", cs)
        object.__setattr__(self, "edges", es)

    # -- lookups ---------------------------------------------------------
    @cached_property
    def crossing_ids(self) -> tuple:
        return tuple(c.id for c in self.crossings)

    @cached_property
    def signs(self) -> dict:
        return {c.id: c.sign for c in self.crossings}

    @cached_property
    def partner(self) -> dict:
        p = {}
        for a, b in self.edges:
            p[a] = b
            p[b] = a
        return p

    @cached_property
    def wiring(self) -> Wiring:
        index = {cid: i for i, cid in enumerate(self.crossing_ids)}
        partner = [-1] * (4 * len(index))
        for a, b in self.edges:
            ia = 4 * index[a.crossing] + a.slot
            ib = 4 * index[b.crossing] + b.slot
            partner[ia] = ib
            partner[ib] = ia
        return Wiring(
            len(index), tuple(partner), tuple(c.sign for c in self.crossings), self.free_loops
        )

    def sign(self, cid: str) -> int:
        try:
            return self.signs[cid]
        except KeyError:
            raise UnknownCrossing(cid) from None

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for c in self.crossings if c.sign > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for c in self.crossings if c.sign < 0)

    def half_edges(self):
        for c in self.crossings:
            for s in range(4):
                yield HalfEdge(c.id, s)

    def replace(self, crossings=None, edges=None, free_loops=None) -> "VirtualDiagram":
        return VirtualDiagram(
            self.crossings if crossings is None else tuple(crossings),
            self.edges if edges is None else tuple(edges),
            self.free_loops if free_loops is None else free_loops,
        )

    def __repr__(self):
        body = ", ".join(
            f"{c.id}{'+' if c.sign > 0 else '-'}" for c in self.crossings
        )
        return f"VirtualDiagram([{body}], edges={len(self.edges)}, free_loops={self.free_loops})"


UNKNOT = VirtualDiagram(free_loops=1)


def unlink(k: int) -> VirtualDiagram:
    return VirtualDiagram(free_loops=k)


# -- validation -------------------------------------------------------------


@dataclass
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass
class ValidationReport:
    valid: bool
    components: int | None
    violations: list = field(default_factory=list)


def validate(d: VirtualDiagram) -> ValidationReport:
    """Check the perfect-matching invariant; never raises."""
    violations = []
    ids = set()
    for c in d.crossings:
        if c.id in ids:
            violations.append(Violation("DuplicateCrossing", c.id))
        ids.add(c.id)
    seen = {}
    for a, b in d.edges:
        for h in (a, b):
            if h.crossing not in ids:
                violations.append(Violation("UnknownCrossing", f"{h} in edge {a}-{b}"))
            elif not 0 <= h.slot < 4:
                violations.append(Violation("SlotOutOfRange", f"{h} in edge {a}-{b}"))
            if h in seen:
                violations.append(
                    Violation("DuplicateSocket", f"{h} used by edges {seen[h]} and {a}-{b}")
                )
            else:
                seen[h] = f"{a}-{b}"
    for c in d.crossings:
        for s in range(4):
            if HalfEdge(c.id, s) not in seen:
                violations.append(Violation("DanglingHalfEdge", f"{c.id}:{s}"))
    if d.free_loops < 0:
        violations.append(Violation("NegativeFreeLoops", str(d.free_loops)))
    if violations:
        return ValidationReport(False, None, violations)
    return ValidationReport(True, count_components(d))


# -- traversal ---------------------------------------------------------------


def strands(d: VirtualDiagram) -> list:
    """Unicursal components as cyclic lists of (entry, exit) half-edge pairs.

    Each component is traversed in the direction that enters its first
    crossing visit at the lowest-numbered unvisited half-edge.  Free loops
    are not listed.
    """
    w = d.wiring
    seen = [False] * (4 * w.n)
    comps = []
    for start in range(4 * w.n):
        if seen[start]:
            continue
        comp = []
        h = start
        while not seen[h]:
            out = h ^ 2  # slot s -> s+2 (mod 4)
            seen[h] = seen[out] = True
            comp.append((h, out))
            h = w.partner[out]
        comps.append(comp)
    return comps


def count_components(d: VirtualDiagram) -> int:
    return len(strands(d)) + d.free_loops


def orientation(d: VirtualDiagram) -> set:
    """Entry half-edges (as integer indices) of an orientation matching the signs.

    Raises :class:`SignInconsistent` when no choice of component directions
    realizes the declared signs.
    """
    w = d.wiring
    comps = strands(d)
    comp_of = {}
    entry = set()
    for k, comp in enumerate(comps):
        for h, _ in comp:
            comp_of[h] = k
            entry.add(h)
    # geometric sign in the base orientation, as parity constraints on flips
    adj = {k: [] for k in range(len(comps))}
    for i in range(w.n):
        under_in = 4 * i if 4 * i in entry else 4 * i + 2
        over_in = 4 * i + 3 if 4 * i + 3 in entry else 4 * i + 1
        g = 1 if ((under_in % 4 == 0) == (over_in % 4 == 3)) else -1
        a, b = comp_of[under_in], comp_of[over_in]
        mismatch = g != w.signs[i]
        if a == b:
            if mismatch:
                raise SignInconsistent(
                    f"self-crossing {d.crossing_ids[i]} contradicts its declared sign"
                )
        else:
            adj[a].append((b, mismatch))
            adj[b].append((a, mismatch))
    flip = {}
    for root in adj:
        if root in flip:
            continue
        flip[root] = False
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, m in adj[u]:
                want = flip[u] ^ m
                if v not in flip:
                    flip[v] = want
                    queue.append(v)
                elif flip[v] != want:
                    raise SignInconsistent("declared signs admit no coherent orientation")
    result = set()
    for k, comp in enumerate(comps):
        for h, out in comp:
            result.add(out if flip[k] else h)
    return result


def geometric_sign(under_entry_slot: int, over_entry_slot: int) -> int:
    """Sign of a crossing given the slots at which its two strands enter."""
    return 1 if (under_entry_slot == 0) == (over_entry_slot == 3) else -1


def signs_consistent(d: VirtualDiagram) -> bool:
    try:
        orientation(d)
    except SignInconsistent:
        return False
    return True


# -- statistics -------------------------------------------------------------


def stats(d: VirtualDiagram) -> dict:
    n_plus, n_minus = d.n_plus, d.n_minus
    return {
        "n": d.n,
        "n_plus": n_plus,
        "n_minus": n_minus,
        "writhe": n_plus - n_minus,
        "components": count_components(d),
        "free_loops": d.free_loops,
    }


# -- local rewrites ----------------------------------------------------------

_VIRTUALIZE = (1, 0, 3, 2)


def virtualize(d: VirtualDiagram, crossing_id: str) -> VirtualDiagram:
    """Replace a crossing by its virtualization.

    The cyclic slot order is reversed and the two strands swap over/under
    roles; the A- and B-smoothing pairings, and the sign, are unchanged.
    """
    d.sign(crossing_id)

    def move(h):
        return HalfEdge(h.crossing, _VIRTUALIZE[h.slot]) if h.crossing == crossing_id else h

    return d.replace(edges=[(move(a), move(b)) for a, b in d.edges])


def relabel(d: VirtualDiagram, mapping) -> VirtualDiagram:
    """Rename crossings; ``mapping`` is a dict or a callable on ids."""
    f = mapping if callable(mapping) else mapping.__getitem__
    return VirtualDiagram(
        tuple(Crossing(f(c.id), c.sign) for c in d.crossings),
        tuple(
            (HalfEdge(f(a.crossing), a.slot), HalfEdge(f(b.crossing), b.slot))
            for a, b in d.edges
        ),
        d.free_loops,
    )


def standard_labels(d: VirtualDiagram) -> VirtualDiagram:
    """Relabel crossings 1..n in their current sorted order."""
    return relabel(d, {cid: str(i + 1) for i, cid in enumerate(d.crossing_ids)})


def disjoint_union(*diagrams: VirtualDiagram) -> VirtualDiagram:
    crossings, edges, loops = [], [], 0
    for k, d in enumerate(diagrams):
        r = relabel(d, lambda cid, k=k: f"{k}.{cid}")
        crossings.extend(r.crossings)
        edges.extend(r.edges)
        loops += d.free_loops
    return standard_labels(VirtualDiagram(tuple(crossings), tuple(edges), loops))


# -- isomorphism -------------------------------------------------------------


def frame_components(d: VirtualDiagram) -> list:
    """Crossing-id lists of the connected components of the 4-valent frame."""
    adj = {cid: set() for cid in d.crossing_ids}
    for a, b in d.edges:
        adj[a.crossing].add(b.crossing)
        adj[b.crossing].add(a.crossing)
    seen, comps = set(), []
    for cid in d.crossing_ids:
        if cid in seen:
            continue
        comp, queue = [], deque([cid])
        seen.add(cid)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        comps.append(comp)
    return comps


def _component_code(d: VirtualDiagram, start: str) -> tuple:
    label = {start: 0}
    order = [start]
    i = 0
    while i < len(order):
        cid = order[i]
        for s in range(4):
            other = d.partner[HalfEdge(cid, s)]
            if other.crossing not in label:
                label[other.crossing] = len(order)
                order.append(other.crossing)
        i += 1
    return tuple(
        (d.signs[cid],) + tuple(
            (label[d.partner[HalfEdge(cid, s)].crossing], d.partner[HalfEdge(cid, s)].slot)
            for s in range(4)
        )
        for cid in order
    )


def canonical_form(d: VirtualDiagram) -> tuple:
    """A complete isomorphism invariant (crossing relabeling, slots fixed)."""
    codes = sorted(
        min(_component_code(d, start) for start in comp) for comp in frame_components(d)
    )
    return (d.free_loops, tuple(codes))


def isomorphic(d1: VirtualDiagram, d2: VirtualDiagram) -> bool:
    return canonical_form(d1) == canonical_form(d2)


def half_edge_index(d: VirtualDiagram, h: HalfEdge) -> int:
    return 4 * d.crossing_ids.index(h.crossing) + h.slot


def half_edge_at(d: VirtualDiagram, index: int) -> HalfEdge:
    return HalfEdge(d.crossing_ids[index // 4], index % 4)


def crossings_from(items: Iterable) -> tuple:
    return tuple(Crossing(cid, sign) for cid, sign in items)
