"""Independent reference computations used to cross-check the library."""

from fractions import Fraction
from itertools import product

from vkh.diagram import Crossing, HalfEdge, VirtualDiagram, frame_components

A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))


def state_circles(d: VirtualDiagram, mask: int) -> list:
    """Circles of a state as frozensets of half-edges, by union-find."""
    parent = {h: h for h in d.half_edges()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(x, y):
        parent[find(x)] = find(y)

    for a, b in d.edges:
        join(a, b)
    for i, cid in enumerate(d.crossing_ids):
        for s, t in (B_PAIRS if mask >> i & 1 else A_PAIRS):
            join(HalfEdge(cid, s), HalfEdge(cid, t))
    groups = {}
    for h in parent:
        groups.setdefault(find(h), set()).add(h)
    out = [frozenset(g) for g in groups.values()]
    out += [frozenset({("free", k)}) for k in range(d.free_loops)]
    return sorted(out, key=lambda c: sorted(map(str, c)))


def rank_mod2(rows) -> int:
    rows = [[x % 2 for x in r] for r in rows]
    rank, col = 0, 0
    width = len(rows[0]) if rows else 0
    while rank < len(rows) and col < width:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                rows[r] = [(x + y) % 2 for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def rank_fraction(rows) -> int:
    rows = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    width = len(rows[0]) if rows else 0
    while rank < len(rows) and col < width:
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _edge_image(src, tgt, labels):
    """Image of a labelled source state along one cube edge, as a list of target labellings."""
    gone = [c for c in src if c not in tgt]
    new = [c for c in tgt if c not in src]
    keep = {c: labels[c] for c in src if c in tgt}
    if len(gone) == 2 and len(new) == 1:
        x, y = labels[gone[0]], labels[gone[1]]
        if x == "-" and y == "-":
            return []
        return [{**keep, new[0]: "-" if "-" in (x, y) else "+"}]
    if len(gone) == 1 and len(new) == 2:
        a, b = new
        if labels[gone[0]] == "-":
            return [{**keep, a: "-", b: "-"}]
        return [{**keep, a: "+", b: "-"}, {**keep, a: "-", b: "+"}]
    return []


def brute_khovanov(d: VirtualDiagram, field: str = "z2") -> dict:
    """Betti numbers {(i, j): dim} from an explicit dense complex."""
    n = d.n
    circ = {m: state_circles(d, m) for m in range(1 << n)}
    gens = {}
    for m, cs in circ.items():
        r = bin(m).count("1")
        for labs in product("+-", repeat=len(cs)):
            lab = dict(zip(cs, labs))
            j = labs.count("+") - labs.count("-") + r + d.n_plus - 2 * d.n_minus
            gens.setdefault((r - d.n_minus, j), []).append((m, lab))

    def key_of(m, lab):
        return m, frozenset(lab.items())

    index = {key_of(m, lab): pos for gs in gens.values() for pos, (m, lab) in enumerate(gs)}

    ranks = {}
    for (i, j), gs in gens.items():
        tgt = gens.get((i + 1, j), [])
        rows = []
        for m, lab in gs:
            row = [0] * len(tgt)
            for c in range(n):
                if m >> c & 1:
                    continue
                m2 = m | 1 << c
                sign = -1 if bin(m & ((1 << c) - 1)).count("1") % 2 else 1
                for img in _edge_image(circ[m], circ[m2], lab):
                    row[index[key_of(m2, img)]] += sign
            rows.append(row)
        if rows and tgt:
            ranks[(i, j)] = rank_mod2(rows) if field == "z2" else rank_fraction(rows)
    out = {}
    for (i, j), gs in gens.items():
        b = len(gs) - ranks.get((i, j), 0) - ranks.get((i - 1, j), 0)
        if b:
            out[(i, j)] = b
    return out


def edge_weight(edge) -> int:
    """1 when a cycle crossing this edge picks up a parity flip."""
    a, b = edge
    return (1 + a.slot + b.slot) % 2


def local_rule_cover(d: VirtualDiagram) -> VirtualDiagram:
    """Double cover lifting each edge across sheets exactly when its weight is 1."""
    crossings = [Crossing(c.id + s, c.sign) for c in d.crossings for s in ("a", "b")]
    edges = []
    for a, b in d.edges:
        flip = edge_weight((a, b))
        for s, t in (("a", "b"), ("b", "a")):
            edges.append((HalfEdge(a.crossing + s, a.slot),
                          HalfEdge(b.crossing + (t if flip else s), b.slot)))
    return VirtualDiagram(tuple(crossings), tuple(edges), 2 * d.free_loops)


def weights_are_coboundary(d: VirtualDiagram) -> bool:
    """Whether crossings can be 2-coloured so each edge's weight is the colour difference."""
    colour = {}
    adj = {c: [] for c in d.crossing_ids}
    for e in d.edges:
        a, b = e
        adj[a.crossing].append((b.crossing, edge_weight(e)))
        adj[b.crossing].append((a.crossing, edge_weight(e)))
    for comp in frame_components(d):
        colour[comp[0]] = 0
        stack = [comp[0]]
        while stack:
            v = stack.pop()
            for u, w in adj[v]:
                want = colour[v] ^ w
                if u not in colour:
                    colour[u] = want
                    stack.append(u)
                elif colour[u] != want:
                    return False
    return True
