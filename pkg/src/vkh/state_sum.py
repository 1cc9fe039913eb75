"""Smoothing states, circle counts and the bracket-type polynomials.

A state assigns 0 (A-smoothing) or 1 (B-smoothing) to each crossing, in
sorted crossing-id order.  The A-smoothing joins slots {0,1} and {2,3}; the
B-smoothing joins {0,3} and {1,2}.  Internally a state is an integer mask
whose bit ``i`` belongs to the ``i``-th crossing.
"""

from __future__ import annotations

import numpy as np

from vkh.budget import check_states
from vkh.diagram.core import VirtualDiagram, Wiring
from vkh.errors import NotDivisible, StateLengthMismatch
from vkh.polynomial import LaurentPoly

Q_CIRCLE = LaurentPoly({-1: 1, 1: 1})
A_CIRCLE = LaurentPoly({-2: -1, 2: -1}, "a")


def smoothing_partner(h: int, bit: int) -> int:
    """The half-edge joined to ``h`` inside its crossing by the given smoothing."""
    base, s = h & ~3, h & 3
    return base | (s ^ 1 if bit == 0 else 3 - s)


def state_mask(state, n: int) -> int:
    """Accept a bit sequence, an 'A'/'B' string, or a mask; return a mask."""
    if isinstance(state, int):
        if state < 0 or state >> n:
            raise StateLengthMismatch(f"mask {state} does not fit {n} crossings")
        return state
    bits = list(state)
    if len(bits) != n:
        raise StateLengthMismatch(f"state has length {len(bits)}, diagram has {n} crossings")
    mask = 0
    for i, b in enumerate(bits):
        if b in (1, "1", "B", "b", True):
            mask |= 1 << i
        elif b not in (0, "0", "A", "a", False):
            raise ValueError(f"bad state entry {b!r}")
    return mask


def state_bits(mask: int, n: int) -> tuple:
    return tuple((mask >> i) & 1 for i in range(n))


def state_word(mask: int, n: int) -> str:
    return "".join("AB"[(mask >> i) & 1] for i in range(n))


def circles(w: Wiring, mask: int) -> list:
    """Circles of a resolution, each as the sorted list of its half-edges.

    Free loops are not listed; they add ``w.free_loops`` to the count.
    """
    partner = w.partner
    seen = bytearray(4 * w.n)
    out = []
    for start in range(4 * w.n):
        if seen[start]:
            continue
        cyc = []
        h = start
        while not seen[h]:
            seen[h] = 1
            cyc.append(h)
            k = smoothing_partner(h, (mask >> (h >> 2)) & 1)
            seen[k] = 1
            cyc.append(k)
            h = partner[k]
        out.append(sorted(cyc))
    return out


def circle_count(w: Wiring, mask: int) -> int:
    partner = w.partner
    seen = bytearray(4 * w.n)
    count = w.free_loops
    for start in range(4 * w.n):
        if seen[start]:
            continue
        count += 1
        h = start
        while not seen[h]:
            seen[h] = 1
            k = smoothing_partner(h, (mask >> (h >> 2)) & 1)
            seen[k] = 1
            h = partner[k]
    return count


def resolve_state(d: VirtualDiagram, state) -> int:
    """Number of circles after smoothing every crossing as the state says."""
    return circle_count(d.wiring, state_mask(state, d.n))


def height_counts(d: VirtualDiagram) -> dict:
    """Map (beta, gamma) to the number of states with that height and circle count."""
    gam = gamma_table(d)
    masks = np.arange(len(gam))
    beta = np.zeros(len(gam), dtype=np.int64)
    for i in range(d.n):
        beta += (masks >> i) & 1
    width = 2 * d.n + d.free_loops + 1  # exceeds any circle count
    keys, mult = np.unique(beta * width + gam, return_counts=True)
    return {(int(k) // width, int(k) % width): int(c) for k, c in zip(keys, mult)}


def bracket(d: VirtualDiagram) -> LaurentPoly:
    """Sum over states of (-q)^beta (q + 1/q)^gamma."""
    total = LaurentPoly()
    for (beta, gamma), mult in height_counts(d).items():
        total = total + LaurentPoly({beta: mult * (-1) ** beta}) * Q_CIRCLE**gamma
    return total


def jhat(d: VirtualDiagram, normalized: bool = False) -> LaurentPoly:
    """(-1)^{n-} q^{n+ - 2n-} times the bracket; optionally divided by q + 1/q."""
    nm = d.n_minus
    val = bracket(d).shift(d.n_plus - 2 * nm) * (-1) ** nm
    if normalized:
        try:
            return val.divide_exact(Q_CIRCLE)
        except NotDivisible:
            raise NotDivisible(f"{val} has no factor q + q^-1") from None
    return val


def kauffman_a(d: VirtualDiagram) -> LaurentPoly:
    """Framed bracket in a: sum over states of a^(alpha - beta) (-a^2 - a^-2)^gamma."""
    n = d.n
    total = LaurentPoly(var="a")
    for (beta, gamma), mult in height_counts(d).items():
        total = total + LaurentPoly({n - 2 * beta: mult}, "a") * A_CIRCLE**gamma
    return total


def jones_x(d: VirtualDiagram) -> LaurentPoly:
    """(-a)^(-3w) times the a-bracket with one circle factor removed; 1 on the unknot."""
    if d.n == 0 and d.free_loops == 0:
        raise NotDivisible("the empty diagram has no normalized Jones polynomial")
    w = d.n_plus - d.n_minus
    val = kauffman_a(d).divide_exact(A_CIRCLE)
    return val.shift(-3 * w) * (-1) ** (w % 2)


def skein_oracle(d: VirtualDiagram) -> LaurentPoly:
    """The bracket by resolving one crossing at a time: <d> = <d_A> - q <d_B>.

    Works on a dict of arcs between unresolved half-edges, splicing arcs
    together as crossings are smoothed, so it shares no code with the state
    enumeration.
    """
    check_states(d.n)
    ids = list(d.crossing_ids)
    adj = {}
    for a, b in d.edges:
        ka, kb = (a.crossing, a.slot), (b.crossing, b.slot)
        adj[ka] = kb
        adj[kb] = ka

    def rec(k: int, adjacency: dict, free: int) -> LaurentPoly:
        if k == len(ids):
            return Q_CIRCLE**free
        cid = ids[k]
        results = []
        for pairs in (((0, 1), (2, 3)), ((0, 3), (1, 2))):
            new_adj = dict(adjacency)
            extra = free
            for s, t in pairs:
                hs, ht = (cid, s), (cid, t)
                u, v = new_adj.pop(hs), new_adj.pop(ht)
                if u == ht:
                    extra += 1
                    continue
                new_adj[u] = v
                new_adj[v] = u
            results.append(rec(k + 1, new_adj, extra))
        return results[0] - results[1].shift(1)

    return rec(0, adj, d.free_loops)


def gamma_table(d: VirtualDiagram):
    """Circle count of every state, indexed by mask (a numpy int array).

    Walking a circle alternates "smooth inside a crossing" and "follow an
    edge", so each circle is two orbits (one per direction) of the
    permutation h -> partner(smooth(h)).  Orbits are counted for all states
    at once by pointer doubling on their minimum element.
    """
    check_states(d.n)
    n, w = d.n, d.wiring
    if n == 0:
        return np.array([w.free_loops], dtype=np.int64)
    size = 4 * n
    h = np.arange(size)
    partner = np.asarray(w.partner)
    a_next = partner[h ^ 1]
    b_next = partner[(h & ~3) | (3 - (h & 3))]
    crossing_of = h >> 2
    steps = max(1, (size - 1).bit_length())
    out = np.empty(1 << n, dtype=np.int64)
    chunk = max(1, (1 << 22) // size)
    for lo in range(0, 1 << n, chunk):
        masks = np.arange(lo, min(lo + chunk, 1 << n))
        bits = (masks[:, None] >> crossing_of[None, :]) & 1
        ptr = np.where(bits == 1, b_next[None, :], a_next[None, :])
        lab = np.broadcast_to(h, ptr.shape).copy()
        for _ in range(steps):
            lab = np.minimum(lab, np.take_along_axis(lab, ptr, axis=1))
            ptr = np.take_along_axis(ptr, ptr, axis=1)
        out[lo:lo + len(masks)] = (lab == h[None, :]).sum(axis=1) // 2 + w.free_loops
    return out
