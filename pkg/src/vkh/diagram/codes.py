"""Text encodings of diagrams: signed Gauss codes and the diagram JSON schema."""

from __future__ import annotations

import json
import re
from collections import Counter

from vkh.diagram.core import (
    Crossing,
    HalfEdge,
    VirtualDiagram,
    id_key,
    orientation,
    validate,
)
from vkh.errors import (
    DanglingHalfEdge,
    DuplicateSocket,
    LabelCountMismatch,
    MalformedToken,
    SchemaError,
    SignInconsistent,
    SignMismatch,
)

_TOKEN = re.compile(r"\s*([OU])(\d+)([+-])")


def tokenize_gauss(code: str) -> list:
    """Split a Gauss code into (level, label, sign) triples."""
    tokens, pos = [], 0
    code = code.rstrip()
    while pos < len(code):
        m = _TOKEN.match(code, pos)
        if not m:
            raise MalformedToken(f"unreadable Gauss token at offset {pos}: {code[pos:pos + 8]!r}")
        level, label, sign = m.groups()
        tokens.append((level, str(int(label)), 1 if sign == "+" else -1))
        pos = m.end()
    return tokens


def _passage_slots(level: str, sign: int):
    # (entry, exit) slots of one passage under the pinned slot convention
    if level == "U":
        return 0, 2
    return (3, 1) if sign > 0 else (1, 3)


def link_from_gauss(codes) -> VirtualDiagram:
    """Build a diagram from one Gauss code per component.

    An empty code contributes a free loop.  Labels are shared across
    components; each must occur exactly once over and once under.
    """
    components = [tokenize_gauss(c) for c in codes]
    levels, signs = {}, {}
    for comp in components:
        for level, label, sign in comp:
            levels.setdefault(label, []).append(level)
            if signs.setdefault(label, sign) != sign:
                raise SignMismatch(f"label {label} carries both signs")
    for label, seen in levels.items():
        if sorted(seen) != ["O", "U"]:
            raise LabelCountMismatch(
                f"label {label} occurs as {''.join(seen)}; expected exactly one O and one U"
            )
    edges, loops = [], 0
    for comp in components:
        if not comp:
            loops += 1
            continue
        passages = []
        for level, label, sign in comp:
            a, b = _passage_slots(level, sign)
            passages.append((HalfEdge(label, a), HalfEdge(label, b)))
        for k, (_, exit_) in enumerate(passages):
            entry = passages[(k + 1) % len(passages)][0]
            edges.append((exit_, entry))
    crossings = tuple(Crossing(label, sign) for label, sign in signs.items())
    return VirtualDiagram(crossings, tuple(edges), loops)


def parse_gauss(code: str) -> VirtualDiagram:
    """Parse a one-component signed Gauss code such as ``O1+O2+U1+U2+``."""
    return link_from_gauss([code])


def to_gauss(d: VirtualDiagram) -> str:
    """Gauss code of a one-component diagram whose slot wiring follows the convention.

    Raises ValueError if the diagram is not a knot given in the convention
    produced by :func:`parse_gauss` (under entering at slot 0).
    """
    from vkh.diagram.core import strands

    comps = strands(d)
    if len(comps) + d.free_loops != 1:
        raise ValueError("Gauss codes describe one-component diagrams only")
    if not comps:
        return ""
    ent = orientation(d)
    comp = comps[0]
    if comp[0][0] not in ent:
        comp = [(o, h) for h, o in reversed(comp)]
    out = []
    ids = d.crossing_ids
    for h, o in comp:
        cid, slot = ids[h // 4], h % 4
        sign = d.signs[cid]
        if slot % 2 == 0:
            if slot != 0:
                raise ValueError("under-strand does not enter at slot 0")
            level = "U"
        else:
            if (slot, o % 4) != _passage_slots("O", sign):
                raise ValueError("over-strand direction disagrees with the sign")
            level = "O"
        out.append(f"{level}{cid}{'+' if sign > 0 else '-'}")
    return "".join(out)


# -- JSON ----------------------------------------------------------------------


def _half_edge_from_text(text: str) -> HalfEdge:
    cid, _, slot = str(text).rpartition(":")
    if not cid or not slot.isdigit():
        raise SchemaError(f"bad half-edge reference {text!r}; expected 'ID:SLOT'")
    return HalfEdge(cid, int(slot))


def parse_diagram_json(text) -> VirtualDiagram:
    """Parse the diagram JSON schema (text or an already-decoded dict)."""
    if isinstance(text, (str, bytes)):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
    else:
        data = text
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object")
    unknown = set(data) - {"crossings", "free_loops", "orientation"}
    if unknown:
        raise SchemaError(f"unknown keys: {sorted(unknown)}")
    raw = data.get("crossings", [])
    loops = data.get("free_loops", 0)
    if not isinstance(raw, list):
        raise SchemaError("'crossings' must be a list")
    if not isinstance(loops, int) or isinstance(loops, bool) or loops < 0:
        raise SchemaError("'free_loops' must be a non-negative integer")

    crossings, sockets = [], {}
    for item in raw:
        if not isinstance(item, dict) or set(item) != {"id", "sign", "slots"}:
            raise SchemaError(f"crossing entries need exactly id, sign, slots: {item!r}")
        cid, sign, slots = str(item["id"]), item["sign"], item["slots"]
        if sign not in ("+", "-"):
            raise SchemaError(f"crossing {cid}: sign must be '+' or '-'")
        if not isinstance(slots, list) or len(slots) != 4:
            if isinstance(slots, list) and len(slots) < 4:
                raise DanglingHalfEdge(f"crossing {cid} wires only {len(slots)} of 4 slots")
            raise SchemaError(f"crossing {cid}: slots must list 4 edge ids")
        crossings.append(Crossing(cid, 1 if sign == "+" else -1))
        for s, eid in enumerate(slots):
            if eid is None:
                raise DanglingHalfEdge(f"crossing {cid} slot {s} is not wired")
            sockets.setdefault(str(eid), []).append(HalfEdge(cid, s))
    counts = Counter(c.id for c in crossings)
    dup = [cid for cid, k in counts.items() if k > 1]
    if dup:
        raise SchemaError(f"duplicate crossing ids: {dup}")
    edges = []
    for eid, ends in sockets.items():
        if len(ends) == 1:
            raise DanglingHalfEdge(f"edge {eid} has only one end ({ends[0]})")
        if len(ends) > 2:
            raise DuplicateSocket(f"edge {eid} occurs {len(ends)} times")
        edges.append(tuple(ends))
    d = VirtualDiagram(tuple(crossings), tuple(edges), loops)
    report = validate(d)
    if not report.valid:
        v = report.violations[0]
        cls = {"DanglingHalfEdge": DanglingHalfEdge, "DuplicateSocket": DuplicateSocket}.get(
            v.kind, SchemaError
        )
        raise cls(str(v))
    if "orientation" in data:
        _check_orientation(d, data["orientation"], sockets)
    return d


def _check_orientation(d: VirtualDiagram, block, sockets) -> None:
    if not isinstance(block, dict):
        raise SchemaError("'orientation' must map edge ids to 'ID:SLOT' tails")
    ids = d.crossing_ids
    tails = set()
    for eid, tail in block.items():
        if str(eid) not in sockets:
            raise SchemaError(f"orientation names unknown edge {eid}")
        h = _half_edge_from_text(tail)
        if h not in sockets[str(eid)]:
            raise SchemaError(f"orientation tail {tail} is not an end of edge {eid}")
        tails.add(4 * ids.index(h.crossing) + h.slot)
    if len(block) != len(sockets):
        raise SchemaError("orientation must direct every edge")
    entries = {i ^ 2 for i in tails}
    # a coherent orientation exits each crossing opposite to where it entered
    if entries & tails:
        raise SchemaError("orientation does not pass straight through every crossing")
    for i in range(d.n):
        under_in = 4 * i if 4 * i in entries else 4 * i + 2
        over_in = 4 * i + 3 if 4 * i + 3 in entries else 4 * i + 1
        g = 1 if ((under_in % 4 == 0) == (over_in % 4 == 3)) else -1
        if g != d.crossings[i].sign:
            raise SignInconsistent(f"orientation contradicts the sign of crossing {ids[i]}")


def diagram_to_dict(d: VirtualDiagram, with_orientation: bool = False) -> dict:
    """Canonical JSON-ready dict: crossings sorted by id, edges named e1, e2, ..."""
    names = {}
    for k, (a, b) in enumerate(d.edges):
        names[a] = names[b] = f"e{k + 1}"
    out = {
        "crossings": [
            {
                "id": c.id,
                "sign": "+" if c.sign > 0 else "-",
                "slots": [names[HalfEdge(c.id, s)] for s in range(4)],
            }
            for c in d.crossings
        ],
        "free_loops": d.free_loops,
    }
    if with_orientation and d.n:
        ent = orientation(d)
        ids = d.crossing_ids
        block = {}
        for a, b in d.edges:
            ia = 4 * ids.index(a.crossing) + a.slot
            tail = b if ia in ent else a
            block[names[a]] = str(tail)
        out["orientation"] = dict(sorted(block.items(), key=lambda kv: id_key(kv[0][1:])))
    return out


def serialize_diagram(d: VirtualDiagram, with_orientation: bool = False, indent=None) -> str:
    return json.dumps(diagram_to_dict(d, with_orientation), indent=indent)


def load_diagrams(path: str) -> list:
    """Read a ``.json`` diagram file or a ``.gauss`` file (one knot per line)."""
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return [parse_diagram_json(text)]
    lines = [ln.strip() for ln in text.splitlines()]
    return [parse_gauss(ln) for ln in lines if ln and not ln.startswith("#")]
