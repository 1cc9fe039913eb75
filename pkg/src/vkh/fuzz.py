"""Randomized invariance checks: rewrite random diagrams by moves and compare invariants."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Optional

from vkh.analysis import kh_doubled
from vkh.budget import state_budget
from vkh.cover import cover_invariant
from vkh.diagram.codes import serialize_diagram
from vkh.diagram.core import VirtualDiagram, virtualize
from vkh.diagram.generate import random_diagram
from vkh.diagram.moves import FRAMED_KINDS, KINDS, MoveSpec, apply_move, sites
from vkh.khovanov.local import kh_table
from vkh.state_sum import jhat, kauffman_a

VIRTUALIZE = "virtualize"
INVARIANTS = ("jhat", "bracket", "kh_z2", "kh_doubled", "kh_cover")
FRAMED_INVARIANTS = ("bracket", "kh_doubled")
VIRTUALIZE_SAFE = ("jhat", "kh_z2")
_INSERTS = ("R1_insert", "R1sq_insert", "R2_insert")
_GROWTH = {"R1_insert": 1, "R1sq_insert": 2, "R2_insert": 2}
_MOVE_ALIASES = {
    "R1": ("R1_insert", "R1_delete"),
    "R1sq": ("R1sq_insert", "R1sq_delete"),
    "R1^2": ("R1sq_insert", "R1sq_delete"),
    "R1²": ("R1sq_insert", "R1sq_delete"),
    "R2": ("R2_insert", "R2_delete"),
    "R3": ("R3",),
    "V": (VIRTUALIZE,),
}


def parse_moves(spec) -> tuple:
    """Move kinds from names like "R1,R2,R3", "framed", "all" or exact kinds."""
    if isinstance(spec, str):
        spec = [s for s in spec.replace(" ", "").split(",") if s]
    out = []
    for name in spec:
        if name == "all":
            out.extend(KINDS)
        elif name == "framed":
            out.extend(FRAMED_KINDS)
        elif name in _MOVE_ALIASES:
            out.extend(_MOVE_ALIASES[name])
        elif name in KINDS or name == VIRTUALIZE:
            out.append(name)
        else:
            raise ValueError(f"unknown move {name!r}")
    return tuple(dict.fromkeys(out))


def _cost(inv: str, n: int) -> int:
    """Number of crossings whose state cube the invariant enumerates."""
    if inv in ("jhat", "bracket"):
        return n
    if inv == "kh_doubled":
        return 4 * n  # 1->1 scan of the 2-cable
    return 0  # computed by scanning


@dataclass(frozen=True)
class FuzzConfig:
    """``moves=None`` means every move when only unframed invariants are
    checked and the framed moves otherwise; an explicit list is used as is."""

    moves: Optional[tuple] = None
    max_crossings: int = 8
    iterations: int = 100
    seed: int = 0
    invariants: tuple = ("jhat", "kh_z2")
    budget: Optional[int] = None
    max_moves: int = 6
    fields: tuple = ("z2",)
    components: int = 2
    base: Optional[VirtualDiagram] = None

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")
        for inv in self.invariants:
            if inv not in INVARIANTS:
                raise ValueError(f"unknown invariant {inv!r}")
        if self.moves is not None:
            object.__setattr__(self, "moves", parse_moves(self.moves))

    def move_kinds(self) -> tuple:
        if self.moves is not None:
            return self.moves
        if any(inv in FRAMED_INVARIANTS for inv in self.invariants):
            return FRAMED_KINDS
        if set(self.invariants) <= set(VIRTUALIZE_SAFE):
            return KINDS + (VIRTUALIZE,)
        return KINDS


@dataclass(frozen=True)
class Mismatch:
    iteration: int
    seed: int
    invariant: str
    before: str
    after: str
    moves: tuple
    value_before: str
    value_after: str

    def as_dict(self) -> dict:
        return dict(self.__dict__, moves=[list(m) for m in self.moves])


@dataclass
class FuzzReport:
    config: FuzzConfig
    iterations: int = 0
    moves_applied: int = 0
    checks: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        return (f"{self.iterations} iterations, {self.moves_applied} moves, {self.checks} checks, "
                f"{len(self.mismatches)} mismatches")

    def to_json(self) -> str:
        return json.dumps({
            "iterations": self.iterations, "moves_applied": self.moves_applied,
            "checks": self.checks, "mismatches": [m.as_dict() for m in self.mismatches],
        }, indent=2)


def _evaluate(d: VirtualDiagram, inv: str, fields) -> dict:
    if inv == "jhat":
        return {"": jhat(d)}
    if inv == "bracket":
        return {"": kauffman_a(d)}
    if inv == "kh_z2":
        return {"": kh_table(d, "z2")}
    if inv == "kh_doubled":
        return {f: kh_doubled(d, 2, f) for f in fields}
    if inv == "kh_cover":
        return {f: cover_invariant(d, f) for f in fields}
    raise ValueError(inv)


def _fits(n: int, invariants, budget: int) -> bool:
    return all(1 << _cost(inv, n) <= budget for inv in invariants)


def random_move(d: VirtualDiagram, kinds, rng: random.Random, room: int):
    """A random applicable move; ``room`` bounds how many crossings it may add.

    Kinds whose pattern is absent fall back to an insert.  Returns None when
    nothing fits.
    """
    order = list(kinds)
    rng.shuffle(order)
    inserts = [k for k in order if k in _INSERTS and _GROWTH[k] <= room]
    for kind in order + inserts:
        if kind in _INSERTS and _GROWTH[kind] > room:
            continue
        if kind == VIRTUALIZE:
            if d.n:
                return (VIRTUALIZE, rng.choice(d.crossing_ids))
            continue
        options = sites(d, kind)
        if not options:
            continue
        return MoveSpec(kind, rng.choice(options), sign=rng.choice((1, -1)),
                        left=rng.random() < 0.5, reverse=rng.random() < 0.5)
    return None


def _apply(d: VirtualDiagram, move) -> VirtualDiagram:
    if isinstance(move, tuple):
        return virtualize(d, move[1])
    return apply_move(d, move)


def _describe(move) -> tuple:
    if isinstance(move, tuple):
        return move
    return (move.kind, repr(move.site), move.sign, move.left, move.reverse)


def run_iteration(cfg: FuzzConfig, index: int, seed: int, report: FuzzReport) -> None:
    rng = random.Random(seed)
    budget = cfg.budget or state_budget()
    kinds = cfg.move_kinds()
    cap = max(n for n in range(64) if _fits(n, cfg.invariants, budget))
    if cfg.base is not None:
        d0 = cfg.base
    else:
        top = min(cfg.max_crossings, cap)
        d0 = random_diagram(rng.randint(0, top), rng.randint(1, cfg.components), seed=rng)
    d, applied = d0, []
    for _ in range(rng.randint(1, cfg.max_moves)):
        move = random_move(d, kinds, rng, cap - d.n)
        if move is None:
            break
        d = _apply(d, move)
        applied.append(_describe(move))
    report.iterations += 1
    report.moves_applied += len(applied)
    for inv in cfg.invariants:
        before, after = _evaluate(d0, inv, cfg.fields), _evaluate(d, inv, cfg.fields)
        for key in before:
            report.checks += 1
            if before[key] != after[key]:
                name = f"{inv}[{key}]" if key else inv
                report.mismatches.append(Mismatch(
                    index, seed, name, serialize_diagram(d0), serialize_diagram(d),
                    tuple(applied), str(before[key]), str(after[key])))


def iteration_seeds(cfg: FuzzConfig) -> list:
    rng = random.Random(cfg.seed)
    return [rng.getrandbits(64) for _ in range(cfg.iterations)]


def invariance_fuzz(cfg: FuzzConfig) -> FuzzReport:
    """Apply random move sequences and compare every selected invariant.

    Iteration k draws everything from its own seed, so any mismatch can be
    replayed alone with ``run_iteration``.
    """
    report = FuzzReport(cfg)
    for index, seed in enumerate(iteration_seeds(cfg)):
        run_iteration(cfg, index, seed, report)
    return report
