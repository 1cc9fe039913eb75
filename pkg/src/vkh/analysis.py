"""Pipelines built on top of the homology: cabled and covered invariants, classicality tests."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from vkh.atoms import detect_one_one
from vkh.cover import cover_invariant
from vkh.diagram.cable import cable
from vkh.diagram.core import VirtualDiagram
from vkh.errors import NoRoot
from vkh.khovanov.complex import normalize_field
from vkh.khovanov.homology import BettiTable, khovanov, split_even_odd, tensor_sqrt
from vkh.khovanov.local import scan_homology

OBSTRUCTED = "obstructed_non_classical"
INCONCLUSIVE = "inconclusive"


def kh_doubled(d: VirtualDiagram, k: int = 2, field="z2", check_good: bool = True) -> BettiTable:
    """Khovanov homology of the k-strand cable of ``d`` (k even).

    The cable of a framed diagram has an orientable atom, so its cube has no
    1->1 edge and any field works.  ``check_good`` confirms that by a full
    scan of the cube before computing.
    """
    if k <= 0 or k % 2:
        raise ValueError(f"cable multiplicity must be even and positive, got {k}")
    field = normalize_field(field)
    c = cable(d, k)
    if check_good:
        bad = detect_one_one(c)
        assert not bad, f"cable has a 1->1 edge: {bad[0]}"
    return scan_homology(c, field)


@dataclass(frozen=True)
class Verdict:
    outcome: str
    evidence: Optional[Any] = None
    reason: str = ""

    def __post_init__(self):
        if self.outcome not in (OBSTRUCTED, INCONCLUSIVE):
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.outcome == OBSTRUCTED and self.evidence is None:
            raise ValueError("an obstruction needs evidence")

    @property
    def obstructed(self) -> bool:
        return self.outcome == OBSTRUCTED

    def as_dict(self) -> dict:
        ev = self.evidence
        if isinstance(ev, dict):
            ev = {k: str(v) for k, v in ev.items()}
        elif ev is not None:
            ev = str(ev)
        return {"outcome": self.outcome, "reason": self.reason, "evidence": ev}


def classicality_check(d: VirtualDiagram, field="z2") -> Verdict:
    """Look for a proof that ``d`` is not equivalent to a classical link.

    Two tests: a classical link has homology in a single j-parity, and when
    some diagram of the link has an orientable atom the homology of the
    double cover is a tensor square.  Passing both proves nothing.
    """
    table = khovanov(d, "z2")
    even, odd = split_even_odd(table)
    if even.total() and odd.total():
        return Verdict(OBSTRUCTED, {"even": even.poincare(), "odd": odd.poincare()},
                       "homology occupies both parities of j")
    cover = cover_invariant(d, field)
    try:
        tensor_sqrt(cover.poincare())
    except NoRoot as err:
        return Verdict(OBSTRUCTED, {"cover": cover.poincare(), "no_root": err},
                       "cover homology is not a tensor square")
    return Verdict(INCONCLUSIVE, None, "no obstruction found")
