"""Bigraded homology tables and what is read off them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import isqrt

from vkh.errors import NoRoot
from vkh.khovanov.complex import QQ, Z2, GradedComplex, chain_complex, normalize_field
from vkh.khovanov.linalg import rank_gf2, rank_q
from vkh.polynomial import LaurentPoly, Poincare2


@dataclass(frozen=True)
class BettiTable:
    """Dimensions b[i, j] of the homology over ``field``; zero entries are dropped."""

    field: str
    dims: tuple  # sorted ((i, j), dim) pairs

    @classmethod
    def from_dict(cls, field: str, dims: dict) -> "BettiTable":
        return cls(normalize_field(field), tuple(sorted((k, v) for k, v in dims.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.dims)

    def __getitem__(self, key) -> int:
        return self.as_dict().get(tuple(key), 0)

    def total(self) -> int:
        return sum(v for _, v in self.dims)

    def poincare(self) -> Poincare2:
        return Poincare2(self.as_dict())

    def tsv(self) -> str:
        lines = [f"{i}\t{j}\t{v}" for (i, j), v in self.dims]
        lines.append(f"P(t,q) = {self.poincare()}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({
            "field": self.field,
            "table": [{"i": i, "j": j, "dim": v} for (i, j), v in self.dims],
            "poincare": str(self.poincare()),
        })

    def __str__(self):
        return self.tsv()


def _rank(cx: GradedComplex, key) -> int:
    rows = cx.rows.get(key)
    if not rows:
        return 0
    if cx.field == Z2:
        bitrows = []
        for row in rows:
            v = 0
            for pos in row:
                v |= 1 << pos
            bitrows.append(v)
        return rank_gf2(bitrows)
    return rank_q(rows)


def homology(cx: GradedComplex) -> BettiTable:
    """b[i,j] = dim C[i,j] - rank d[i,j] - rank d[i-1,j]."""
    ranks = {key: _rank(cx, key) for key in cx.blocks}
    dims = {}
    for (i, j), gens in cx.blocks.items():
        b = len(gens) - ranks[(i, j)] - ranks.get((i - 1, j), 0)
        assert b >= 0
        if b:
            dims[(i, j)] = b
    return BettiTable.from_dict(cx.field, dims)


def khovanov(d, field="z2") -> BettiTable:
    """Homology of the full cube complex of ``d``."""
    return homology(chain_complex(d, field))


def euler_char(table: BettiTable) -> LaurentPoly:
    terms = {}
    for (i, j), v in table.dims:
        terms[j] = terms.get(j, 0) + (-1) ** (i % 2) * v
    return LaurentPoly(terms)


def split_even_odd(table: BettiTable):
    """(part with even j, part with odd j)."""
    even = {k: v for k, v in table.dims if k[1] % 2 == 0}
    odd = {k: v for k, v in table.dims if k[1] % 2}
    return BettiTable.from_dict(table.field, even), BettiTable.from_dict(table.field, odd)


def tensor_product(a: BettiTable, b: BettiTable) -> BettiTable:
    return BettiTable.from_dict(a.field, (a.poincare() * b.poincare()).terms)


def tensor_sqrt(p: Poincare2) -> Poincare2:
    """The unique r with non-negative integer coefficients and r * r = p.

    Monomials t^i q^j are ordered lexicographically by (i, j), an order
    compatible with multiplication; the lowest term of r is the square root
    of the lowest term of p, and each further term of r is read off the
    lowest term of the remaining residual.
    """
    if not p.terms:
        return Poincare2()
    if not p.nonnegative():
        raise NoRoot("coefficients must be non-negative")
    (i0, j0) = min(p.terms)
    c0 = p.terms[(i0, j0)]
    if i0 % 2 or j0 % 2 or isqrt(c0) ** 2 != c0:
        raise NoRoot(f"lowest term {c0} t^{i0} q^{j0} is not a square")
    low = (i0 // 2, j0 // 2)
    lead = isqrt(c0)
    root = {low: lead}
    top = max(p.terms)
    for _ in range(len(p.terms) + 1):
        residual = p - Poincare2(root) * Poincare2(root)
        if not residual.terms:
            return Poincare2(root)
        m = min(residual.terms)
        c = residual.terms[m]
        e = (m[0] - low[0], m[1] - low[1])
        if c < 0 or c % (2 * lead) or e <= low or (e[0] + low[0], e[1] + low[1]) > top:
            raise NoRoot(f"no square root: stuck at {c} t^{m[0]} q^{m[1]}")
        root[e] = c // (2 * lead)
    raise NoRoot("no square root")
