"""Exact ranks over GF(2) and over the rationals."""

from __future__ import annotations

from math import gcd


def rank_gf2(rows) -> int:
    """Rank of a GF(2) matrix whose rows are Python ints used as bitsets."""
    pivots = {}
    rank = 0
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = row
                rank += 1
                break
            row ^= p
    return rank


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    lead = row[max(row)]
    if lead < 0:
        g = -g
    return {k: v // g for k, v in row.items()}


def rank_q(rows) -> int:
    """Rank over Q of integer rows given as {column: value} dicts.

    Fraction-free: each reduction step scales by the pivot entry instead of
    dividing, and rows are kept primitive (content 1) to bound growth.
    """
    pivots = {}
    rank = 0
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            lead = max(row)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = _primitive(row)
                rank += 1
                break
            a, b = p[lead], row[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in row.items()}
            for k, v in p.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
    return rank
