"""Exact-integer Laurent polynomials in one variable and bigraded Poincare polynomials."""

from __future__ import annotations

import re

from vkh.errors import NotDivisible


class LaurentPoly:
    """Sum of c * var^e with integer c and integer e; zero terms are never stored."""

    __slots__ = ("terms", "var")

    def __init__(self, terms=None, var: str = "q"):
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                clean[int(e)] = clean.get(int(e), 0) + int(c)
        self.terms = {e: c for e, c in clean.items() if c}
        self.var = var

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, var: str = "q") -> "LaurentPoly":
        return cls({exp: coeff}, var)

    @classmethod
    def const(cls, c: int, var: str = "q") -> "LaurentPoly":
        return cls({0: c}, var)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.var != self.var and not (set(other.terms) <= {0} or set(self.terms) <= {0}):
                raise ValueError(f"cannot combine polynomials in {self.var} and {other.var}")
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def _joint_var(self, other) -> str:
        return self.var if set(self.terms) - {0} else other.var

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self._joint_var(other))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self._joint_var(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = LaurentPoly({0: 1}, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by var^k."""
        return LaurentPoly({e + k: c for e, c in self.terms.items()}, self.var)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, e: int) -> int:
        return self.terms.get(e, 0)

    def degrees(self):
        return (min(self.terms), max(self.terms)) if self.terms else (0, 0)

    def evaluate(self, x):
        return sum(c * x**e for e, c in self.terms.items())

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient of an exact division; raises NotDivisible on a non-zero remainder."""
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return LaurentPoly({}, self.var)
        lo_o, hi_o = other.degrees()
        lead = other.terms[hi_o]
        rem = dict(self.terms)
        quot = {}
        while rem:
            hi = max(rem)
            if hi - hi_o < min(rem) - lo_o or rem[hi] % lead:
                raise NotDivisible(f"{self} is not divisible by {other}")
            k, c = hi - hi_o, rem[hi] // lead
            quot[k] = c
            for e, oc in other.terms.items():
                rem[e + k] = rem.get(e + k, 0) - c * oc
                if not rem[e + k]:
                    del rem[e + k]
        return LaurentPoly(quot, self.var)

    def __str__(self):
        return format_terms(sorted(self.terms.items()), lambda e: _power(self.var, e))

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


def format_terms(items, mono) -> str:
    """Join (key, coeff) pairs as 'c1 m1 + c2 m2 - ...'."""
    parts = []
    for key, c in items:
        m = mono(key)
        mag = abs(c)
        body = m if (mag == 1 and m) else (f"{mag} {m}".strip() if m else str(mag))
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*((?:[a-z]\s*(?:\^\s*\(?-?\d+\)?)?\s*\*?\s*)*)")
_FACTOR = re.compile(r"([a-z])\s*(?:\^\s*\(?(-?\d+)\)?)?")


def _parse_monomials(text: str):
    text = text.strip()
    if "=" in text:
        text = text.split("=", 1)[1]
    text = text.strip()
    if text in ("", "0"):
        return []
    out, pos = [], 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 10]!r}")
        sign, digits, factors = m.groups()
        if not digits and not factors.strip():
            raise ValueError(f"empty term near {text[pos:pos + 10]!r}")
        if pos and not sign:
            raise ValueError(f"missing operator near {text[pos:pos + 10]!r}")
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        powers = {}
        for var, exp in _FACTOR.findall(factors):
            powers[var] = powers.get(var, 0) + (int(exp) if exp else 1)
        out.append((powers, coeff))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_laurent(text: str, var: str = "q") -> LaurentPoly:
    terms = {}
    for powers, c in _parse_monomials(text):
        extra = set(powers) - {var}
        if extra:
            raise ValueError(f"unexpected variables {sorted(extra)} in a polynomial in {var}")
        e = powers.get(var, 0)
        terms[e] = terms.get(e, 0) + c
    return LaurentPoly(terms, var)


class Poincare2:
    """Two-variable polynomial sum b[i,j] t^i q^j, keyed by (i, j)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, c in (terms or {}).items():
            if c:
                key = (int(k[0]), int(k[1]))
                clean[key] = clean.get(key, 0) + int(c)
        self.terms = {k: c for k, c in clean.items() if c}

    def __mul__(self, other: "Poincare2") -> "Poincare2":
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return Poincare2(out)

    def __add__(self, other: "Poincare2") -> "Poincare2":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Poincare2(out)

    def __sub__(self, other: "Poincare2") -> "Poincare2":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) - c
        return Poincare2(out)

    def __eq__(self, other):
        return isinstance(other, Poincare2) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def total(self) -> int:
        return sum(self.terms.values())

    def __str__(self):
        def mono(key):
            i, j = key
            return " ".join(p for p in (_power("t", i), _power("q", j)) if p)

        return format_terms(sorted(self.terms.items()), mono)

    def __repr__(self):
        return f"Poincare2({str(self)!r})"


def parse_poincare(text: str) -> Poincare2:
    """Read text such as ``P(t,q) = q^-1 + q + t^2 q^5``."""
    terms = {}
    for powers, c in _parse_monomials(text):
        extra = set(powers) - {"t", "q"}
        if extra:
            raise ValueError(f"unexpected variables {sorted(extra)} in a Poincare polynomial")
        key = (powers.get("t", 0), powers.get("q", 0))
        terms[key] = terms.get(key, 0) + c
    return Poincare2(terms)
