"""Exact multivariate polynomials over the rationals.

Monomials are exponent tuples; coefficients are Python ints or Fractions
(both exact, freely mixed).  Polynomials are immutable once built.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

Monomial = tuple[int, ...]


class ZeroPolynomialError(ValueError):
    pass


class MonomialOrder(Enum):
    GREVLEX = "grevlex"
    GRLEX = "grlex"
    LEX = "lex"

    @property
    def is_graded(self) -> bool:
        return self is not MonomialOrder.LEX

    def key(self, mono: Monomial):
        """Ascending sort key: key(a) < key(b) iff a < b in this order."""
        if self is MonomialOrder.LEX:
            return mono
        if self is MonomialOrder.GRLEX:
            return (sum(mono), mono)
        return (sum(mono), tuple(-e for e in reversed(mono)))

    def heap_key(self, mono: Monomial):
        """Min-heap key whose smallest element is the leading monomial."""
        if self is MonomialOrder.LEX:
            return tuple(-e for e in mono)
        if self is MonomialOrder.GRLEX:
            return (-sum(mono), tuple(-e for e in mono))
        return (-sum(mono), tuple(reversed(mono)))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))

def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))

def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))

def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))

def mono_degree(a: Monomial) -> int:
    return sum(a)


class Poly:
    """Polynomial as a monomial -> coefficient map with no zero entries."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        clean: dict[Monomial, object] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError("monomial length does not match variable count")
                if any(e < 0 for e in m):
                    raise ValueError("negative exponent")
                if c != 0:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        # internal: terms already canonical (no zeros, valid keys)
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, c, nvars: int) -> "Poly":
        if c == 0:
            return cls.zero(nvars)
        return cls._raw(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, j: int, nvars: int) -> "Poly":
        if not 0 <= j < nvars:
            raise ValueError("variable index out of range")
        m = tuple(1 if i == j else 0 for i in range(nvars))
        return cls._raw(nvars, {m: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        return Poly._raw(self.nvars, res)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            s = res.get(m, 0) - c
            if s:
                res[m] = s
            elif m in res:
                del res[m]
        return Poly._raw(self.nvars, res)

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        res: dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = res.get(m, 0) + c1 * c2
                if s:
                    res[m] = s
                elif m in res:
                    del res[m]
        return Poly._raw(self.nvars, res)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def coefficient(self, mono: Monomial):
        return self.terms.get(mono, 0)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial")
        return min(sum(m) for m in self.terms)

    def lowest_degree_form(self) -> "Poly":
        """The homogeneous component of minimal total degree."""
        d = self.min_degree()
        return Poly._raw(self.nvars, {m: c for m, c in self.terms.items() if sum(m) == d})

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        it = iter(self.terms)
        d = sum(next(it))
        return all(sum(m) == d for m in it)

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial")
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder) -> "Poly":
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        return Poly._raw(self.nvars, {m: Fraction(c) / lc for m, c in self.terms.items()})

    def content_normalized(self) -> "Poly":
        """Scale to integer coefficients with content 1 and positive lead (grevlex)."""
        if not self.terms:
            return self
        from math import gcd, lcm
        den = 1
        for c in self.terms.values():
            den = lcm(den, Fraction(c).denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, Fraction(c * den).numerator)
        scale = Fraction(den, num)
        out = {m: int(c * scale) for m, c in self.terms.items()}
        if out[max(out, key=MonomialOrder.GREVLEX.key)] < 0:
            out = {m: -c for m, c in out.items()}
        return Poly._raw(self.nvars, out)

    def render(self, order: MonomialOrder = MonomialOrder.GREVLEX) -> str:
        """Canonical text form: terms sorted descending, explicit signs."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            neg = c < 0
            mag = -c if neg else c
            factors = [
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(m)
                if e != 0
            ]
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if not parts:
                parts.append(("- " if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.render()})"


def poly_from_terms(nvars: int, terms: Iterable[tuple[Monomial, object]]) -> Poly:
    acc: dict[Monomial, object] = {}
    for m, c in terms:
        s = acc.get(m, 0) + c
        if s:
            acc[m] = s
        elif m in acc:
            del acc[m]
    return Poly(nvars, acc)


def one_minus_var(j: int, nvars: int) -> Poly:
    """The ring element 1 - x_{j+1} (the class of the j-th line bundle)."""
    return Poly.constant(1, nvars) - Poly.variable(j, nvars)
