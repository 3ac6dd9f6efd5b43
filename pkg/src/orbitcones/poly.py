"""Sparse multivariate polynomials with rational coefficients.

Just enough algebra to build the minors of a matrix of linear forms and to
substitute a parametrization into them.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Mapping

Monomial = tuple[tuple[str, int], ...]


def _var_key(name: str):
    # x10 sorts after x9
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda ve: _var_key(ve[0])))


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): Fraction(1)})

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        return reduce(lambda a, b: a * b, [self] * n, Poly.const(1))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def variables(self) -> list[str]:
        names = {v for m in self.terms for v, _ in m}
        return sorted(names, key=_var_key)

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e for _, e in m) for m in self.terms}) <= 1

    def subs(self, values: Mapping[str, "Poly | int | Fraction"]) -> "Poly":
        out = Poly()
        for m, c in self.terms.items():
            term = Poly.const(c)
            for v, e in m:
                base = values.get(v, Poly.var(v))
                term = term * (self._lift(base) ** e)
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at a point; values may be Fractions or Scalars."""
        total = 0
        for m, c in self.terms.items():
            term = c
            for v, e in m:
                term = values[v] ** e * term
            total = term + total
        return total

    def exponent_vector(self, m: Monomial, order: list[str]) -> tuple[int, ...]:
        exps = dict(m)
        return tuple(exps.get(v, 0) for v in order)

    def sorted_terms(self, order: list[str] | None = None) -> list[tuple[Monomial, Fraction]]:
        """Terms in lexicographic order (first variable most significant)."""
        order = order or self.variables()
        return sorted(self.terms.items(), key=lambda mc: self.exponent_vector(mc[0], order), reverse=True)

    def primitive(self, order: list[str] | None = None) -> "Poly":
        """Integer multiple with coprime coefficients and positive lex-leading coefficient."""
        if self.is_zero():
            return self
        den = lcm(*(c.denominator for c in self.terms.values()))
        ints = {m: int(c * den) for m, c in self.terms.items()}
        g = reduce(gcd, ints.values())
        lead = self.sorted_terms(order)[0][0]
        if ints[lead] < 0:
            g = -g
        return Poly({m: Fraction(c, g) for m, c in ints.items()})

    def format(self, order: list[str] | None = None) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms(order)):
            sign = "-" if c < 0 else "+"
            c = abs(c)
            factors = [v if e == 1 else f"{v}^{e}" for v, e in m]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            body = "*".join(factors)
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self})"
