"""Exact arithmetic on the projective line over Q and small prime fields.

Values carry their field: ``q == 0`` means the rationals, otherwise ``q`` is
a prime and the value is a residue mod ``q``.  Python ints (and, for Q,
``Fraction``) are coerced into whatever field the other operand lives in.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

MAX_PRIME = 2**16


class FieldMismatch(ValueError):
    pass


class DegenerateConfiguration(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_field(q: int) -> int:
    if q == 0:
        return 0
    if not (_is_prime(q) and q <= MAX_PRIME):
        raise ValueError(f"field characteristic must be 0 or a prime <= 2^16, got {q}")
    return q


class Scalar:
    """An element of Q (``q == 0``) or of F_q."""

    __slots__ = ("value", "q")

    def __init__(self, value, q: int = 0):
        if isinstance(value, Scalar):
            if value.q != q:
                raise FieldMismatch(f"cannot move F_{value.q or 'Q'} value into F_{q or 'Q'}")
            value = value.value
        if q == 0:
            value = Fraction(value)
        else:
            frac = Fraction(value)
            den = frac.denominator % q
            if den == 0:
                raise ZeroDivisionError(f"denominator of {frac} vanishes mod {q}")
            value = frac.numerator * pow(den, -1, q) % q
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.q != self.q:
                raise FieldMismatch(f"mixed-field arithmetic: {self.q} vs {other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other, self.q)
        return NotImplemented

    def _make(self, value) -> "Scalar":
        s = object.__new__(Scalar)
        object.__setattr__(s, "value", value % self.q if self.q else value)
        object.__setattr__(s, "q", self.q)
        return s

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._make(self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._make(self.value - other.value)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._make(self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.value)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.q:
            return self._make(pow(self.value, -1, self.q))
        return self._make(1 / self.value)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        if self.q:
            return self._make(pow(self.value, n, self.q))
        return self._make(self.value**n)

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.q == other.q and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == Scalar(other, self.q).value
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.q, self.value))

    def __repr__(self):
        return f"Scalar({self}, q={self.q})" if self.q else f"Scalar({self})"

    def __str__(self):
        return str(self.value)

    @classmethod
    def parse(cls, text: str, q: int = 0) -> "Scalar":
        return cls(Fraction(text.strip()), q)


def zero(q: int = 0) -> Scalar:
    return Scalar(0, q)


def one(q: int = 0) -> Scalar:
    return Scalar(1, q)


def det2(x: "P1Point", y: "P1Point") -> Scalar:
    """The 2x2 determinant x.a*y.b - x.b*y.a of homogeneous coordinates."""
    return x.a * y.b - x.b * y.a


class P1Point:
    """A point [a : b] of P^1, stored as [x : 1] or [1 : 0] (infinity)."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=1, q: int | None = None):
        if q is None:
            q = a.q if isinstance(a, Scalar) else b.q if isinstance(b, Scalar) else 0
        a, b = Scalar(a, q) if not isinstance(a, Scalar) else a, Scalar(b, q) if not isinstance(b, Scalar) else b
        if a.q != b.q:
            raise FieldMismatch("homogeneous coordinates over different fields")
        if b:
            a, b = a / b, one(a.q)
        elif a:
            a, b = one(a.q), zero(a.q)
        else:
            raise DegenerateConfiguration("(0 : 0) is not a point of P^1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("P1Point is immutable")

    @classmethod
    def inf(cls, q: int = 0) -> "P1Point":
        return cls(1, 0, q=q)

    @classmethod
    def parse(cls, text: str, q: int = 0) -> "P1Point":
        text = text.strip()
        if text.lower() in ("inf", "infinity", "oo"):
            return cls.inf(q)
        return cls(Scalar.parse(text, q), 1, q=q)

    @property
    def q(self) -> int:
        return self.a.q

    def is_inf(self) -> bool:
        return self.b.is_zero()

    def is_zero(self) -> bool:
        return self.a.is_zero()

    @property
    def value(self) -> Scalar | None:
        """Affine coordinate, or None at infinity."""
        return None if self.is_inf() else self.a

    def reduce(self, q: int) -> "P1Point":
        """Reduce a rational point modulo the prime ``q``."""
        if self.q != 0:
            raise FieldMismatch("only rational points can be reduced")
        if self.is_inf():
            return P1Point.inf(q)
        v = self.a.value
        # [n/d : 1] = [n : d], which stays a valid point mod q when d = 0 mod q
        return P1Point(Scalar(v.numerator, q), Scalar(v.denominator, q), q=q)

    def __eq__(self, other):
        if not isinstance(other, P1Point):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __str__(self):
        return "inf" if self.is_inf() else str(self.a)

    def __repr__(self):
        return f"P1Point({self})" if self.q == 0 else f"P1Point({self}, q={self.q})"


def point(x, q: int = 0) -> P1Point:
    """Build a point from an int, Fraction, Scalar, string or 'inf'."""
    if isinstance(x, P1Point):
        return x
    if isinstance(x, str):
        return P1Point.parse(x, q)
    if isinstance(x, Scalar):
        return P1Point(x, 1, q=x.q)
    return P1Point(x, 1, q=q)


def parse_points(text: str, q: int = 0) -> list[P1Point]:
    """Parse a comma separated list like ``"inf,0,1,1/2"``."""
    return [P1Point.parse(tok, q) for tok in text.split(",") if tok.strip()]


def format_points(points: Iterable[P1Point]) -> str:
    return ",".join(str(p) for p in points)


def _common_field(items) -> int:
    fields = {x.q for x in items}
    if len(fields) > 1:
        raise FieldMismatch(f"objects over different fields: {sorted(fields)}")
    return fields.pop()


class Moebius:
    """An element of PGL(2): an invertible 2x2 matrix up to scalars.

    Entries are scaled so that the first nonzero one (row-major) is 1.
    """

    __slots__ = ("entries",)

    def __init__(self, m11, m12, m21, m22, q: int | None = None):
        raw = (m11, m12, m21, m22)
        if q is None:
            q = next((x.q for x in raw if isinstance(x, Scalar)), 0)
        ents = [x if isinstance(x, Scalar) else Scalar(x, q) for x in raw]
        _common_field(ents)
        if (ents[0] * ents[3] - ents[1] * ents[2]).is_zero():
            raise DegenerateConfiguration("singular matrix does not define a Moebius map")
        lead = next(x for x in ents if x)
        inv = lead.inverse()
        object.__setattr__(self, "entries", tuple(x * inv for x in ents))

    def __setattr__(self, name, value):
        raise AttributeError("Moebius is immutable")

    @classmethod
    def identity(cls, q: int = 0) -> "Moebius":
        return cls(1, 0, 0, 1, q=q)

    @property
    def q(self) -> int:
        return self.entries[0].q

    def det(self) -> Scalar:
        m11, m12, m21, m22 = self.entries
        return m11 * m22 - m12 * m21

    def __call__(self, x: P1Point) -> P1Point:
        return apply(self, x)

    def __mul__(self, other: "Moebius") -> "Moebius":
        if not isinstance(other, Moebius):
            return NotImplemented
        if other.q != self.q:
            raise FieldMismatch("composing Moebius maps over different fields")
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Moebius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "Moebius":
        a, b, c, d = self.entries
        return Moebius(d, -b, -c, a)

    def is_identity(self) -> bool:
        return self == Moebius.identity(self.q)

    def __eq__(self, other):
        if not isinstance(other, Moebius):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "Moebius(%s)" % ", ".join(str(x) for x in self.entries)

    def __str__(self):
        a, b, c, d = self.entries
        return f"({a},{b};{c},{d})"


def apply(g: Moebius, x: P1Point) -> P1Point:
    if g.q != x.q:
        raise FieldMismatch("Moebius map and point over different fields")
    m11, m12, m21, m22 = g.entries
    return P1Point(m11 * x.a + m12 * x.b, m21 * x.a + m22 * x.b)


def cross_ratio(a: P1Point, b: P1Point, c: P1Point, d: P1Point) -> P1Point:
    """The cross-ratio ((a-c)(b-d))/((a-d)(b-c)) as a point of P^1.

    Computed from homogeneous determinants, so infinity needs no special
    casing; the value is infinity when only the denominator vanishes.
    """
    _common_field((a, b, c, d))
    num = det2(a, c) * det2(b, d)
    den = det2(a, d) * det2(b, c)
    if num.is_zero() and den.is_zero():
        raise DegenerateConfiguration("cross-ratio undefined: too many coincident points")
    return P1Point(num, den)


def _to_standard(z1: P1Point, z2: P1Point, z3: P1Point) -> Moebius:
    # sends z1 -> inf, z2 -> 0, z3 -> 1
    k1 = det2(z3, z1)
    k2 = det2(z3, z2)
    return Moebius(z2.b * k1, -z2.a * k1, z1.b * k2, -z1.a * k2)


def find_moebius(src: Sequence[P1Point], dst: Sequence[P1Point]) -> Moebius:
    """The unique Moebius map sending the triple ``src`` to ``dst``."""
    if len(src) != 3 or len(dst) != 3:
        raise ValueError("find_moebius needs exactly three source and three target points")
    _common_field(list(src) + list(dst))
    for name, triple in (("source", src), ("target", dst)):
        for x, y in combinations(triple, 2):
            if x == y:
                raise DegenerateConfiguration(f"repeated point {x} in {name} triple")
    return _to_standard(*dst).inverse() * _to_standard(*src)
