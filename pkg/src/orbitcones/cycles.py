"""Intersection calculus on X(p): divisor and curve classes and their cones.

Divisor classes are written in the basis D_1..D_r (pull-backs of 0 under the
projections), curve classes in the basis C_1..C_r (the lines
inf^{i-1} x P^1 x inf^{r-i}).  The pairing is (D_i . C_j) = delta_ij.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

from . import linalg
from .linalg import RankDeficient


def _fracs(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


def format_fraction(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class _Class:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _fracs(self.coeffs))

    @property
    def r(self) -> int:
        return len(self.coeffs)

    @classmethod
    def basis(cls, r: int, i: int):
        """The i-th basis class, 1-based."""
        return cls(tuple(int(k == i) for k in range(1, r + 1)))

    @classmethod
    def zero(cls, r: int):
        return cls((0,) * r)

    def _check(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other.r != self.r:
            raise ValueError(f"dimension mismatch: {self.r} vs {other.r}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return type(self)(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return type(self)(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return type(self)(tuple(-a for a in self.coeffs))

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return type(self)(tuple(c * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coeffs)

    def to_json(self) -> list[str]:
        return [format_fraction(a) for a in self.coeffs]

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(Fraction(s) for s in data))

    def __str__(self):
        return "(" + ", ".join(self.to_json()) + ")"


class DivisorClass(_Class):
    pass


class CurveClass(_Class):
    pass


def pair(D: DivisorClass, C: CurveClass) -> Fraction:
    if D.r != C.r:
        raise ValueError(f"dimension mismatch: divisor on r = {D.r}, curve on r = {C.r}")
    return sum((d * c for d, c in zip(D.coeffs, C.coeffs)), Fraction(0))


def pairing_matrix(r: int) -> list[list[Fraction]]:
    return [[pair(DivisorClass.basis(r, i), CurveClass.basis(r, j)) for j in range(1, r + 1)] for i in range(1, r + 1)]


# -- boundary and canonical classes -----------------------------------------------


def relation_system(r: int) -> tuple[list[list[int]], list[list[int]], list[tuple[int, int]]]:
    """The relations sum_{k not in {i,j}} [d_k X] = D_i + D_j, one per pair i < j.

    Returned as (M, R, pairs) with M @ B = R, where row k of the unknown B is
    the D-coordinates of the k-th boundary class.
    """
    pairs = list(combinations(range(1, r + 1), 2))
    M = [[int(k not in (i, j)) for k in range(1, r + 1)] for i, j in pairs]
    R = [[int(k in (i, j)) for k in range(1, r + 1)] for i, j in pairs]
    return M, R, pairs


def boundary_classes(r: int) -> list[DivisorClass]:
    if r < 3:
        raise ValueError("r must be at least 3")
    M, R, _ = relation_system(r)
    B = linalg.solve(M, R)
    return [DivisorClass(tuple(row)) for row in B]


def boundary_class(r: int, i: int) -> DivisorClass:
    if not 1 <= i <= r:
        raise ValueError(f"boundary index {i} out of range 1..{r}")
    return boundary_classes(r)[i - 1]


def div_z_difference(r: int, i: int, j: int) -> DivisorClass:
    """Class of div(z_i - z_j) = -D_i - D_j + sum_{k not in {i,j}} d_k X."""
    bnd = boundary_classes(r)
    out = -DivisorClass.basis(r, i) - DivisorClass.basis(r, j)
    for k in range(1, r + 1):
        if k not in (i, j):
            out = out + bnd[k - 1]
    return out


def anticanonical_class(r: int) -> DivisorClass:
    """-K_X as the sum of the boundary divisors."""
    return reduce(lambda a, b: a + b, boundary_classes(r))


def canonical_class(r: int) -> DivisorClass:
    return -anticanonical_class(r)


# -- positivity -------------------------------------------------------------------


def is_nef(D: DivisorClass) -> bool:
    return all(a >= 0 for a in D.coeffs)


def is_ample(D: DivisorClass) -> bool:
    return all(a > 0 for a in D.coeffs)


def is_effective_curve(C: CurveClass) -> bool:
    return all(a >= 0 for a in C.coeffs)


# -- simplicial cones ---------------------------------------------------------


def primitive_ray(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of v with coprime integer entries."""
    v = _fracs(v)
    if all(a == 0 for a in v):
        raise ValueError("zero vector does not span a ray")
    den = lcm(*(a.denominator for a in v))
    ints = [int(a * den) for a in v]
    g = reduce(gcd, (abs(a) for a in ints))
    return tuple(a // g for a in ints)


@dataclass(frozen=True)
class SimplicialCone:
    """Cone spanned by n linearly independent vectors of Q^n."""

    generators: tuple[tuple[Fraction, ...], ...]
    basis: str | None = None  # "D" or "C" when the cone lives in a class space

    def __post_init__(self):
        gens = tuple(_fracs(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        n = len(gens)
        if n == 0 or any(len(g) != n for g in gens):
            raise ValueError("a simplicial cone needs n generators in Q^n")
        if linalg.rank(gens) != n:
            raise RankDeficient("generators are linearly dependent")

    @property
    def n(self) -> int:
        return len(self.generators)

    def matrix(self) -> list[list[Fraction]]:
        """Generator matrix with the generators as columns."""
        return linalg.transpose(self.generators)

    def canonical(self) -> "SimplicialCone":
        rays = sorted(primitive_ray(g) for g in self.generators)
        return SimplicialCone(tuple(rays), self.basis)

    def __eq__(self, other):
        if not isinstance(other, SimplicialCone):
            return NotImplemented
        return self.canonical().generators == other.canonical().generators

    def __hash__(self):
        return hash(self.canonical().generators)

    def contains(self, v: Sequence) -> bool:
        return decompose(self, v).inside

    def to_json(self) -> dict:
        can = self.canonical()
        return {"n": can.n, "generators": [[format_fraction(a) for a in g] for g in can.generators]}

    @classmethod
    def from_json(cls, data) -> "SimplicialCone":
        if isinstance(data, str):
            data = json.loads(data)
        cone = cls(tuple(tuple(Fraction(s) for s in g) for g in data["generators"]))
        if cone.n != data["n"]:
            raise ValueError("generator count does not match n")
        return cone


def dual_cone(K: SimplicialCone, gram: Sequence[Sequence] | None = None) -> SimplicialCone:
    """Dual cone under the pairing <w, v> = w^T gram v (identity by default).

    The dual generators w_j satisfy <w_j, v_i> = delta_ij, i.e. they are the
    rows of (gram @ G)^{-1} for the column generator matrix G.
    """
    G = K.matrix()
    if gram is not None:
        G = linalg.matmul(gram, G)
    W = linalg.inverse(G)
    basis = {"C": "D", "D": "C"}.get(K.basis) if K.basis else None
    return SimplicialCone(tuple(tuple(row) for row in W), basis).canonical()


@dataclass(frozen=True)
class Decomposition:
    coefficients: tuple[Fraction, ...]

    @property
    def inside(self) -> bool:
        return all(c >= 0 for c in self.coefficients)

    def to_json(self) -> dict:
        return {"coefficients": [format_fraction(c) for c in self.coefficients], "inside": self.inside}


def decompose(K: SimplicialCone, v: Sequence) -> Decomposition:
    """The unique lambda with sum lambda_i g_i = v; v is in K iff lambda >= 0."""
    v = _fracs(v)
    if len(v) != K.n:
        raise ValueError(f"vector has length {len(v)}, cone lives in Q^{K.n}")
    return Decomposition(tuple(linalg.solve_vector(K.matrix(), v)))


def orthant(n: int, basis: str | None = None) -> SimplicialCone:
    return SimplicialCone(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), basis)


def nef_cone(r: int) -> SimplicialCone:
    if r < 3:
        raise ValueError("r must be at least 3")
    return orthant(r, "D")


def curve_cone(r: int) -> SimplicialCone:
    if r < 3:
        raise ValueError("r must be at least 3")
    return orthant(r, "C")


def dual_under_pairing(K: SimplicialCone) -> SimplicialCone:
    """Dual of a cone of curve classes as a cone of divisor classes (or back)."""
    M = pairing_matrix(K.n)
    # divisors w with w^T M v >= 0; for a divisor cone the roles swap via M^T
    gram = M if K.basis == "C" else linalg.transpose(M)
    return dual_cone(K, gram)
