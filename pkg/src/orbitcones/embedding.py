"""Orbit closures X(p_1, ..., p_r) of PGL(2) acting diagonally on (P^1)^r.

The open orbit is G.(p_1, ..., p_r); the boundary is the union of the
surfaces {(x, ..., x, y, x, ..., x)} with y in slot i.  After moving
(p_1, p_2, p_3) to (inf, 0, 1), the affine slice S^- in A^{r-1} (coordinates
x2..xr) is cut out by the 2x2 minors of

    [ p3*x3       p4*x4       ...  pr*xr      ]
    [ x3 - x2     x4 - x2     ...  xr - x2    ]
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Sequence

import numpy as np

from .poly import Poly
from .projline import (
    DegenerateConfiguration,
    FieldMismatch,
    Moebius,
    P1Point,
    Scalar,
    apply,
    check_field,
    find_moebius,
    format_points,
    parse_points,
    point,
)

FF_ENUMERATION_LIMIT = 10**8


class NotInVariety(ValueError):
    pass


class BadReduction(ValueError):
    pass


@dataclass(frozen=True)
class Embedding:
    """The data (p_1, ..., p_r) together with its normal form.

    ``moebius`` sends ``points`` to ``normalized`` slot by slot, and the
    normal form starts with (inf, 0, 1).
    """

    points: tuple[P1Point, ...]
    normalized: tuple[P1Point, ...]
    moebius: Moebius

    @property
    def r(self) -> int:
        return len(self.points)

    @property
    def q(self) -> int:
        return self.points[0].q

    @property
    def singular(self) -> bool:
        # singular along the small diagonal once r >= 4; recorded, not computed
        return self.r >= 4

    def normal_values(self) -> list[Scalar]:
        """The affine values p_3, ..., p_r of the normal form."""
        return [p.value for p in self.normalized[2:]]

    def reduce(self, q: int) -> "Embedding":
        """Reduce a rational embedding mod ``q``; points must stay distinct."""
        check_field(q)
        try:
            pts = [p.reduce(q) for p in self.points]
        except ZeroDivisionError as exc:
            raise BadReduction(str(exc)) from None
        if len(set(pts)) != len(pts):
            raise BadReduction(f"points collide modulo {q}")
        return normalize(pts)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "points": [str(p) for p in self.points],
            "normalized": [str(p) for p in self.normalized],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "Embedding":
        if isinstance(data, str):
            data = json.loads(data)
        X = normalize(parse_points(",".join(data["points"])))
        if X.r != data["r"] or [str(p) for p in X.normalized] != data["normalized"]:
            raise ValueError("inconsistent embedding record")
        return X

    def __str__(self):
        return f"X({format_points(self.points)})"


def normalize(points: Sequence[P1Point | str | int | Fraction], q: int = 0) -> Embedding:
    pts = tuple(point(p, q) if not isinstance(p, P1Point) else p for p in points)
    if len(pts) < 3:
        raise ValueError(f"need at least 3 points, got {len(pts)}")
    if len({p.q for p in pts}) != 1:
        raise FieldMismatch("points over different fields")
    for i, j in combinations(range(len(pts)), 2):
        if pts[i] == pts[j]:
            raise DegenerateConfiguration(f"points {i + 1} and {j + 1} coincide ({pts[i]})")
    fq = pts[0].q
    std = (P1Point.inf(fq), point(0, fq), point(1, fq))
    g = find_moebius(pts[:3], std)
    return Embedding(pts, tuple(apply(g, p) for p in pts), g)


def parse_embedding(text: str, q: int = 0) -> Embedding:
    """Shorthand: ``parse_embedding("inf,0,1,2")``."""
    return normalize(parse_points(text, q))


# -- membership ---------------------------------------------------------------


@dataclass(frozen=True)
class Membership:
    member: bool
    branch: str  # "orbit", "boundary", "diagonal" or "none"
    index: int | None = None  # boundary slot (1-based) or None
    witness: Moebius | None = None

    def __bool__(self):
        return self.member

    def describe(self) -> str:
        if self.branch == "boundary":
            return f"boundary d{self.index}X"
        if self.branch == "diagonal":
            return "closed orbit (small diagonal)"
        if self.branch == "orbit":
            return f"open orbit, g = {self.witness}"
        return "not in X"


def boundary_slot(q: Sequence[P1Point]) -> int | None:
    """0 for the small diagonal, i (1-based) if only slot i differs, else None."""
    distinct = set(q)
    if len(distinct) == 1:
        return 0
    if len(distinct) != 2:
        return None
    for i, x in enumerate(q):
        rest = q[:i] + q[i + 1:]
        if len(set(rest)) == 1 and rest[0] != x:
            return i + 1
    return None


def membership(X: Embedding, q: Sequence[P1Point]) -> Membership:
    q = tuple(q)
    if len(q) != X.r:
        raise ValueError(f"tuple has length {len(q)}, embedding has r = {X.r}")
    if any(x.q != X.q for x in q):
        raise FieldMismatch("tuple and embedding over different fields")
    slot = boundary_slot(q)
    if slot == 0:
        return Membership(True, "diagonal")
    if slot is not None:
        return Membership(True, "boundary", slot)
    if len(set(q)) != len(q):
        return Membership(False, "none")
    g = find_moebius(X.points[:3], q[:3])
    if all(apply(g, p) == x for p, x in zip(X.points[3:], q[3:])):
        return Membership(True, "orbit", witness=g)
    return Membership(False, "none")


def contains(X: Embedding, q: Sequence[P1Point]) -> bool:
    return membership(X, q).member


# -- the slice S^- -------------------------------------------------------------


@dataclass(frozen=True)
class MinorsSystem:
    r: int
    variables: tuple[str, ...]
    matrix: tuple[tuple[Poly, ...], tuple[Poly, ...]]
    minors: tuple[Poly, ...]
    pairs: tuple[tuple[int, int], ...]  # column indices (i, j) with 3 <= i < j <= r

    def integer_minors(self) -> list[Poly]:
        return [m.primitive(list(self.variables)) for m in self.minors]

    def format(self) -> str:
        order = list(self.variables)
        return "\n".join(m.format(order) for m in self.integer_minors())


def _variables(r: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(2, r + 1))


def minors_system(X: Embedding) -> MinorsSystem:
    if X.q != 0:
        raise FieldMismatch("minors are built over Q; reduce the coefficients afterwards")
    r = X.r
    names = _variables(r)
    x = {i: Poly.var(f"x{i}") for i in range(2, r + 1)}
    p = {i: X.normalized[i - 1].value.value for i in range(3, r + 1)}
    top = tuple(p[i] * x[i] for i in range(3, r + 1))
    bottom = tuple(x[i] - x[2] for i in range(3, r + 1))
    pairs = tuple(combinations(range(3, r + 1), 2))
    minors = tuple(top[i - 3] * bottom[j - 3] - top[j - 3] * bottom[i - 3] for i, j in pairs)
    return MinorsSystem(r, names, (top, bottom), minors, pairs)


def parametrize_S_minus(X: Embedding, t, u) -> tuple[Scalar, ...]:
    """(x2, ..., xr) = (1/(tu), 1/(t^2 p_3 + tu), ..., 1/(t^2 p_r + tu))."""
    t, u = Scalar(t, X.q), Scalar(u, X.q)
    denominators = [t * u] + [t * t * p + t * u for p in X.normal_values()]
    for slot, d in enumerate(denominators, start=2):
        if d.is_zero():
            raise ZeroDivisionError(f"denominator vanishes at slot x{slot}")
    return tuple(d.inverse() for d in denominators)


@dataclass
class EquationReport:
    r: int
    parametrization: list[Poly]
    diagonal: list[Poly]
    coordinate_lines: dict[int, list[Poly]]

    @property
    def ok(self) -> bool:
        polys = self.parametrization + self.diagonal
        polys += [m for res in self.coordinate_lines.values() for m in res]
        return all(p.is_zero() for p in polys)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "ok": self.ok,
            "parametrization": [str(p) for p in self.parametrization],
            "diagonal": [str(p) for p in self.diagonal],
            "coordinate_lines": {f"x{i}": [str(p) for p in res] for i, res in self.coordinate_lines.items()},
        }


def verify_equations(X: Embedding) -> EquationReport:
    """Substitute the parametrization and the boundary lines into every minor.

    For the parametrization x_k = 1/L_k each minor, homogeneous of degree 2,
    is multiplied by prod L_k^2 so that monomials become polynomials in t, u.
    """
    if X.r < 4:
        raise ValueError("no equations for r = 3")
    system = minors_system(X)
    t, u = Poly.var("t"), Poly.var("u")
    linear = {"x2": t * u}
    for i, p in zip(range(3, X.r + 1), X.normal_values()):
        linear[f"x{i}"] = t * t * p.value + t * u

    def cleared(minor: Poly) -> Poly:
        out = Poly()
        for mono, c in minor.terms.items():
            exps = dict(mono)
            term = Poly.const(c)
            for v in system.variables:
                term = term * linear[v] ** (2 - exps.get(v, 0))
            out = out + term
        return out

    param = [cleared(m) for m in system.minors]
    c = Poly.var("c")
    diagonal = [m.subs({v: c for v in system.variables}) for m in system.minors]
    s = Poly.var("s")
    lines = {}
    for i in range(2, X.r + 1):
        sub = {v: (s if v == f"x{i}" else Poly()) for v in system.variables}
        lines[i] = [m.subs(sub) for m in system.minors]
    return EquationReport(X.r, param, diagonal, lines)


# -- finite fields ------------------------------------------------------------


@dataclass(frozen=True)
class FFCount:
    q: int
    n_variety: int
    n_constructive: int

    @property
    def equal(self) -> bool:
        return self.n_variety == self.n_constructive


def _residues(X: Embedding, q: int) -> list[int]:
    check_field(q)
    if q == 0:
        raise ValueError("need a prime")
    res = []
    for p in X.normal_values():
        den = p.value.denominator % q
        if den == 0:
            raise BadReduction(f"{p} has denominator divisible by {q}")
        res.append(p.value.numerator * pow(den, -1, q) % q)
    if any(v == 0 for v in res) or len(set(res)) != len(res):
        raise BadReduction(f"normalized points {res} collide or vanish modulo {q}")
    return res


def _enumeration_guard(q: int, r: int):
    if q ** (r - 1) > FF_ENUMERATION_LIMIT:
        raise ValueError(f"{q}^{r - 1} points exceeds the enumeration limit {FF_ENUMERATION_LIMIT}")


def variety_points_ff(X: Embedding, q: int, chunk: int = 1 << 18) -> set[tuple[int, ...]]:
    """All x in F_q^{r-1} killing every minor, by exhaustive enumeration.

    The grid is walked in blocks of ``chunk`` points, so the result does not
    depend on the block size.
    """
    ps = _residues(X, q)
    r = X.r
    _enumeration_guard(q, r)
    shape = (q,) * (r - 1)
    total = q ** (r - 1)
    pairs = list(combinations(range(3, r + 1), 2))
    found = set()
    for lo in range(0, total, chunk):
        flat = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        grid = np.stack(np.unravel_index(flat, shape)).astype(np.int64)
        x2 = grid[0]
        ok = np.ones(flat.size, dtype=bool)
        for i, j in pairs:
            xi, xj = grid[i - 2], grid[j - 2]
            minor = (ps[i - 3] * xi % q * ((xj - x2) % q) - ps[j - 3] * xj % q * ((xi - x2) % q)) % q
            ok &= minor == 0
        found.update(tuple(int(v) for v in col) for col in grid[:, ok].T)
    return found


def constructive_points_ff(X: Embedding, q: int) -> set[tuple[int, ...]]:
    """Image of the Borel parametrization plus the diagonal and coordinate lines.

    Over F_q the upper triangular elements of PGL(2) act by z -> s z + w with
    s in F_q^*, w in F_q; for an SL(2) representative s = t^2 and w = t u.
    Ranging over (s, w) rather than rational (t, u) also reaches the points
    whose t only lives in F_{q^2}.
    """
    ps = _residues(X, q)
    r = X.r
    _enumeration_guard(q, r)
    pts = set()
    for s in range(1, q):
        for w in range(1, q):
            dens = [w] + [(s * p + w) % q for p in ps]
            if 0 in dens:
                continue
            pts.add(tuple(pow(d, -1, q) for d in dens))
    for c in range(q):
        pts.add((c,) * (r - 1))
    for slot in range(r - 1):
        for c in range(q):
            pts.add(tuple(c if k == slot else 0 for k in range(r - 1)))
    return pts


def count_points_ff(X: Embedding, q: int) -> FFCount:
    return FFCount(q, len(variety_points_ff(X, q)), len(constructive_points_ff(X, q)))


# -- isomorphism and binary forms ---------------------------------------------


@dataclass(frozen=True)
class Isomorphism:
    permutation: tuple[int, ...]  # sigma as 0-based images: g.p1[i] = p2[sigma[i]]
    moebius: Moebius


def are_isomorphic(X1: Embedding, X2: Embedding) -> tuple[bool, Isomorphism | None]:
    """Search for sigma, g with g.p1_i = p2_sigma(i) for all i."""
    if X1.r != X2.r or X1.q != X2.q:
        return False, None
    src = X1.points[:3]
    index = {p: k for k, p in enumerate(X2.points)}
    for targets in permutations(range(X2.r), 3):
        g = find_moebius(src, [X2.points[k] for k in targets])
        sigma = []
        for p in X1.points:
            k = index.get(apply(g, p))
            if k is None:
                break
            sigma.append(k)
        else:
            return True, Isomorphism(tuple(sigma), g)
    return False, None


@dataclass(frozen=True)
class BinaryForm:
    """A product of linear forms (a x + b y)^m over Q."""

    factors: tuple[tuple[Fraction, Fraction, int], ...]

    def __post_init__(self):
        for a, b, m in self.factors:
            if m < 1:
                raise ValueError("multiplicities must be positive")
            if a == 0 and b == 0:
                raise ValueError("zero linear form")
        for (a1, b1, _), (a2, b2, _) in combinations(self.factors, 2):
            if a1 * b2 - a2 * b1 == 0:
                raise ValueError(f"proportional factors ({a1},{b1}) and ({a2},{b2})")

    @property
    def degree(self) -> int:
        return sum(m for _, _, m in self.factors)

    @classmethod
    def parse(cls, text: str) -> "BinaryForm":
        """``"1:0:2,0:1:2,1:-1:1"`` is x^2 y^2 (x - y)."""
        out = []
        for tok in text.split(","):
            parts = tok.strip().split(":")
            if len(parts) == 2:
                parts.append("1")
            if len(parts) != 3:
                raise ValueError(f"bad factor {tok!r}, expected a:b:m")
            out.append((Fraction(parts[0]), Fraction(parts[1]), int(parts[2])))
        return cls(tuple(out))

    def roots(self) -> list[P1Point]:
        return [P1Point(-b, a) for a, b, _ in self.factors]


def embedding_from_form(f: BinaryForm) -> Embedding:
    roots = f.roots()
    if len(roots) < 3:
        raise ValueError(f"form has {len(roots)} distinct linear factors; need at least 3 for finite isotropy")
    return normalize(roots)


# -- sampling helpers used by torus and the tests ------------------------------


def orbit_point(X: Embedding, g: Moebius) -> tuple[P1Point, ...]:
    return tuple(apply(g, p) for p in X.points)


def random_moebius(rng, q: int = 0, height: int = 9) -> Moebius:
    while True:
        if q:
            ents = [int(rng.integers(0, q)) for _ in range(4)]
        else:
            ents = [int(rng.integers(-height, height + 1)) for _ in range(4)]
        det = ents[0] * ents[3] - ents[1] * ents[2]
        if (det % q if q else det) != 0:
            return Moebius(*ents, q=q)


def all_points_ff(q: int) -> list[P1Point]:
    return [point(a, q) for a in range(q)] + [P1Point.inf(q)]


def enumerate_ff(X: Embedding, pattern: Sequence[Sequence[P1Point]]):
    """Yield tuples of the product ``pattern`` that lie in X."""
    for cand in product(*pattern):
        if contains(X, cand):
            yield cand


def pgl2_ff(q: int):
    """Every element of PGL(2, F_q), once each, in canonical form."""
    for b, c, d in product(range(q), repeat=3):
        if (d - b * c) % q:
            yield Moebius(1, b, c, d, q=q)
    for c, d in product(range(1, q), range(q)):
        yield Moebius(0, 1, c, d, q=q)


def points_ff(X: Embedding) -> set[tuple[P1Point, ...]]:
    """X(F_q) for an embedding over F_q: the orbit plus the boundary surfaces."""
    fq = X.q
    if fq == 0:
        raise ValueError("points_ff needs an embedding over a prime field; use X.reduce(q)")
    pts = {orbit_point(X, g) for g in pgl2_ff(fq)}
    line = all_points_ff(fq)
    for i in range(X.r):
        for x, y in product(line, repeat=2):
            pts.add(tuple(y if k == i else x for k in range(X.r)))
    return pts


def generic_orbit_point(X: Embedding, rng, height: int = 9) -> tuple[P1Point, ...]:
    """g.p for a random g, resampled until no coordinate is 0 or infinity."""
    while True:
        pt = orbit_point(X, random_moebius(rng, X.q, height))
        if not any(x.is_zero() or x.is_inf() for x in pt):
            return pt
