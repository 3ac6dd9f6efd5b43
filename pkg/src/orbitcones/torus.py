"""The one-parameter subgroup t -> diag(t, 1/t) acting on X(p) in (P^1)^r.

On P^1 it acts by z -> t^2 z, so limits are decided by whether a coordinate
is 0, infinite, or neither.  The positive stratum of a fixed point collects
the points flowing to it as t -> 0, the negative one as t -> infinity.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .embedding import Embedding, NotInVariety, contains, points_ff
from .projline import P1Point, point

POSITIVE = "positive"
NEGATIVE = "negative"

_DIRECTIONS = {
    "positive": POSITIVE, "pos": POSITIVE, "+": POSITIVE, "zero": POSITIVE, "to-zero": POSITIVE,
    "negative": NEGATIVE, "neg": NEGATIVE, "-": NEGATIVE, "infinity": NEGATIVE, "to-infinity": NEGATIVE,
}


def direction_of(name: str) -> str:
    try:
        return _DIRECTIONS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown direction {name!r}") from None


@dataclass(frozen=True)
class OneParamWeight:
    """The cocharacter lambda^k; k = 1 is t -> diag(t, 1/t)."""

    k: int = 1

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("weight must be nonzero")


LAMBDA = OneParamWeight(1)


def _limit_coord(x: P1Point, to_zero: bool) -> P1Point:
    if x.is_inf() or x.is_zero():
        return x
    return point(0, x.q) if to_zero else P1Point.inf(x.q)


def limit(w: OneParamWeight, q: Sequence[P1Point], direction: str) -> tuple[P1Point, ...]:
    """Coordinatewise limit of z -> t^(2k) z as t -> 0 (positive) or t -> inf (negative)."""
    to_zero = (direction_of(direction) == POSITIVE) == (w.k > 0)
    return tuple(_limit_coord(x, to_zero) for x in q)


def is_fixed(q: Sequence[P1Point]) -> bool:
    return all(x.is_zero() or x.is_inf() for x in q)


@dataclass(frozen=True, order=True)
class FixedPointLabel:
    """Source 0^r, Sink inf^r, A(i) = inf only at slot i, B(i) = 0 only at slot i."""

    kind: str  # "source", "sink", "A", "B"
    index: int = 0

    def tuple(self, r: int, q: int = 0) -> tuple[P1Point, ...]:
        zero, inf = point(0, q), P1Point.inf(q)
        if self.kind == "source":
            return (zero,) * r
        if self.kind == "sink":
            return (inf,) * r
        base, other = (zero, inf) if self.kind == "A" else (inf, zero)
        return tuple(other if k == self.index else base for k in range(1, r + 1))

    def __str__(self):
        return self.kind if self.kind in ("source", "sink") else f"{self.kind}({self.index})"

    @classmethod
    def parse(cls, text: str) -> "FixedPointLabel":
        text = text.strip()
        if text in ("source", "sink"):
            return cls(text)
        return cls(text[0], int(text[2:-1]))


def label_of(q: Sequence[P1Point]) -> FixedPointLabel | None:
    """Name of a torus-fixed tuple, or None if it matches no pattern (or is not fixed)."""
    if not is_fixed(q):
        return None
    infs = [k + 1 for k, x in enumerate(q) if x.is_inf()]
    zeros = [k + 1 for k, x in enumerate(q) if x.is_zero()]
    if not infs:
        return FixedPointLabel("source")
    if not zeros:
        return FixedPointLabel("sink")
    if len(infs) == 1:
        return FixedPointLabel("A", infs[0])
    if len(zeros) == 1:
        return FixedPointLabel("B", zeros[0])
    return None


def _sort_key(label: FixedPointLabel):
    return ({"source": 0, "sink": 1, "A": 2, "B": 3}[label.kind], label.index)


def fixed_points(X: Embedding) -> list[tuple[FixedPointLabel, tuple[P1Point, ...]]]:
    """All tuples of {0, inf}^r lying in X, found by filtering through membership."""
    zero, inf = point(0, X.q), P1Point.inf(X.q)
    found = []
    for cand in product((zero, inf), repeat=X.r):
        if contains(X, cand):
            label = label_of(cand)
            if label is None:
                raise AssertionError(f"unlabelled fixed point {cand} in {X}")
            found.append((label, cand))
    return sorted(found, key=lambda lc: _sort_key(lc[0]))


# -- strata ----------------------------------------------------------------

OPEN = "OpenStratum"
CURVE = "CurveStratum"  # C_i minus the sink
DIVISOR = "DivisorStratum"  # open part of D_i = {z_i = 0}
POINT = "PointStratum"
INFINITY_DIVISOR = "InfinityDivisorStratum"  # z_i = inf, other slots finite
ZERO_LINE = "ZeroLineStratum"  # 0^{i-1} x (P^1 - 0) x 0^{r-i}

_TAGS = {
    ("source", POSITIVE): (OPEN, 3),
    ("source", NEGATIVE): (POINT, 0),
    ("sink", POSITIVE): (POINT, 0),
    ("sink", NEGATIVE): (OPEN, 3),
    ("B", POSITIVE): (CURVE, 1),
    ("B", NEGATIVE): (DIVISOR, 2),
    ("A", POSITIVE): (INFINITY_DIVISOR, None),
    ("A", NEGATIVE): (ZERO_LINE, None),
}


@dataclass(frozen=True)
class StratumDescriptor:
    direction: str
    label: FixedPointLabel
    tag: str
    index: int | None
    dimension: int | None
    computed: bool = False  # True when the dimension comes from point counts only

    def describe(self) -> str:
        return f"{self.tag}({self.index})" if self.index else self.tag

    def to_json(self) -> dict:
        return {
            "label": str(self.label),
            "direction": self.direction,
            "dimension": self.dimension,
            "tag": self.describe(),
            "computed": self.computed,
        }


def _descriptor(label: FixedPointLabel, direction: str) -> StratumDescriptor:
    tag, dim = _TAGS[(label.kind, direction)]
    index = label.index if label.kind in ("A", "B") else None
    return StratumDescriptor(direction, label, tag, index, dim, computed=dim is None)


def stratum_of(X: Embedding, q: Sequence[P1Point], direction: str, w: OneParamWeight = LAMBDA) -> StratumDescriptor:
    direction = direction_of(direction)
    if not contains(X, q):
        raise NotInVariety(f"({', '.join(map(str, q))}) is not in {X}")
    lim = limit(w, q, direction)
    label = label_of(lim)
    if label is None:
        raise AssertionError(f"limit {lim} of a point of X is not a fixed point of X")
    # for k < 0 the flow is reversed, so the point lies in the opposite stratum type
    kind_dir = direction if w.k > 0 else (NEGATIVE if direction == POSITIVE else POSITIVE)
    desc = _descriptor(label, kind_dir)
    return StratumDescriptor(direction, label, desc.tag, desc.index, desc.dimension, desc.computed)


def classify_ff(X: Embedding, q: int) -> Counter:
    """Count F_q-points of X by (limit label, direction) for lambda."""
    Xq = X.reduce(q) if X.q == 0 else X
    counts: Counter = Counter()
    for pt in points_ff(Xq):
        for d in (POSITIVE, NEGATIVE):
            counts[(label_of(limit(LAMBDA, pt, d)), d)] += 1
    return counts


def _good_primes(X: Embedding, count: int = 2, start: int = 11) -> list[int]:
    primes = []
    n = max(start, 2 * X.r + 1)
    while len(primes) < count:
        if all(n % d for d in range(2, int(n**0.5) + 1)):
            try:
                X.reduce(n)
                primes.append(n)
            except ValueError:
                pass
        n += 1
    return primes


def stratum_dimensions_ff(X: Embedding, primes: Sequence[int] | None = None) -> dict:
    """Dimension of every stratum from the growth of its F_q point count.

    A stratum of dimension d has about q^d points; the estimates from all
    primes must agree or a ValueError is raised.
    """
    primes = list(primes) if primes else _good_primes(X)
    estimates: dict = {}
    for q in primes:
        for key, n in classify_ff(X, q).items():
            d = round(math.log(n) / math.log(q))
            estimates.setdefault(key, set()).add(d)
    out = {}
    for key, ds in estimates.items():
        if len(ds) != 1:
            raise ValueError(f"inconsistent dimension estimates {sorted(ds)} for {key}")
        out[key] = ds.pop()
    return out


def strata_summary(X: Embedding, primes: Sequence[int] | None = None) -> list[StratumDescriptor]:
    """One row per (fixed point, direction).

    Source, sink and B(i) rows carry the closed-form dimensions; A(i) rows
    are filled in from finite-field point counts and flagged ``computed``.
    """
    counted = None
    rows = []
    for label, _ in fixed_points(X):
        for d in (POSITIVE, NEGATIVE):
            desc = _descriptor(label, d)
            if desc.dimension is None:
                if counted is None:
                    counted = stratum_dimensions_ff(X, primes)
                desc = StratumDescriptor(d, label, desc.tag, desc.index, counted[(label, d)], True)
            rows.append(desc)
    return rows


def satisfies_inequality(rows: Sequence[StratumDescriptor], dim_x: int = 3) -> dict:
    """dim X - dim_x X^lambda <= dim X^+(x) + dim X^-(x) at each isolated fixed point."""
    by_label: dict = {}
    for row in rows:
        by_label.setdefault(row.label, {})[row.direction] = row.dimension
    return {lab: dim_x - 0 <= d[POSITIVE] + d[NEGATIVE] for lab, d in by_label.items()}


def summary_table(rows: Sequence[StratumDescriptor]) -> list[dict]:
    return [row.to_json() for row in rows]
