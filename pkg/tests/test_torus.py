from itertools import product

import pytest
from hypothesis import given, strategies as st

from orbitcones.embedding import (
    NotInVariety,
    contains,
    generic_orbit_point,
    parse_embedding,
    points_ff,
)
from orbitcones.projline import P1Point, find_moebius, point
from orbitcones.torus import (
    CURVE,
    DIVISOR,
    NEGATIVE,
    OPEN,
    POSITIVE,
    FixedPointLabel,
    OneParamWeight,
    classify_ff,
    fixed_points,
    is_fixed,
    label_of,
    limit,
    satisfies_inequality,
    strata_summary,
    stratum_dimensions_ff,
    stratum_of,
)

from conftest import p1_points

INF = P1Point.inf()
LAM = OneParamWeight(1)


def pts(*xs):
    return tuple(INF if x == "inf" else point(x) for x in xs)


def standard(r):
    return parse_embedding(",".join(["inf", "0"] + [str(k) for k in range(1, r - 1)]))


def test_limit_examples():
    q = pts(5, "inf", 0)
    assert limit(LAM, q, "to-zero") == pts(0, "inf", 0)
    assert limit(LAM, q, "to-infinity") == pts("inf", "inf", 0)
    for fixed in product(pts(0, "inf"), repeat=3):
        assert limit(LAM, fixed, POSITIVE) == fixed


def test_negative_weight_swaps_directions():
    q = pts(5, "inf", 0, -2)
    assert limit(OneParamWeight(-3), q, POSITIVE) == limit(LAM, q, NEGATIVE)
    assert limit(OneParamWeight(2), q, NEGATIVE) == limit(LAM, q, NEGATIVE)
    with pytest.raises(ValueError):
        OneParamWeight(0)


@given(st.lists(p1_points, min_size=3, max_size=6), st.sampled_from([POSITIVE, NEGATIVE]), st.sampled_from([-2, -1, 1, 3]))
def test_limit_idempotent_and_fixed(q, d, k):
    w = OneParamWeight(k)
    lim = limit(w, q, d)
    assert limit(w, lim, d) == lim
    assert is_fixed(lim)
    other = limit(w, q, NEGATIVE if d == POSITIVE else POSITIVE)
    assert (lim == other) == is_fixed(q)


@pytest.mark.parametrize("r,n", [(3, 8), (4, 10), (5, 12), (6, 14), (7, 16), (8, 18)])
def test_fixed_point_counts(r, n):
    X = standard(r)
    fps = fixed_points(X)
    assert len(fps) == n
    assert all(contains(X, pt) for _, pt in fps)
    for lab, pt in fps:
        assert lab.tuple(r) == pt
        assert limit(LAM, pt, POSITIVE) == pt and limit(LAM, pt, NEGATIVE) == pt
    labels = {str(lab) for lab, _ in fps}
    assert {"source", "sink"} <= labels
    if r >= 4:
        assert labels == {"source", "sink"} | {f"A({i})" for i in range(1, r + 1)} | {f"B({i})" for i in range(1, r + 1)}


def test_r3_fixed_points_are_whole_cube():
    X = parse_embedding("0,inf,1")
    assert {pt for _, pt in fixed_points(X)} == set(product(pts(0, "inf"), repeat=3))


@pytest.mark.parametrize("r", [4, 5, 6])
def test_fixed_points_match_finite_field_enumeration(r):
    # independent route: torus-fixed tuples among all F_q points of X
    q = 13
    Xq = standard(r).reduce(q)
    via_ff = {pt for pt in points_ff(Xq) if is_fixed(pt)}
    assert via_ff == {pt for _, pt in fixed_points(Xq)}


def test_labels():
    assert label_of(pts("inf", 0, 0, 0)) == FixedPointLabel("A", 1)
    assert label_of(pts("inf", 0, "inf", "inf")) == FixedPointLabel("B", 2)
    assert label_of(pts("inf", 0, "inf", 0)) is None
    assert label_of(pts(1, 0, 0)) is None
    assert FixedPointLabel.parse("B(3)") == FixedPointLabel("B", 3)


def test_stratum_examples(rng):
    X = standard(5)
    for i in range(1, 6):
        q = tuple(point(7) if k == i else INF for k in range(1, 6))
        s = stratum_of(X, q, POSITIVE)
        assert (s.tag, s.index, s.label, s.dimension) == (CURVE, i, FixedPointLabel("B", i), 1)
    # q_i = 0 with generic other coordinates
    g = find_moebius(X.points[:3], pts(0, 3, 5))
    q = tuple(g(p) for p in X.points)
    assert q[0] == point(0) and not any(x.is_zero() or x.is_inf() for x in q[1:])
    s = stratum_of(X, q, NEGATIVE)
    assert (s.tag, s.index, s.dimension) == (DIVISOR, 1, 2)
    s = stratum_of(X, generic_orbit_point(X, rng), "neg")
    assert (s.tag, s.label) == (OPEN, FixedPointLabel("sink"))
    with pytest.raises(NotInVariety):
        stratum_of(X, pts(1, 2, 3, 4, 5), POSITIVE)


def test_generic_points_flow_to_source_and_sink(rng):
    X = standard(6)
    for _ in range(1000):
        q = generic_orbit_point(X, rng)
        assert stratum_of(X, q, NEGATIVE).label == FixedPointLabel("sink")
        assert stratum_of(X, q, POSITIVE).label == FixedPointLabel("source")


def test_a_strata_counts_exact():
    # X^+(A(i)): orbit points with g(p_i) = inf plus (x,..,inf,..,x), x finite: q^2
    # X^-(A(i)): (0,..,y,..,0) with y != 0: q
    for r, q in ((4, 7), (5, 11)):
        counts = classify_ff(standard(r), q)
        for i in range(1, r + 1):
            assert counts[(FixedPointLabel("A", i), POSITIVE)] == q * q
            assert counts[(FixedPointLabel("A", i), NEGATIVE)] == q


def test_classification_matches_ambient_filter():
    # brute force over the whole of (P^1(F_5))^4 through membership
    q = 5
    Xq = standard(4).reduce(q)
    line = [point(a, q) for a in range(q)] + [P1Point.inf(q)]
    expected = {}
    for cand in product(line, repeat=4):
        if contains(Xq, cand):
            for d in (POSITIVE, NEGATIVE):
                key = (label_of(limit(LAM, cand, d)), d)
                expected[key] = expected.get(key, 0) + 1
    assert dict(classify_ff(Xq, q)) == expected


@pytest.mark.parametrize("r", [3, 4, 5, 8])
def test_strata_summary(r):
    X = standard(r)
    rows = strata_summary(X)
    assert len(rows) == 2 * len(fixed_points(X))
    assert all(satisfies_inequality(rows).values())
    dims = {(str(row.label), row.direction): row.dimension for row in rows}
    assert dims[("source", POSITIVE)] == 3 and dims[("source", NEGATIVE)] == 0
    assert dims[("sink", POSITIVE)] == 0 and dims[("sink", NEGATIVE)] == 3
    for i in range(1, r + 1):
        assert (dims[(f"B({i})", POSITIVE)], dims[(f"B({i})", NEGATIVE)]) == (1, 2)
        assert (dims[(f"A({i})", POSITIVE)], dims[(f"A({i})", NEGATIVE)]) == (2, 1)
    assert all(row.computed == (row.label.kind == "A") for row in rows)


def test_closed_forms_agree_with_counts():
    X = standard(5)
    counted = stratum_dimensions_ff(X)
    for row in strata_summary(X):
        assert counted[(row.label, row.direction)] == row.dimension


def test_summary_json_rows():
    rows = strata_summary(standard(4))
    row = rows[-1].to_json()
    assert row == {"label": "B(4)", "direction": "negative", "dimension": 2, "tag": "DivisorStratum(4)", "computed": False}
