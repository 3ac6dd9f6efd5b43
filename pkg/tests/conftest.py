from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from orbitcones.projline import Moebius, P1Point, point

small_fracs = st.fractions(min_value=-50, max_value=50, max_denominator=12)
p1_points = st.one_of(st.just(P1Point.inf()), small_fracs.map(point))


@st.composite
def moebius_maps(draw, q=0):
    hi = q - 1 if q else 9
    lo = 0 if q else -9
    ents = draw(st.tuples(*[st.integers(lo, hi)] * 4))
    det = ents[0] * ents[3] - ents[1] * ents[2]
    if (det % q if q else det) == 0:
        ents = (1, ents[1], 0, 1)
    return Moebius(*ents, q=q)


@st.composite
def distinct_points(draw, n):
    pts = draw(st.lists(p1_points, min_size=n, max_size=n, unique=True))
    return tuple(pts)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def frac_list(*xs):
    return tuple(Fraction(x) for x in xs)
