"""Exact cone, strata and equation computations for PGL(2) orbit closures in (P^1)^r."""

from .cycles import (
    CurveClass,
    DivisorClass,
    SimplicialCone,
    boundary_class,
    canonical_class,
    curve_cone,
    decompose,
    dual_cone,
    is_ample,
    is_effective_curve,
    is_nef,
    nef_cone,
    pair,
)
from .embedding import (
    BinaryForm,
    Embedding,
    are_isomorphic,
    contains,
    count_points_ff,
    parse_embedding,
    embedding_from_form,
    minors_system,
    normalize,
    parametrize_S_minus,
    verify_equations,
)
from .projline import Moebius, P1Point, Scalar, apply, cross_ratio, find_moebius
from .torus import OneParamWeight, fixed_points, limit, strata_summary, stratum_of

__version__ = "0.1.0"
