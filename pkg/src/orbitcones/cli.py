"""Command line front end.

Exit codes: 0 ok, 1 precondition violated, 2 bad command line,
3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import cycles, embedding as emb, torus
from .projline import P1Point, format_points, parse_points

EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class InvariantFailure(AssertionError):
    pass


@dataclass
class Report:
    verb: str
    status: str = "ok"
    payload: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"verb": self.verb, "status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


# -- argument types -------------------------------------------------------------


def _points_arg(text: str) -> list[P1Point]:
    try:
        pts = parse_points(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad point list {text!r}: {exc}") from None
    if not pts:
        raise argparse.ArgumentTypeError("empty point list")
    return pts


def _ints_arg(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _vector_arg(text: str) -> list[Fraction]:
    try:
        return [Fraction(tok) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma separated rationals, got {text!r}") from None


def _matrix_arg(text: str) -> list[list[Fraction]]:
    return [_vector_arg(row) for row in text.split(";") if row.strip()]


def _form_arg(text: str) -> emb.BinaryForm:
    try:
        return emb.BinaryForm.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad factor list {text!r}: {exc}") from None


def _tuple_text(q) -> str:
    return "(" + ", ".join(str(x) for x in q) + ")"


# -- verbs ----------------------------------------------------------------------


def _embedding(args) -> emb.Embedding:
    return emb.normalize(args.points)


def cmd_info(args, rep: Report):
    X = _embedding(args)
    r = X.r
    K = cycles.canonical_class(r)
    rep.payload.update(
        X.to_json(),
        moebius=str(X.moebius),
        fixed_points=len(torus.fixed_points(X)),
        canonical_class=K.to_json(),
        anticanonical_multiple=((-(r - 2)) * K).to_json(),
        boundary_classes=[b.to_json() for b in cycles.boundary_classes(r)],
        singular_along_diagonal=X.singular,
    )


def cmd_fixed_points(args, rep: Report):
    X = _embedding(args)
    fps = torus.fixed_points(X)
    rep.payload["count"] = len(fps)
    rep.payload["fixed_points"] = [{"label": str(lab), "point": [str(x) for x in pt]} for lab, pt in fps]
    if args.strata:
        rows = torus.strata_summary(X)
        rep.payload["strata"] = torus.summary_table(rows)
        if not all(torus.satisfies_inequality(rows).values()):
            raise InvariantFailure("dimension inequality violated")


def cmd_limit(args, rep: Report):
    X = _embedding(args)
    q = args.at
    if len(q) != X.r:
        raise ValueError(f"--at has {len(q)} coordinates, --points has {X.r}")
    if not emb.contains(X, q):
        raise emb.NotInVariety(f"point {_tuple_text(q)} not in X")
    w = torus.OneParamWeight(args.k)
    lim = torus.limit(w, q, args.dir)
    desc = torus.stratum_of(X, q, args.dir, w)
    rep.payload.update(
        point=[str(x) for x in q],
        direction=desc.direction,
        limit=[str(x) for x in lim],
        label=str(desc.label),
        stratum=desc.describe(),
    )


def cmd_member(args, rep: Report):
    X = _embedding(args)
    if len(args.at) != X.r:
        raise ValueError(f"--at has {len(args.at)} coordinates, --points has {X.r}")
    m = emb.membership(X, args.at)
    rep.payload.update(point=[str(x) for x in args.at], member=m.member, branch=m.describe())


def cmd_equations(args, rep: Report):
    X = _embedding(args)
    system = emb.minors_system(X)
    rep.payload.update(
        r=X.r,
        normalized=[str(p) for p in X.normalized],
        variables=list(system.variables),
        minors=[m.format(list(system.variables)) for m in system.integer_minors()],
    )


def cmd_verify(args, rep: Report):
    X = _embedding(args)
    if X.r >= 4:
        eq = emb.verify_equations(X)
        rep.payload["equations_ok"] = eq.ok
        if not eq.ok:
            raise InvariantFailure("nonzero residual after substituting the parametrization")
    fps = torus.fixed_points(X)
    expected = 8 if X.r == 3 else 2 * X.r + 2
    rep.payload["fixed_points"] = len(fps)
    if len(fps) != expected:
        raise InvariantFailure(f"expected {expected} fixed points, found {len(fps)}")
    if X.r >= 4 and args.ff:
        counts = []
        for q in args.ff:
            c = emb.count_points_ff(X, q)
            counts.append({"q": q, "n_variety": c.n_variety, "n_constructive": c.n_constructive, "equal": c.equal})
            if not c.equal:
                raise InvariantFailure(f"point counts differ over F_{q}")
        rep.payload["finite_fields"] = counts
    elif args.ff:
        rep.diagnostics.append("r = 3: no equations, finite-field counts skipped")


def cmd_class(args, rep: Report):
    r = args.r
    if args.boundary is not None:
        D = cycles.boundary_class(r, args.boundary)
        name = f"boundary d{args.boundary}X"
    elif args.div_z is not None:
        if len(args.div_z) != 2 or args.div_z[0] == args.div_z[1]:
            raise ValueError("--div-z takes two distinct indices i,j")
        i, j = args.div_z
        if not (1 <= i <= r and 1 <= j <= r):
            raise ValueError(f"indices must lie in 1..{r}")
        D = cycles.div_z_difference(r, i, j)
        name = f"div(z{i} - z{j})"
    elif args.anticanonical:
        D = cycles.anticanonical_class(r)
        name = "-K"
    else:
        D = cycles.canonical_class(r)
        name = "K"
    rep.payload.update(
        r=r,
        name=name,
        divisor_class=D.to_json(),
        nef=cycles.is_nef(D),
        ample=cycles.is_ample(D),
        integral=D.is_integral(),
        pairing=[str(cycles.pair(D, cycles.CurveClass.basis(r, j))) for j in range(1, r + 1)],
    )


def _cone_from_args(args) -> cycles.SimplicialCone:
    if args.generators is not None:
        return cycles.SimplicialCone(tuple(tuple(g) for g in args.generators))
    if args.r is None:
        raise ValueError("give --generators or --r with --kind")
    return cycles.nef_cone(args.r) if args.kind == "nef" else cycles.curve_cone(args.r)


def cmd_cone(args, rep: Report):
    K = _cone_from_args(args)
    dual = cycles.dual_under_pairing(K) if K.basis else cycles.dual_cone(K)
    rep.payload.update(cone=K.to_json(), basis=K.basis, dual=dual.to_json(), dual_basis=dual.basis)
    if cycles.dual_cone(cycles.dual_cone(K)) != K:
        raise InvariantFailure("double dual differs from the cone")


def cmd_decompose(args, rep: Report):
    K = _cone_from_args(args)
    dec = cycles.decompose(K, args.vector)
    rebuilt = [sum((c * g[k] for c, g in zip(dec.coefficients, K.generators)), Fraction(0)) for k in range(K.n)]
    if rebuilt != list(args.vector):
        raise InvariantFailure("decomposition does not reconstruct the vector")
    rep.payload.update(cone=K.to_json(), vector=[str(x) for x in args.vector], **dec.to_json())


def cmd_isomorphic(args, rep: Report):
    X1, X2 = emb.normalize(args.a), emb.normalize(args.b)
    ok, wit = emb.are_isomorphic(X1, X2)
    rep.payload.update(a=[str(p) for p in X1.points], b=[str(p) for p in X2.points], isomorphic=ok)
    if ok:
        rep.payload["permutation"] = [k + 1 for k in wit.permutation]
        rep.payload["moebius"] = str(wit.moebius)


def cmd_form(args, rep: Report):
    f = args.factors
    X = emb.embedding_from_form(f)
    rep.payload.update(degree=f.degree, roots=[str(p) for p in f.roots()], embedding=X.to_json())


VERBS = {
    "info": cmd_info,
    "fixed-points": cmd_fixed_points,
    "limit": cmd_limit,
    "member": cmd_member,
    "equations": cmd_equations,
    "verify": cmd_verify,
    "class": cmd_class,
    "cone": cmd_cone,
    "decompose": cmd_decompose,
    "isomorphic": cmd_isomorphic,
    "form": cmd_form,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbitcones", description="Cones, strata and equations of PGL(2) orbit closures in (P^1)^r.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, help, points=True):
        p = sub.add_parser(name, help=help)
        if points:
            p.add_argument("--points", type=_points_arg, required=True, help="comma separated points, e.g. inf,0,1,2")
        p.add_argument("--json", action="store_true", help="emit the JSON report")
        p.add_argument("--out", help="also write the JSON report to this path")
        return p

    add("info", "summary of X(p)")
    p = add("fixed-points", "torus fixed points of X(p)")
    p.add_argument("--strata", action="store_true", help="include the stratum table")
    p = add("limit", "limit of lambda(t).x")
    p.add_argument("--at", type=_points_arg, required=True)
    p.add_argument("--dir", choices=["pos", "neg"], required=True)
    p.add_argument("--k", type=int, default=1)
    p = add("member", "membership test")
    p.add_argument("--at", type=_points_arg, required=True)
    add("equations", "2x2 minors cutting out S^-")
    p = add("verify", "symbolic and finite-field verification")
    p.add_argument("--ff", type=_ints_arg, default=[], help="primes, e.g. 7,11,13")
    p = add("class", "boundary or canonical divisor classes", points=False)
    p.add_argument("--r", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--boundary", type=int)
    g.add_argument("--canonical", action="store_true")
    g.add_argument("--anticanonical", action="store_true")
    g.add_argument("--div-z", type=_ints_arg)
    for name, help in (("cone", "a simplicial cone and its dual"), ("decompose", "coefficients of a vector in a cone")):
        p = add(name, help, points=False)
        p.add_argument("--generators", type=_matrix_arg, help="rows separated by ';', e.g. '1,1;1,-1'")
        p.add_argument("--r", type=int)
        p.add_argument("--kind", choices=["nef", "curve"], default="curve")
        if name == "decompose":
            p.add_argument("--vector", type=_vector_arg, required=True)
    p = add("isomorphic", "isomorphism search", points=False)
    p.add_argument("--a", type=_points_arg, required=True)
    p.add_argument("--b", type=_points_arg, required=True)
    p = add("form", "embedding from a factored binary form", points=False)
    p.add_argument("--factors", type=_form_arg, required=True, help="a:b:m,... for prod (a x + b y)^m")
    return parser


def _render_value(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, list):
        if v and all(isinstance(x, str) for x in v):
            return "(" + ", ".join(v) + ")"
        return json.dumps(v, sort_keys=True)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render_text(rep: Report) -> str:
    lines = [f"{rep.verb}: {rep.status}"]
    for key, v in rep.payload.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{key}:")
            lines.extend("  " + "  ".join(f"{k}={_render_value(x)}" for k, x in row.items()) for row in v)
        else:
            lines.append(f"{key}: {_render_value(v)}")
    lines.extend(f"note: {d}" for d in rep.diagnostics)
    return "\n".join(lines)


def run(argv=None) -> tuple[Report, int]:
    args = build_parser().parse_args(argv)
    rep = Report(args.verb)
    code = EXIT_OK
    try:
        VERBS[args.verb](args, rep)
    except (InvariantFailure, AssertionError) as exc:
        rep.status, code = "error", EXIT_INTERNAL
        rep.diagnostics.append(f"internal invariant failure: {exc}")
    except (ValueError, ZeroDivisionError) as exc:
        rep.status, code = "error", EXIT_PRECONDITION
        rep.diagnostics.append(str(exc))
    except Exception as exc:
        rep.status, code = "error", EXIT_INTERNAL
        rep.diagnostics.append(f"internal error: {type(exc).__name__}: {exc}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rep.to_json(), fh, indent=2)
            fh.write("\n")
    out = json.dumps(rep.to_json(), indent=2) if args.json else render_text(rep)
    print(out, file=sys.stdout if code == EXIT_OK else sys.stderr)
    return rep, code


def main(argv=None) -> int:
    try:
        return run(argv)[1]
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
