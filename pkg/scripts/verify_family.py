"""Run the symbolic and finite-field checks over the family p = (inf, 0, 1, ..., r-2).

    python scripts/verify_family.py --r-max 8 --primes 7,11
"""

import argparse
import time
from dataclasses import dataclass, field

from orbitcones.cycles import canonical_class
from orbitcones.embedding import FF_ENUMERATION_LIMIT, count_points_ff, parse_embedding, verify_equations
from orbitcones.torus import fixed_points


@dataclass
class FamilyConfig:
    r_min: int = 4
    r_max: int = 8
    primes: list[int] = field(default_factory=lambda: [7, 11])


def standard(r):
    return parse_embedding(",".join(["inf", "0"] + [str(k) for k in range(1, r - 1)]))


def main(cfg: FamilyConfig):
    print(f"{'r':>2} {'eqs':>4} {'fixed':>5} {'K':>8}  finite fields (q: n_variety/n_constructive)")
    for r in range(cfg.r_min, cfg.r_max + 1):
        X = standard(r)
        t0 = time.perf_counter()
        ok = verify_equations(X).ok
        counts = []
        for q in cfg.primes:
            if q ** (r - 1) > FF_ENUMERATION_LIMIT or q <= r - 2:
                continue
            c = count_points_ff(X, q)
            counts.append(f"{q}: {c.n_variety}/{c.n_constructive}")
        K = canonical_class(r).to_json()[0]
        dt = time.perf_counter() - t0
        print(f"{r:>2} {str(ok):>4} {len(fixed_points(X)):>5} {K:>8}  {', '.join(counts)}  [{dt:.1f}s]")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--r-min", type=int, default=4)
    ap.add_argument("--r-max", type=int, default=8)
    ap.add_argument("--primes", default="7,11")
    a = ap.parse_args()
    main(FamilyConfig(a.r_min, a.r_max, [int(x) for x in a.primes.split(",")]))
