"""Print the Bialynicki-Birula stratum table of X(p) as JSON.

    python scripts/strata_table.py inf,0,1,2,3
"""

import json
import sys
from dataclasses import dataclass

from orbitcones.embedding import parse_embedding
from orbitcones.torus import satisfies_inequality, strata_summary, summary_table


@dataclass
class StrataConfig:
    points: str = "inf,0,1,2"
    primes: tuple[int, ...] | None = None


def main(cfg: StrataConfig):
    X = parse_embedding(cfg.points)
    rows = strata_summary(X, cfg.primes)
    print(json.dumps(summary_table(rows), indent=2))
    bad = [str(k) for k, ok in satisfies_inequality(rows).items() if not ok]
    print("inequality holds at every fixed point" if not bad else f"inequality fails at {bad}", file=sys.stderr)


if __name__ == "__main__":
    main(StrataConfig(sys.argv[1] if len(sys.argv) > 1 else "inf,0,1,2"))
