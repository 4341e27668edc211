"""Count Picard number two quadrics by dimension, Type and Fano status.

    python scripts/fano_census.py --dim-max 6 --alpha-max 2
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from intrinsic_quadrics.classify import cone_prediction, enumerate_picard2, fano_table_predicate


@dataclass(frozen=True)
class CensusConfig:
    dim_min: int = 3
    dim_max: int = 6
    alpha_max: int = 2


def run(cfg: CensusConfig) -> None:
    print(f"{'dim':>3} {'Type':>4} {'Fano':>5} {'TAF':>5} {'other':>5}")
    for d in range(cfg.dim_min, cfg.dim_max + 1):
        start = time.perf_counter()
        counts: Counter = Counter()
        mismatches = 0
        for it in enumerate_picard2(d, cfg.alpha_max):
            pred = cone_prediction(it.variety)
            counts[it.constellation.type_tag, pred.value] += 1
            mismatches += pred != fano_table_predicate(it.constellation)
        for tag in sorted({k[0] for k in counts}):
            row = [counts[tag, v] for v in ("Fano", "TrulyAlmostFano", "Neither")]
            print(f"{d:>3} {tag:>4} {row[0]:>5} {row[1]:>5} {row[2]:>5}")
        print(f"    dim {d}: {sum(counts.values())} constellations, {mismatches} table mismatches, "
              f"{time.perf_counter() - start:.2f}s")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--dim-min", type=int, default=CensusConfig.dim_min)
    p.add_argument("--dim-max", type=int, default=CensusConfig.dim_max)
    p.add_argument("--alpha-max", type=int, default=CensusConfig.alpha_max)
    a = p.parse_args()
    run(CensusConfig(a.dim_min, a.dim_max, a.alpha_max))


if __name__ == "__main__":
    main()
