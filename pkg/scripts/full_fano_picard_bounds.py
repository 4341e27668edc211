"""Sample random full Fano quadrics and tabulate Picard number against the number of squares.

    python scripts/full_fano_picard_bounds.py --samples 300 --seed 7
"""

import argparse
import random
from collections import Counter

from intrinsic_quadrics.sampling import FullSamplerConfig, sample_full_fano

BOUND = {0: 3, 1: 2}


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", type=int, default=FullSamplerConfig.max_rank)
    a = p.parse_args()
    found, tries = sample_full_fano(random.Random(a.seed), a.samples, cfg=FullSamplerConfig(max_rank=a.max_rank))
    table = Counter((X.setup.t, X.picard_number()) for X in found)
    violations = sum(v for (t, rho), v in table.items() if rho > BOUND.get(t, 1))
    print(f"{len(found)} full Fano samples from {tries} draws")
    print(f"{'t':>2} {'rho':>3} {'count':>5}")
    for (t, rho), v in sorted(table.items()):
        print(f"{t:>2} {rho:>3} {v:>5}")
    print(f"violations: {violations}")
    raise SystemExit(1 if violations else 0)


if __name__ == "__main__":
    main()
