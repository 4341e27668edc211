"""Check saturation of the base point free monoids over the classification lists.

    python scripts/fujita_sweep.py --n-max 9 --m-max 4 --alpha-max 3 --p3-n-max 10 --p3-a-max 2
"""

import argparse
import time
from dataclasses import dataclass

from intrinsic_quadrics.classify import check_p2, enumerate_full_picard3, grid_constellations, iter_items


@dataclass(frozen=True)
class SweepConfig:
    n_max: int = 9
    m_max: int = 4
    alpha_max: int = 3
    p3_n_max: int = 10
    p3_a_max: int = 2


def run(cfg: SweepConfig) -> int:
    start = time.perf_counter()
    items = list(iter_items(grid_constellations(cfg.n_max, cfg.m_max, cfg.alpha_max), check_p2))
    items += enumerate_full_picard3(cfg.p3_n_max, cfg.p3_a_max)
    failures = 0
    hb_sizes = []
    for it in items:
        data = it.variety.monoid_data()
        hb_sizes.append(max(len(d.hilbert_basis) for d in data))
        if not all(d.saturated for d in data):
            failures += 1
            print("not saturated:", it.constellation.label())
    print(f"{len(items)} varieties, {failures} unsaturated, largest Hilbert basis {max(hb_sizes)}, "
          f"{time.perf_counter() - start:.2f}s")
    return failures


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for name, default in vars(SweepConfig()).items():
        p.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    a = p.parse_args()
    raise SystemExit(1 if run(SweepConfig(**vars(a))) else 0)


if __name__ == "__main__":
    main()
