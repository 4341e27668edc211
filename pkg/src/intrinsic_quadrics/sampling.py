"""Random full graded setups (m = 0) for property checks.

Degrees are drawn so that the relation ``g_{q,t}`` is homogeneous by
construction: pairs ``(w, mu - w)`` and squares ``h + tau`` with ``2h = mu``
and ``tau`` running through distinct 2-torsion elements.  Validity and the
Fano property are left to the engine; callers reject what fails.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .abelian import FgAbelianGroup, GroupElement, element_sum
from .grading import GradedSetup, weight_cone
from .quadric import AmpleClassNotInMovingInterior, InvalidGrading, QuadricVariety, new_quadric


@dataclass(frozen=True)
class FullSamplerConfig:
    max_rank: int = 3
    torsions: tuple[tuple[int, ...], ...] = ((), (2,), (2, 2), (4,))
    max_pairs: int = 5
    max_squares: int = 4
    entry_max: int = 2


def two_torsion(K: FgAbelianGroup) -> list[GroupElement]:
    """The elements of order dividing 2 in the torsion part of ``K``."""
    free = (0,) * K.rank
    return [
        K.element(free, tuple(k // 2 * b for k, b in zip(K.torsion, bits)))
        for bits in product((0, 1), repeat=len(K.torsion))
        if all(k % 2 == 0 or b == 0 for k, b in zip(K.torsion, bits))
    ]


def random_full_setup(rng: random.Random, cfg: FullSamplerConfig = FullSamplerConfig()) -> GradedSetup | None:
    r = rng.randint(1, cfg.max_rank)
    K = FgAbelianGroup(r, rng.choice(cfg.torsions))
    taus = two_torsion(K)
    t = rng.randint(0, min(cfg.max_squares, len(taus)))
    q = 2 * rng.randint(0, cfg.max_pairs)
    if q + t < 3:
        return None

    def rand_el() -> GroupElement:
        return K.element(tuple(rng.randint(0, cfg.entry_max) for _ in range(r)),
                         tuple(rng.randrange(k) for k in K.torsion))

    h = rand_el()
    mu = 2 * h
    degs: list[GroupElement] = []
    for _ in range(q // 2):
        w = rand_el()
        degs += [w, mu - w]
    degs += [h + tau for tau in rng.sample(taus, t)]
    try:
        return GradedSetup(K, tuple(degs), q, t, 0)
    except ValueError:
        return None


def sample_full_fano(rng: random.Random, count: int, max_tries: int = 200_000,
                     cfg: FullSamplerConfig = FullSamplerConfig()) -> tuple[list[QuadricVariety], int]:
    """Rejection-sample ``count`` valid full Fano quadrics.

    The ample class is taken to be ``-K`` itself whenever that lies in the
    interior of the moving cone (otherwise no chamber can make ``X`` Fano).
    Returns the varieties and the number of draws used.
    """
    found: list[QuadricVariety] = []
    seen: set = set()
    tries = 0
    while len(found) < count and tries < max_tries:
        tries += 1
        s = random_full_setup(rng, cfg)
        if s is None:
            continue
        ak = (s.q - 2) // 2 * s.relation_degree + element_sum(s.group, s.degrees[s.q:])
        if not weight_cone(s).relint_contains(ak.free):
            continue
        try:
            X = new_quadric(s, ak.free)
        except (InvalidGrading, AmpleClassNotInMovingInterior):
            continue
        key = (s.group, tuple(sorted((w.free, w.tors) for w in s.degrees)), s.q, s.t)
        if key in seen or not X.is_ample(ak):
            continue
        seen.add(key)
        found.append(X)
    return found, tries
