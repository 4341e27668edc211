"""Slow, independent reference implementations used to cross-check the engine."""

from __future__ import annotations

import cmath
import random
from fractions import Fraction
from itertools import combinations, product

from intrinsic_quadrics.abelian import FgAbelianGroup, GroupElement
from intrinsic_quadrics.normalform import QuadraticForm


def solve_exact(cols: list[tuple[int, ...]], x: tuple[int, ...]) -> list[Fraction] | None:
    """Unique ``lam`` with ``sum lam_i cols_i = x`` for independent ``cols``, or None."""
    k, d = len(cols), len(x)
    A = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(x[i])] for i in range(d)]
    r = 0
    piv = []
    for c in range(k):
        p = next((i for i in range(r, d) if A[i][c] != 0), None)
        if p is None:
            return None
        A[r], A[p] = A[p], A[r]
        A[r] = [a / A[r][c] for a in A[r]]
        for i in range(d):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv.append(c)
        r += 1
    if any(A[i][k] != 0 for i in range(r, d)):
        return None
    return [A[i][k] for i in range(k)]


def in_cone_caratheodory(gens: list[tuple[int, ...]], x: tuple[int, ...]) -> bool:
    """``x`` in ``cone(gens)`` via Caratheodory: some independent subset carries it."""
    if not any(x):
        return True
    gens = [g for g in gens if any(g)]
    d = len(x)
    for k in range(1, min(d, len(gens)) + 1):
        for sub in combinations(gens, k):
            lam = solve_exact(list(sub), x)
            if lam is not None and all(v >= 0 for v in lam):
                return True
    return False


def in_lattice_bruteforce(gens: list[tuple[int, ...]], x: tuple[int, ...], coef_bound: int) -> bool:
    for c in product(range(-coef_bound, coef_bound + 1), repeat=len(gens)):
        if all(sum(ci * g[j] for ci, g in zip(c, gens)) == x[j] for j in range(len(x))):
            return True
    return False


def lattice_index_bruteforce(face_gens: list[list[tuple[int, ...]]], side: int, coef_bound: int) -> Fraction:
    """``[Z^2 : intersection of the lattices]`` from the density of lattice points in a box.

    ``side`` must be a multiple of the index for the count to be exact.
    """
    pts = 0
    for x in product(range(side), repeat=2):
        if all(in_lattice_bruteforce(g, x, coef_bound) for g in face_gens):
            pts += 1
    return Fraction(side * side, pts)


def complete_monomials(q: int, t: int, mask: int) -> list[tuple[int, ...]]:
    mons = [(i, i + 1) for i in range(0, q, 2)] + [(i,) for i in range(q, q + t)]
    return [mon for mon in mons if all(mask >> i & 1 for i in mon)]


def stratum_witness(q: int, t: int, size: int, mask: int) -> list[complex] | None:
    """A point of ``V(g_{q,t})`` with exactly the coordinates in ``mask`` nonzero, or None.

    With a single complete monomial no such point exists (a product of
    nonzero numbers is nonzero); otherwise the monomial values are prescribed
    as nonzero numbers summing to zero and realized coordinate-wise.
    """
    mons = complete_monomials(q, t, mask)
    if len(mons) == 1:
        return None
    z = [complex(1) if mask >> i & 1 else 0j for i in range(size)]
    k = len(mons)
    values = [complex(1)] * (k - 1) + [complex(-(k - 1))] if k >= 2 else []
    for mon, v in zip(mons, values):
        if len(mon) == 2:
            z[mon[0]], z[mon[1]] = v, complex(1)
        else:
            z[mon[0]] = cmath.sqrt(v)
    return z


def eval_g(q: int, t: int, z: list[complex]) -> complex:
    return sum(z[i] * z[i + 1] for i in range(0, q, 2)) + sum(z[i] ** 2 for i in range(q, q + t))


def xbar_face_oracle(q: int, t: int, size: int, mask: int) -> bool:
    z = stratum_witness(q, t, size, mask)
    if z is None:
        return False
    assert abs(eval_g(q, t, z)) < 1e-9
    assert all((abs(z[i]) > 0) == bool(mask >> i & 1) for i in range(size))
    return True


def max_divisor_bruteforce(K: FgAbelianGroup, w: GroupElement) -> int:
    from math import gcd
    from functools import reduce

    g = reduce(gcd, w.free, 0)
    best = 1
    for q in range(1, g + 1):
        if g % q:
            continue
        v_free = tuple(a // q for a in w.free)
        for tors in product(*(range(k) for k in K.torsion)):
            if q * K.element(v_free, tors) == w:
                best = q
                break
    return best


def graded_scramble(f: QuadraticForm, rng: random.Random, entry: int = 3) -> QuadraticForm:
    """Apply a random invertible degree-preserving linear substitution and a scalar."""
    s = f.num_vars
    classes: dict = {}
    for i, w in enumerate(f.degrees):
        classes.setdefault(w, []).append(i)
    phi = [[Fraction(0)] * s for _ in range(s)]
    for idx in classes.values():
        while True:
            block = [[Fraction(rng.randint(-entry, entry)) for _ in idx] for _ in idx]
            if _det(block) != 0:
                break
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                phi[i][j] = block[a][b]
    g = f.substitute(phi)
    return g.scaled(Fraction(rng.choice([1, 2, -3, Fraction(1, 2)])))


def _det(M: list[list[Fraction]]) -> Fraction:
    A = [row[:] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return det


def permute_form(f: QuadraticForm, perm: list[int]) -> QuadraticForm:
    """Rename variable ``i`` to ``perm[i]``."""
    coeffs = {(perm[i], perm[j]): a for (i, j), a in f.coefficients.items()}
    degs = [None] * f.num_vars
    for i, p in enumerate(perm):
        degs[p] = f.degrees[i]
    return QuadraticForm(f.num_vars, coeffs, tuple(degs))


def random_standard_quadric(q: int, t: int, torsion: tuple[int, ...], rng: random.Random, extra: int = 2):
    """``g_{q,t}`` with random homogeneous degrees in ``Z + torsion`` plus ``extra`` unused variables.

    Pair degrees and unused degrees are drawn so that they sometimes coincide
    with other variables' degrees, which lets graded substitutions mix blocks.
    """
    from intrinsic_quadrics.normalform import standard_form

    K = FgAbelianGroup(1, torsion)
    two_tors = [tuple(k // 2 * b for k, b in zip(torsion, bits))
                for bits in product((0, 1), repeat=len(torsion))
                if all(k % 2 == 0 or b == 0 for k, b in zip(torsion, bits))]
    if t > len(two_tors):
        raise ValueError("not enough 2-torsion for t distinct squares")
    h = K.element((rng.randint(1, 3),), tuple(rng.randrange(k) for k in torsion))
    mu = 2 * h
    squares = [h + K.element((0,), tau) for tau in rng.sample(two_tors, t)]
    pool = [h] + squares
    degs = []
    for _ in range(q // 2):
        if rng.random() < 0.3:
            w = rng.choice(pool)
        else:
            w = K.element((rng.randint(-2, 5),), tuple(rng.randrange(k) for k in torsion))
        degs += [w, mu - w]
    degs += squares
    for _ in range(extra):
        degs.append(rng.choice(degs) if rng.random() < 0.5 else
                    K.element((rng.randint(1, 4),), tuple(rng.randrange(k) for k in torsion)))
    return K, standard_form(q, t, degs)
