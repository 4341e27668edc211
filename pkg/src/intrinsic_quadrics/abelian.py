"""Finitely generated abelian groups and the integer linear algebra below them.

A group ``K = Z^r + Z/k_1 + ... + Z/k_s`` is modelled as ``Z^(r+s)`` modulo the
relation lattice spanned by the vectors ``k_j * e_(r+j)``.  Subgroups are stored
as the Hermite normal form of a lattice containing the relation lattice, so two
subgroups are equal exactly when their stored lattices are equal.

All arithmetic is done on Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

Matrix = list[list[int]]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        quo, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - quo * x1
        y0, y1 = y1, y0 - quo * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _comb(x: int, r: list[int], y: int, s: list[int]) -> list[int]:
    return [x * a + y * b for a, b in zip(r, s)]


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(row[k] * B[k][j] for k in range(len(B))) for j in range(cols)] for row in A]


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss)."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(r) for r in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def hermite_normal_form(M: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U @ M == H`` and ``U`` unimodular.  The nonzero
    rows of ``H`` come first, have positive pivots, and entries above each
    pivot are reduced into ``[0, pivot)``.
    """
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    U = _identity(m)
    row = 0
    for col in range(n):
        if row == m:
            break
        for i in range(row + 1, m):
            b = A[i][col]
            if b == 0:
                continue
            a = A[row][col]
            g, x, y = _xgcd(a, b)
            p, r = -b // g, a // g
            A[row], A[i] = _comb(x, A[row], y, A[i]), _comb(p, A[row], r, A[i])
            U[row], U[i] = _comb(x, U[row], y, U[i]), _comb(p, U[row], r, U[i])
        if A[row][col] == 0:
            continue
        if A[row][col] < 0:
            A[row] = [-v for v in A[row]]
            U[row] = [-v for v in U[row]]
        piv = A[row][col]
        for i in range(row):
            f = A[i][col] // piv
            if f:
                A[i] = _comb(1, A[i], -f, A[row])
                U[i] = _comb(1, U[i], -f, U[row])
        row += 1
    return A, U


def hnf_rows(M: Sequence[Sequence[int]], ncols: int) -> tuple[tuple[int, ...], ...]:
    """The nonzero rows of the HNF of ``M``; a canonical basis of its row lattice."""
    if not M:
        return ()
    H, _ = hermite_normal_form(M, ncols)
    return tuple(tuple(r) for r in H if any(r))


def left_kernel(M: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Integer basis of ``{x : x @ M == 0}``."""
    if not M:
        return []
    H, U = hermite_normal_form(M, ncols)
    return [U[i] for i, r in enumerate(H) if not any(r)]


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``(S, U, V)`` with ``U @ M @ V == S``.

    ``S`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``; ``U`` and
    ``V`` are unimodular.
    """
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i: int, j: int) -> None:
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for R in A:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(dst: int, src: int, f: int) -> None:
        A[dst] = _comb(1, A[dst], f, A[src])
        U[dst] = _comb(1, U[dst], f, U[src])

    def add_col(dst: int, src: int, f: int) -> None:
        for R in A:
            R[dst] += f * R[src]
        for R in V:
            R[dst] += f * R[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < best[0]):
                        best = (abs(A[i][j]), i, j)
            if best is None:
                return A, U, V
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
    return A, U, V


def elementary_divisors(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form of ``M``."""
    if not M:
        return []
    S, _, _ = smith_normal_form(M)
    return [S[i][i] for i in range(min(len(S), len(S[0]))) if S[i][i]]


def _solve_in_rows(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer coefficients ``c`` with ``c @ basis == v`` for an HNF ``basis``, or None."""
    c: list[int] = []
    rest = list(v)
    for row in basis:
        piv = next(j for j, a in enumerate(row) if a)
        if rest[piv] % row[piv]:
            return None
        f = rest[piv] // row[piv]
        c.append(f)
        rest = [a - f * b for a, b in zip(rest, row)]
    if any(rest):
        return None
    return c


# --- groups -------------------------------------------------------------------


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^rank`` plus cyclic factors ``Z/k`` with ``k_1 | k_2 | ...``."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(int(k) for k in self.torsion))
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if any(k < 2 for k in self.torsion):
            raise ValueError(f"invariant factors must be >= 2, got {self.torsion}")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError(f"invariant factors must divide each other, got {self.torsion}")

    @classmethod
    def from_relations(cls, relations: Sequence[Sequence[int]], ncols: int) -> tuple["FgAbelianGroup", Matrix]:
        """Group ``Z^ncols / rowspace(relations)`` in normal form.

        Also returns the integer matrix (``ncols`` rows) sending ``e_i`` to the
        coordinates of its class in the normal-form group.
        """
        rows = [list(r) for r in relations] or [[0] * ncols]
        S, _, V = smith_normal_form(rows)
        diag = [S[i][i] if i < len(S) else 0 for i in range(ncols)]
        # coordinate j of the class of x is (x @ V)_j, reduced mod diag[j]
        keep_free = [j for j in range(ncols) if diag[j] == 0]
        keep_tors = [j for j in range(ncols) if diag[j] > 1]
        group = cls(len(keep_free), tuple(diag[j] for j in keep_tors))
        images = [[V[i][j] for j in keep_free + keep_tors] for i in range(ncols)]
        return group, images

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    def relations(self) -> Matrix:
        d = self.ngens
        return [[k if j == self.rank + i else 0 for j in range(d)] for i, k in enumerate(self.torsion)]

    def element(self, free: Iterable[int] = (), tors: Iterable[int] = ()) -> "GroupElement":
        return GroupElement(self, tuple(free), tuple(tors) or (0,) * len(self.torsion))

    def zero(self) -> "GroupElement":
        return self.element((0,) * self.rank)

    def from_vector(self, v: Sequence[int]) -> "GroupElement":
        return self.element(v[: self.rank], v[self.rank:])

    def two_torsion_order(self) -> int:
        """Order of the subgroup of elements killed by 2."""
        return 2 ** sum(1 for k in self.torsion if k % 2 == 0)

    def is_torsion_free(self) -> bool:
        return not self.torsion

    def __str__(self) -> str:
        parts = [f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{k}" for k in self.torsion]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class GroupElement:
    group: FgAbelianGroup
    free: tuple[int, ...]
    tors: tuple[int, ...]

    def __post_init__(self) -> None:
        g = self.group
        if len(self.free) != g.rank or len(self.tors) != len(g.torsion):
            raise ValueError(f"element ({self.free}, {self.tors}) does not belong to {g}")
        object.__setattr__(self, "free", tuple(int(a) for a in self.free))
        object.__setattr__(self, "tors", tuple(int(a) % k for a, k in zip(self.tors, g.torsion)))

    @property
    def vector(self) -> tuple[int, ...]:
        return self.free + self.tors

    def _check(self, other: "GroupElement") -> None:
        if other.group != self.group:
            raise ValueError("elements of different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(
            self.group,
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.tors, other.tors)),
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.free), tuple(-a for a in self.tors))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, tuple(k * a for a in self.free), tuple(k * a for a in self.tors))

    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.tors)

    def __str__(self) -> str:
        s = "(" + ", ".join(map(str, self.free)) + ")"
        if self.tors:
            s += " + (" + ", ".join(f"{a} mod {k}" for a, k in zip(self.tors, self.group.torsion)) + ")"
        return s


def element_sum(group: FgAbelianGroup, elems: Iterable[GroupElement]) -> GroupElement:
    return reduce(lambda a, b: a + b, elems, group.zero())


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of ``ambient`` given by the HNF of its preimage lattice."""

    ambient: FgAbelianGroup
    lattice: tuple[tuple[int, ...], ...]

    def contains(self, w: GroupElement) -> bool:
        if w.group != self.ambient:
            raise ValueError("element does not belong to the ambient group")
        return _solve_in_rows(self.lattice, w.vector) is not None

    def quotient_invariants(self) -> list[int]:
        """Invariants of ``K / self``: torsion orders, then 0 for each free summand."""
        d = self.ambient.ngens
        divs = elementary_divisors(self.lattice) if self.lattice else []
        return [k for k in divs if k != 1] + [0] * (d - len(divs))

    def is_full(self) -> bool:
        return not self.quotient_invariants()

    def index(self) -> int | None:
        """``[K : self]``, or None if infinite."""
        inv = self.quotient_invariants()
        if 0 in inv:
            return None
        return reduce(lambda a, b: a * b, inv, 1)

    def structure(self) -> FgAbelianGroup:
        """Isomorphism type of the subgroup itself."""
        rels = [_solve_in_rows(self.lattice, r) for r in self.ambient.relations()]
        k = len(self.lattice)
        if not rels:
            return FgAbelianGroup(k)
        divs = elementary_divisors(rels)
        return FgAbelianGroup(k - len(divs), tuple(x for x in divs if x != 1))

    @property
    def free_rank(self) -> int:
        return len(self.lattice) - len(self.ambient.torsion)


def subgroup_from_generators(K: FgAbelianGroup, gens: Iterable[GroupElement]) -> Subgroup:
    rows = []
    for g in gens:
        if g.group != K:
            raise ValueError(f"generator {g} does not belong to {K}")
        rows.append(list(g.vector))
    rows += K.relations()
    return Subgroup(K, hnf_rows(rows, K.ngens))


def full_subgroup(K: FgAbelianGroup) -> Subgroup:
    return subgroup_from_generators(K, [K.from_vector(r) for r in _identity(K.ngens)])


def subgroup_intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    if A.ambient != B.ambient:
        raise ValueError("subgroups of different groups")
    d = A.ambient.ngens
    if not A.lattice or not B.lattice:
        return Subgroup(A.ambient, ())
    stacked = [list(r) for r in A.lattice] + [[-a for a in r] for r in B.lattice]
    ker = left_kernel(stacked, d)
    na = len(A.lattice)
    rows = [[sum(x[i] * A.lattice[i][j] for i in range(na)) for j in range(d)] for x in ker]
    return Subgroup(A.ambient, hnf_rows(rows, d))


def generates_group(K: FgAbelianGroup, gens: Iterable[GroupElement]) -> bool:
    return subgroup_from_generators(K, gens).is_full()


def max_divisor(K: FgAbelianGroup, w: GroupElement) -> int:
    """Largest ``q >= 1`` such that ``w = q*v`` for some ``v`` in ``K``.

    Only defined when the free part of ``w`` is nonzero; a torsion element is
    divisible by infinitely many integers.
    """
    if w.group != K:
        raise ValueError("element does not belong to the group")
    if w.is_zero():
        raise ValueError("max_divisor of the zero class")
    g = reduce(gcd, w.free, 0)
    if g == 0:
        raise ValueError("max_divisor is unbounded for a torsion element")
    for q in sorted((d for d in range(1, g + 1) if g % d == 0), reverse=True):
        # q*x = a (mod k) is solvable iff gcd(q, k) divides a
        if all(a % gcd(q, k) == 0 for a, k in zip(w.tors, K.torsion)):
            return q
    return 1


def rational_rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    """Rank over Q of a list of row vectors."""
    A = [[Fraction(a) for a in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(rank + 1, len(A)):
            if A[i][col]:
                f = A[i][col] / A[rank][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank
