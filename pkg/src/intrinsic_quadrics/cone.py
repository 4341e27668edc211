"""Exact rational polyhedral cones.

A cone is kept in a canonical double description:

* ``lineality``: canonical basis of the lineality space,
* ``rays``: primitive extreme rays of the pointed part, chosen orthogonal to
  the lineality space and sorted,
* ``facets``: primitive inner normals, chosen inside the linear span,
* ``equations``: canonical basis of the orthogonal complement of the span.

Because every field is a normal form, ``==`` and ``hash`` decide equality of
cones.  The algorithms are the naive ones (subsets of generators or of
inequalities) and are meant for the small ambient dimensions that occur for
divisor class groups; :data:`DIM_LIMIT` guards against accidental misuse.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

DIM_LIMIT = int(os.environ.get("IQ_CONE_DIM_LIMIT", "10"))

Vector = tuple[int, ...]


class ConeDimensionError(ValueError):
    pass


def primitive(v: Sequence[int | Fraction]) -> Vector:
    """Positive multiple of ``v`` with coprime integer entries."""
    fr = [Fraction(a) for a in v]
    den = reduce(lcm, (a.denominator for a in fr), 1)
    ints = [int(a * den) for a in fr]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(a // g for a in ints)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    A = [[Fraction(a) for a in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][col]
        A[r] = [a / p for a in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col]:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(_rref(rows, ncols)[1]) if rows else 0


def row_space_basis(rows: Sequence[Sequence], ncols: int) -> tuple[Vector, ...]:
    """Canonical primitive integer basis of the rational row space."""
    R, _ = _rref(rows, ncols) if rows else ([], [])
    return tuple(primitive(r) for r in R)


def nullspace(rows: Sequence[Sequence], ncols: int) -> tuple[Vector, ...]:
    """Canonical primitive integer basis of ``{x : r.x = 0 for all rows r}``."""
    R, pivots = _rref(rows, ncols) if rows else ([], [])
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return tuple(basis)


def _project_off(v: Sequence[int], lin: Sequence[Vector]) -> list[Fraction]:
    """Orthogonal projection of ``v`` onto the complement of ``span(lin)``."""
    if not lin:
        return [Fraction(a) for a in v]
    k = len(lin)
    gram = [[Fraction(dot(a, b)) for b in lin] for a in lin]
    rhs = [Fraction(dot(a, v)) for a in lin]
    aug = [gram[i] + [rhs[i]] for i in range(k)]
    R, _ = _rref(aug, k + 1)
    coeffs = [R[i][k] for i in range(k)]
    return [Fraction(v[j]) - sum(c * b[j] for c, b in zip(coeffs, lin)) for j in range(len(v))]


@dataclass(frozen=True)
class RationalCone:
    ambient_dim: int
    rays: tuple[Vector, ...]
    lineality: tuple[Vector, ...]
    facets: tuple[Vector, ...]
    equations: tuple[Vector, ...]

    # --- queries ------------------------------------------------------------

    @property
    def generators(self) -> tuple[Vector, ...]:
        """A generating set as a cone: rays plus both signs of the lineality basis."""
        neg = tuple(tuple(-a for a in v) for v in self.lineality)
        return self.rays + self.lineality + neg

    def dim(self) -> int:
        return self.ambient_dim - len(self.equations)

    def is_pointed(self) -> bool:
        return not self.lineality

    def is_full_dimensional(self) -> bool:
        return not self.equations

    def _check(self, x: Sequence) -> None:
        if len(x) != self.ambient_dim:
            raise ValueError(f"vector of length {len(x)} in a cone of ambient dimension {self.ambient_dim}")

    def in_span(self, x: Sequence) -> bool:
        self._check(x)
        return all(dot(e, x) == 0 for e in self.equations)

    def contains(self, x: Sequence) -> bool:
        return self.in_span(x) and all(dot(n, x) >= 0 for n in self.facets)

    def relint_contains(self, x: Sequence) -> bool:
        return self.in_span(x) and all(dot(n, x) > 0 for n in self.facets)

    def contains_cone(self, other: "RationalCone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def relint_point(self) -> Vector:
        """An integral point of the relative interior (the sum of the rays)."""
        return tuple(sum(r[j] for r in self.rays) for j in range(self.ambient_dim))

    def minimal_face(self, x: Sequence) -> "RationalCone":
        """The smallest face containing the point ``x`` of the cone."""
        if not self.contains(x):
            raise ValueError(f"{tuple(x)} is not in the cone")
        active = [n for n in self.facets if dot(n, x) == 0]
        return cone_from_inequalities(self.ambient_dim, self.facets, self.equations + tuple(active))

    def is_face_of(self, other: "RationalCone") -> bool:
        if not other.contains_cone(self):
            return False
        return other.minimal_face(self.relint_point()) == self

    def __repr__(self) -> str:
        parts = [f"rays={list(self.rays)}"]
        if self.lineality:
            parts.append(f"lineality={list(self.lineality)}")
        return f"RationalCone(dim={self.dim()}, {', '.join(parts)})"


def zero_cone(d: int) -> RationalCone:
    return RationalCone(d, (), (), (), nullspace([], d))


def _check_dim(d: int) -> None:
    if d > DIM_LIMIT:
        raise ConeDimensionError(f"ambient dimension {d} exceeds the cone dimension limit {DIM_LIMIT}")


def cone_from_generators(vectors: Iterable[Sequence[int | Fraction]], ambient_dim: int | None = None) -> RationalCone:
    """Canonical cone generated by ``vectors``."""
    vecs = [tuple(v) for v in vectors]
    if ambient_dim is None:
        if not vecs:
            raise ValueError("ambient dimension needed for the empty generating set")
        ambient_dim = len(vecs[0])
    if any(len(v) != ambient_dim for v in vecs):
        raise ValueError("generators of different lengths")
    gens = tuple(sorted({primitive(v) for v in vecs if any(v)}))
    return _from_generators(ambient_dim, gens)


@lru_cache(maxsize=200_000)
def _from_generators(d: int, gens: tuple[Vector, ...]) -> RationalCone:
    _check_dim(d)
    if not gens:
        return zero_cone(d)
    span = row_space_basis(gens, d)
    k = len(span)
    equations = nullspace(span, d)
    facets: set[Vector] = set()
    indep_rank = k - 1
    for sub in combinations(gens, indep_rank):
        if indep_rank and rank(sub, d) < indep_rank:
            continue
        ns = nullspace(list(equations) + list(sub), d)
        if len(ns) != 1:
            continue
        n = ns[0]
        vals = [dot(n, g) for g in gens]
        if all(v >= 0 for v in vals):
            facets.add(n)
        elif all(v <= 0 for v in vals):
            facets.add(tuple(-a for a in n))
    facet_t = tuple(sorted(facets))
    lineality = nullspace(list(equations) + list(facet_t), d)
    rays: set[Vector] = set()
    for g in gens:
        p = primitive(_project_off(g, lineality))
        if not any(p):
            continue
        active = [n for n in facet_t if dot(n, p) == 0]
        if rank(list(equations) + list(lineality) + active, d) == d - 1:
            rays.add(p)
    return RationalCone(d, tuple(sorted(rays)), lineality, facet_t, equations)


def cone_from_inequalities(
    d: int, inequalities: Iterable[Sequence[int]], equations: Iterable[Sequence[int]] = ()
) -> RationalCone:
    """Canonical cone ``{x : a.x >= 0, e.x = 0}``."""
    A = tuple(sorted({primitive(a) for a in inequalities if any(a)}))
    E = tuple(sorted({primitive(e) for e in equations if any(e)}))
    return _from_inequalities(d, A, E)


@lru_cache(maxsize=200_000)
def _from_inequalities(d: int, A: tuple[Vector, ...], E: tuple[Vector, ...]) -> RationalCone:
    _check_dim(d)
    lineality = nullspace(list(A) + list(E), d)
    M = list(E) + list(lineality)
    r0 = rank(M, d) if M else 0
    need = d - 1 - r0
    rays: list[Vector] = []
    if need >= 0:
        for sub in combinations(A, need):
            rows = M + list(sub)
            ns = nullspace(rows, d)
            if len(ns) != 1:
                continue
            x = ns[0]
            if all(dot(a, x) >= 0 for a in A):
                rays.append(x)
            elif all(dot(a, x) <= 0 for a in A):
                rays.append(tuple(-v for v in x))
    gens = rays + list(lineality) + [tuple(-v for v in x) for x in lineality]
    return cone_from_generators(gens, d)


def intersect(A: RationalCone, B: RationalCone) -> RationalCone:
    if A.ambient_dim != B.ambient_dim:
        raise ValueError("cones in different ambient spaces")
    if A == B:
        return A
    return cone_from_inequalities(A.ambient_dim, A.facets + B.facets, A.equations + B.equations)


def intersect_all(cones: Iterable[RationalCone], d: int) -> RationalCone:
    """Intersection of a family of cones; the whole space for the empty family."""
    facets: set[Vector] = set()
    eqs: set[Vector] = set()
    seen = False
    for c in cones:
        seen = True
        facets.update(c.facets)
        eqs.update(c.equations)
    if not seen:
        basis = [tuple(int(i == j) for j in range(d)) for i in range(d)]
        return cone_from_generators(basis + [tuple(-a for a in v) for v in basis], d)
    return cone_from_inequalities(d, facets, eqs)


def cone_equals(A: RationalCone, B: RationalCone) -> bool:
    return A == B


def dim(C: RationalCone) -> int:
    return C.dim()


def is_pointed(C: RationalCone) -> bool:
    return C.is_pointed()


def contains(C: RationalCone, x: Sequence) -> bool:
    return C.contains(x)


def relint_contains(C: RationalCone, x: Sequence) -> bool:
    return C.relint_contains(x)
