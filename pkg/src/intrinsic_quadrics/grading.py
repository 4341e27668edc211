"""Graded polynomial rings ``K[T_1..T_n, S_1..S_m]`` carrying a standard quadric.

The relation ``g_{q,t} = T_1T_2 + ... + T_{q-1}T_q + T_{q+1}^2 + ... + T_{q+t}^2``
involves exactly the ``T`` variables.  Degrees are listed ``T`` first, then ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .abelian import (
    FgAbelianGroup,
    GroupElement,
    elementary_divisors,
    generates_group,
    hnf_rows,
    left_kernel,
    _solve_in_rows,
)
from .cone import RationalCone, cone_from_generators, intersect_all


@dataclass(frozen=True)
class GradedSetup:
    group: FgAbelianGroup
    degrees: tuple[GroupElement, ...]
    q: int
    t: int
    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", tuple(self.degrees))
        q, t, m = self.q, self.t, self.m
        if q < 0 or t < 0 or m < 0 or q % 2:
            raise ValueError(f"need q even and q, t, m >= 0, got q={q} t={t} m={m}")
        if q + t < 3:
            raise ValueError(f"need q + t >= 3, got q + t = {q + t}")
        if len(self.degrees) != q + t + m:
            raise ValueError(f"expected {q + t + m} degrees, got {len(self.degrees)}")
        for w in self.degrees:
            if w.group != self.group:
                raise ValueError(f"degree {w} does not belong to {self.group}")
        mu = self.relation_degree
        for i in range(0, q, 2):
            if self.degrees[i] + self.degrees[i + 1] != mu:
                raise ValueError(f"g is not homogeneous: deg T{i + 1} + deg T{i + 2} != {mu}")
        squares = self.degrees[q:q + t]
        for i, w in enumerate(squares):
            if 2 * w != mu:
                raise ValueError(f"g is not homogeneous: 2 deg T{q + i + 1} != {mu}")
        if len(set(squares)) != len(squares):
            raise ValueError("degrees of the squared variables must be pairwise different")

    @classmethod
    def from_vectors(cls, group: FgAbelianGroup, vectors, q: int, t: int, m: int) -> "GradedSetup":
        return cls(group, tuple(group.from_vector(v) for v in vectors), q, t, m)

    @property
    def n(self) -> int:
        return self.q + self.t

    @property
    def size(self) -> int:
        return len(self.degrees)

    @property
    def relation_degree(self) -> GroupElement:
        if self.q:
            return self.degrees[0] + self.degrees[1]
        return 2 * self.degrees[0]

    @cached_property
    def free_degrees(self) -> tuple[tuple[int, ...], ...]:
        return tuple(w.free for w in self.degrees)

    def relation_monomials(self) -> list[tuple[int, ...]]:
        """Index tuples (0-based) of the monomials of ``g_{q,t}``."""
        pairs = [(i, i + 1) for i in range(0, self.q, 2)]
        return pairs + [(i,) for i in range(self.q, self.n)]


def _cone_of(vectors, d: int) -> RationalCone:
    return cone_from_generators(vectors, d)


def weight_cone(s: GradedSetup) -> RationalCone:
    return _cone_of(s.free_degrees, s.group.rank)


def moving_cone(s: GradedSetup) -> RationalCone:
    vecs = s.free_degrees
    d = s.group.rank
    # deleting a degree that occurs twice does not change the cone
    cones = []
    for i, v in enumerate(vecs):
        if vecs.count(v) > 1 and i != vecs.index(v):
            continue
        cones.append(_cone_of(vecs[:i] + vecs[i + 1:], d))
    return intersect_all(cones, d)


def is_pointed_grading(s: GradedSetup) -> bool:
    if any(not any(v) for v in s.free_degrees):
        return False
    return weight_cone(s).is_pointed()


def almost_free(group: FgAbelianGroup, degrees) -> bool:
    """Any ``len(degrees) - 1`` of the degrees generate ``group``."""
    degrees = tuple(degrees)
    seen = set()
    for i, w in enumerate(degrees):
        if w in seen:
            continue
        seen.add(w)
        if not generates_group(group, degrees[:i] + degrees[i + 1:]):
            return False
    return True


def is_almost_free(s: GradedSetup) -> bool:
    return almost_free(s.group, s.degrees)


# Fixed rows of the matrix shapes for q + t < 5; columns are T_1..T_4, then S.
FACTORIAL_SHAPES: dict[tuple[int, int], list[list[int]]] = {
    (0, 4): [[-2, 2, 0, 0], [-2, 0, 2, 0], [-2, 0, 0, 2]],
    (2, 2): [[-1, -1, 2, 0], [-1, -1, 0, 2]],
    (0, 3): [[-2, 2, 0], [-2, 0, 2]],
}


def degree_kernel(s: GradedSetup) -> tuple[tuple[int, ...], ...]:
    """HNF basis of ``ker(Q)`` where ``Q: Z^(n+m) -> K`` sends ``e_i`` to ``deg`` of variable i."""
    N = s.size
    rows = [list(w.vector) for w in s.degrees] + s.group.relations()
    ker = left_kernel(rows, s.group.ngens)
    return hnf_rows([x[:N] for x in ker], N)


def is_factorially_graded(s: GradedSetup) -> tuple[bool, str]:
    if s.n >= 5:
        return True, "q+t>=5"
    key = (s.q, s.t)
    if key not in FACTORIAL_SHAPES:
        return False, "fails"
    tag = f"matrix-shape ({s.q},{s.t})"
    N = s.size
    fixed = [r + [0] * (N - len(r)) for r in FACTORIAL_SHAPES[key]]
    ker = degree_kernel(s)
    coords = [_solve_in_rows(ker, r) for r in fixed]
    if any(c is None for c in coords):
        return False, "fails"
    divs = elementary_divisors(coords)
    # ker / <fixed rows> must be cyclic: the one free row d
    extra = (len(ker) - len(divs)) + sum(1 for x in divs if x != 1)
    if extra > 1:
        return False, "fails"
    return True, tag


@dataclass
class ValidationReport:
    pointed: bool
    almost_free: bool
    moving_cone_fulldim: bool
    factorial: bool
    factorial_case: str
    messages: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.pointed and self.almost_free and self.moving_cone_fulldim and self.factorial

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "pointed": self.pointed,
            "almost_free": self.almost_free,
            "moving_cone_fulldim": self.moving_cone_fulldim,
            "factorial": self.factorial,
            "factorial_case": self.factorial_case,
            "messages": list(self.messages),
        }


def validate(s: GradedSetup) -> ValidationReport:
    pointed = is_pointed_grading(s)
    free = is_almost_free(s)
    mov_full = moving_cone(s).dim() == s.group.rank
    fact, case = is_factorially_graded(s)
    msgs = []
    if not pointed:
        msgs.append("grading is not pointed: weight cone contains a line or a degree has zero free part")
    if not free:
        msgs.append("grading is not almost free: some n+m-1 of the degrees do not generate K")
    if not mov_full:
        msgs.append("moving cone is not of full dimension in K_Q")
    if not fact:
        msgs.append(f"grading is not factorial for (q,t) = ({s.q},{s.t})")
    return ValidationReport(pointed, free, mov_full, fact, case, msgs)
