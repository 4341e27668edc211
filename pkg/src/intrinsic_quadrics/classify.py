"""Explicit classification lists of smooth intrinsic quadrics.

Every enumerator builds concrete graded setups, hands them to the quadric
engine and (by default) cross-checks the claims attached to the family:
validity, smoothness, Picard number and the semiample cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterator, Literal, Sequence

from .abelian import FgAbelianGroup
from .cone import RationalCone, cone_from_generators, intersect
from .grading import GradedSetup
from .quadric import FanoTag, QuadricVariety, new_quadric


class ClassificationMismatch(AssertionError):
    """An enumerated constellation failed a property its family guarantees."""


class TablePrediction(str, Enum):
    FANO = "Fano"
    TRULY_ALMOST_FANO = "TrulyAlmostFano"
    NEITHER = "Neither"


def _z(r: int) -> FgAbelianGroup:
    return FgAbelianGroup(r, ())


def _ray_sum(c: RationalCone) -> tuple[int, ...]:
    return c.relint_point()


@dataclass(frozen=True, order=True)
class ConstellationP2:
    """A Picard number two constellation of one of the four Types.

    ``a`` is the parameter of ``w_2 = w_4 = ... = (a, 1)`` for Type 4 and
    ``None`` otherwise.  ``a_list`` holds ``a_1..a_m`` (Types 1 and 4) or the
    normalized values ``min(a_i, alpha - a_i)`` of the pairs after the first
    (Type 2).
    """

    type_tag: int
    n: int
    m: int
    alpha: int
    a: int | None = None
    a_list: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        n, m, al = self.n, self.m, self.alpha
        t = self.type_tag
        if t in (1, 2, 3) and n < 5:
            raise ValueError(f"Type {t} needs n >= 5")
        if t in (1, 2) and m < 2:
            raise ValueError(f"Type {t} needs m >= 2")
        if t == 1 and (len(self.a_list) != m or list(self.a_list) != sorted(self.a_list)
                       or self.a_list[0] != 0 or self.a_list[-1] != al):
            raise ValueError("Type 1 needs 0 = a_1 <= ... <= a_m = alpha")
        if t == 2:
            if n % 2 and al % 2:
                raise ValueError("Type 2 with n odd needs alpha even")
            if len(self.a_list) != n // 2 - 1 or any(not 0 <= x <= al - x for x in self.a_list):
                raise ValueError("Type 2 pair values must satisfy 0 <= a_i <= alpha - a_i")
        if t == 3 and (m < 1 or al != 2):
            raise ValueError("Type 3 needs m >= 1 (alpha is fixed to 2)")
        if t == 4:
            if n < 6 or n % 2:
                raise ValueError("Type 4 needs n >= 6 even")
            if self.a is None or not 0 <= self.a <= al or len(self.a_list) != m:
                raise ValueError("Type 4 needs 0 <= a <= alpha and m values a_j")
            vals = (self.a, *self.a_list)
            if any(not 0 <= x <= al for x in vals) or min(vals) != 0 or max(vals) != al:
                raise ValueError("Type 4 needs (0,1) and (alpha,1) among the degrees")
            if list(self.a_list) != sorted(self.a_list):
                raise ValueError("Type 4 a_j must be sorted")

    @property
    def dimension(self) -> int:
        return self.n + self.m - 3

    @property
    def qt(self) -> tuple[int, int]:
        return (self.n, 0) if self.n % 2 == 0 else (self.n - 1, 1)

    def w_degrees(self) -> list[tuple[int, int]]:
        n, al = self.n, self.alpha
        if self.type_tag == 1:
            return [(1, 0)] * n
        if self.type_tag == 2:
            ws = [(0, 1), (al, 1)]
            for x in self.a_list:
                ws += [(x, 1), (al - x, 1)]
            if n % 2:
                ws.append((al // 2, 1))
            return ws
        if self.type_tag == 3:
            return [(0, 1), (2, 1)] + [(1, 1)] * (n - 2)
        return [(1, 0), (self.a, 1)] * (n // 2)

    def u_degrees(self) -> list[tuple[int, int]]:
        if self.type_tag in (1, 4):
            return [(x, 1) for x in self.a_list]
        return [(1, 0)] * self.m

    def tau(self) -> RationalCone:
        if self.type_tag == 3:
            return cone_from_generators([(1, 1), (2, 1)], 2)
        return cone_from_generators([(1, 0), (self.alpha, 1)], 2)

    def setup(self) -> GradedSetup:
        q, t = self.qt
        return GradedSetup.from_vectors(_z(2), self.w_degrees() + self.u_degrees(), q, t, self.m)

    def variety(self) -> QuadricVariety:
        return new_quadric(self.setup(), _ray_sum(self.tau()))

    def label(self) -> str:
        extra = f" a={self.a}" if self.a is not None else ""
        return f"Type {self.type_tag} n={self.n} m={self.m} alpha={self.alpha}{extra} a_list={list(self.a_list)}"


@dataclass(frozen=True, order=True)
class ConstellationP3Full:
    """A full Picard number three constellation; ``extra_pairs`` lists, for the
    pairs beyond the eighth variable, ``None`` for a copy of ``w_1, w_2`` or the
    segment parameter ``c`` giving ``(0,c,1), (1,a-c,0)``."""

    n: int
    a: int
    extra_pairs: tuple[int | None, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 8 or self.n % 2 or self.a < 0:
            raise ValueError("need n >= 8 even and a >= 0")
        if len(self.extra_pairs) != (self.n - 8) // 2:
            raise ValueError("one extra-pair choice per pair beyond T_8")
        if any(c is not None and not 0 <= c <= self.a for c in self.extra_pairs):
            raise ValueError("segment parameter out of range")

    @property
    def dimension(self) -> int:
        return self.n - 4

    def degrees(self) -> list[tuple[int, int, int]]:
        a = self.a
        ws = [(0, 1, 0), (1, a - 1, 1), (0, 1, 0), (1, a - 1, 1),
              (0, 0, 1), (1, a, 0), (1, 0, 0), (0, a, 1)]
        for c in self.extra_pairs:
            ws += [(0, 1, 0), (1, a - 1, 1)] if c is None else [(0, c, 1), (1, a - c, 0)]
        return ws

    def tau(self) -> RationalCone:
        w = self.degrees()
        return intersect(
            cone_from_generators([w[0], w[1], w[5]], 3),
            cone_from_generators([w[0], w[5], w[7]], 3),
        )

    def setup(self) -> GradedSetup:
        return GradedSetup.from_vectors(_z(3), self.degrees(), self.n, 0, 0)

    def variety(self) -> QuadricVariety:
        return new_quadric(self.setup(), _ray_sum(self.tau()))

    def label(self) -> str:
        pairs = ["copy" if c is None else f"c={c}" for c in self.extra_pairs]
        return f"full rho=3 n={self.n} a={self.a} extra={pairs}"


@dataclass
class Item:
    constellation: object
    variety: QuadricVariety
    smooth: bool = True
    notes: dict = field(default_factory=dict)


# --- constellation generators --------------------------------------------------


def _multisets(values: Sequence[int], k: int) -> Iterator[tuple[int, ...]]:
    return combinations_with_replacement(values, k)


def constellations_p2(n: int, m: int, alpha: int) -> Iterator[ConstellationP2]:
    """All canonical constellations of the four Types for fixed ``n, m, alpha``."""
    if n >= 5 and m >= 2:
        for mid in _multisets(range(alpha + 1), m - 2):
            yield ConstellationP2(1, n, m, alpha, None, (0, *mid, alpha))
        if not (n % 2 and alpha % 2):
            for pairs in _multisets(range(alpha // 2 + 1), n // 2 - 1):
                yield ConstellationP2(2, n, m, alpha, None, pairs)
    if n >= 5 and m >= 1 and alpha == 2:
        yield ConstellationP2(3, n, m, 2)
    if n >= 6 and n % 2 == 0:
        for a in range(alpha + 1):
            for us in _multisets(range(alpha + 1), m):
                vals = (a, *us)
                if min(vals) == 0 and max(vals) == alpha:
                    yield ConstellationP2(4, n, m, alpha, a, us)


def grid_constellations(n_max: int, m_max: int, alpha_max: int) -> list[ConstellationP2]:
    out = []
    for n in range(5, n_max + 1):
        for m in range(0, m_max + 1):
            for alpha in range(alpha_max + 1):
                out.extend(constellations_p2(n, m, alpha))
    # Type 3 has no free parameter; include it even when alpha_max < 2
    if alpha_max < 2:
        for n in range(5, n_max + 1):
            for m in range(1, m_max + 1):
                out.append(ConstellationP2(3, n, m, 2))
    return sorted(set(out))


def check_p2(c: ConstellationP2, X: QuadricVariety) -> list[str]:
    problems = []
    if not X.report.valid:
        problems.append("validate failed: " + "; ".join(X.report.messages))
    if not X.group.is_torsion_free():
        problems.append("class group has torsion")
    if not X.is_smooth():
        problems.append("not smooth")
    if X.picard_number() != 2:
        problems.append(f"Picard number {X.picard_number()}")
    if X.semiample_cone() != c.tau():
        problems.append(f"SAmple {X.semiample_cone()} != tau_X {c.tau()}")
    return problems


def check_p3(c: ConstellationP3Full, X: QuadricVariety) -> list[str]:
    problems = []
    if not X.is_smooth():
        problems.append("not smooth")
    if X.picard_number() != 3:
        problems.append(f"Picard number {X.picard_number()}")
    if X.semiample_cone() != c.tau():
        problems.append(f"SAmple {X.semiample_cone()} != tau_X {c.tau()}")
    if X.fano_status().tag == FanoTag.FANO:
        problems.append("unexpectedly Fano")
    return problems


FanoFilter = Literal["fano", "almost-fano"] | None


def _passes(X: QuadricVariety, fano: FanoFilter) -> bool:
    if fano is None:
        return True
    tag = X.fano_status().tag
    if fano == "fano":
        return tag == FanoTag.FANO
    return tag in (FanoTag.FANO, FanoTag.TRULY_ALMOST_FANO)


def iter_items(constellations, checker, verify: bool = True, fano: FanoFilter = None) -> Iterator[Item]:
    """Build, cross-check and filter constellations one at a time."""
    for c in constellations:
        X = c.variety()
        if verify:
            problems = checker(c, X)
            if problems:
                raise ClassificationMismatch(f"{c.label()}: {', '.join(problems)}")
        if _passes(X, fano):
            yield Item(c, X)


def _build(constellations, checker, verify: bool, fano: FanoFilter = None) -> list[Item]:
    return list(iter_items(constellations, checker, verify, fano))


def iter_picard2(dim: int, alpha_max: int) -> Iterator[ConstellationP2]:
    if dim < 3 or alpha_max < 0:
        raise ValueError("need dim >= 3 and alpha_max >= 0")
    for n in range(5, dim + 4):
        m = dim + 3 - n
        for alpha in range(alpha_max + 1):
            yield from constellations_p2(n, m, alpha)
        if alpha_max < 2 and m >= 1:
            yield ConstellationP2(3, n, m, 2)


def enumerate_picard2(dim: int, alpha_max: int, fano: FanoFilter = None, verify: bool = True) -> list[Item]:
    """Smooth intrinsic quadrics of Picard number two and dimension ``dim``.

    ``alpha_max`` bounds the parameter ``alpha`` of Types 1, 2 and 4; Type 3
    has no parameter and is always included.
    """
    return _build(sorted(set(iter_picard2(dim, alpha_max))), check_p2, verify, fano)


def enumerate_grid(n_max: int, m_max: int, alpha_max: int, verify: bool = True) -> list[Item]:
    return _build(grid_constellations(n_max, m_max, alpha_max), check_p2, verify)


def fano_table_predicate(c: ConstellationP2) -> TablePrediction:
    """Literal evaluation of the Fano / truly almost Fano table for Picard number two."""
    n, m, al = c.n, c.m, c.alpha

    def compare(lhs: Fraction, rhs: Fraction) -> TablePrediction:
        if lhs < rhs:
            return TablePrediction.FANO
        if lhs == rhs:
            return TablePrediction.TRULY_ALMOST_FANO
        return TablePrediction.NEITHER

    if c.type_tag == 1:
        return compare(Fraction(m * al), Fraction(n - 2 + sum(c.a_list)))
    if c.type_tag == 2:
        return compare(Fraction(n - 2, 2) * al, Fraction(m))
    if c.type_tag == 3:
        return compare(Fraction(m), Fraction(n - 2))
    if c.a == al:
        return compare(Fraction(m * al), Fraction(n - 2, 2) + sum(c.a_list))
    if c.a == 0 and all(x == 1 for x in c.a_list):
        return TablePrediction.TRULY_ALMOST_FANO
    return TablePrediction.NEITHER


def cone_prediction(X: QuadricVariety) -> TablePrediction:
    tag = X.fano_status().tag
    if tag == FanoTag.FANO:
        return TablePrediction.FANO
    if tag == FanoTag.TRULY_ALMOST_FANO:
        return TablePrediction.TRULY_ALMOST_FANO
    return TablePrediction.NEITHER


@dataclass(frozen=True)
class Picard1:
    n: int
    m: int

    @property
    def dimension(self) -> int:
        return self.n + self.m - 2

    def setup(self) -> GradedSetup:
        q, t = (self.n, 0) if self.n % 2 == 0 else (self.n - 1, 1)
        return GradedSetup.from_vectors(_z(1), [(1,)] * (self.n + self.m), q, t, self.m)

    def variety(self) -> QuadricVariety:
        return new_quadric(self.setup(), (1,))

    def label(self) -> str:
        return f"rho=1 n={self.n} m={self.m}"


def enumerate_picard1(dim: int) -> list[Item]:
    if dim < 3:
        raise ValueError("need dim >= 3")
    items = []
    for n in range(dim + 2, 4, -1):
        c = Picard1(n, dim + 2 - n)
        X = c.variety()
        items.append(Item(c, X, smooth=X.is_smooth()))
    return sorted(items, key=lambda it: (it.constellation.m, it.constellation.n))


def extra_pair_options(a: int) -> list[int | None]:
    return [None, *range(a + 1)]


def _option_key(c: int | None) -> int:
    return -1 if c is None else c


def iter_full_picard3(n_max: int, a_max: int) -> Iterator[ConstellationP3Full]:
    if n_max < 8 or a_max < 0:
        raise ValueError("need n_max >= 8 and a_max >= 0")
    for n in range(8, n_max + 1, 2):
        for a in range(a_max + 1):
            opts = sorted(extra_pair_options(a), key=_option_key)
            for extra in combinations_with_replacement(opts, (n - 8) // 2):
                yield ConstellationP3Full(n, a, tuple(extra))


def enumerate_full_picard3(n_max: int, a_max: int, verify: bool = True) -> list[Item]:
    return _build(iter_full_picard3(n_max, a_max), check_p3, verify)


@dataclass(frozen=True)
class FullFano:
    rho: int
    n: int

    @property
    def dimension(self) -> int:
        return self.n - 1 if self.rho == 1 else 2 * self.n - 1

    def setup(self) -> GradedSetup:
        if self.rho == 1:
            k = self.n + 1
            q, t = (k, 0) if k % 2 == 0 else (k - 1, 1)
            return GradedSetup.from_vectors(_z(1), [(1,)] * k, q, t, 0)
        return GradedSetup.from_vectors(_z(2), [(1, 0), (0, 1)] * (self.n + 1), 2 * self.n + 2, 0, 0)

    def variety(self) -> QuadricVariety:
        return new_quadric(self.setup(), (1,) if self.rho == 1 else (1, 1))

    def label(self) -> str:
        name = "quadric in P_" if self.rho == 1 else "flag variety in P_n x P_n, n="
        return f"{name}{self.n}"


def full_fano_smooth(dim_max: int, verify: bool = True) -> list[Item]:
    if dim_max < 3:
        raise ValueError("need dim_max >= 3")
    cs = [FullFano(1, n) for n in range(4, dim_max + 2)]
    cs += [FullFano(2, n) for n in range(2, (dim_max + 1) // 2 + 1)]
    items = []
    for c in cs:
        X = c.variety()
        if verify:
            problems = []
            if not X.is_smooth():
                problems.append("not smooth")
            if X.fano_status().tag != FanoTag.FANO:
                problems.append("not Fano")
            if X.picard_number() != c.rho:
                problems.append(f"Picard number {X.picard_number()}")
            if problems:
                raise ClassificationMismatch(f"{c.label()}: {', '.join(problems)}")
        items.append(Item(c, X))
    return items
