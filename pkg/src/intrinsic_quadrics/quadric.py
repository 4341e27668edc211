"""Standard intrinsic quadrics ``X(q, t, m, u)`` and their invariants.

Faces of the positive orthant ``Q_{>=0}^(n+m)`` are handled as bitmasks over the
0-based variable indices.  Coordinates with the same degree inside the same
block are interchangeable (whole ``T``-pairs with equal degree pairs, and
``S``-variables of equal degree), so face enumeration works on orbit
representatives of that symmetry group and only expands them when a full list
is requested.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Iterator, Sequence

from .abelian import (
    FgAbelianGroup,
    GroupElement,
    Subgroup,
    element_sum,
    full_subgroup,
    generates_group,
    hnf_rows,
    max_divisor,
    smith_normal_form,
    subgroup_from_generators,
    subgroup_intersection,
    _solve_in_rows,
)
from .cone import RationalCone, cone_from_generators, dot, intersect_all, rank as qrank
from .grading import GradedSetup, ValidationReport, moving_cone, validate, weight_cone

DEFAULT_FACE_LIMIT = 24


def face_limit() -> int:
    return int(os.environ.get("IQ_FACE_LIMIT", DEFAULT_FACE_LIMIT))


class InvalidGrading(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("invalid grading: " + "; ".join(report.messages))


class AmpleClassNotInMovingInterior(ValueError):
    pass


class FaceLimitExceeded(ValueError):
    pass


class WNotEffective(ValueError):
    pass


class Unsupported(ValueError):
    pass


class SearchBoundExceeded(RuntimeError):
    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"monoid membership search exceeded {bound} states")


@dataclass(frozen=True, order=True)
class Face:
    """A face ``gamma_{i_1,...,i_k}`` of the orthant, by 1-based indices."""

    indices: tuple[int, ...]

    @classmethod
    def from_mask(cls, mask: int) -> "Face":
        return cls(tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1))

    @classmethod
    def of(cls, *indices: int) -> "Face":
        return cls(tuple(sorted(indices)))

    @property
    def mask(self) -> int:
        return sum(1 << (i - 1) for i in self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        return "gamma_{" + ",".join(map(str, self.indices)) + "}"


class FanoTag(str, Enum):
    FANO = "Fano"
    TRULY_ALMOST_FANO = "TrulyAlmostFano"
    NOT_ALMOST_FANO = "NotAlmostFano"


@dataclass(frozen=True)
class FanoStatus:
    tag: FanoTag
    anticanonical: GroupElement
    fano_index: int | None
    index_caveat: str | None = None


class ContractionType(str, Enum):
    FIBER_TYPE = "FiberType"
    DIVISORIAL = "Divisorial"
    SMALL = "Small"
    IDENTITY = "Identity"
    NOT_SEMIAMPLE = "NotSemiample"


@dataclass(frozen=True)
class MukaiCheck:
    lhs: int
    rhs: int
    holds: bool
    strict: bool


@dataclass(frozen=True)
class MonoidData:
    face: Face
    generators: tuple[GroupElement, ...]
    hilbert_basis: tuple[tuple[int, ...], ...]
    saturated: bool


# --- face combinatorics -------------------------------------------------------


def popcount(x: int) -> int:
    return bin(x).count("1")


def xbar_face_mask(q: int, t: int, mask: int) -> bool:
    """Face test by the four basic face types (i)-(iv)."""
    pairs = sum(1 for i in range(0, q, 2) if mask >> i & 3 == 3)
    squares = sum(1 for i in range(q, q + t) if mask >> i & 1)
    if pairs >= 2 or (pairs >= 1 and squares >= 1) or squares >= 2:
        return True
    return pairs == 0 and squares == 0


class _Symmetry:
    """Classes of interchangeable coordinates of a graded setup."""

    def __init__(self, s: GradedSetup):
        vecs = [w.vector for w in s.degrees]
        self.q, self.t, self.n, self.N = s.q, s.t, s.n, s.size
        pair_classes: dict[tuple, list[tuple[int, int]]] = {}
        for i in range(0, s.q, 2):
            a, b = (i, i + 1) if vecs[i] <= vecs[i + 1] else (i + 1, i)
            pair_classes.setdefault((vecs[a], vecs[b]), []).append((a, b))
        self.pair_classes = [(k[0] == k[1], v) for k, v in sorted(pair_classes.items())]
        self.squares = list(range(s.q, s.n))
        s_classes: dict[tuple, list[int]] = {}
        for j in range(s.n, s.size):
            s_classes.setdefault(vecs[j], []).append(j)
        self.s_classes = [v for _, v in sorted(s_classes.items())]

    def _pair_choices(self, symmetric: bool, members: list[tuple[int, int]]):
        patterns = (0, 1, 3) if symmetric else (0, 1, 2, 3)
        return list(combinations_with_replacement(patterns, len(members)))

    @staticmethod
    def _pattern_mask(pair: tuple[int, int], p: int) -> int:
        lo, hi = pair
        return (p & 1) * (1 << lo) | ((p >> 1) & 1) * (1 << hi)

    def representatives(self, include_t: bool = True, include_pairs: bool = True) -> Iterator[tuple[tuple, int]]:
        """Yield ``(key, mask)`` for one face in every orbit."""
        pair_opts = [
            self._pair_choices(sym, mem) if include_pairs else [(0,) * len(mem)]
            for sym, mem in self.pair_classes
        ]
        t_opts = [(0, 1) if include_t else (0,) for _ in self.squares]
        s_opts = [range(len(c) + 1) for c in self.s_classes]
        for choice in product(*pair_opts, *t_opts, *s_opts):
            mask = 0
            k = 0
            for (sym, mem), pats in zip(self.pair_classes, choice):
                for pair, p in zip(mem, pats):
                    mask |= self._pattern_mask(pair, p)
            k = len(self.pair_classes)
            for idx, c in zip(self.squares, choice[k:k + len(self.squares)]):
                mask |= c << idx
            k += len(self.squares)
            for cls, c in zip(self.s_classes, choice[k:]):
                for j in cls[:c]:
                    mask |= 1 << j
            yield choice, mask

    def orbit(self, key: tuple) -> list[int]:
        """All faces in the orbit with the given representative key."""
        parts: list[list[int]] = []
        k = len(self.pair_classes)
        for (sym, mem), pats in zip(self.pair_classes, key[:k]):
            opts = set()
            for arrangement in set(permutations(pats)):
                per_pair = []
                for pair, p in zip(mem, arrangement):
                    if sym and p == 1:
                        per_pair.append([1 << pair[0], 1 << pair[1]])
                    else:
                        per_pair.append([self._pattern_mask(pair, p)])
                for combo in product(*per_pair):
                    opts.add(sum(combo))
            parts.append(sorted(opts))
        for idx, c in zip(self.squares, key[k:k + len(self.squares)]):
            parts.append([c << idx])
        k += len(self.squares)
        for cls, c in zip(self.s_classes, key[k:]):
            parts.append(sorted(sum(1 << j for j in sub) for sub in combinations(cls, c)))
        return sorted(sum(combo) for combo in product(*parts))


# --- the variety ----------------------------------------------------------------


class QuadricVariety:
    """A validated standard intrinsic quadric with ample class ``u``."""

    def __init__(self, setup: GradedSetup, u: GroupElement, report: ValidationReport | None = None):
        if setup.size > face_limit():
            raise FaceLimitExceeded(
                f"n+m = {setup.size} exceeds the face enumeration cap {face_limit()} (set IQ_FACE_LIMIT)"
            )
        self.setup = setup
        self.u = u
        self.report = report if report is not None else validate(setup)
        self._sym = _Symmetry(setup)
        self._vecs = setup.free_degrees

    # basic data

    @property
    def group(self) -> FgAbelianGroup:
        return self.setup.group

    @property
    def rank(self) -> int:
        return self.setup.group.rank

    def dimension(self) -> int:
        return self.setup.size - self.rank - 1

    def relation_degree(self) -> GroupElement:
        return self.setup.relation_degree

    def degrees_on(self, mask: int) -> tuple[GroupElement, ...]:
        return tuple(w for i, w in enumerate(self.setup.degrees) if mask >> i & 1)

    def image_cone(self, mask: int) -> RationalCone:
        """``Q(gamma_0)`` in ``K_Q``."""
        return cone_from_generators([v for i, v in enumerate(self._vecs) if mask >> i & 1], self.rank)

    def image_group(self, mask: int) -> Subgroup:
        """``Q(lin(gamma_0) cap Z^(n+m))``: the subgroup generated by the degrees on the face."""
        return subgroup_from_generators(self.group, self.degrees_on(mask))

    # faces

    def is_xbar_face(self, face: Face | int) -> bool:
        mask = face.mask if isinstance(face, Face) else face
        return xbar_face_mask(self.setup.q, self.setup.t, mask)

    def _relevant_mask(self, mask: int) -> bool:
        return self.is_xbar_face(mask) and self.image_cone(mask).relint_contains(self.u.free)

    def is_x_relevant(self, face: Face | int) -> bool:
        mask = face.mask if isinstance(face, Face) else face
        return self._relevant_mask(mask)

    @cached_property
    def _cov(self) -> tuple[list[int], list[int]]:
        reps = sorted(self._sym.representatives(), key=lambda km: (popcount(km[1]), km[1]))
        cov_masks: list[int] = []
        cov_reps: list[int] = []
        for key, mask in reps:
            if any(c & mask == c for c in cov_masks):
                continue
            if self._relevant_mask(mask):
                cov_reps.append(mask)
                cov_masks.extend(self._sym.orbit(key))
        return sorted(cov_masks), cov_reps

    def covering_collection(self) -> list[Face]:
        return [Face.from_mask(m) for m in self._cov[0]]

    def covering_representatives(self) -> list[Face]:
        """One face of ``cov(X)`` per symmetry orbit."""
        return [Face.from_mask(m) for m in self._cov[1]]

    def relevant_faces(self) -> list[Face]:
        """All X-relevant faces (expanded from orbit representatives)."""
        out: list[int] = []
        for key, mask in self._sym.representatives():
            if self._relevant_mask(mask):
                out.extend(self._sym.orbit(key))
        return [Face.from_mask(m) for m in sorted(out)]

    def _xbar_orbit_reps(self) -> Iterator[int]:
        for _, mask in self._sym.representatives():
            if self.is_xbar_face(mask):
                yield mask

    # cones

    @cached_property
    def _eff(self) -> RationalCone:
        return weight_cone(self.setup)

    @cached_property
    def _mov(self) -> RationalCone:
        return moving_cone(self.setup)

    @cached_property
    def _sample(self) -> RationalCone:
        cones = {self.image_cone(m) for m in self._cov[1]}
        return intersect_all(cones, self.rank)

    def eff_cone(self) -> RationalCone:
        return self._eff

    def mov_cone(self) -> RationalCone:
        return self._mov

    def semiample_cone(self) -> RationalCone:
        return self._sample

    def is_ample(self, w: GroupElement | Sequence[int]) -> bool:
        """``w`` in the intersection of the relative interiors of ``Q(gamma_0)``, ``gamma_0`` in cov."""
        x = w.free if isinstance(w, GroupElement) else tuple(w)
        return all(self.image_cone(m).relint_contains(x) for m in self._cov[1])

    ample_cone_interior_test = is_ample

    def ample_formula_discrepancy(self, w: GroupElement | Sequence[int]) -> bool:
        """True when the literal ample test and ``relint(SAmple)`` disagree on ``w``."""
        x = w.free if isinstance(w, GroupElement) else tuple(w)
        return self.is_ample(x) != self._sample.relint_contains(x)

    # Picard group and singularities

    @cached_property
    def _picard(self) -> Subgroup:
        groups = {frozenset(self.degrees_on(m)): self.image_group(m) for m in self._cov[1]}
        result = full_subgroup(self.group)
        for g in groups.values():
            result = subgroup_intersection(result, g)
        return result

    def picard_group(self) -> Subgroup:
        return self._picard

    def picard_number(self) -> int:
        return self._picard.free_rank

    def xbar_singular_faces(self) -> list[Face]:
        """Faces ``gamma_0`` inside the S-block; their strata make up the singular locus of ``Xbar``."""
        n, N = self.setup.n, self.setup.size
        return [Face.from_mask(m << n) for m in range(1 << (N - n))] if N - n <= 16 else []

    @cached_property
    def _quasismooth(self) -> bool:
        for _, mask in self._sym.representatives(include_t=False, include_pairs=False):
            if self._relevant_mask(mask):
                return False
        return True

    def is_quasismooth(self) -> bool:
        return self._quasismooth

    def is_locally_factorial(self) -> bool:
        return all(generates_group(self.group, self.degrees_on(m)) for m in self._cov[1])

    def piece_is_smooth(self, face: Face | int) -> bool:
        mask = face.mask if isinstance(face, Face) else face
        if not self._relevant_mask(mask):
            raise ValueError(f"{Face.from_mask(mask)} is not X-relevant")
        has_t = mask & ((1 << self.setup.n) - 1) != 0
        return has_t and generates_group(self.group, self.degrees_on(mask))

    def is_smooth(self) -> bool:
        return self.is_quasismooth() and self.is_locally_factorial()

    def is_q_factorial(self) -> bool:
        return self._sample.dim() == self.rank

    def q_factorial_by_faces(self) -> bool:
        """Every X-relevant face has full-dimensional image."""
        for _, mask in self._sym.representatives():
            if self._relevant_mask(mask) and self.image_cone(mask).dim() != self.rank:
                return False
        return True

    # anticanonical class

    def anticanonical_class(self) -> GroupElement:
        s = self.setup
        K = s.group
        k = (s.q - 2) // 2
        return (
            k * s.relation_degree
            + element_sum(K, s.degrees[s.q:s.n])
            + element_sum(K, s.degrees[s.n:])
        )

    def fano_status(self) -> FanoStatus:
        ak = self.anticanonical_class()
        if self.is_ample(ak):
            tag = FanoTag.FANO
        elif self._sample.contains(ak.free):
            tag = FanoTag.TRULY_ALMOST_FANO
        else:
            tag = FanoTag.NOT_ALMOST_FANO
        index, caveat = None, None
        if any(ak.free):
            index = max_divisor(self.group, ak)
            if self.group.torsion:
                caveat = "class group has torsion; index is divisibility in Cl(X)"
        return FanoStatus(tag, ak, index, caveat)

    def mukai_check(self) -> MukaiCheck:
        status = self.fano_status()
        if status.fano_index is None:
            raise ValueError("Fano index undefined for a torsion anticanonical class")
        lhs = self.picard_number() * (status.fano_index - 1)
        rhs = self.dimension()
        return MukaiCheck(lhs, rhs, lhs <= rhs, lhs < rhs)

    # base point free monoid

    def bpf_generators(self, face: Face | int) -> tuple[GroupElement, ...]:
        mask = face.mask if isinstance(face, Face) else face
        return tuple(dict.fromkeys(self.degrees_on(mask)))

    def is_bpf_class(self, w: GroupElement, bound: int = 1_000_000) -> bool:
        return all(monoid_contains(self.bpf_generators(m), w, bound) for m in self._cov[1])

    def monoid_data(self, bound: int = 1_000_000) -> list[MonoidData]:
        if self.group.torsion:
            raise Unsupported("saturation check needs a torsion-free class group")
        out = []
        for m in self._cov[1]:
            gens = self.bpf_generators(m)
            hb = hilbert_basis([g.free for g in gens])
            sat = all(monoid_contains(gens, self.group.element(h), bound) for h in hb)
            out.append(MonoidData(Face.from_mask(m), gens, tuple(hb), sat))
        return out

    def bpf_saturated(self, bound: int = 1_000_000) -> bool:
        return all(d.saturated for d in self.monoid_data(bound))

    # GIT chambers

    def chamber(self, w: GroupElement | Sequence[int]) -> RationalCone:
        x = w.free if isinstance(w, GroupElement) else tuple(w)
        if not self._eff.contains(x):
            raise WNotEffective(f"{tuple(x)} is not in Eff(X)")
        cones = set()
        for mask in self._xbar_orbit_reps():
            c = self.image_cone(mask)
            if c.contains(x):
                cones.add(c)
        return intersect_all(cones, self.rank)

    def classify_contraction(self, w: GroupElement | Sequence[int]) -> ContractionType:
        x = w.free if isinstance(w, GroupElement) else tuple(w)
        lam = self.chamber(x)
        if not lam.is_face_of(self._sample):
            return ContractionType.NOT_SEMIAMPLE
        if lam == self._sample:
            return ContractionType.IDENTITY
        if not self._eff.relint_contains(x):
            return ContractionType.FIBER_TYPE
        if not self._mov.relint_contains(x):
            return ContractionType.DIVISORIAL
        return ContractionType.SMALL

    def __repr__(self) -> str:
        s = self.setup
        return f"QuadricVariety(q={s.q}, t={s.t}, m={s.m}, K={s.group}, u={self.u})"


def new_quadric(setup: GradedSetup, u: GroupElement | Sequence[int] | None = None) -> QuadricVariety:
    report = validate(setup)
    if not report.valid:
        raise InvalidGrading(report)
    mov = moving_cone(setup)
    K = setup.group
    if u is None:
        u = K.element(mov.relint_point())
    elif not isinstance(u, GroupElement):
        u = K.element(tuple(u))
    if not mov.relint_contains(u.free):
        raise AmpleClassNotInMovingInterior(f"u = {u} is not in the relative interior of the moving cone {mov}")
    return QuadricVariety(setup, u, report)


# --- monoids -------------------------------------------------------------------


def monoid_contains(gens: Sequence[GroupElement], w: GroupElement, bound: int = 1_000_000) -> bool:
    """Is ``w`` a nonnegative integer combination of ``gens``?

    The free parts of ``gens`` must span a pointed cone and be nonzero; a
    positive linear form then strictly decreases along the search, so it
    terminates.  ``bound`` caps the number of visited classes.
    """
    if w.is_zero():
        return True
    gens = tuple(dict.fromkeys(gens))
    if not gens:
        return False
    d = w.group.rank
    C = cone_from_generators([g.free for g in gens], d)
    if not C.is_pointed() or any(not any(g.free) for g in gens):
        raise ValueError("monoid generators must have nonzero free parts spanning a pointed cone")
    ell = [sum(n[j] for n in C.facets) for j in range(d)] if C.facets else list(gens[0].free)
    if C.dim() == 1 and not C.facets:
        ell = list(C.rays[0])
    failed: set[GroupElement] = set()
    visits = 0

    def search(x: GroupElement) -> bool:
        nonlocal visits
        if x.is_zero():
            return True
        if x in failed or not C.contains(x.free) or dot(ell, x.free) <= 0:
            return False
        visits += 1
        if visits > bound:
            raise SearchBoundExceeded(bound)
        for g in gens:
            if search(x - g):
                return True
        failed.add(x)
        return False

    return search(w)


def _inverse(M: list[list[int]]) -> list[list[Fraction]]:
    k = len(M)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(M)]
    for c in range(k):
        p = next(i for i in range(c, k) if A[i][c] != 0)
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [a / pv for a in A[c]]
        for i in range(k):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return [row[k:] for row in A]


def hilbert_basis(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Hilbert basis of ``cone(vectors) cap <vectors>`` for a pointed cone in ``Z^r``.

    Candidates are the generators together with the lattice points of the
    half-open parallelepipeds of all linearly independent maximal subsets;
    irreducible candidates form the Hilbert basis.
    """
    vecs = [tuple(v) for v in dict.fromkeys(tuple(v) for v in vectors) if any(v)]
    if not vecs:
        return []
    r = len(vecs[0])
    lattice = hnf_rows(vecs, r)
    k = len(lattice)
    coords = [tuple(_solve_in_rows(lattice, v)) for v in vecs]
    cone = cone_from_generators(coords, k)
    cands: set[tuple[int, ...]] = set(coords)
    for sub in combinations(coords, k):
        if qrank(sub, k) < k:
            continue
        B = [list(v) for v in sub]
        S, U, V = smith_normal_form(B)
        Vinv = _inverse(V)
        Binv = _inverse(B)
        diag = [S[i][i] for i in range(k)]
        for c in product(*(range(s) for s in diag)):
            x = [sum(Fraction(c[i]) * Vinv[i][j] for i in range(k)) for j in range(k)]
            lam = [sum(x[i] * Binv[i][j] for i in range(k)) for j in range(k)]
            frac = [a - (a.numerator // a.denominator) for a in lam]
            p = tuple(int(sum(frac[i] * B[i][j] for i in range(k))) for j in range(k))
            if any(p):
                cands.add(p)
    basis = []
    for x in cands:
        if not any(y != x and cone.contains(tuple(a - b for a, b in zip(x, y))) for y in cands):
            basis.append(x)
    # back to Z^r coordinates
    return sorted(tuple(sum(c[i] * lattice[i][j] for i in range(k)) for j in range(r)) for c in basis)
