"""Graded normal form of a homogeneous quadratic polynomial.

Any ``K``-homogeneous ``g = sum a_ij T_i T_j`` can be brought by a graded linear
change of variables into ``g_{q,t}``.  Variables of degree ``w`` only meet
variables of degree ``mu - w`` in ``g``, so the form splits into

* pairing blocks ``{deg w} x {deg mu - w}`` with ``2w != mu``, each of which
  contributes its rank in hyperbolic pairs, and
* quadratic blocks ``{deg w}`` with ``2w == mu``; one of rank ``r`` gives
  ``r // 2`` pairs plus a single square when ``r`` is odd.

The reduction below is carried out over ``Q`` and produces a block-diagonal
substitution.  The last step (rewriting sums of squares as products, which
needs square roots of rationals) is not materialised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .abelian import FgAbelianGroup, GroupElement
from .grading import GradedSetup

FMatrix = list[list[Fraction]]


class NotHomogeneous(ValueError):
    pass


class ZeroForm(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticForm:
    """``sum a_ij T_i T_j`` over ``i <= j`` (0-based indices)."""

    num_vars: int
    coefficients: Mapping[tuple[int, int], Fraction]
    degrees: tuple[GroupElement, ...]

    def __post_init__(self) -> None:
        coeffs: dict[tuple[int, int], Fraction] = {}
        for (i, j), a in dict(self.coefficients).items():
            if not (0 <= i < self.num_vars and 0 <= j < self.num_vars):
                raise ValueError(f"monomial T{i + 1}T{j + 1} out of range")
            key = (min(i, j), max(i, j))
            coeffs[key] = coeffs.get(key, Fraction(0)) + Fraction(a)
        object.__setattr__(self, "coefficients", {k: v for k, v in sorted(coeffs.items()) if v})
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if len(self.degrees) != self.num_vars:
            raise ValueError(f"expected {self.num_vars} degrees, got {len(self.degrees)}")

    @property
    def group(self) -> FgAbelianGroup:
        return self.degrees[0].group

    def gram(self) -> FMatrix:
        s = self.num_vars
        G = [[Fraction(0)] * s for _ in range(s)]
        for (i, j), a in self.coefficients.items():
            if i == j:
                G[i][i] = a
            else:
                G[i][j] = G[j][i] = a / 2
        return G

    @classmethod
    def from_gram(cls, G: FMatrix, degrees) -> "QuadraticForm":
        s = len(G)
        coeffs = {}
        for i in range(s):
            for j in range(i, s):
                a = G[i][i] if i == j else 2 * G[i][j]
                if a:
                    coeffs[(i, j)] = a
        return cls(s, coeffs, tuple(degrees))

    def substitute(self, phi: FMatrix) -> "QuadraticForm":
        """The form in new variables, where ``T_old[i] = sum_j phi[i][j] T_new[j]``.

        ``phi`` must respect degrees for the result to be homogeneous.
        """
        G = self.gram()
        s = self.num_vars
        PtG = [[sum(phi[k][i] * G[k][j] for k in range(s)) for j in range(s)] for i in range(s)]
        H = [[sum(PtG[i][k] * phi[k][j] for k in range(s)) for j in range(s)] for i in range(s)]
        return QuadraticForm.from_gram(H, self.degrees)

    def scaled(self, c) -> "QuadraticForm":
        return QuadraticForm(self.num_vars, {k: c * v for k, v in self.coefficients.items()}, self.degrees)

    def __str__(self) -> str:
        terms = []
        for (i, j), a in self.coefficients.items():
            mono = f"T{i + 1}^2" if i == j else f"T{i + 1}T{j + 1}"
            terms.append(mono if a == 1 else f"{a}*{mono}")
        return " + ".join(terms) or "0"


def standard_form(q: int, t: int, degrees) -> QuadraticForm:
    """``g_{q,t}`` in ``len(degrees)`` variables."""
    coeffs = {(i, i + 1): Fraction(1) for i in range(0, q, 2)}
    coeffs.update({(i, i): Fraction(1) for i in range(q, q + t)})
    return QuadraticForm(len(degrees), coeffs, tuple(degrees))


def homogeneity_check(f: QuadraticForm) -> GroupElement:
    """The common degree ``mu`` of all monomials of ``f``."""
    if not f.coefficients:
        raise ZeroForm("the zero polynomial has no degree")
    first = None
    mu = None
    for (i, j) in f.coefficients:
        d = f.degrees[i] + f.degrees[j]
        if mu is None:
            first, mu = (i, j), d
        elif d != mu:
            a, b = first
            raise NotHomogeneous(
                f"monomials T{a + 1}T{b + 1} (degree {mu}) and T{i + 1}T{j + 1} (degree {d}) disagree"
            )
    return mu


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "pair-block" or "square-block"
    degree: GroupElement
    partner: GroupElement | None
    variables: tuple[int, ...]
    rank: int

    def __str__(self) -> str:
        vs = ",".join(f"T{i + 1}" for i in self.variables)
        if self.kind == "pair-block":
            return f"pair block deg {self.degree} x {self.partner} on {vs}: rank {self.rank}"
        return f"square block deg {self.degree} on {vs}: rank {self.rank}"


@dataclass(frozen=True)
class NormalFormResult:
    q: int
    t: int
    num_vars: int
    mu: GroupElement
    permutation: tuple[int, ...]
    rational_reduction: tuple[ReductionStep, ...]
    substitution: tuple[tuple[Fraction, ...], ...]
    reduced: QuadraticForm
    degrees: tuple[GroupElement, ...] = field(repr=False)

    @property
    def sing_dim(self) -> int:
        return self.num_vars - self.q - self.t

    @property
    def standard_degrees(self) -> tuple[GroupElement, ...]:
        """Degrees of the variables in the order ``T_1..T_(q+t), S_1..S_m``."""
        return tuple(self.degrees[i] for i in self.permutation)

    def to_setup(self) -> GradedSetup:
        m = self.num_vars - self.q - self.t
        return GradedSetup(self.mu.group, self.standard_degrees, self.q, self.t, m)


def _symmetric_reduce(G: FMatrix) -> tuple[FMatrix, list[Fraction]]:
    """``P`` with ``P^T G P`` diagonal; returns ``(P, diagonal)``."""
    k = len(G)
    A = [row[:] for row in G]
    P = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]

    def col_op(dst: int, src: int, f: Fraction) -> None:
        # congruence by E = I + f e_src e_dst^T
        for r in A:
            r[dst] += f * r[src]
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        for r in P:
            r[dst] += f * r[src]

    def swap(i: int, j: int) -> None:
        for r in A:
            r[i], r[j] = r[j], r[i]
        A[i], A[j] = A[j], A[i]
        for r in P:
            r[i], r[j] = r[j], r[i]

    for p in range(k):
        if A[p][p] == 0:
            j = next((j for j in range(p + 1, k) if A[j][j] != 0), None)
            if j is not None:
                swap(p, j)
            else:
                j = next((j for j in range(p + 1, k) if A[p][j] != 0), None)
                if j is None:
                    continue
                col_op(p, j, Fraction(1))
        piv = A[p][p]
        for j in range(p + 1, k):
            if A[p][j]:
                col_op(j, p, -A[p][j] / piv)
    return P, [A[i][i] for i in range(k)]


def _bilinear_reduce(B: FMatrix) -> tuple[FMatrix, FMatrix, int]:
    """Invertible ``L`` (on rows) and ``R`` (on columns) with ``L^T B R = [[I_r, 0], [0, 0]]``."""
    a, b = len(B), len(B[0]) if B else 0
    A = [row[:] for row in B]
    L = [[Fraction(int(i == j)) for j in range(a)] for i in range(a)]
    R = [[Fraction(int(i == j)) for j in range(b)] for i in range(b)]
    r = 0
    for r in range(min(a, b) + 1):
        piv = next(((i, j) for i in range(r, a) for j in range(r, b) if A[i][j] != 0), None)
        if piv is None or r == min(a, b):
            break
        i, j = piv
        A[r], A[i] = A[i], A[r]
        for row in L:
            row[r], row[i] = row[i], row[r]
        for row in A:
            row[r], row[j] = row[j], row[r]
        for row in R:
            row[r], row[j] = row[j], row[r]
        p = A[r][r]
        A[r] = [x / p for x in A[r]]
        for row in L:
            row[r] /= p
        for i2 in range(a):
            if i2 != r and A[i2][r]:
                f = A[i2][r]
                A[i2] = [x - f * y for x, y in zip(A[i2], A[r])]
                for row in L:
                    row[i2] -= f * row[r]
        for j2 in range(b):
            if j2 != r and A[r][j2]:
                f = A[r][j2]
                for row in A:
                    row[j2] -= f * row[r]
                for row in R:
                    row[j2] -= f * row[r]
    rk = sum(1 for i in range(min(a, b)) if A[i][i] != 0)
    return L, R, rk


def normalize_quadric(f: QuadraticForm) -> NormalFormResult:
    mu = homogeneity_check(f)
    s = f.num_vars
    appearing = sorted({i for key in f.coefficients for i in key})
    by_degree: dict[GroupElement, list[int]] = {}
    for i in appearing:
        by_degree.setdefault(f.degrees[i], []).append(i)

    G = f.gram()
    phi = [[Fraction(int(i == j)) for j in range(s)] for i in range(s)]
    steps: list[ReductionStep] = []
    pairs: list[tuple[int, int]] = []
    squares: list[int] = []
    unused: list[int] = []
    done: set[GroupElement] = set()
    order = sorted(by_degree, key=lambda w: w.vector)
    for w in order:
        if w in done:
            continue
        done.add(w)
        xs = by_degree[w]
        if 2 * w == mu:
            block = [[G[i][j] for j in xs] for i in xs]
            P, diag = _symmetric_reduce(block)
            for a, i in enumerate(xs):
                for b, j in enumerate(xs):
                    phi[i][j] = P[a][b]
            nz = [xs[a] for a, c in enumerate(diag) if c != 0]
            unused += [xs[a] for a, c in enumerate(diag) if c == 0]
            rk = len(nz)
            steps.append(ReductionStep("square-block", w, None, tuple(xs), rk))
            # over an algebraically closed field c1 x^2 + c2 y^2 ~ xy
            pairs += [(nz[2 * k], nz[2 * k + 1]) for k in range(rk // 2)]
            if rk % 2:
                squares.append(nz[-1])
        else:
            partner = mu - w
            done.add(partner)
            ys = by_degree.get(partner, [])
            B = [[G[i][j] * 2 for j in ys] for i in xs]
            L, R, rk = _bilinear_reduce(B)
            for a, i in enumerate(xs):
                for b, j in enumerate(xs):
                    phi[i][j] = L[a][b]
            for a, i in enumerate(ys):
                for b, j in enumerate(ys):
                    phi[i][j] = R[a][b]
            steps.append(ReductionStep("pair-block", w, partner, tuple(xs + ys), rk))
            pairs += [(xs[k], ys[k]) for k in range(rk)]
            unused += xs[rk:] + ys[rk:]
    unused += [i for i in range(s) if i not in appearing]

    reduced = f.substitute(phi)
    q, t = 2 * len(pairs), len(squares)
    perm = tuple([i for p in pairs for i in p] + squares + sorted(unused))
    return NormalFormResult(
        q=q,
        t=t,
        num_vars=s,
        mu=mu,
        permutation=perm,
        rational_reduction=tuple(steps),
        substitution=tuple(tuple(r) for r in phi),
        reduced=reduced,
        degrees=f.degrees,
    )


def singular_locus_dim(s: int, q: int, t: int) -> int:
    """Dimension of the singular locus of ``V(g_{q,t})`` in ``K^s``."""
    if min(s, q, t) < 0 or q + t > s:
        raise ValueError(f"invalid (s, q, t) = ({s}, {q}, {t})")
    return s - q - t


def gram_rank(f: QuadraticForm) -> int:
    from .abelian import rational_rank

    return rational_rank(f.gram())
