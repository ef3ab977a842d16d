"""Stochastic tensors, permutation tensors and the polytopes they span.

``kind="line"`` means every line (1-plane) sums to 1, ``kind="plane"`` every
2-plane; an integer ``k`` selects k-planes directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import combinat
from .exactlp import affine_parametrization, phase_one, polytope_vertices, rank
from .exceptions import DomainError, ResourceLimitExceeded, ShapeError
from .tensor import Tensor, from_cells, hadamard, plus_projection

HALF = Fraction(1, 2)
MAX_VERTEX_VARIABLES = 27


class NegativeEntryError(DomainError):
    """A stochasticity test was given a tensor with negative entries."""


def _level(kind) -> int:
    if kind == "line":
        return 1
    if kind == "plane":
        return 2
    if isinstance(kind, int) or (isinstance(kind, str) and kind.isdigit()):
        return int(kind)
    raise DomainError(f"unknown stochasticity kind {kind!r}")


def k_planes(n: int, d: int, k: int):
    """Yield each k-plane of ``[n]^d`` as a list of cells."""
    if not 1 <= k <= d:
        raise DomainError(f"need 1 <= k <= d, got k={k}, d={d}")
    for fixed_axes in itertools.combinations(range(d), d - k):
        free = [a for a in range(d) if a not in fixed_axes]
        for vals in itertools.product(range(1, n + 1), repeat=d - k):
            cells = []
            for fv in itertools.product(range(1, n + 1), repeat=k):
                c = [0] * d
                for a, v in zip(fixed_axes, vals):
                    c[a] = v
                for a, v in zip(free, fv):
                    c[a] = v
                cells.append(tuple(c))
            yield cells


def is_k_stochastic(A: Tensor, k) -> bool:
    """True iff ``A`` is nonnegative and every k-plane sums to exactly 1.

    Raises ``NegativeEntryError`` for negative entries.
    """
    k = _level(k)
    if not A.cubical:
        raise ShapeError("stochasticity is defined for cubical tensors")
    if not A.is_nonnegative():
        raise NegativeEntryError("tensor has negative entries")
    return all(sum(A[c] for c in plane) == 1 for plane in k_planes(A.n, A.order, k))


def is_k_permutation(A: Tensor, k) -> bool:
    return A.cubical and A.is_zero_one() and is_k_stochastic(A, k)


def is_permutation_matrix(M: Tensor) -> bool:
    return (M.order == 2 and M.cubical and M.is_zero_one()
            and is_k_stochastic(M, 1))


def permutation_matrix(p: Sequence[int]) -> Tensor:
    n = len(p)
    return from_cells(n, 2, ((i, p[i - 1]) for i in range(1, n + 1)))


def matrix_to_permutation(P: Tensor) -> tuple[int, ...]:
    if not is_permutation_matrix(P):
        raise DomainError("not a permutation matrix")
    n = P.n
    return tuple(next(j for j in range(1, n + 1) if P[i, j] == 1) for i in range(1, n + 1))


def stack_slices(mats: Sequence[Tensor]) -> Tensor:
    """Order-3 tensor whose k-th frontal slice is ``mats[k-1]``."""
    n = len(mats)
    if any(M.dims != (n, n) for M in mats):
        raise ShapeError("need n matrices of size n x n")
    return Tensor((n, n, n), (mats[k][i, j] for i in range(1, n + 1)
                               for j in range(1, n + 1) for k in range(n)))


@dataclass(frozen=True)
class LinePermReport:
    line_permutation: bool
    diagonally_disjoint: bool
    pairwise_distance_n: bool
    sums_to_J: bool

    @property
    def agree(self) -> bool:
        return len({self.line_permutation, self.diagonally_disjoint,
                    self.pairwise_distance_n, self.sums_to_J}) == 1


def check_line_perm_equivalences(mats: Sequence[Tensor]) -> LinePermReport:
    """Evaluate the four equivalent conditions on ``n`` permutation matrices."""
    n = len(mats)
    if any(not is_permutation_matrix(M) or M.n != n for M in mats):
        raise DomainError("expected n permutation matrices of size n")
    perms = [matrix_to_permutation(M) for M in mats]
    stacked = stack_slices(mats)
    disjoint = all(not any(hadamard(P, Q).entries)
                   for P, Q in itertools.combinations(mats, 2))
    distance = all(combinat.hamming(p, q) == n for p, q in itertools.combinations(perms, 2))
    total = mats[0]
    for M in mats[1:]:
        total = total + M
    return LinePermReport(
        line_permutation=is_k_permutation(stacked, 1),
        diagonally_disjoint=disjoint,
        pairwise_distance_n=distance,
        sums_to_J=all(x == 1 for x in total.entries),
    )


def check_plane_perm_projections(R: Tensor) -> bool:
    """True iff all three plus-projections of ``R`` are permutation matrices."""
    if R.order != 3 or not R.cubical:
        raise ShapeError("need an n x n x n tensor")
    return all(is_permutation_matrix(plus_projection(R, ax)) for ax in (1, 2, 3))


def builtin_tensor(name: str) -> Tensor:
    """The 2x2x2 plane-stochastic tensor ``C`` or the 3x3x3 line-stochastic ``D``."""
    if name == "C":
        return from_cells(2, 3, [(2, 1, 1), (1, 2, 1), (1, 1, 2), (2, 2, 2)], HALF)
    if name == "D":
        # frontal slices, doubled
        slices = [
            [[0, 1, 1], [1, 1, 0], [1, 0, 1]],
            [[1, 1, 0], [0, 1, 1], [1, 0, 1]],
            [[1, 0, 1], [1, 0, 1], [0, 2, 0]],
        ]
        return Tensor((3, 3, 3), (Fraction(slices[k][i][j], 2)
                                  for i in range(3) for j in range(3) for k in range(3)))
    raise DomainError(f"unknown builtin tensor {name!r}")


def permutation_tensors(n: int, d: int, k) -> list[Tensor]:
    """All (0,1) k-stochastic tensors of order ``d`` and dimension ``n``.

    These are exactly the patterns with one cell in each ``k``-plane, i.e.
    ``(d-k)``-per index patterns.
    """
    k = _level(k)
    if k == d:
        return [from_cells(n, d, [c]) for c in itertools.product(range(1, n + 1), repeat=d)]
    return [p.to_tensor() for p in combinat.diagonal_patterns(d, n, d - k)]


@dataclass(frozen=True)
class PolytopeSpec:
    n: int
    d: int = 3
    kind: object = "line"

    @property
    def k(self) -> int:
        return _level(self.kind)

    @property
    def num_variables(self) -> int:
        return self.n**self.d

    @cached_property
    def cells(self) -> list[tuple[int, ...]]:
        return list(itertools.product(range(1, self.n + 1), repeat=self.d))

    @cached_property
    def equations(self) -> list[list[int]]:
        """0/1 indicator rows of the k-planes, duplicates removed."""
        pos = {c: i for i, c in enumerate(self.cells)}
        rows, seen = [], set()
        for plane in k_planes(self.n, self.d, self.k):
            row = [0] * self.num_variables
            for c in plane:
                row[pos[c]] = 1
            key = tuple(row)
            if key not in seen:
                seen.add(key)
                rows.append(row)
        return rows

    def contains(self, A: Tensor) -> bool:
        return (A.dims == (self.n,) * self.d and A.is_nonnegative()
                and is_k_stochastic(A, self.k))


@dataclass
class VertexSet:
    spec: PolytopeSpec
    vertices: list[Tensor] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.vertices)

    @property
    def zero_one(self) -> int:
        return sum(1 for v in self.vertices if v.is_zero_one())

    @property
    def non_zero_one(self) -> int:
        return self.total - self.zero_one

    @property
    def half_valued(self) -> int:
        return sum(1 for v in self.vertices if not v.is_zero_one()
                   and all(x in (0, HALF, 1) for x in v.entries))

    def summary(self) -> str:
        s = f"{self.total} vertices ({self.zero_one} zero-one, {self.half_valued} half-valued"
        other = self.non_zero_one - self.half_valued
        if other:
            s += f", {other} other"
        return s + ")"


def enumerate_vertices(spec: PolytopeSpec, max_variables: int = MAX_VERTEX_VARIABLES) -> VertexSet:
    """Exact vertex list of the k-stochastic polytope described by ``spec``.

    The equality system is solved for pivot variables, leaving a polytope in
    the free variables; its vertices come from double description and are lifted
    back, deduplicated and each confirmed by the tight-constraint rank test.
    """
    N = spec.num_variables
    if N > max_variables:
        raise ResourceLimitExceeded(f"{N} variables exceed the vertex enumeration limit {max_variables}")
    M = spec.equations
    b = [1] * len(M)
    free, piv, R, rhs = affine_parametrization(M, b)
    # inequalities in the free variables y: y_f >= 0 and rhs_p - R_p . y >= 0
    A_ineq, c_ineq = [], []
    for fi in range(len(free)):
        A_ineq.append([int(i == fi) for i in range(len(free))])
        c_ineq.append(0)
    for row, r in zip(R, rhs):
        A_ineq.append([-x for x in row])
        c_ineq.append(r)
    if free:
        ys = polytope_vertices(A_ineq, c_ineq)
    else:
        ys = [[]]
    seen, out = set(), []
    for y in ys:
        x = [Fraction(0)] * N
        for f, v in zip(free, y):
            x[f] = v
        for p, row, r in zip(piv, R, rhs):
            x[p] = r - sum(a * v for a, v in zip(row, y))
        T = Tensor((spec.n,) * spec.d, x)
        if T in seen:
            continue
        if any(v < 0 for v in x):
            raise DomainError("lifted point violates nonnegativity")
        if not is_extreme(T, spec):
            raise DomainError("enumerated point failed the extremality test")
        seen.add(T)
        out.append(T)
    out.sort(key=lambda T: T.entries, reverse=True)
    return VertexSet(spec, out)


def is_extreme(A: Tensor, spec: PolytopeSpec) -> bool:
    """True iff the equalities plus ``x_c = 0`` on zero cells pin ``A`` uniquely."""
    if not spec.contains(A):
        raise DomainError("tensor is not in the polytope")
    N = spec.num_variables
    rows = [list(r) for r in spec.equations]
    for i, x in enumerate(A.entries):
        if x == 0:
            rows.append([int(j == i) for j in range(N)])
    return rank(rows) == N


def in_convex_hull(A: Tensor, generators: Sequence[Tensor]) -> list[Fraction] | None:
    """Exact convex weights expressing ``A`` over ``generators``, or ``None``."""
    if not generators:
        return None
    if any(G.dims != A.dims for G in generators):
        raise ShapeError("generator shapes must match the target")
    rows = [[G.entries[c] for G in generators] for c in range(A.size)]
    rows.append([1] * len(generators))
    rhs = list(A.entries) + [1]
    w = phase_one(rows, rhs)
    if w is None:
        return None
    for c in range(A.size):
        if sum(wi * G.entries[c] for wi, G in zip(w, generators)) != A.entries[c]:
            raise AssertionError("phase one returned an inexact combination")
    return w
