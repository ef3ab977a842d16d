"""Permanent-type sums of tensors, each by its own enumeration route.

``per1``        injection tuples anchored at axis 1
``per1_min``    the same, anchored at the first axis of minimum extent
``per_symmetric`` average over all d-tuples of permutations
``per_hamming`` unordered cell sets with pairwise Hamming distance d
``per_laplace`` memoized expansion along the first axis-1 hyperplane
``per2_3d``     distance-n permutation tuples labelling frontal slices
``kper``        sum over k-per index patterns

The ``*_terms`` generators yield each monomial as a tuple of multi-indices,
which is what the symbolic expansions are checked against.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial, prod
from typing import Iterator, Sequence

from . import combinat
from ._parallel import parallel_sum
from .exceptions import DomainError, ShapeError
from .tensor import Tensor

Cell = tuple[int, ...]


def _require_cubical(A: Tensor, what: str):
    if not A.cubical:
        raise ShapeError(f"{what} needs a cubical tensor, got dims {A.dims}")


def _product(A: Tensor, cells: Sequence[Cell]) -> Fraction:
    ent = A.entries
    acc = Fraction(1)
    for c in cells:
        x = ent[A.offset(c)]
        if not x:
            return Fraction(0)
        acc *= x
    return acc


def _sum_terms(A: Tensor, terms) -> Fraction:
    return sum((_product(A, t) for t in terms), Fraction(0))


# -- 1-permanent, anchored forms -------------------------------------------

def anchored_terms(dims: Sequence[int], anchor: int, n: int, first=None) -> Iterator[tuple[Cell, ...]]:
    """Monomials of the anchored sum: axis ``anchor`` (0-based) runs through
    ``1..n`` as the identity, every other axis through an injection ``[n] -> [n_k]``.

    ``first`` pins the other coordinates of the first cell.
    """
    d = len(dims)
    others = [k for k in range(d) if k != anchor]
    used = [set() for _ in range(d)]
    cells: list[Cell] = []

    def rec(i):
        if i > n:
            yield tuple(cells)
            return
        if i == 1 and first is not None:
            choices = [tuple(first)]
        else:
            choices = itertools.product(*(range(1, dims[k] + 1) for k in others))
        for choice in choices:
            if any(v in used[k] for k, v in zip(others, choice)):
                continue
            cell = [0] * d
            cell[anchor] = i
            for k, v in zip(others, choice):
                cell[k] = v
                used[k].add(v)
            cells.append(tuple(cell))
            yield from rec(i + 1)
            cells.pop()
            for k, v in zip(others, choice):
                used[k].discard(v)

    yield from rec(1)


def _anchored_block(A: Tensor, anchor: int, n: int, first) -> Fraction:
    return _sum_terms(A, anchored_terms(A.dims, anchor, n, first))


def _anchored_sum(A: Tensor, anchor: int, n: int, workers) -> Fraction:
    others = [k for k in range(A.order) if k != anchor]
    firsts = itertools.product(*(range(1, A.dims[k] + 1) for k in others))
    return parallel_sum(_anchored_block, [(A, anchor, n, f) for f in firsts], workers)


def per1_terms(dims: Sequence[int]) -> Iterator[tuple[Cell, ...]]:
    dims = tuple(dims)
    if any(dims[0] > nk for nk in dims[1:]):
        return iter(())
    return anchored_terms(dims, 0, dims[0])


def per1(A: Tensor, workers: int | None = 1) -> Fraction:
    """1-permanent: sum over injection tuples ``sigma_2..sigma_d`` from ``[n_1]``.

    Zero whenever ``n_1`` exceeds some other extent.
    """
    if A.order < 2:
        raise ShapeError("the 1-permanent needs order >= 2")
    n1 = A.dims[0]
    if any(n1 > nk for nk in A.dims[1:]):
        return Fraction(0)
    return _anchored_sum(A, 0, n1, workers)


def per1_min(A: Tensor, workers: int | None = 1) -> Fraction:
    """Anchored at the first axis of minimum extent; transpose-invariant for matrices."""
    if A.order < 2:
        raise ShapeError("the 1-permanent needs order >= 2")
    n = min(A.dims)
    j = A.dims.index(n)
    return _anchored_sum(A, j, n, workers)


# -- symmetric form ----------------------------------------------------------

def per_symmetric(A: Tensor) -> Fraction:
    """``(1/n!)`` times the sum over all d-tuples of permutations."""
    _require_cubical(A, "per_symmetric")
    n, d = A.n, A.order
    perms = list(combinat.permutations(n))
    total = Fraction(0)
    for tup in itertools.product(perms, repeat=d):
        total += _product(A, [tuple(p[i] for p in tup) for i in range(n)])
    return total / factorial(n)


# -- Hamming form ------------------------------------------------------------

def hamming_terms(d: int, n: int) -> Iterator[tuple[Cell, ...]]:
    """Unordered sets of ``n`` cells of ``[n]^d`` at pairwise Hamming distance ``d``.

    Sets are emitted with their cells in increasing lexicographic order.
    """
    cells = list(itertools.product(range(1, n + 1), repeat=d))
    chosen: list[Cell] = []

    def rec(start):
        if len(chosen) == n:
            yield tuple(chosen)
            return
        for pos in range(start, len(cells)):
            c = cells[pos]
            if all(combinat.hamming(c, o) == d for o in chosen):
                chosen.append(c)
                yield from rec(pos + 1)
                chosen.pop()

    yield from rec(0)


def per_hamming(A: Tensor) -> Fraction:
    _require_cubical(A, "per_hamming")
    return _sum_terms(A, hamming_terms(A.order, A.n))


# -- Laplace expansion -------------------------------------------------------

def per_laplace(A: Tensor) -> Fraction:
    """Expand along the first remaining axis-1 hyperplane, memoizing minors.

    A minor is keyed by the bitmasks of the deleted indices on axes 2..d; the
    axis-1 rows still present are determined by the recursion depth.
    """
    _require_cubical(A, "per_laplace")
    if A.order < 2:
        raise ShapeError("per_laplace needs order >= 2")
    n, d = A.n, A.order
    ent, strides = A.entries, A._strides
    memo: dict[tuple[int, ...], Fraction] = {}
    tails = list(itertools.product(range(n), repeat=d - 1))

    def minor(row: int, masks: tuple[int, ...]) -> Fraction:
        if row == n:
            return Fraction(1)
        hit = memo.get(masks)
        if hit is not None:
            return hit
        total = Fraction(0)
        base = row * strides[0]
        for tail in tails:
            if any(masks[k] >> t & 1 for k, t in enumerate(tail)):
                continue
            x = ent[base + sum(t * s for t, s in zip(tail, strides[1:]))]
            if not x:
                continue
            nxt = tuple(m | (1 << t) for m, t in zip(masks, tail))
            total += x * minor(row + 1, nxt)
        memo[masks] = total
        return total

    return minor(0, (0,) * (d - 1))


# -- 2-permanent of 3D matrices ---------------------------------------------

def per2_3d_terms(n: int, candidates=None, budget=None) -> Iterator[tuple[Cell, ...]]:
    """Triagonals: slice ``i`` labelled by ``pi_i`` contributes ``(j, pi_i(j), i)``."""
    for tup in combinat.perm_tuples_distance_n(n, n, candidates=candidates, budget=budget):
        yield tuple((j, p[j - 1], i) for i, p in enumerate(tup, start=1) for j in range(1, n + 1))


def per2_3d(A: Tensor, budget=None) -> Fraction:
    """2-permanent of an ``n x n x n`` tensor via slice-labelling permutations."""
    if A.order != 3:
        raise ShapeError("per2_3d needs an order-3 tensor")
    _require_cubical(A, "per2_3d")
    return _sum_terms(A, per2_3d_terms(A.n, budget=budget))


# -- general k-permanent -----------------------------------------------------

def kper_terms(d: int, n: int, k: int, budget=None) -> Iterator[tuple[Cell, ...]]:
    for p in combinat.diagonal_patterns(d, n, k, budget=budget):
        yield p.cells


def _kper_block(A: Tensor, k: int, first, budget) -> Fraction:
    return sum((_product(A, p.cells) for p in
                combinat.diagonal_patterns(A.order, A.n, k, budget=budget, first=first)),
               Fraction(0))


def kper(A: Tensor, k: int, workers: int | None = 1, budget=None) -> Fraction:
    """Sum over k-per index patterns of the product of the selected entries.

    Zero when no pattern exists.
    """
    _require_cubical(A, "kper")
    d, n = A.order, A.n
    if not 1 <= k < d:
        raise DomainError(f"need 1 <= k < d, got k={k}, d={d}")
    firsts = itertools.product(range(1, n + 1), repeat=d - k)
    if workers and workers > 1:
        # a Budget instance cannot be shared across processes
        budget = budget if not isinstance(budget, combinat.Budget) else budget.limit
    return parallel_sum(_kper_block, [(A, k, f, budget) for f in firsts], workers)


def Per(A: Tensor, **kw) -> Fraction:
    """2-permanent."""
    return kper(A, 2, **kw)


def count_terms(terms) -> int:
    return sum(1 for _ in terms)


def expansion_strings(terms, symbol: str = "a") -> set[str]:
    """Render monomials as strings like ``a111a222`` with cells sorted."""
    return {"".join(symbol + "".join(map(str, c)) for c in sorted(t)) for t in terms}
