"""Permutations, Hamming distance, Latin squares and k-per index patterns.

Permutations are tuples of 1-based images.  Streams are generators that yield
results in lexicographic order of their flattened image lists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterator, Sequence

from .exceptions import DomainError, ResourceLimitExceeded
from .tensor import Tensor, from_cells

DEFAULT_NODE_BUDGET = 10**8
MAX_LATIN_ORDER = 5


class Budget:
    """Counts visited search nodes and stops cleanly at ``limit``."""

    def __init__(self, limit: int | None = DEFAULT_NODE_BUDGET):
        self.limit = limit
        self.visited = 0

    def tick(self, amount: int = 1):
        self.visited += amount
        if self.limit is not None and self.visited > self.limit:
            raise ResourceLimitExceeded(f"node budget of {self.limit} exceeded")


def _budget(b) -> Budget:
    if isinstance(b, Budget):
        return b
    return Budget(DEFAULT_NODE_BUDGET if b is None else b)


def hamming(x: Sequence, y: Sequence) -> int:
    """Number of positions where ``x`` and ``y`` differ."""
    if len(x) != len(y):
        raise DomainError(f"length mismatch: {len(x)} vs {len(y)}")
    return sum(1 for a, b in zip(x, y) if a != b)


def permutations(n: int) -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(1, n + 1))


def injections(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """One-to-one maps ``[n] -> [m]`` as image tuples; empty when ``n > m``."""
    if n > m:
        return iter(())
    return itertools.permutations(range(1, m + 1), n)


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(1, len(p) + 1))


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``(p o q)(i) = p(q(i))``."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, v in enumerate(p, start=1):
        inv[v - 1] = i
    return tuple(inv)


def sign(p: Sequence[int]) -> int:
    """+1 for even permutations, -1 for odd."""
    seen = [False] * len(p)
    s = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j] - 1
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def derangements(n: int) -> int:
    """Number of fixed-point-free permutations of ``[n]``."""
    d0, d1 = 1, 0
    if n == 0:
        return 1
    for k in range(2, n + 1):
        d0, d1 = d1, (k - 1) * (d0 + d1)
    return d1


def perm_tuples_distance_n(n: int, m: int, candidates=None, budget=None
                           ) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All ``m``-tuples of permutations of ``[n]`` that disagree at every position.

    ``candidates`` restricts the tuple members (e.g. to a subgroup); by default
    all of ``S_n`` is used.
    """
    bud = _budget(budget)
    if candidates is None:
        pool = list(permutations(n))
    else:
        pool = sorted(tuple(p) for p in candidates)
    used = [set() for _ in range(n)]
    chosen: list[tuple[int, ...]] = []

    def rec():
        if len(chosen) == m:
            yield tuple(chosen)
            return
        for p in pool:
            bud.tick()
            if any(p[i] in used[i] for i in range(n)):
                continue
            for i in range(n):
                used[i].add(p[i])
            chosen.append(p)
            yield from rec()
            chosen.pop()
            for i in range(n):
                used[i].discard(p[i])

    yield from rec()


def latin_squares(n: int, budget=None, max_order: int = MAX_LATIN_ORDER
                  ) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Latin squares of order ``n`` as tuples of rows.

    Row ``r`` is the permutation ``c -> L[r][c]``; rows pairwise disagree at
    every column, so these are exactly the distance-``n`` ``n``-tuples.
    """
    if n > max_order:
        raise ResourceLimitExceeded(f"Latin square enumeration limited to n <= {max_order}")
    return perm_tuples_distance_n(n, n, budget=budget)


def count_reduced_latin_squares(n: int, budget=None) -> int:
    """Latin squares with first row and first column both ``1..n``."""
    bud = _budget(budget)
    if n == 1:
        return 1
    grid = [[0] * n for _ in range(n)]
    row_used = [set() for _ in range(n)]
    col_used = [set() for _ in range(n)]
    for c in range(n):
        grid[0][c] = c + 1
        row_used[0].add(c + 1)
        col_used[c].add(c + 1)
    for r in range(1, n):
        grid[r][0] = r + 1
        row_used[r].add(r + 1)
        col_used[0].add(r + 1)
    cells = [(r, c) for r in range(1, n) for c in range(1, n)]

    def rec(pos):
        if pos == len(cells):
            return 1
        r, c = cells[pos]
        total = 0
        for v in range(1, n + 1):
            bud.tick()
            if v in row_used[r] or v in col_used[c]:
                continue
            row_used[r].add(v)
            col_used[c].add(v)
            total += rec(pos + 1)
            row_used[r].discard(v)
            col_used[c].discard(v)
        return total

    return rec(0)


def count_latin_squares(n: int, budget=None, max_order: int = MAX_LATIN_ORDER) -> int:
    """``L_n``, computed as reduced squares times ``n! (n-1)!``."""
    if n < 1:
        raise DomainError("n must be positive")
    if n > max_order:
        raise ResourceLimitExceeded(f"Latin square counting limited to n <= {max_order}")
    return count_reduced_latin_squares(n, budget) * factorial(n) * factorial(n - 1)


def is_latin_square(rows: Sequence[Sequence[int]]) -> bool:
    n = len(rows)
    full = set(range(1, n + 1))
    if any(len(r) != n or set(r) != full for r in rows):
        return False
    return all({rows[r][c] for r in range(n)} == full for c in range(n))


def latin_square_to_tensor(rows: Sequence[Sequence[int]]) -> Tensor:
    """(0,1)-tensor with a 1 at ``(r, c, L[r][c])``."""
    n = len(rows)
    return from_cells(n, 3, ((r + 1, c + 1, rows[r][c]) for r in range(n) for c in range(n)))


@dataclass(frozen=True)
class DiagonalPattern:
    """A k-per index pattern: ``n**k`` cells, no two in a common ``(d-k)``-plane."""

    d: int
    n: int
    k: int
    cells: tuple[tuple[int, ...], ...]

    def to_tensor(self) -> Tensor:
        return pattern_to_tensor(self)

    def is_valid(self) -> bool:
        return validate_pattern(self.cells, self.d, self.n, self.k)


def validate_pattern(cells, d: int, n: int, k: int) -> bool:
    """Check a cell set against the projection criterion, independently of any generator."""
    cells = [tuple(c) for c in cells]
    if len(cells) != n**k or len(set(cells)) != len(cells):
        return False
    if any(len(c) != d or not all(1 <= x <= n for x in c) for c in cells):
        return False
    for axes in itertools.combinations(range(d), k):
        proj = {tuple(c[a] for a in axes) for c in cells}
        if len(proj) != n**k:
            return False
    return True


def diagonal_patterns(d: int, n: int, k: int, budget=None, first=None
                      ) -> Iterator[DiagonalPattern]:
    """Every k-per index pattern of order ``d`` and dimension ``n``, once each.

    A pattern is built as a map from ``[n]^k`` (the first ``k`` coordinates,
    visited lexicographically) to the remaining ``d-k`` coordinates.  For each
    ``k``-subset of axes a used-set of projections is maintained.  ``first``
    optionally pins the image of ``(1, ..., 1)`` so a stream can be split into
    disjoint prefix blocks.
    """
    if not 1 <= k < d:
        raise DomainError(f"need 1 <= k < d, got k={k}, d={d}")
    bud = _budget(budget)
    heads = list(itertools.product(range(1, n + 1), repeat=k))
    tails = list(itertools.product(range(1, n + 1), repeat=d - k))
    # the leading-axes subset is injective by construction
    subsets = [s for s in itertools.combinations(range(d), k) if s != tuple(range(k))]
    used = [set() for _ in subsets]
    cells: list[tuple[int, ...]] = []

    def rec(pos):
        if pos == len(heads):
            yield DiagonalPattern(d, n, k, tuple(cells))
            return
        head = heads[pos]
        options = tails if (pos > 0 or first is None) else [tuple(first)]
        for tail in options:
            bud.tick()
            cell = head + tail
            keys = [tuple(cell[a] for a in s) for s in subsets]
            if any(key in u for key, u in zip(keys, used)):
                continue
            for key, u in zip(keys, used):
                u.add(key)
            cells.append(cell)
            yield from rec(pos + 1)
            cells.pop()
            for key, u in zip(keys, used):
                u.discard(key)

    yield from rec(0)


def pattern_to_tensor(p: DiagonalPattern) -> Tensor:
    return from_cells(p.n, p.d, p.cells)
