"""Dense hypermatrices with exact rational entries.

Entries are stored flat, lexicographically by multi-index with the last index
varying fastest.  All public indices are 1-based.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import prod
from typing import Iterable, Iterator, Mapping, Sequence

from .exceptions import DomainError, ShapeError


def to_fraction(x) -> Fraction:
    """Coerce ``x`` to an exact rational; floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point entries are not accepted; pass a Fraction or 'p/q' string")
    return Fraction(x)


class Tensor:
    """Immutable dense tensor of order ``d`` with per-axis extents ``dims``."""

    __slots__ = ("_dims", "_entries", "_strides")

    def __init__(self, dims: Sequence[int], entries: Iterable):
        dims = tuple(int(n) for n in dims)
        if len(dims) < 1:
            raise ShapeError("order must be at least 1")
        if any(n < 1 for n in dims):
            raise ShapeError(f"every extent must be positive, got {dims}")
        entries = tuple(to_fraction(x) for x in entries)
        if len(entries) != prod(dims):
            raise ShapeError(
                f"expected {prod(dims)} entries for dims {dims}, got {len(entries)}"
            )
        strides = [1] * len(dims)
        for k in range(len(dims) - 2, -1, -1):
            strides[k] = strides[k + 1] * dims[k + 1]
        self._dims = dims
        self._entries = entries
        self._strides = tuple(strides)

    @property
    def dims(self) -> tuple[int, ...]:
        return self._dims

    @property
    def order(self) -> int:
        return len(self._dims)

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return self._entries

    @property
    def size(self) -> int:
        return len(self._entries)

    @property
    def cubical(self) -> bool:
        return len(set(self._dims)) == 1

    @property
    def n(self) -> int:
        """Common extent of a cubical tensor."""
        if not self.cubical:
            raise ShapeError(f"tensor with dims {self._dims} is not cubical")
        return self._dims[0]

    def offset(self, index: Sequence[int]) -> int:
        if len(index) != len(self._dims):
            raise DomainError(f"index {tuple(index)} has wrong length for order {self.order}")
        off = 0
        for i, n, s in zip(index, self._dims, self._strides):
            if not 1 <= i <= n:
                raise DomainError(f"index {tuple(index)} out of range for dims {self._dims}")
            off += (i - 1) * s
        return off

    def __getitem__(self, index) -> Fraction:
        if isinstance(index, int):
            index = (index,)
        return self._entries[self.offset(index)]

    def indices(self) -> Iterator[tuple[int, ...]]:
        """All multi-indices in storage order."""
        return itertools.product(*(range(1, n + 1) for n in self._dims))

    def items(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return zip(self.indices(), self._entries)

    def is_zero_one(self) -> bool:
        return all(x == 0 or x == 1 for x in self._entries)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self._entries)

    def map(self, fn) -> "Tensor":
        return Tensor(self._dims, (fn(x) for x in self._entries))

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self._dims == other._dims and self._entries == other._entries

    def __hash__(self):
        return hash((self._dims, self._entries))

    def __add__(self, other: "Tensor") -> "Tensor":
        _same_shape(self, other)
        return Tensor(self._dims, (a + b for a, b in zip(self._entries, other._entries)))

    def __sub__(self, other: "Tensor") -> "Tensor":
        _same_shape(self, other)
        return Tensor(self._dims, (a - b for a, b in zip(self._entries, other._entries)))

    def __repr__(self):
        shown = ", ".join(str(x) for x in self._entries[:8])
        if self.size > 8:
            shown += ", ..."
        return f"Tensor(dims={self._dims}, entries=[{shown}])"

    def __getstate__(self):
        return (self._dims, self._entries)

    def __setstate__(self, state):
        dims, entries = state
        Tensor.__init__(self, dims, entries)


def _same_shape(a: Tensor, b: Tensor):
    if a.dims != b.dims:
        raise ShapeError(f"shape mismatch: {a.dims} vs {b.dims}")


def make_tensor(dims: Sequence[int], entries: Iterable) -> Tensor:
    return Tensor(dims, entries)


def zeros_tensor(n: int, d: int) -> Tensor:
    return Tensor((n,) * d, [0] * n**d)


def identity_tensor(n: int, d: int) -> Tensor:
    """Order-``d`` tensor with ones at ``(i, ..., i)`` and zeros elsewhere."""
    if n < 1 or d < 1:
        raise ShapeError("identity_tensor needs n >= 1 and d >= 1")
    return Tensor((n,) * d, (1 if len(set(ix)) == 1 else 0
                             for ix in itertools.product(range(n), repeat=d)))


def ones_tensor(n: int, d: int) -> Tensor:
    if n < 1 or d < 1:
        raise ShapeError("ones_tensor needs n >= 1 and d >= 1")
    return Tensor((n,) * d, [1] * n**d)


def from_cells(n: int, d: int, cells: Iterable[Sequence[int]], value=1) -> Tensor:
    """Tensor of dimension ``n`` holding ``value`` at ``cells`` and 0 elsewhere."""
    entries = [Fraction(0)] * n**d
    proto = Tensor((n,) * d, entries)
    v = to_fraction(value)
    for c in cells:
        entries[proto.offset(c)] = v
    return Tensor((n,) * d, entries)


def extract_plane(T: Tensor, fixed: Mapping[int, int]) -> Tensor:
    """Sub-tensor obtained by fixing the 1-based axes in ``fixed``.

    Fixing every axis yields the scalar as a ``(1,)``-shaped tensor.
    """
    for axis, value in fixed.items():
        if not 1 <= axis <= T.order:
            raise DomainError(f"axis {axis} out of range for order {T.order}")
        if not 1 <= value <= T.dims[axis - 1]:
            raise DomainError(f"value {value} out of range on axis {axis}")
    free = [k for k in range(1, T.order + 1) if k not in fixed]
    if not free:
        return Tensor((1,), [T[tuple(fixed[k] for k in range(1, T.order + 1))]])
    ranges = [range(1, T.dims[k - 1] + 1) for k in free]
    out = []
    idx = [0] * T.order
    for k, v in fixed.items():
        idx[k - 1] = v
    for combo in itertools.product(*ranges):
        for k, v in zip(free, combo):
            idx[k - 1] = v
        out.append(T[idx])
    return Tensor([T.dims[k - 1] for k in free], out)


def hadamard(A: Tensor, B: Tensor) -> Tensor:
    _same_shape(A, B)
    return Tensor(A.dims, (a * b for a, b in zip(A.entries, B.entries)))


def scale(A: Tensor, c) -> Tensor:
    c = to_fraction(c)
    return Tensor(A.dims, (c * a for a in A.entries))


def _check_axis_perm(sigma: Sequence[int], d: int) -> tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, d + 1)):
        raise DomainError(f"{sigma} is not a permutation of 1..{d}")
    return sigma


def sigma_transpose(A: Tensor, sigma: Sequence[int]) -> Tensor:
    """Return ``B`` with ``B[i_1..i_d] = A[i_sigma(1) .. i_sigma(d)]``.

    ``sigma`` is given in one-line notation ``(sigma(1), ..., sigma(d))``.
    Axis ``sigma(m)`` of the result carries the extent of axis ``m`` of ``A``.
    """
    sigma = _check_axis_perm(sigma, A.order)
    dims = [0] * A.order
    for m, s in enumerate(sigma):
        dims[s - 1] = A.dims[m]
    out = []
    for ix in itertools.product(*(range(1, n + 1) for n in dims)):
        out.append(A[tuple(ix[s - 1] for s in sigma)])
    return Tensor(dims, out)


def plus_projection(A: Tensor, dropped_axis: int) -> Tensor:
    """Matrix of sums of an order-3 tensor along ``dropped_axis`` (1, 2 or 3)."""
    if A.order != 3:
        raise ShapeError("plus_projection is defined for order-3 tensors only")
    if dropped_axis not in (1, 2, 3):
        raise DomainError(f"dropped_axis must be 1, 2 or 3, got {dropped_axis}")
    keep = [k for k in (1, 2, 3) if k != dropped_axis]
    p_ext, q_ext = A.dims[keep[0] - 1], A.dims[keep[1] - 1]
    sums = [[Fraction(0)] * q_ext for _ in range(p_ext)]
    for ix, v in A.items():
        sums[ix[keep[0] - 1] - 1][ix[keep[1] - 1] - 1] += v
    return Tensor((p_ext, q_ext), (x for row in sums for x in row))


def swap_hyperplanes(A: Tensor, axis: int, i: int, j: int) -> Tensor:
    """Exchange hyperplanes ``i`` and ``j`` of ``axis``."""
    def relabel(v):
        return j if v == i else i if v == j else v
    out = []
    for ix in A.indices():
        src = list(ix)
        src[axis - 1] = relabel(src[axis - 1])
        out.append(A[src])
    return Tensor(A.dims, out)


def replace_hyperplane(A: Tensor, axis: int, value: int, plane: Tensor) -> Tensor:
    """Copy of ``A`` with hyperplane ``value`` of ``axis`` replaced by ``plane``."""
    entries = list(A.entries)
    free = [k for k in range(A.order) if k != axis - 1]
    for sub_ix, v in plane.items():
        ix = [0] * A.order
        ix[axis - 1] = value
        for k, s in zip(free, sub_ix):
            ix[k] = s
        entries[A.offset(ix)] = v
    return Tensor(A.dims, entries)


def convex_combination(weights: Sequence, tensors: Sequence[Tensor]) -> Tensor:
    if not tensors or len(weights) != len(tensors):
        raise DomainError("weights and tensors must be non-empty and of equal length")
    dims = tensors[0].dims
    acc = [Fraction(0)] * tensors[0].size
    for w, T in zip(weights, tensors):
        if T.dims != dims:
            raise ShapeError(f"shape mismatch: {T.dims} vs {dims}")
        w = to_fraction(w)
        for p, x in enumerate(T.entries):
            if x:
                acc[p] += w * x
    return Tensor(dims, acc)
