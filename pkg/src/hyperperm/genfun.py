"""Combinatorial hyperdeterminant and character-weighted tensor functions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Mapping, Sequence

from . import combinat
from .exceptions import DomainError, HtParseError, ShapeError
from .htformat import _parse_scalar
from .permanent import _product
from .tensor import Tensor

Perm = tuple[int, ...]


def _require_cubical(A: Tensor):
    if not A.cubical:
        raise ShapeError(f"need a cubical tensor, got dims {A.dims}")


def hyperdet(A: Tensor) -> Fraction:
    """Cayley's combinatorial hyperdeterminant."""
    _require_cubical(A)
    n, d = A.n, A.order
    signed = [(p, combinat.sign(p)) for p in combinat.permutations(n)]
    total = Fraction(0)
    for tup in itertools.product(signed, repeat=d):
        s = 1
        for _, sg in tup:
            s *= sg
        total += s * _product(A, [tuple(p[i] for p, _ in tup) for i in range(n)])
    return total / factorial(n)


@dataclass(frozen=True)
class CharacterSpec:
    """A permutation group given by its elements and a rational class function on it."""

    n: int
    chi: Mapping[Perm, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "chi", {tuple(p): Fraction(v) for p, v in self.chi.items()})
        self.validate()

    @property
    def group(self) -> list[Perm]:
        return sorted(self.chi)

    @property
    def order(self) -> int:
        return len(self.chi)

    def __call__(self, p: Sequence[int]) -> Fraction:
        return self.chi[tuple(p)]

    def validate(self):
        G = set(self.chi)
        if not G:
            raise DomainError("group is empty")
        if any(len(p) != self.n or not combinat.is_permutation(p) for p in G):
            raise DomainError(f"group elements must be permutations of 1..{self.n}")
        ident = tuple(range(1, self.n + 1))
        if ident not in G:
            raise DomainError("group lacks the identity")
        for p in G:
            if combinat.inverse(p) not in G:
                raise DomainError(f"group is not closed under inverses at {p}")
            for q in G:
                if combinat.compose(p, q) not in G:
                    raise DomainError(f"group is not closed under composition at {p}, {q}")
        for g in G:
            for h in G:
                conj = combinat.compose(combinat.compose(h, g), combinat.inverse(h))
                if self.chi[conj] != self.chi[g]:
                    raise DomainError(f"chi is not constant on the conjugacy class of {g}")
        deg = self.chi[ident]
        if deg.denominator != 1 or deg < 1:
            raise DomainError("chi(identity) must be a positive integer")

    @classmethod
    def trivial(cls, n: int, group: Sequence[Perm] | None = None) -> "CharacterSpec":
        group = list(combinat.permutations(n)) if group is None else group
        return cls(n, {tuple(p): 1 for p in group})

    @classmethod
    def sign(cls, n: int, group: Sequence[Perm] | None = None) -> "CharacterSpec":
        group = list(combinat.permutations(n)) if group is None else group
        return cls(n, {tuple(p): combinat.sign(p) for p in group})

    @classmethod
    def parse(cls, text: str) -> "CharacterSpec":
        """Read lines ``"2 3 1: 1"`` (one-line image notation, then the value)."""
        chi = {}
        n = None
        for ln, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].strip()
            if not body:
                continue
            if ":" not in body:
                raise HtParseError("expected 'perm: value'", ln, 1)
            left, right = body.split(":", 1)
            try:
                perm = tuple(int(t) for t in left.split())
            except ValueError:
                raise HtParseError(f"bad permutation {left.strip()!r}", ln, 1) from None
            if n is None:
                n = len(perm)
            elif len(perm) != n:
                raise HtParseError("permutations have inconsistent lengths", ln, 1)
            if perm in chi:
                raise HtParseError(f"duplicate entry for {perm}", ln, 1)
            chi[perm] = _parse_scalar(right.strip(), ln, body.index(":") + 2)
        if n is None:
            raise HtParseError("empty character table", 1)
        return cls(n, chi)

    def dumps(self) -> str:
        return "".join(" ".join(map(str, p)) + f": {self.chi[p]}\n" for p in self.group)


def gtf(A: Tensor, chars: Sequence[CharacterSpec] | CharacterSpec) -> Fraction:
    """``(1/|G_1|) sum prod_k chi_k(pi_k) prod_i a[pi_1(i), ..., pi_d(i)]``."""
    _require_cubical(A)
    n, d = A.n, A.order
    if isinstance(chars, CharacterSpec):
        chars = [chars] * d
    if len(chars) != d:
        raise DomainError(f"need {d} character specs, got {len(chars)}")
    if any(c.n != n for c in chars):
        raise DomainError(f"groups must act on 1..{n}")
    axes = [[(p, c(p)) for p in c.group if c(p) != 0] for c in chars]
    total = Fraction(0)
    for tup in itertools.product(*axes):
        w = Fraction(1)
        for _, v in tup:
            w *= v
        total += w * _product(A, [tuple(p[i] for p, _ in tup) for i in range(n)])
    return total / chars[0].order


def gtf2_3d(A: Tensor, G: CharacterSpec, per_slice_chis: Sequence[CharacterSpec] | None = None
            ) -> Fraction:
    """Distance-n tuples ``(pi_1..pi_n)`` from ``G``, weighted by ``prod chi_i(pi_i)``.

    One character is applied to every slice unless ``per_slice_chis`` gives a
    separate one for each of the ``n`` slices.
    """
    if A.order != 3:
        raise ShapeError("gtf2_3d needs an order-3 tensor")
    _require_cubical(A)
    n = A.n
    if G.n != n:
        raise DomainError(f"group must act on 1..{n}")
    chis = [G] * n if per_slice_chis is None else list(per_slice_chis)
    if len(chis) != n:
        raise DomainError(f"need {n} per-slice characters")
    total = Fraction(0)
    for tup in combinat.perm_tuples_distance_n(n, n, candidates=G.group):
        w = Fraction(1)
        for chi, p in zip(chis, tup):
            w *= chi(p)
        if w:
            cells = [(j, p[j - 1], i) for i, p in enumerate(tup, start=1) for j in range(1, n + 1)]
            total += w * _product(A, cells)
    return total


def _one(values):
    return Fraction(1)


def _indicator_positive(values):
    return Fraction(int(all(v > 0 for v in values)))


def _product_sign(values):
    s = 1
    for v in values:
        if v == 0:
            return Fraction(0)
        if v < 0:
            s = -s
    return Fraction(s)


WEIGHTS: dict[str, Callable[[list[Fraction]], Fraction]] = {
    "one": _one,
    "indicator-positive": _indicator_positive,
    "product-sign": _product_sign,
}


def kgtf(A: Tensor, k: int, weight: str | Callable = "one", budget=None) -> Fraction:
    """Sum over k-per index patterns ``D`` of ``f(A o D) * prod(A o D)``."""
    _require_cubical(A)
    d, n = A.order, A.n
    if not 1 <= k < d:
        raise DomainError(f"need 1 <= k < d, got k={k}, d={d}")
    f = WEIGHTS[weight] if isinstance(weight, str) else weight
    total = Fraction(0)
    for p in combinat.diagonal_patterns(d, n, k, budget=budget):
        vals = [A[c] for c in p.cells]
        prodv = Fraction(1)
        for v in vals:
            prodv *= v
        total += f(vals) * prodv
    return total
