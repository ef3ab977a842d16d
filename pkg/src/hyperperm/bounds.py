"""Permanent bounds, zero tests and empirical probes.

Exact values are kept as rationals.  Minc-Bregman type bounds are irrational
and are compared as ``ln(per) <= sum(ln(r!)/r)`` in double precision.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from . import combinat
from .exceptions import DomainError, ResourceLimitExceeded, ShapeError
from .permanent import kper, per1, per2_3d
from .polytope import permutation_tensors
from .tensor import Tensor, convex_combination, ones_tensor, plus_projection, scale

LOG_TOL = 1e-9
DEFAULT_SUBSET_BUDGET = 10**7


@dataclass(frozen=True)
class ZeroBlockCertificate:
    """Per-axis 1-based index sets spanning an all-zero sub-tensor."""

    subsets: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.subsets)

    def holds_for(self, A: Tensor) -> bool:
        target = 1 + sum(A.dims[1:])
        return (sum(self.sizes) == target
                and all(A[c] == 0 for c in itertools.product(*self.subsets)))


@dataclass
class BoundReport:
    name: str
    value: Fraction
    bound: float | Fraction
    status: str  # "pass", "tight" or "violated"
    details: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return self.status != "violated"

    def lines(self) -> list[str]:
        out = [f"bound: {self.name}", f"value: {self.value}", f"bound_value: {self.bound}",
               f"status: {self.status}"]
        out += [f"{k}: {v}" for k, v in self.details.items()]
        return out


def _nonempty_subsets(n: int):
    for r in range(1, n + 1):
        yield from itertools.combinations(range(1, n + 1), r)


def find_zero_block(A: Tensor, budget: int = DEFAULT_SUBSET_BUDGET) -> ZeroBlockCertificate | None:
    """Search for a zero sub-tensor whose side lengths sum to ``1 + n_2 + ... + n_d``.

    Nonempty subsets of the first ``d-1`` axes are enumerated exhaustively; the
    last axis then takes every index that is zero across the chosen block.
    Partial choices are cut when even full remaining axes cannot reach the
    target size.
    """
    if A.order < 2:
        raise ShapeError("need order >= 2")
    d = A.order
    total = prod((1 << n) - 1 for n in A.dims[:-1])
    if total > budget:
        raise ResourceLimitExceeded(f"{total} subset combinations exceed budget {budget}")
    target = 1 + sum(A.dims[1:])
    per_axis = [list(_nonempty_subsets(n)) for n in A.dims[:-1]]
    room = [sum(A.dims[k:]) for k in range(d)]

    def rec(k, chosen, have):
        if have + room[k] < target:
            return None
        if k == d - 1:
            need = target - have
            cand = [c for c in range(1, A.dims[-1] + 1)
                    if all(A[ix + (c,)] == 0 for ix in itertools.product(*chosen))]
            if 1 <= need <= len(cand):
                return ZeroBlockCertificate(tuple(chosen) + (tuple(cand[:need]),))
            return None
        for s in per_axis[k]:
            hit = rec(k + 1, chosen + [s], have + len(s))
            if hit is not None:
                return hit
        return None

    return rec(0, [], 0)


def _require_01(A: Tensor, cubical=True, order=None):
    if not A.is_zero_one():
        raise DomainError("expected a (0,1)-tensor")
    if cubical and not A.cubical:
        raise ShapeError("expected a cubical tensor")
    if order is not None and A.order != order:
        raise ShapeError(f"expected an order-{order} tensor")


def lower_bound_01(A: Tensor, value: Fraction | None = None) -> BoundReport:
    """``per(A) >= (n^(d-1) - t) ((n-1)!)^(d-1)`` with ``t`` the number of zeros."""
    _require_01(A)
    n, d = A.n, A.order
    t = sum(1 for x in A.entries if x == 0)
    bound = Fraction((n ** (d - 1) - t) * factorial(n - 1) ** (d - 1))
    value = per1(A) if value is None else value
    status = "violated" if value < bound else ("tight" if value == bound else "pass")
    return BoundReport("lower_bound_01", value, bound, status, {"zeros": t})


def _log_compare(value: Fraction, log_bound: float) -> str:
    if value == 0:
        # every factor is at least 1
        return "pass"
    lhs = math.log(value.numerator) - math.log(value.denominator)
    if abs(lhs - log_bound) < LOG_TOL:
        return "tight"
    return "pass" if lhs < log_bound else "violated"


def _mb_log(sums: Sequence[int]) -> float:
    # r = 0 contributes a factor 1
    return sum(math.lgamma(r + 1) / r for r in sums if r > 0)


def minc_bregman_1(A: Tensor, value: Fraction | None = None) -> BoundReport:
    """``per(A) <= prod_i (r_i!)^(1/r_i)``, ``r_i`` the number of ones in hyperplane ``i``."""
    _require_01(A, order=3)
    n = A.n
    r = [sum(A[i, j, k] for j in range(1, n + 1) for k in range(1, n + 1)) for i in range(1, n + 1)]
    r = [int(x) for x in r]
    log_bound = _mb_log(r)
    value = per1(A) if value is None else value
    return BoundReport("minc_bregman_1", value, math.exp(log_bound),
                       _log_compare(value, log_bound), {"r_i": r, "log_bound": log_bound})


def minc_bregman_2(A: Tensor, value: Fraction | None = None) -> BoundReport:
    """``Per(A) <= prod_{i,j} (r_ij!)^(1/r_ij)``, ``r_ij`` the ones on line ``(i, j, .)``."""
    _require_01(A, order=3)
    n = A.n
    r = [[int(sum(A[i, j, k] for k in range(1, n + 1))) for j in range(1, n + 1)]
         for i in range(1, n + 1)]
    log_bound = _mb_log([x for row in r for x in row])
    value = per2_3d(A) if value is None else value
    return BoundReport("minc_bregman_2", value, math.exp(log_bound),
                       _log_compare(value, log_bound), {"r_ij": r, "log_bound": log_bound})


def plus_projection_zero_test(A: Tensor):
    """Return ``(True, (axis, p, q))`` if some plus-projection has a zero entry.

    A hit implies ``Per(A) = 0``; a miss says nothing.
    """
    if A.order != 3 or not A.cubical:
        raise ShapeError("need an n x n x n tensor")
    if not A.is_nonnegative():
        raise DomainError("tensor has negative entries")
    n = A.n
    for axis in (1, 2, 3):
        M = plus_projection(A, axis)
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                if M[p, q] == 0:
                    return True, (axis, p, q)
    return False, None


@dataclass
class DichotomyReport:
    ts: list[Fraction]
    values: list[Fraction]

    @property
    def all_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    @property
    def all_nonzero(self) -> bool:
        return all(v != 0 for v in self.values)

    @property
    def holds(self) -> bool:
        return self.all_zero or self.all_nonzero


def segment_dichotomy(P: Tensor, Q: Tensor, ts: Sequence) -> DichotomyReport:
    """Evaluate ``Per(tP + (1-t)Q)`` for each ``t`` in ``(0, 1)``."""
    for X in (P, Q):
        if X.order != 3 or not X.cubical or not X.is_nonnegative():
            raise DomainError("P and Q must be nonnegative n x n x n tensors")
    if P.dims != Q.dims:
        raise ShapeError("P and Q differ in shape")
    if per2_3d(P) != 0 or per2_3d(Q) != 0:
        raise DomainError("P and Q must both have Per = 0")
    ts = [Fraction(t) for t in ts]
    if any(not 0 < t < 1 for t in ts):
        raise DomainError("every t must lie strictly between 0 and 1")
    vals = [per2_3d(convex_combination([t, 1 - t], [P, Q])) for t in ts]
    return DichotomyReport(ts, vals)


def vdw_analog(n: int, d: int) -> Fraction:
    """``(n!/n^n)^(d-1)``."""
    return Fraction(factorial(n), n**n) ** (d - 1)


def check_scaled_J(n: int, d: int) -> bool:
    """Exact check that ``per((1/n^(d-1)) J)`` equals ``vdw_analog(n, d)``."""
    if d < 2:
        raise ShapeError("the permanent needs order >= 2")
    return per1(scale(ones_tensor(n, d), Fraction(1, n ** (d - 1)))) == vdw_analog(n, d)


# -- empirical probes --------------------------------------------------------

@dataclass
class ProbeReport:
    conjecture: int
    d: int
    n: int
    samples: int
    seed: int
    sampler: str
    applies: bool
    min_per: Fraction | float | None
    zero_count: int
    zero_examples: list = field(default_factory=list)

    def lines(self) -> list[str]:
        return [
            f"rng: random.Random(seed={self.seed})",
            f"conjecture: {self.conjecture}",
            f"order: {self.d}",
            f"dimension: {self.n}",
            f"sampler: {self.sampler}",
            f"hypothesis_applies: {str(self.applies).lower()}",
            f"samples: {self.samples}",
            f"min_per: {self.min_per}",
            f"zero_per_count: {self.zero_count}",
            "note: empirical sweep only; proves nothing",
        ]


def sinkhorn_line_normalize(n: int, d: int, rng: random.Random, iters: int = 200) -> list[float]:
    """Positive random tensor rescaled so every line sums to (approximately) 1."""
    x = [rng.uniform(0.1, 1.0) for _ in range(n**d)]
    strides = [n ** (d - 1 - k) for k in range(d)]
    for _ in range(iters):
        for axis in range(d):
            s = strides[axis]
            for base in range(n**d):
                if (base // s) % n:
                    continue
                line = [base + t * s for t in range(n)]
                tot = sum(x[p] for p in line)
                for p in line:
                    x[p] /= tot
    return x


def probe_conjectures(conjecture: int, d: int, n: int, samples: int = 100, seed: int = 0,
                      sampler: str = "convex", max_generators: int = 4) -> ProbeReport:
    """Sample line-stochastic tensors and record the smallest permanent seen.

    ``sampler="convex"`` draws exact convex combinations of line-permutation
    tensors, which covers only part of the line-stochastic polytope.
    ``sampler="sinkhorn"`` rescales random positive tensors in floating point.
    """
    if conjecture not in (4, 5):
        raise DomainError("conjecture must be 4 or 5")
    if d < 2 or n < 1 or samples < 1:
        raise DomainError("need d >= 2, n >= 1, samples >= 1")
    rng = random.Random(seed)
    applies = (d % 2 == 0) if conjecture == 4 else (n % 2 == 1)
    min_per = None
    zeros, examples = 0, []
    if sampler == "convex":
        gens = permutation_tensors(n, d, 1)
        if not gens:
            raise DomainError(f"no line-permutation tensors exist for d={d}, n={n}")
        for s in range(samples):
            m = rng.randint(1, min(max_generators, len(gens)))
            picks = rng.sample(range(len(gens)), m)
            w = [rng.randint(1, 9) for _ in picks]
            tot = sum(w)
            T = convex_combination([Fraction(x, tot) for x in w], [gens[i] for i in picks])
            v = per1(T)
            if v == 0:
                zeros += 1
                if len(examples) < 3:
                    examples.append((s, tuple(sorted(picks))))
            min_per = v if min_per is None else min(min_per, v)
    elif sampler == "sinkhorn":
        for s in range(samples):
            x = sinkhorn_line_normalize(n, d, rng)
            T = Tensor((n,) * d, (Fraction(v) for v in x))
            v = float(per1(T))
            if v == 0:
                zeros += 1
            min_per = v if min_per is None else min(min_per, v)
    else:
        raise DomainError(f"unknown sampler {sampler!r}")
    return ProbeReport(conjecture, d, n, samples, seed, sampler, applies, min_per, zeros, examples)
