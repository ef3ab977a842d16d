"""Exact rational linear algebra, phase-one simplex and double description.

Everything here works on lists of ``Fraction`` (or ``int``) rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .exceptions import DomainError, ResourceLimitExceeded


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def affine_parametrization(M: Sequence[Sequence], b: Sequence):
    """Solve ``M x = b`` as ``x_pivot = rhs - R x_free``.

    Returns ``(free, pivots, R, rhs)`` where ``R[p][f]`` are coefficients of the
    free variables in pivot row ``p``.  Raises ``DomainError`` if inconsistent.
    """
    N = len(M[0])
    aug = [list(r) + [bb] for r, bb in zip(M, b)]
    E, piv = rref(aug)
    if piv and piv[-1] == N:
        raise DomainError("equality system is inconsistent")
    free = [c for c in range(N) if c not in set(piv)]
    R = [[row[f] for f in free] for row in E]
    rhs = [row[N] for row in E]
    return free, piv, R, rhs


def _primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers, keeping its direction."""
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b) if x)


def double_description(rows: Sequence[Sequence], max_rays: int = 200000) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{z : row . z >= 0 for every row}``.

    Rows must span the ambient space.  The method starts from a simplicial cone
    on ``dim`` independent rows and adds the remaining rows one at a time,
    combining adjacent ray pairs across each new hyperplane.  Adjacency uses the
    combinatorial test on zero sets.  Rays are coprime integer vectors.
    """
    R = [_primitive(r) for r in rows]
    if not R:
        raise DomainError("no constraints given")
    dim = len(R[0])

    basis: list[int] = []
    echelon: list[list[Fraction]] = []
    for i, r in enumerate(R):
        if rank(echelon + [list(r)]) > len(echelon):
            echelon.append(list(r))
            basis.append(i)
            if len(basis) == dim:
                break
    if len(basis) < dim:
        raise DomainError("constraint rows do not span the space; cone is not pointed")

    # rays of {z : B z >= 0} are the columns of B^-1
    B = [list(map(Fraction, R[i])) for i in basis]
    aug = [row + [Fraction(int(i == j)) for j in range(dim)] for i, row in enumerate(B)]
    E, _ = rref(aug)
    inv_cols = [[E[i][dim + j] for i in range(dim)] for j in range(dim)]
    rays = [_primitive(c) for c in inv_cols]

    order = basis + [i for i in range(len(R)) if i not in set(basis)]
    bit = {row_idx: 1 << pos for pos, row_idx in enumerate(order)}
    zeros = []
    for ray in rays:
        z = 0
        for i in basis:
            if _dot(R[i], ray) == 0:
                z |= bit[i]
        zeros.append(z)

    for row_idx in order[dim:]:
        r = R[row_idx]
        vals = [_dot(r, ray) for ray in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays, new_zeros = [], []
        if pos and neg:
            need = dim - 2
            for p in pos:
                zp = zeros[p]
                for q in neg:
                    common = zp & zeros[q]
                    if common.bit_count() < need:
                        continue
                    if any(w != p and w != q and common & zeros[w] == common
                           for w in range(len(rays))):
                        continue
                    vp, vq = vals[p], vals[q]
                    nr = _primitive([vp * a - vq * b for a, b in zip(rays[q], rays[p])])
                    new_rays.append(nr)
                    new_zeros.append(common | bit[row_idx])
        keep = pos + zer
        rays = [rays[i] for i in keep] + new_rays
        zeros = [zeros[i] | (bit[row_idx] if vals[i] == 0 else 0) for i in keep] + new_zeros
        if len(rays) > max_rays:
            raise ResourceLimitExceeded(f"double description exceeded {max_rays} rays")
    return rays


def polytope_vertices(A: Sequence[Sequence], c: Sequence) -> list[list[Fraction]]:
    """Vertices of the bounded polytope ``{y : A y + c >= 0}``.

    Homogenizes to the cone ``{(t, y) : c t + A y >= 0, t >= 0}``.
    """
    if not A:
        raise DomainError("no inequalities")
    m = len(A[0])
    rows = [[ci] + list(ai) for ai, ci in zip(A, c)]
    rows.append([1] + [0] * m)
    out = []
    for ray in double_description(rows):
        t = ray[0]
        if t == 0:
            raise DomainError("polyhedron is unbounded")
        out.append([Fraction(x, t) for x in ray[1:]])
    return out


def phase_one(A_eq: Sequence[Sequence], b_eq: Sequence, max_pivots: int = 100000):
    """Find ``x >= 0`` with ``A_eq x = b_eq`` or return ``None``.

    Tableau simplex on the artificial-variable problem with Bland's rule, which
    guarantees termination on degenerate systems.
    """
    m = len(A_eq)
    nvar = len(A_eq[0]) if m else 0
    T = []
    for i, (row, bb) in enumerate(zip(A_eq, b_eq)):
        row = [Fraction(x) for x in row]
        bb = Fraction(bb)
        if bb < 0:
            row = [-x for x in row]
            bb = -bb
        T.append(row + [Fraction(int(i == j)) for j in range(m)] + [bb])
    width = nvar + m
    basis = [nvar + i for i in range(m)]
    # objective: minimize sum of artificials -> reduced costs
    cost = [Fraction(0)] * (width + 1)
    for row in T:
        for j in range(width + 1):
            cost[j] -= row[j]
    for j in range(nvar, width):
        cost[j] += 1
    for _ in range(max_pivots):
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best, leave = None, None
        for i, row in enumerate(T):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise DomainError("phase one unbounded; should not happen")
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * b for a, b in zip(T[i], T[leave])]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [a - f * b for a, b in zip(cost, T[leave])]
        basis[leave] = enter
    else:
        raise ResourceLimitExceeded("phase one pivot limit reached")
    if -cost[-1] != 0:
        return None
    x = [Fraction(0)] * nvar
    for i, j in enumerate(basis):
        if j < nvar:
            x[j] = T[i][-1]
    return x
