"""Exact parallel reduction over deterministic work blocks."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction


def default_workers() -> int:
    return os.cpu_count() or 1


def parallel_sum(func, blocks, workers: int | None = 1) -> Fraction:
    """Sum ``func(*block)`` over ``blocks``.

    Rational addition is exact, so the result does not depend on how the
    blocks are spread over workers.
    """
    blocks = list(blocks)
    if not workers or workers <= 1 or len(blocks) < 2:
        return sum((func(*b) for b in blocks), Fraction(0))
    with ProcessPoolExecutor(max_workers=min(workers, len(blocks))) as ex:
        return sum(ex.map(func, *zip(*blocks)), Fraction(0))
