import itertools
from math import factorial

import pytest

from hyperperm import combinat
from hyperperm.combinat import (
    Budget, count_latin_squares, derangements, diagonal_patterns, hamming, injections,
    is_latin_square, latin_square_to_tensor, pattern_to_tensor, perm_tuples_distance_n,
    permutations, validate_pattern,
)
from hyperperm.exceptions import DomainError, ResourceLimitExceeded
from hyperperm.polytope import is_k_permutation
from hyperperm.tensor import identity_tensor


def test_hamming():
    assert hamming((1, 2, 3), (1, 3, 2)) == 2
    assert hamming((4, 1, 2), (4, 1, 2)) == 0
    assert hamming((1, 2), (2, 1)) == 2
    with pytest.raises(DomainError):
        hamming((1, 2), (1, 2, 3))


def test_permutations_and_injections():
    assert len(list(permutations(1))) == 1
    assert len(list(permutations(3))) == 6
    p4 = list(permutations(4))
    assert len(p4) == 24 and p4[0] == (1, 2, 3, 4) and p4 == sorted(p4)
    assert len(list(injections(2, 3))) == 6
    assert list(injections(3, 3)) == list(permutations(3))
    assert list(injections(3, 2)) == []


def _brute_tuples(n, m):
    perms = list(itertools.permutations(range(1, n + 1)))
    return [t for t in itertools.product(perms, repeat=m)
            if all(hamming(a, b) == n for a, b in itertools.combinations(t, 2))]


@pytest.mark.parametrize("n, m, expected", [(3, 3, 12), (2, 2, 2), (2, 3, 0)])
def test_perm_tuples_counts(n, m, expected):
    got = list(perm_tuples_distance_n(n, m))
    assert len(got) == expected
    assert got == _brute_tuples(n, m)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_pairs_count_is_n_factorial_times_derangements(n):
    assert sum(1 for _ in perm_tuples_distance_n(n, 2)) == factorial(n) * derangements(n)
    if n <= 4:
        assert len(_brute_tuples(n, 2)) == factorial(n) * derangements(n)


def test_derangements():
    assert [derangements(n) for n in range(7)] == [1, 0, 1, 2, 9, 44, 265]


def test_latin_squares():
    assert count_latin_squares(1) == 1
    assert count_latin_squares(2) == 2
    assert count_latin_squares(3) == 12
    assert count_latin_squares(4) == 576
    # oracle: direct enumeration of row tuples
    assert sum(1 for _ in perm_tuples_distance_n(4, 4)) == 576
    squares = list(combinat.latin_squares(3))
    assert len(squares) == len(set(squares)) == 12
    assert all(is_latin_square(s) for s in squares)


def test_latin_count_n5():
    assert count_latin_squares(5) == 161280


def test_latin_resource_guards():
    with pytest.raises(ResourceLimitExceeded):
        count_latin_squares(6)
    with pytest.raises(ResourceLimitExceeded):
        list(perm_tuples_distance_n(4, 4, budget=50))
    with pytest.raises(ResourceLimitExceeded):
        count_latin_squares(5, budget=Budget(1000))


def test_diagonal_pattern_examples():
    assert sum(1 for _ in diagonal_patterns(3, 2, 1)) == 4
    assert sum(1 for _ in diagonal_patterns(4, 2, 2)) == 0
    with pytest.raises(DomainError):
        list(diagonal_patterns(3, 2, 3))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_diagonal_counts(n):
    assert sum(1 for _ in diagonal_patterns(3, n, 1)) == factorial(n) ** 2
    assert sum(1 for _ in diagonal_patterns(3, n, 2)) == count_latin_squares(n)


@pytest.mark.parametrize("d, n, k", [(3, 3, 1), (3, 3, 2), (4, 2, 1), (4, 2, 3), (4, 3, 2), (2, 4, 1)])
def test_every_pattern_validates_independently(d, n, k):
    pats = list(diagonal_patterns(d, n, k))
    assert len({frozenset(p.cells) for p in pats}) == len(pats)
    for p in pats:
        assert validate_pattern(p.cells, d, n, k)
        # no two cells share a (d-k)-plane, i.e. agree on k coordinates
        for a, b in itertools.combinations(p.cells, 2):
            assert sum(x == y for x, y in zip(a, b)) < k


def test_patterns_match_brute_force_small():
    # all 4-subsets of the 2x2x2x2 cells -- none is a 2-per pattern
    cells = list(itertools.product((1, 2), repeat=4))
    assert not any(validate_pattern(s, 4, 2, 2) for s in itertools.combinations(cells, 4))
    # 1-per patterns of 3x3x3 by brute force over 3-subsets
    cells = list(itertools.product((1, 2, 3), repeat=3))
    brute = {frozenset(s) for s in itertools.combinations(cells, 3) if validate_pattern(s, 3, 3, 1)}
    assert brute == {frozenset(p.cells) for p in diagonal_patterns(3, 3, 1)}


def test_pattern_stream_is_deterministic_and_lexicographic():
    a = [p.cells for p in diagonal_patterns(3, 3, 2)]
    b = [p.cells for p in diagonal_patterns(3, 3, 2)]
    assert a == b
    flat = [tuple(x for c in cells for x in c[2:]) for cells in a]
    assert flat == sorted(flat)


def test_pattern_to_tensor():
    diag = next(p for p in diagonal_patterns(3, 3, 1) if all(len(set(c)) == 1 for c in p.cells))
    assert pattern_to_tensor(diag) == identity_tensor(3, 3)
    for p in diagonal_patterns(2, 3, 1):
        T = pattern_to_tensor(p)
        assert is_k_permutation(T, 1) and sum(T.entries) == 3


def test_latin_pattern_tensor_is_line_permutation():
    for sq in combinat.latin_squares(3):
        T = latin_square_to_tensor(sq)
        assert sum(T.entries) == 9
        assert is_k_permutation(T, 1)
        assert not is_k_permutation(T, 2)


def test_sign_compose_inverse():
    assert combinat.sign((1, 2, 3)) == 1
    assert combinat.sign((2, 1, 3)) == -1
    assert combinat.sign((2, 3, 1)) == 1
    for p in permutations(4):
        assert combinat.compose(p, combinat.inverse(p)) == (1, 2, 3, 4)
        for q in permutations(4):
            assert combinat.sign(combinat.compose(p, q)) == combinat.sign(p) * combinat.sign(q)
