import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperperm import htformat
from hyperperm.exceptions import DomainError, HtParseError, ShapeError
from hyperperm.tensor import (
    Tensor, extract_plane, hadamard, identity_tensor, make_tensor, ones_tensor,
    plus_projection, scale, sigma_transpose, zeros_tensor,
)
from hyperperm.combinat import compose
from hyperperm.polytope import permutation_tensors, is_permutation_matrix

from .conftest import random_rational_tensor


def test_make_tensor_layout(B):
    assert B[1, 1, 1] == 1 and B[1, 2, 2] == 1 and B[2, 1, 2] == 1 and B[2, 2, 1] == 1
    assert extract_plane(B, {3: 1}) == make_tensor((2, 2), [1, 0, 0, 1])
    assert extract_plane(B, {3: 2}) == make_tensor((2, 2), [0, 1, 1, 0])
    v = make_tensor((1,), [5])
    assert v.order == 1 and v[1] == 5
    M = make_tensor((2, 2), [1, 2, 3, 4])
    assert (M[1, 1], M[1, 2], M[2, 1], M[2, 2]) == (1, 2, 3, 4)


@pytest.mark.parametrize("dims, entries", [((2, 2), [1, 2, 3]), ((2, 0), []), ((), [1])])
def test_make_tensor_errors(dims, entries):
    with pytest.raises(ShapeError):
        make_tensor(dims, entries)


def test_float_entries_rejected():
    with pytest.raises(TypeError):
        make_tensor((1,), [0.5])


def test_identity_and_ones():
    assert identity_tensor(3, 2) == make_tensor((3, 3), [1, 0, 0, 0, 1, 0, 0, 0, 1])
    I3 = identity_tensor(3, 3)
    assert sum(I3.entries) == 3 and all(I3[i, i, i] == 1 for i in range(1, 4))
    assert identity_tensor(1, 5).entries == (1,)
    assert ones_tensor(3, 3).size == 27 and set(ones_tensor(3, 3).entries) == {1}
    assert ones_tensor(2, 4).size == 16


def test_extract_plane(J3, B):
    line = extract_plane(J3, {1: 2, 2: 3})
    assert line.dims == (3,) and set(line.entries) == {1}
    assert extract_plane(B, {}) == B
    assert extract_plane(B, {1: 1, 2: 2, 3: 2}) == make_tensor((1,), [1])
    with pytest.raises(DomainError):
        extract_plane(B, {4: 1})
    with pytest.raises(DomainError):
        extract_plane(B, {1: 3})


def test_extract_plane_composes(rng):
    for _ in range(20):
        A = random_rational_tensor(rng, (3, 2, 4))
        joint = extract_plane(A, {1: 2, 3: 4})
        stepwise = extract_plane(extract_plane(A, {1: 2}), {2: 4})
        assert joint == stepwise


def test_hadamard_and_scale(rng, B):
    A = random_rational_tensor(rng, (2, 2, 2))
    assert hadamard(A, ones_tensor(2, 3)) == A
    assert hadamard(A, zeros_tensor(2, 3)) == zeros_tensor(2, 3)
    assert hadamard(B, B) == B
    with pytest.raises(ShapeError):
        hadamard(A, ones_tensor(3, 3))
    assert set(scale(ones_tensor(3, 3), Fraction(1, 3)).entries) == {Fraction(1, 3)}
    assert scale(A, 1) == A
    assert scale(A, 0) == zeros_tensor(2, 3)


def test_sigma_transpose_basics(rng):
    M = make_tensor((2, 3), range(6))
    T = sigma_transpose(M, (2, 1))
    assert T.dims == (3, 2)
    assert all(T[j, i] == M[i, j] for i in range(1, 3) for j in range(1, 4))
    A = random_rational_tensor(rng, (2, 3, 4))
    assert sigma_transpose(A, (1, 2, 3)) == A
    with pytest.raises(DomainError):
        sigma_transpose(A, (1, 1, 2))


def test_sigma_transpose_entry_rule(rng):
    A = random_rational_tensor(rng, (3, 3, 3))
    sigma = (3, 1, 2)
    T = sigma_transpose(A, sigma)
    for ix in T.indices():
        assert T[ix] == A[tuple(ix[s - 1] for s in sigma)]


@pytest.mark.parametrize("n", [2, 3])
def test_sigma_transpose_group_action(rng, n):
    perms = list(itertools.permutations((1, 2, 3)))
    for _ in range(3):
        A = random_rational_tensor(rng, (n, n, n))
        for s in perms:
            for t in perms:
                # (A^s)^t = A^(t o s) with (t o s)(m) = t(s(m))
                assert sigma_transpose(sigma_transpose(A, s), t) == sigma_transpose(A, compose(t, s))


def test_plus_projection(J3, I3):
    for ax in (1, 2, 3):
        assert set(plus_projection(J3, ax).entries) == {3}
        assert plus_projection(I3, ax) == identity_tensor(3, 2)
    for L in permutation_tensors(3, 3, 1)[:4]:
        for ax in (1, 2, 3):
            assert set(plus_projection(L, ax).entries) == {1}
    for P in permutation_tensors(3, 3, 2):
        for ax in (1, 2, 3):
            assert is_permutation_matrix(plus_projection(P, ax))
    with pytest.raises(ShapeError):
        plus_projection(ones_tensor(2, 4), 1)


def test_plus_projection_scales(rng):
    for _ in range(20):
        A = random_rational_tensor(rng, (2, 3, 2))
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        for ax in (1, 2, 3):
            assert plus_projection(scale(A, c), ax) == scale(plus_projection(A, ax), c)


scalars = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)


@st.composite
def tensors(draw):
    dims = draw(st.lists(st.integers(1, 3), min_size=1, max_size=4))
    size = 1
    for n in dims:
        size *= n
    return Tensor(dims, draw(st.lists(scalars, min_size=size, max_size=size)))


@given(tensors())
@settings(max_examples=100, deadline=None)
def test_ht_round_trip(T):
    assert htformat.loads(htformat.dumps(T)) == T


def test_ht_parser_whitespace_and_comments():
    text = "# comment\nht1\norder 3   # trailing\ndims 2 2 2\n1 0 0 1\n0 1\n\t1 0\n"
    assert htformat.loads(text) == make_tensor((2, 2, 2), [1, 0, 0, 1, 0, 1, 1, 0])
    assert htformat.loads("ht1 order 2 dims 1 2 -1/2 3") == make_tensor((1, 2), ["-1/2", 3])


@pytest.mark.parametrize("text, line", [
    ("ht2\norder 1\ndims 1\n1\n", 1),
    ("ht1\norder 2\ndims 2 2\n1 2 3\n", 4),
    ("ht1\norder 1\ndims 2\n1 0.5\n", 4),
    ("ht1\norder 1\ndims 1\n1/0\n", 4),
    ("ht1\norder 1\ndims 1\n1 2\n", 4),
    ("ht1\norder 1\ndims 0\n", 3),
])
def test_ht_parser_errors_report_position(text, line):
    with pytest.raises(HtParseError) as exc:
        htformat.loads(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_archive_round_trip(rng):
    ts = [random_rational_tensor(rng, (2, 2, 2)) for _ in range(4)]
    text = htformat.dumps_archive(ts)
    assert text.startswith("vertexset 4\nvertex 1\n")
    assert htformat.loads_archive(text) == ts
    with pytest.raises(HtParseError):
        htformat.loads_archive(text.replace("vertex 2", "vertex 5"))


def test_frontal_display(B):
    assert htformat.frontal_display(B).splitlines() == ["1 0 | 0 1", "0 1 | 1 0"]
