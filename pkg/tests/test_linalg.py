import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_kit import linalg
from cayley_kit.errors import SingularMatrixError

from oracles import det, elementary_divisors


def matrices(max_rows=4, max_cols=4, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def is_row_hnf(H):
    prev = -1
    zero_seen = False
    for i, row in enumerate(H):
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            zero_seen = True
            continue
        assert not zero_seen, "nonzero row below a zero row"
        assert lead > prev and row[lead] > 0
        for k in range(i):
            assert 0 <= H[k][lead] < row[lead]
        prev = lead
    return True


def test_hnf_identity():
    assert linalg.hermite_normal_form([[1, 0], [0, 1]]) == ([[1, 0], [0, 1]], [[1, 0], [0, 1]])


@pytest.mark.parametrize("M, H", [
    ([[2, 4], [1, 3]], [[1, 1], [0, 2]]),
    ([[0], [3]], [[3], [0]]),
])
def test_hnf_examples(M, H):
    got, U = linalg.hermite_normal_form(M)
    assert got == H
    assert linalg.matmul(U, M) == H


@given(matrices())
def test_hnf_properties(M):
    H, U = linalg.hermite_normal_form(M)
    assert linalg.matmul(U, M) == H
    assert abs(det(U)) == 1
    assert is_row_hnf(H)


@pytest.mark.parametrize("M, diag", [
    ([[2, 0], [0, 3]], [1, 6]),
    ([[1, 0], [0, 1]], [1, 1]),
    ([[2, 0], [0, 0]], [2, 0]),
])
def test_snf_examples(M, diag):
    U, D, V = linalg.smith_normal_form(M)
    assert [D[i][i] for i in range(2)] == diag
    assert linalg.matmul(linalg.matmul(U, M), V) == D


@settings(max_examples=150)
@given(matrices(max_rows=3, max_cols=4))
def test_snf_against_determinantal_divisors(M):
    U, D, V = linalg.smith_normal_form(M)
    assert linalg.matmul(linalg.matmul(U, M), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    m, n = len(D), len(D[0])
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)
    assert [d for d in diag if d] == elementary_divisors(M)


def test_solve_integer_examples():
    assert linalg.solve_integer([[2]], [4]) == ([2], [])
    assert linalg.solve_integer([[2]], [3]) is None
    A = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    x, kernel = linalg.solve_integer(A, [2, 0, 0])
    assert linalg.matvec(A, x) == [2, 0, 0]
    assert x == [-1, 1, 1]
    assert kernel == []


@given(matrices(), st.data())
def test_solve_integer_properties(A, data):
    n = len(A[0])
    x0 = data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))
    b = linalg.matvec(A, x0)
    x, kernel = linalg.solve_integer(A, b)
    assert linalg.matvec(A, x) == b
    assert all(not any(linalg.matvec(A, k)) for k in kernel)
    assert len(kernel) == n - linalg.rank(A)


@given(matrices(max_cols=3, lo=-3, hi=3), st.data())
def test_solve_integer_none_is_honest(A, data):
    m, n = len(A), len(A[0])
    b = data.draw(st.lists(st.integers(-4, 4), min_size=m, max_size=m))
    result = linalg.solve_integer(A, b)
    if result is not None:
        assert linalg.matvec(A, result[0]) == b
        return
    # A None verdict must not be contradicted by any small solution.
    small = itertools.product(range(-30, 31), repeat=n) if n <= 2 else \
        itertools.product(range(-8, 9), repeat=n)
    assert not any(linalg.matvec(A, x) == b for x in small)


def test_lattice_index_examples():
    assert linalg.lattice_index([[1, 0], [0, 1]]) == 1
    assert linalg.lattice_index([[1, 1, 0], [1, 0, 1], [0, 1, 1]]) == 2
    assert linalg.lattice_index([[1, 2]]) == linalg.INFINITE


@given(matrices(max_rows=5, max_cols=3))
def test_lattice_index_is_snf_product(vs):
    index = linalg.lattice_index(vs)
    factors = elementary_divisors(vs)
    if len(factors) < len(vs[0]):
        assert index == linalg.INFINITE
    else:
        prod = 1
        for d in factors:
            prod *= d
        assert index == prod


def test_invert_rational_examples():
    assert linalg.invert_rational([[1, 0], [0, 1]]) == [[1, 0], [0, 1]]
    half = Fraction(1, 2)
    assert linalg.invert_rational([[1, 1, 0], [1, 0, 1], [0, 1, 1]]) == [
        [half, half, -half], [half, -half, half], [-half, half, half]]
    with pytest.raises(SingularMatrixError):
        linalg.invert_rational([[1, 1], [1, 1]])


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_invert_rational_roundtrip(M):
    if det(M) == 0:
        with pytest.raises(SingularMatrixError):
            linalg.invert_rational(M)
        return
    inv = linalg.invert_rational(M)
    n = len(M)
    assert linalg.matmul(inv, M) == linalg.identity(n)
    assert linalg.matmul(M, inv) == linalg.identity(n)


@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_determinant_matches_laplace(M):
    assert linalg.determinant(M) == det(M)


def test_canonical_direction():
    assert linalg.canonical_direction((0, -2, 4)) == (0, 1, -2)
    assert linalg.canonical_direction((3, 6)) == (1, 2)
