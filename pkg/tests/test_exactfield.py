import random

import pytest

from cosilt.exactfield import (
    GF,
    QQ,
    FieldMismatchError,
    Mat,
    inverse,
    is_invertible,
    kernel_basis,
    rank,
    rref,
    solve,
)

F2 = GF(2)
F5 = GF(5)


def test_rref_identity_f2():
    m = Mat.identity(F2, 2)
    red, pivots, rk = rref(m)
    assert red == m
    assert pivots == [0, 1]
    assert rk == 2


def test_rref_zero():
    m = Mat.zeros(F2, 3, 3)
    red, pivots, rk = rref(m)
    assert red == m and pivots == [] and rk == 0


def test_rref_rank_one_f2():
    # hand Gaussian elimination: row2 - row1
    m = Mat.from_rows(F2, [[1, 1], [1, 1]])
    red, pivots, rk = rref(m)
    assert red == Mat.from_rows(F2, [[1, 1], [0, 0]])
    assert rk == 1


def test_kernel_identity_empty():
    assert kernel_basis(Mat.identity(F5, 4)) == []


def test_kernel_zero_matrix():
    vecs = kernel_basis(Mat.zeros(F2, 2, 3))
    assert len(vecs) == 3
    for j, v in enumerate(vecs):
        assert v.entry(j, 0) == 1


def test_kernel_sum_f2():
    # x + y = 0 over F2 forces x = y
    vecs = kernel_basis(Mat.from_rows(F2, [[1, 1]]))
    assert len(vecs) == 1
    assert vecs[0] == Mat.column(F2, [1, 1])


def test_solve_identity():
    b = Mat.column(F5, [3, 1, 4])
    assert solve(Mat.identity(F5, 3), b) == b


def test_solve_inconsistent():
    assert solve(Mat.zeros(F2, 2, 2), Mat.column(F2, [1, 0])) is None


def test_solve_witness_f2():
    a = Mat.from_rows(F2, [[1, 1]])
    b = Mat.column(F2, [1])
    x = solve(a, b)
    assert x is not None and a * x == b


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        Mat.identity(F2, 2) * Mat.identity(F5, 2)


def test_rationals_exact():
    m = Mat.from_rows(QQ, [["1/2", "1/3"], ["1/4", "1/5"]])
    assert is_invertible(m)
    assert inverse(m) * m == Mat.identity(QQ, 2)


def _random_mat(field, rows, cols, rng):
    return Mat.from_rows(field, [[field.rand(rng) for _ in range(cols)] for _ in range(rows)])


@pytest.mark.parametrize("field", [F2, F5])
def test_random_properties(field):
    rng = random.Random(20240601)
    for _ in range(60):
        r = rng.randrange(1, 6)
        c = rng.randrange(1, 6)
        m = _random_mat(field, r, c, rng)
        red, pivots, rk = rref(m)
        # idempotence
        red2, _, rk2 = rref(red)
        assert red2 == red and rk2 == rk
        # row rank equals column rank
        assert rank(m.transpose()) == rk
        # kernel vectors are genuine and count matches the rank defect
        vecs = kernel_basis(m)
        assert len(vecs) == c - rk
        for v in vecs:
            assert (m * v).is_zero()
        # solvability iff augmenting does not raise the rank
        b = _random_mat(field, r, 1, rng)
        x = solve(m, b)
        if x is None:
            assert rank(m.hstack(b)) == rk + 1
        else:
            assert m * x == b
            assert rank(m.hstack(b)) == rk


def test_solve_randomized_consistent_systems():
    rng = random.Random(7)
    for _ in range(40):
        m = _random_mat(F5, rng.randrange(1, 5), rng.randrange(1, 5), rng)
        y = _random_mat(F5, m.cols, 1, rng)
        b = m * y
        x = solve(m, b)
        assert x is not None and m * x == b
