from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm, prod

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import Matrix

from qtorb.exceptions import DependentColumnsError, ShapeError
from qtorb.linalg import (
    IntMatrix,
    content,
    determinant,
    frac_part,
    is_primitive,
    primitivize,
    smith_normal_form,
    solve_rational,
)


def determinantal_divisors(M: IntMatrix):
    "d_k = gcd of the k x k minors divided by that of the (k-1) x (k-1) minors"
    rows, cols = M.shape
    S = M.to_sympy()
    result, previous = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in combinations(range(rows), k):
            for c in combinations(range(cols), k):
                g = gcd(g, int(S.extract(list(r), list(c)).det()))
        if g == 0:
            break
        result.append(g // previous)
        previous = g
    return tuple(result)


def check_smith(M: IntMatrix):
    snf = smith_normal_form(M)
    assert snf.U @ M @ snf.V == snf.D
    assert abs(determinant(snf.U)) == 1
    assert abs(determinant(snf.V)) == 1
    rows, cols = M.shape
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert snf.D.rows[i][j] == 0
    diag = snf.diagonal
    assert all(d >= 0 for d in diag)
    nonzero = snf.elementary_divisors
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    assert nonzero == determinantal_divisors(M)
    return snf


def test_determinant():
    assert determinant(IntMatrix.identity(4)) == 1
    assert determinant(IntMatrix(((2, 0), (0, 3)))) == 6
    assert determinant(IntMatrix((), 0)) == 1
    A = IntMatrix.from_columns([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 3, 3, 3)])
    assert determinant(A) == 3


def test_determinant_matches_sympy():
    A = IntMatrix(((2, 4, 4), (-6, 6, 12), (10, -4, -16)))
    assert determinant(A) == int(Matrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).det()) == -144


def test_determinant_needs_square():
    with pytest.raises(ShapeError):
        determinant(IntMatrix(((1, 2, 3), (4, 5, 6))))


def test_ragged_rows():
    with pytest.raises(ShapeError):
        IntMatrix(((1, 2), (3,)))


def test_from_columns_and_transpose():
    A = IntMatrix.from_columns([(1, 0, 0, 0), (1, 3, 3, 3)])
    assert A.shape == (4, 2)
    assert A.column(1) == (1, 3, 3, 3)
    assert A.transpose().rows == ((1, 0, 0, 0), (1, 3, 3, 3))
    assert A.apply((Fraction(2, 3), Fraction(1, 3))) == (1, 1, 1, 1)


def test_smith_known_example():
    snf = check_smith(IntMatrix(((2, 4, 4), (-6, 6, 12), (10, -4, -16))))
    assert snf.diagonal == (2, 6, 12)
    assert snf.torsion == 144


def test_smith_of_a_face_matrix():
    snf = check_smith(IntMatrix.from_columns([(1, 0, 0, 0), (1, 3, 3, 3)]))
    assert snf.diagonal == (1, 3)
    assert snf.rank == 2


def test_smith_rank_deficient():
    snf = check_smith(IntMatrix(((2, 4), (1, 2), (3, 6))))
    assert snf.rank == 1
    assert snf.elementary_divisors == (1,)


def test_smith_zero_matrix():
    snf = smith_normal_form(IntMatrix(((0, 0), (0, 0))))
    assert snf.diagonal == (0, 0)
    assert snf.torsion == 1


@settings(derandomize=True, max_examples=100, deadline=None)
@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda rows: st.integers(min_value=1, max_value=4).flatmap(
            lambda cols: st.lists(
                st.lists(st.integers(min_value=-9, max_value=9), min_size=cols, max_size=cols),
                min_size=rows,
                max_size=rows,
            )
        )
    )
)
def test_smith_random(rows):
    check_smith(IntMatrix(tuple(tuple(r) for r in rows)))


def test_solve_rational():
    A = IntMatrix.from_columns([(1, 0, 0, 0), (1, 3, 3, 3)])
    assert solve_rational(A, (1, 1, 1, 1)) == (Fraction(2, 3), Fraction(1, 3))
    assert solve_rational(A, (1, 2, 2, 2)) == (Fraction(1, 3), Fraction(2, 3))


def test_solve_rational_inconsistent():
    A = IntMatrix.from_columns([(1, 0, 0, 0), (1, 3, 3, 3)])
    assert solve_rational(A, (0, 1, 0, 0)) is None


def test_solve_rational_dependent():
    A = IntMatrix.from_columns([(1, 2), (2, 4)])
    with pytest.raises(DependentColumnsError):
        solve_rational(A, (1, 2))


def test_solve_rational_shape():
    with pytest.raises(ShapeError):
        solve_rational(IntMatrix.identity(2), (1, 2, 3))


def test_primitivity():
    assert is_primitive((1, 3, 3, 3))
    p = is_primitive((2, 4, 6))
    assert not p and p.content == 2 and not p.zero
    z = is_primitive((0, 0))
    assert not z and z.zero
    assert content((0, -6, 9)) == 3
    assert primitivize((2, 4, 6)) == (1, 2, 3)
    assert primitivize((0, -2, -2)) == (0, -1, -1)
    with pytest.raises(ValueError):
        primitivize((0, 0, 0))


def test_frac_part():
    assert frac_part(Fraction(4, 3)) == Fraction(1, 3)
    assert frac_part(Fraction(-1, 3)) == Fraction(2, 3)
    assert frac_part(Fraction(2)) == 0


def square_matrices(n, bound=5):
    return st.lists(
        st.lists(st.integers(min_value=-bound, max_value=bound), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    ).map(lambda rows: IntMatrix(tuple(tuple(r) for r in rows)))


@settings(derandomize=True, max_examples=100, deadline=None)
@given(st.sampled_from([3, 4]).flatmap(lambda n: st.tuples(square_matrices(n), square_matrices(n))))
def test_determinant_is_multiplicative(pair):
    A, B = pair
    assert determinant(A @ B) == determinant(A) * determinant(B)


@settings(derandomize=True, max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=4).flatmap(square_matrices))
def test_smith_diagonal_product_is_the_determinant(M):
    snf = smith_normal_form(M)
    assert prod(snf.diagonal) == abs(determinant(M))


@settings(derandomize=True, max_examples=100, deadline=None)
@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda cols: st.tuples(
            st.integers(min_value=cols, max_value=4).flatmap(
                lambda rows: st.lists(
                    st.lists(st.integers(min_value=-5, max_value=5), min_size=rows, max_size=rows),
                    min_size=cols,
                    max_size=cols,
                )
            ),
            st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=cols, max_size=cols),
        )
    )
)
def test_solve_rational_recovers_the_solution(case):
    columns, x = case
    A = IntMatrix.from_columns(columns)
    assume(A.to_sympy().rank() == A.ncols)
    b = A.apply(x)
    scale = reduce(lcm, (q.denominator for q in b), 1)
    assert solve_rational(A, tuple(int(q * scale) for q in b)) == tuple(q * scale for q in x)
