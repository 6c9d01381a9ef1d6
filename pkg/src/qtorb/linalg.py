"""
Exact integer and rational linear algebra.

Every quantity is a Python ``int`` or a ``fractions.Fraction``; nothing here ever
touches floating point. Determinants and rational solves go through sympy's exact
matrices, the Smith decomposition is an elementary-operation reduction that keeps
track of both unimodular transforms.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple

from sympy import Matrix

from .exceptions import DependentColumnsError, ShapeError

log = logging.getLogger("qtorb.linalg")

IntVector = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]


def rational_vector(values: Iterable) -> RationalVector:
    "Build a RationalVector; entries are reduced with positive denominators by Fraction itself"
    return tuple(Fraction(v) for v in values)


def frac_part(q: Fraction) -> Fraction:
    "Fractional part in [0, 1)"
    return q - (q.numerator // q.denominator)


@dataclass(frozen=True)
class IntMatrix:
    """
    Rectangular matrix of arbitrary-precision integers, stored row by row.

    :param rows: tuple of equal-length integer tuples
    :param ncols: number of columns, only needed for matrices without rows
    """

    rows: Tuple[IntVector, ...]
    ncols: int = -1

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ShapeError(f"ragged rows of lengths {sorted(widths)}")
        ncols = widths.pop() if widths else max(self.ncols, 0)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int = 0) -> "IntMatrix":
        "Matrix whose j-th column is columns[j]"
        columns = [tuple(c) for c in columns]
        if not columns:
            return cls(tuple(() for _ in range(nrows)), 0)
        return cls(tuple(zip(*columns)), len(columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> IntVector:
        return tuple(r[j] for r in self.rows)

    @property
    def columns(self) -> Tuple[IntVector, ...]:
        return tuple(self.column(j) for j in range(self.ncols))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_columns(self.rows, self.ncols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows),
            other.ncols,
        )

    def apply(self, vector: Sequence) -> tuple:
        "Matrix times vector; works for int and Fraction entries alike"
        if len(vector) != self.ncols:
            raise ShapeError(f"vector of length {len(vector)} against {self.ncols} columns")
        return tuple(sum(a * x for a, x in zip(r, vector)) for r in self.rows)

    def to_sympy(self) -> Matrix:
        return Matrix(self.nrows, self.ncols, [x for r in self.rows for x in r])


@dataclass(frozen=True)
class SmithDecomposition:
    """
    Result of :func:`smith_normal_form`: ``U·M·V = D`` with unimodular U and V and
    D diagonal, nonnegative, each diagonal entry dividing the next.
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> IntVector:
        return tuple(self.D.rows[i][i] for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def elementary_divisors(self) -> IntVector:
        "Nonzero diagonal entries"
        return tuple(d for d in self.diagonal if d)

    @property
    def torsion(self) -> int:
        "Product of the nonzero elementary divisors"
        return reduce(lambda a, b: a * b, self.elementary_divisors, 1)


def determinant(M: IntMatrix) -> int:
    """
    Exact determinant of a square integer matrix (fraction-free Bareiss elimination).

    :raises ShapeError: when M is not square
    """
    if M.nrows != M.ncols:
        raise ShapeError(f"determinant of non-square {M.nrows}x{M.ncols} matrix")
    if M.nrows == 0:
        return 1
    return int(M.to_sympy().det(method="bareiss"))


def _swap_rows(A, i, j):
    A[i], A[j] = A[j], A[i]


def _swap_cols(A, i, j):
    for r in A:
        r[i], r[j] = r[j], r[i]


def _add_row(A, target, source, q):
    "row[target] += q * row[source]"
    A[target] = [a + q * b for a, b in zip(A[target], A[source])]


def _add_col(A, target, source, q):
    "col[target] += q * col[source]"
    for r in A:
        r[target] += q * r[source]


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """
    Smith normal form with transforms.

    Pivots on the entry of minimal absolute value in the remaining block, clears its
    row and column with integer quotients, and repairs divisibility by adding an
    offending row to the pivot row.
    """
    m, n = M.shape
    D = [list(r) for r in M.rows]
    U = [list(r) for r in IntMatrix.identity(m).rows]
    V = [list(r) for r in IntMatrix.identity(n).rows]

    for t in range(min(m, n)):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        _swap_rows(D, t, i)
        _swap_rows(U, t, i)
        _swap_cols(D, t, j)
        _swap_cols(V, t, j)

        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    _add_row(D, i, t, -q)
                    _add_row(U, i, t, -q)
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    _add_col(D, j, t, -q)
                    _add_col(V, j, t, -q)

            rest = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if rest:
                # a remainder is smaller than the pivot: move it in and start over
                _, i, j = min(rest)
                _swap_rows(D, t, i)
                _swap_rows(U, t, i)
                _swap_cols(D, t, j)
                _swap_cols(V, t, j)
                continue

            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            _add_row(D, t, bad, 1)
            _add_row(U, t, bad, 1)

        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    result = SmithDecomposition(U=IntMatrix(U, m), D=IntMatrix(D, n), V=IntMatrix(V, n))
    log.debug(f"smith_normal_form of {M.shape} matrix: diagonal {result.diagonal}")
    return result


def solve_rational(A: IntMatrix, b: Sequence[int]) -> Optional[RationalVector]:
    """
    Unique exact solution x of ``A·x = b``.

    :param A: integer matrix with linearly independent columns
    :param b: integer right-hand side
    :return: the solution as a RationalVector, or None when b is not in the column span
    :raises DependentColumnsError: when the columns of A are dependent
    """
    if len(b) != A.nrows:
        raise ShapeError(f"right-hand side of length {len(b)} against {A.nrows} rows")
    if A.ncols == 0:
        return () if not any(b) else None

    S = A.to_sympy()
    if S.rank() < A.ncols:
        raise DependentColumnsError(f"columns of the {A.nrows}x{A.ncols} matrix are dependent")
    try:
        x, params = S.gauss_jordan_solve(Matrix(list(b)))
    except ValueError:
        return None
    return tuple(Fraction(int(v.p), int(v.q)) for v in x)


@dataclass(frozen=True)
class Primitivity:
    """
    Answer of :func:`is_primitive`. Truthy iff the vector is primitive.

    ``zero`` flags the zero vector separately: it is non-primitive by convention.
    """

    primitive: bool
    zero: bool
    content: int

    def __bool__(self):
        return self.primitive


def content(v: Sequence[int]) -> int:
    "gcd of the entries (0 for the zero vector)"
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def is_primitive(v: Sequence[int]) -> Primitivity:
    g = content(v)
    return Primitivity(primitive=(g == 1), zero=(g == 0), content=g)


def primitivize(v: Sequence[int]) -> IntVector:
    "Divide a nonzero integer vector by the gcd of its entries"
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive multiple")
    return tuple(int(x) // g for x in v)
