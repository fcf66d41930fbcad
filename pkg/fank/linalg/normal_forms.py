"""Smith and Hermite normal forms over the integers.

Both forms come from ``sympy.matrices.normalforms``. The public matrix type
is ``sympy.ImmutableMatrix``; the row helpers hand plain lists of Python
ints to the callers that do their own integer bookkeeping.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import sympy
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp
from sympy.matrices.normalforms import invariant_factors as _invariant_factors
from sympy.polys.domains import ZZ

IntMatrix = sympy.ImmutableMatrix
Vector = Tuple[int, ...]
Rows = List[List[int]]


def as_rows(matrix) -> Rows:
    """Copy a sympy matrix or a nested sequence into a list of int rows."""
    if isinstance(matrix, sympy.MatrixBase):
        return [[int(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)]
    return [[int(x) for x in row] for row in matrix]


def to_int_matrix(rows: Sequence[Sequence[int]], n_rows: int, n_cols: int) -> IntMatrix:
    if n_rows == 0 or n_cols == 0:
        return sympy.ImmutableMatrix.zeros(n_rows, n_cols)
    return sympy.ImmutableMatrix(n_rows, n_cols, [int(x) for row in rows for x in row])


def identity_rows(size: int) -> Rows:
    return [[1 if i == j else 0 for j in range(size)] for i in range(size)]


@dataclass(frozen=True)
class SmithDecomposition:
    """U * A * V = D with U, V unimodular and D diagonal.

    Attributes:
        U: Row transform (rows x rows).
        D: Diagonal matrix with d_1 | d_2 | ... and every d_i >= 0.
        V: Column transform (cols x cols).
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> Vector:
        return tuple(int(self.D[i, i]) for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_rows(matrix: Sequence[Sequence[int]], n_rows: int, n_cols: int) -> Tuple[Rows, Rows, Rows]:
    """Smith normal form on int lists.

    Args:
        matrix: ``n_rows`` rows of ``n_cols`` integers.
        n_rows: Row count (needed when the matrix is empty).
        n_cols: Column count.

    Returns:
        ``(U, D, V)`` as int rows with ``U * A * V = D``, nonzero invariant
        factors first.
    """
    if n_rows == 0 or n_cols == 0:
        return identity_rows(n_rows), [[0] * n_cols for _ in range(n_rows)], identity_rows(n_cols)
    d, u, v = smith_normal_decomp(to_int_matrix(matrix, n_rows, n_cols), domain=ZZ)
    u, d, v = as_rows(u), as_rows(d), as_rows(v)
    for i in range(min(n_rows, n_cols)):
        if d[i][i] < 0:
            d[i] = [-x for x in d[i]]
            u[i] = [-x for x in u[i]]
    return u, d, v


def invariant_factors(matrix: Sequence[Sequence[int]], n_rows: int, n_cols: int) -> Vector:
    """Smith diagonal without the transforms, nonzero entries first."""
    if n_rows == 0 or n_cols == 0:
        return ()
    factors = _invariant_factors(to_int_matrix(matrix, n_rows, n_cols), domain=ZZ)
    return tuple(abs(int(d)) for d in factors)


def smith_normal_form(matrix) -> SmithDecomposition:
    rows = as_rows(matrix)
    n_rows = len(rows)
    if isinstance(matrix, sympy.MatrixBase):
        n_cols = matrix.cols
    else:
        n_cols = len(rows[0]) if rows else 0
    u, d, v = smith_rows(rows, n_rows, n_cols)
    return SmithDecomposition(
        U=to_int_matrix(u, n_rows, n_rows),
        D=to_int_matrix(d, n_rows, n_cols),
        V=to_int_matrix(v, n_cols, n_cols),
    )


def hermite_rows(vectors: Sequence[Sequence[int]], n: int) -> List[Vector]:
    """Canonical row Hermite normal form of the rows spanned by ``vectors``.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)`` and zero
    rows are dropped, so two generating sets of one lattice give the same
    output.
    """
    rows = [tuple(int(x) for x in vec) for vec in vectors if any(vec)]
    for row in rows:
        if len(row) != n:
            raise ValueError(f"expected vectors of length {n}, got {len(row)}")
    if not rows:
        return []
    # sympy puts the column form's pivots bottom right; reversing the
    # coordinates turns its columns into our rows, last column first
    reversed_columns = to_int_matrix([[row[n - 1 - i] for row in rows] for i in range(n)], n, len(rows))
    form = hermite_normal_form(reversed_columns)
    return [
        tuple(int(form[n - 1 - i, j]) for i in range(n))
        for j in reversed(range(form.cols))
    ]
