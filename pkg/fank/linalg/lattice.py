"""Sublattices of Z^n in canonical Hermite form."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd, prod
from typing import List, NamedTuple, Optional, Sequence, Tuple

import sympy

from fank.errors import DimensionMismatch, ZeroVectorError
from fank.linalg.normal_forms import (
    IntMatrix,
    SmithDecomposition,
    Vector,
    hermite_rows,
    smith_normal_form,
    smith_rows,
    to_int_matrix,
)


class Membership(NamedTuple):
    contained: bool
    coefficients: Optional[Vector]


class SpanReport(NamedTuple):
    spans: bool
    rank: int
    # None unless the span has full rank
    index: Optional[int]


def primitive(v: Sequence[int]) -> Vector:
    g = reduce(gcd, (abs(int(x)) for x in v), 0)
    if g == 0:
        raise ZeroVectorError(f"zero vector {tuple(v)} has no primitive generator")
    return tuple(int(x) // g for x in v)


def _check_lengths(vectors: Sequence[Sequence[int]], n: int) -> None:
    for vec in vectors:
        if len(vec) != n:
            raise DimensionMismatch(f"vector {tuple(vec)} does not live in Z^{n}")


def _solve_rows(u: List[List[int]], diag: Sequence[int], v: List[List[int]],
                target: Sequence[int]) -> Optional[Vector]:
    # Integer solution x of A x = target given U A V = D, or None.
    w = [sum(c * t for c, t in zip(row, target)) for row in u]
    y = []
    for i, wi in enumerate(w):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if wi != 0:
                return None
            y.append(0)
        elif wi % d:
            return None
        else:
            y.append(wi // d)
    y = y[:len(v)] + [0] * (len(v) - len(y))
    return tuple(sum(c * t for c, t in zip(row, y)) for row in v)


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^n.

    Attributes:
        ambient_rank: n.
        generators: Hermite-normal-form basis, one tuple per basis vector.
            Equal lattices carry identical tuples.
    """

    ambient_rank: int
    generators: Tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def basis(self) -> IntMatrix:
        """Basis vectors as the columns of an n x rank matrix."""
        cols = self.generators
        return to_int_matrix(
            [[vec[i] for vec in cols] for i in range(self.ambient_rank)],
            self.ambient_rank, len(cols),
        )

    @cached_property
    def smith(self) -> SmithDecomposition:
        return smith_normal_form(self.basis)

    @cached_property
    def _frame(self):
        rows = [[vec[i] for vec in self.generators] for i in range(self.ambient_rank)]
        u, d, v = smith_rows(rows, self.ambient_rank, self.rank)
        diag = [d[i][i] for i in range(min(self.ambient_rank, self.rank))]
        u_inv = sympy.Matrix(u).inv() if u else sympy.Matrix()
        u_inv_rows = [[int(u_inv[i, j]) for j in range(u_inv.cols)] for i in range(u_inv.rows)]
        return u, diag, v, u_inv_rows

    @property
    def index(self) -> Optional[int]:
        if self.rank != self.ambient_rank:
            return None
        return prod(vec[i] for i, vec in enumerate(self.generators)) if self.generators else 1

    def coordinates(self, v: Sequence[int]) -> Optional[Vector]:
        """Coefficients of ``v`` on ``generators``, or None when v is outside."""
        if len(v) != self.ambient_rank:
            raise DimensionMismatch(f"{tuple(v)} is not in Z^{self.ambient_rank}")
        if self.rank == 0:
            return () if not any(v) else None
        u, diag, basis_v, _ = self._frame
        return _solve_rows(u, diag, basis_v, v)

    def coset_representative(self, v: Sequence[int]) -> Vector:
        """Canonical element of ``v + L``.

        In Smith coordinates ``w = U v`` the torsion coordinates are reduced to
        ``[0, d_i)`` and the free coordinates are left alone; the result is
        mapped back through ``U^-1``.
        """
        if len(v) != self.ambient_rank:
            raise DimensionMismatch(f"{tuple(v)} is not in Z^{self.ambient_rank}")
        if self.rank == 0:
            return tuple(int(x) for x in v)
        u, diag, _, u_inv = self._frame
        w = [sum(c * t for c, t in zip(row, v)) for row in u]
        for i, d in enumerate(diag):
            w[i] %= d
        return tuple(sum(c * t for c, t in zip(row, w)) for row in u_inv)

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None


def hermite_basis(vectors: Sequence[Sequence[int]], n: Optional[int] = None) -> Lattice:
    vectors = [tuple(int(x) for x in vec) for vec in vectors]
    if n is None:
        if not vectors:
            raise DimensionMismatch("ambient rank needed for an empty generator list")
        n = len(vectors[0])
    _check_lengths(vectors, n)
    return Lattice(ambient_rank=n, generators=tuple(hermite_rows(vectors, n)))


def lattice_contains(lattice: Lattice, v: Sequence[int]) -> Membership:
    coefficients = lattice.coordinates(v)
    return Membership(coefficients is not None, coefficients)


def lattice_leq(first: Lattice, second: Lattice) -> bool:
    if first.ambient_rank != second.ambient_rank:
        raise DimensionMismatch(
            f"lattices live in Z^{first.ambient_rank} and Z^{second.ambient_rank}"
        )
    return all(gen in second for gen in first.generators)


def spans_ambient(vectors: Sequence[Sequence[int]], n: Optional[int] = None) -> SpanReport:
    lattice = hermite_basis(vectors, n)
    index = lattice.index
    return SpanReport(spans=index == 1, rank=lattice.rank, index=index)


def perp_lattice(generators: Sequence[Sequence[int]], n: Optional[int] = None) -> Lattice:
    """Saturated lattice of integer vectors orthogonal to all ``generators``."""
    generators = [tuple(int(x) for x in vec) for vec in generators]
    if n is None:
        if not generators:
            raise DimensionMismatch("ambient rank needed for an empty generator list")
        n = len(generators[0])
    _check_lengths(generators, n)
    if not generators:
        return hermite_basis([tuple(int(i == j) for j in range(n)) for i in range(n)], n)
    _, d, v = smith_rows(generators, len(generators), n)
    rank = sum(1 for i in range(min(len(generators), n)) if d[i][i])
    kernel = [tuple(v[i][j] for i in range(n)) for j in range(rank, n)]
    return hermite_basis(kernel, n)
