"""Lattice ideals J_L = <1 - a^l : l in L> of the Laurent ring.

Membership is decided on the lattice: J_L is the kernel of the map to the
group ring of Z^n / L, so a polynomial lies in J_L exactly when its
coefficients sum to zero over every coset of L.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from fank.errors import DimensionMismatch, InputError, InvariantViolation, NotAMember
from fank.laurent import Exponent, LaurentPoly, euler_class
from fank.linalg.lattice import Lattice, hermite_basis, lattice_leq, perp_lattice
from fank.linalg.normal_forms import smith_rows

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class LatticeIdeal:
    """Ideal generated by the Euler classes ``1 - a^nu`` for ``nu`` in ``generators``.

    The ideal depends only on ``lattice``; two generator lists spanning the
    same lattice give the same ideal.
    """

    n: int
    generators: Tuple[Exponent, ...] = ()

    @cached_property
    def lattice(self) -> Lattice:
        return hermite_basis(self.generators, self.n)

    @cached_property
    def _generator_solver(self):
        # U G V = D for the n x r matrix with the generators as columns
        rows = [[g[i] for g in self.generators] for i in range(self.n)]
        u, d, v = smith_rows(rows, self.n, len(self.generators))
        diag = [d[i][i] for i in range(min(self.n, len(self.generators)))]
        return u, diag, v

    def generator_coordinates(self, v: Sequence[int]) -> Tuple[int, ...]:
        """Integers a with sum a_j * generators[j] = v (v must lie in the lattice)."""
        if not self.generators:
            if any(v):
                raise NotAMember(f"{tuple(v)} is not in the zero lattice")
            return ()
        u, diag, basis_v = self._generator_solver
        w = [sum(c * t for c, t in zip(row, v)) for row in u]
        y = []
        for i, wi in enumerate(w):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                if wi:
                    raise NotAMember(f"{tuple(v)} is not in the lattice of the ideal")
                y.append(0)
            else:
                if wi % d:
                    raise NotAMember(f"{tuple(v)} is not in the lattice of the ideal")
                y.append(wi // d)
        y = y[:len(basis_v)] + [0] * (len(basis_v) - len(y))
        return tuple(sum(c * t for c, t in zip(row, y)) for row in basis_v)

    def euler_classes(self) -> List[LaurentPoly]:
        return [euler_class(g) for g in self.generators]

    def __str__(self) -> str:
        return "<" + ", ".join(str(e) for e in self.euler_classes()) + ">"


def ideal_from_lattice(lattice: Lattice) -> LatticeIdeal:
    return LatticeIdeal(lattice.ambient_rank, lattice.generators)


def cone_ideal(cone) -> LatticeIdeal:
    """J_sigma, generated by a basis of the lattice orthogonal to the cone."""
    return ideal_from_lattice(perp_lattice(cone.rays, cone.n))


def _check(f: LaurentPoly, ideal: LatticeIdeal) -> None:
    if f.n != ideal.n:
        raise DimensionMismatch(f"polynomial in {f.n} variables, ideal in {ideal.n}")


def reduce(f: LaurentPoly, ideal: LatticeIdeal) -> LaurentPoly:
    """Normal form of f modulo the ideal; zero iff f is a member."""
    _check(f, ideal)
    lattice = ideal.lattice
    return LaurentPoly.from_terms(
        f.n, [(lattice.coset_representative(e), c) for e, c in f.items]
    )


def contains(f: LaurentPoly, ideal: LatticeIdeal) -> bool:
    return reduce(f, ideal).is_zero()


def cofactors(f: LaurentPoly, ideal: LatticeIdeal) -> Tuple[LaurentPoly, ...]:
    """Polynomials a_j with f = sum_j a_j * (1 - a^(generators[j])).

    Every term c*a^u is walked from u to its coset representative one
    generator step at a time, generators taken in stored order; each step
    contributes a^w (1 - a^nu) or -a^(w-nu) (1 - a^nu).

    Raises:
        NotAMember: f does not lie in the ideal.
    """
    _check(f, ideal)
    normal_form = reduce(f, ideal)
    if normal_form:
        raise NotAMember("polynomial is not in the ideal", normal_form)
    lattice = ideal.lattice
    collected: List[Dict[Exponent, int]] = [{} for _ in ideal.generators]
    for u, c in f.items:
        rep = lattice.coset_representative(u)
        steps = ideal.generator_coordinates(tuple(x - y for x, y in zip(u, rep)))
        w = list(u)
        for j, (count, nu) in enumerate(zip(steps, ideal.generators)):
            bucket = collected[j]
            for _ in range(abs(count)):
                if count > 0:
                    # a^w - a^(w-nu) = -a^(w-nu) (1 - a^nu)
                    w = [x - y for x, y in zip(w, nu)]
                    key = tuple(w)
                    bucket[key] = bucket.get(key, 0) - c
                else:
                    # a^w - a^(w+nu) = a^w (1 - a^nu)
                    key = tuple(w)
                    bucket[key] = bucket.get(key, 0) + c
                    w = [x + y for x, y in zip(w, nu)]
        if tuple(w) != rep:
            raise InvariantViolation(f"walk from {u} ended at {tuple(w)}, expected {rep}")
    result = tuple(LaurentPoly.from_terms(f.n, bucket) for bucket in collected)
    expansion = LaurentPoly.zero(f.n)
    for a, e in zip(result, ideal.euler_classes()):
        expansion = expansion + a * e
    if expansion != f:
        raise InvariantViolation("cofactor expansion does not reproduce the polynomial")
    LOGGER.debug("cofactors of %d terms over %d generators", len(f), len(ideal.generators))
    return result


def ideal_sum(first: LatticeIdeal, second: LatticeIdeal) -> LatticeIdeal:
    if first.n != second.n:
        raise DimensionMismatch(f"ideals in {first.n} and {second.n} variables")
    return LatticeIdeal(first.n, first.generators + second.generators)


def sum_of_ideals(ideals: Sequence[LatticeIdeal], n: int) -> LatticeIdeal:
    generators: Tuple[Exponent, ...] = ()
    for ideal in ideals:
        if ideal.n != n:
            raise DimensionMismatch(f"ideal in {ideal.n} variables, expected {n}")
        generators += ideal.generators
    return LatticeIdeal(n, generators)


def ideal_leq(first: LatticeIdeal, second: LatticeIdeal) -> bool:
    return lattice_leq(first.lattice, second.lattice)


def binomial_in_poly_lattice_ideal(u: Sequence[int], v: Sequence[int], lattice: Lattice) -> bool:
    """Whether x^u - x^v lies in the polynomial lattice ideal of ``lattice``."""
    if any(x < 0 for x in u) or any(x < 0 for x in v):
        raise InputError("binomial exponents must be nonnegative")
    if len(u) != len(v):
        raise DimensionMismatch(f"exponents {tuple(u)} and {tuple(v)} differ in length")
    return tuple(x - y for x, y in zip(u, v)) in lattice
