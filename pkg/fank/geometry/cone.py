"""Strongly convex rational polyhedral cones and their face lattices."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import lcm
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import sympy

from fank.errors import DimensionMismatch, NotAFace, NotStronglyConvex
from fank.linalg.lattice import perp_lattice, primitive
from fank.linalg.normal_forms import Vector, hermite_rows, smith_rows
from fank.linalg.rational_lp import FeasibilityProblem

LOGGER = logging.getLogger(__name__)

RaySet = FrozenSet[Vector]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _integral_primitive(values: Sequence) -> Vector:
    rationals = [sympy.Rational(x) for x in values]
    fractions = [Fraction(int(r.p), int(r.q)) for r in rationals]
    scale = reduce(lcm, (f.denominator for f in fractions), 1)
    return primitive([int(f * scale) for f in fractions])


def span_coordinates(rays: Sequence[Vector], n: int) -> Tuple[Tuple[Vector, ...], List[Vector]]:
    """A Z-basis of the saturated lattice spanned by ``rays`` and the rays in it."""
    span = perp_lattice(perp_lattice(rays, n).generators, n)
    coords = []
    for ray in rays:
        c = span.coordinates(ray)
        if c is None:
            raise AssertionError(f"ray {ray} outside its own saturated span")
        coords.append(c)
    return span.generators, coords


def double_description(constraints: Sequence[Vector], d: int) -> List[Tuple[Vector, FrozenSet[int]]]:
    """Extreme rays of ``{y in R^d : <a_i, y> >= 0}``.

    The constraint vectors must span R^d. Each extreme ray is returned as a
    primitive integer vector together with the indices of the constraints
    it makes tight.
    """
    chosen: List[int] = []
    for i, a in enumerate(constraints):
        if len(hermite_rows([constraints[j] for j in chosen] + [a], d)) > len(chosen):
            chosen.append(i)
            if len(chosen) == d:
                break
    if len(chosen) != d:
        raise ValueError(f"constraints span only a {len(chosen)}-dimensional space")
    inverse = sympy.Matrix([list(constraints[i]) for i in chosen]).inv()
    rays = []
    for k in range(d):
        y = _integral_primitive([inverse[r, k] for r in range(d)])
        rays.append((y, frozenset(chosen[j] for j in range(d) if j != k)))
    done = set(chosen)
    for i, a in enumerate(constraints):
        if i in done:
            continue
        values = [_dot(a, y) for y, _ in rays]
        positive = [(r, v) for r, v in zip(rays, values) if v > 0]
        negative = [(r, v) for r, v in zip(rays, values) if v < 0]
        updated = [(y, tight | {i} if v == 0 else tight) for (y, tight), v in zip(rays, values) if v >= 0]
        for (p, zp), vp in positive:
            for (q, zq), vq in negative:
                common = zp & zq
                if len(common) < d - 2:
                    continue
                if any(common <= zo for yo, zo in rays if yo != p and yo != q):
                    continue
                combined = [vp * x - vq * y for x, y in zip(q, p)]
                updated.append((primitive(combined), common | {i}))
        rays = updated
        done.add(i)
        LOGGER.debug("double description: %d constraints processed, %d rays", len(done), len(rays))
    return rays


def _facet_ray_sets(rays: Sequence[Vector], n: int) -> List[FrozenSet[int]]:
    if not rays:
        return []
    _, coords = span_coordinates(rays, n)
    d = len(coords[0])
    found = {tight for _, tight in double_description(coords, d)}
    return sorted(found, key=lambda s: sorted(s))


def _extreme_indices(rays: Sequence[Vector], n: int) -> List[int]:
    facets = _facet_ray_sets(rays, n)
    if len(rays) <= 1:
        return list(range(len(rays)))
    incidence = [frozenset(k for k, f in enumerate(facets) if i in f) for i in range(len(rays))]
    return [
        i for i in range(len(rays))
        if not any(j != i and incidence[j] >= incidence[i] for j in range(len(rays)))
    ]


def strong_convexity_certificate(rays: Sequence[Vector], n: int) -> Optional[Tuple[Fraction, ...]]:
    """Rational y with <y, r> >= 1 on every ray, or None."""
    problem = FeasibilityProblem(n)
    for ray in rays:
        problem.add_lower_bound(ray, 1)
    return problem.solve()


def _convexity_witness(rays: Sequence[Vector]) -> Vector:
    # lambda >= 0, sum lambda = 1, sum lambda_i r_i = 0; -r_j is then in the cone
    # for any j with lambda_j > 0
    k = len(rays)
    problem = FeasibilityProblem(k)
    problem.add_equality([1] * k, 1)
    for coordinate in range(len(rays[0])):
        problem.add_equality([ray[coordinate] for ray in rays], 0)
    for i in range(k):
        problem.add_lower_bound({i: 1}, 0)
    weights = problem.solve()
    if weights is None:
        raise AssertionError("no positive relation among the rays of a non-pointed cone")
    j = max(range(k), key=lambda i: weights[i])
    return rays[j]


def separating_functional(first: Iterable[Vector], second: Iterable[Vector],
                          common: Iterable[Vector], n: int) -> Optional[Tuple[Fraction, ...]]:
    """y vanishing on ``common``, >= 1 on the rest of ``first``, <= -1 on the rest of ``second``."""
    common = set(common)
    problem = FeasibilityProblem(n)
    for ray in common:
        problem.add_equality(ray, 0)
    for ray in set(first) - common:
        problem.add_lower_bound(ray, 1)
    for ray in set(second) - common:
        problem.add_upper_bound(ray, -1)
    return problem.solve()


@dataclass(frozen=True)
class Cone:
    """Cone over primitive, irredundant rays, stored in sorted order.

    Use :func:`cone_from_rays` to build one from arbitrary generators; the
    constructor trusts its input.
    """

    n: int
    rays: Tuple[Vector, ...] = ()

    @cached_property
    def dim(self) -> int:
        return len(hermite_rows(self.rays, self.n))

    @cached_property
    def certificate(self) -> Tuple[Fraction, ...]:
        y = strong_convexity_certificate(self.rays, self.n)
        if y is None:
            raise NotStronglyConvex(_convexity_witness(self.rays))
        return y

    @cached_property
    def facet_sets(self) -> Tuple[RaySet, ...]:
        return tuple(frozenset(self.rays[i] for i in s) for s in _facet_ray_sets(self.rays, self.n))

    @cached_property
    def face_sets(self) -> FrozenSet[RaySet]:
        faces = {frozenset(self.rays)}
        frontier = [frozenset(self.rays)]
        while frontier:
            face = frontier.pop()
            for facet in self.facet_sets:
                smaller = face & facet
                if smaller not in faces:
                    faces.add(smaller)
                    frontier.append(smaller)
        return frozenset(faces)

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    @cached_property
    def is_smooth(self) -> bool:
        if not self.is_simplicial:
            return False
        if not self.rays:
            return True
        _, d, _ = smith_rows(self.rays, len(self.rays), self.n)
        return all(d[i][i] == 1 for i in range(len(self.rays)))

    def face(self, rays: Iterable[Vector]) -> Cone:
        ray_set = frozenset(rays)
        if ray_set not in self.face_sets:
            raise NotAFace(f"rays {sorted(ray_set)} do not span a face of {self}")
        return Cone(self.n, tuple(sorted(ray_set)))

    def facets(self) -> List[Cone]:
        return [Cone(self.n, tuple(sorted(s))) for s in self.facet_sets]

    def faces(self) -> List[Cone]:
        """All faces, the zero cone and the cone itself included, by dimension."""
        cones = [Cone(self.n, tuple(sorted(s))) for s in self.face_sets]
        return sorted(cones, key=lambda c: (c.dim, c.rays))

    def __str__(self) -> str:
        return "cone(" + ", ".join(str(r) for r in self.rays) + ")"


def cone_from_rays(rays: Sequence[Sequence[int]], n: Optional[int] = None) -> Cone:
    """Validated cone generated by ``rays``.

    Rays are made primitive, duplicates and non-extreme generators are
    dropped (each logged as a warning).

    Raises:
        NotStronglyConvex: The cone contains a line; the error carries a ray
            whose negative is also in the cone.
    """
    if n is None:
        if not rays:
            raise DimensionMismatch("ambient dimension needed for the zero cone")
        n = len(rays[0])
    normalized: List[Vector] = []
    for ray in rays:
        if len(ray) != n:
            raise DimensionMismatch(f"ray {tuple(ray)} is not in Z^{n}")
        p = primitive(ray)
        if p != tuple(ray):
            LOGGER.warning("ray %s replaced by its primitive generator %s", tuple(ray), p)
        if p in normalized:
            LOGGER.warning("duplicate ray %s dropped", p)
            continue
        normalized.append(p)
    if normalized and strong_convexity_certificate(normalized, n) is None:
        raise NotStronglyConvex(_convexity_witness(normalized))
    extreme = _extreme_indices(normalized, n)
    if len(extreme) != len(normalized):
        dropped = [normalized[i] for i in range(len(normalized)) if i not in extreme]
        LOGGER.warning("non-extreme generators %s dropped", dropped)
    return Cone(n, tuple(sorted(normalized[i] for i in extreme)))


def intersect(first: Cone, second: Cone) -> Cone:
    """Common face of two cones of one fan.

    Raises:
        NotAFace: The intersection is not a face of both cones.
    """
    if first.n != second.n:
        raise DimensionMismatch(f"cones in R^{first.n} and R^{second.n}")
    common = frozenset(first.rays) & frozenset(second.rays)
    if common not in first.face_sets or common not in second.face_sets:
        raise NotAFace(f"shared rays {sorted(common)} do not form a common face")
    if first != second and separating_functional(first.rays, second.rays, common, first.n) is None:
        raise NotAFace(f"{first} and {second} overlap beyond their shared rays")
    return Cone(first.n, tuple(sorted(common)))
