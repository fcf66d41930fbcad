"""Piecewise Laurent polynomials, the restriction map # and its preimages."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import sympy

from fank.errors import (
    DimensionMismatch,
    EmptySubfan,
    IncompatiblePair,
    InputError,
    InvariantViolation,
    NotASubfan,
    NotInImage,
    NotSmooth,
)
from fank.geometry.cone import Cone
from fank.geometry.fan import Fan, NameSet, cone_fan, is_smooth_fan
from fank.geometry.planar import Clump, Splitting, check_splitting
from fank.ideals import (
    LatticeIdeal,
    cofactors,
    cone_ideal,
    contains,
    reduce,
    sum_of_ideals,
)
from fank.laurent import LaurentPoly, euler_class
from fank.linalg.lattice import perp_lattice
from fank.linalg.normal_forms import Vector, smith_rows

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PiecewisePoly:
    """One Laurent polynomial per maximal cone of ``fan``.

    ``values`` is aligned with ``fan.cone_names``. Equality is taken modulo
    the cone ideals, so ``==`` compares classes, not representatives.
    """

    fan: Fan
    values: Tuple[LaurentPoly, ...]

    @property
    def n(self) -> int:
        return self.fan.n

    def __getitem__(self, cone_name: str) -> LaurentPoly:
        return self.values[self.fan.cone_names.index(cone_name)]

    def items(self) -> List[Tuple[str, LaurentPoly]]:
        return list(zip(self.fan.cone_names, self.values))

    def _same_fan(self, other: PiecewisePoly) -> None:
        if other.fan != self.fan:
            raise InputError("piecewise polynomials live on different fans")

    def __add__(self, other: PiecewisePoly) -> PiecewisePoly:
        self._same_fan(other)
        return PiecewisePoly(self.fan, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: PiecewisePoly) -> PiecewisePoly:
        self._same_fan(other)
        return PiecewisePoly(self.fan, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> PiecewisePoly:
        return PiecewisePoly(self.fan, tuple(-a for a in self.values))

    def __mul__(self, other: PiecewisePoly) -> PiecewisePoly:
        self._same_fan(other)
        return PiecewisePoly(self.fan, tuple(a * b for a, b in zip(self.values, other.values)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PiecewisePoly) or other.fan != self.fan:
            return NotImplemented
        return all(
            contains(a - b, cone_ideal(self.fan.cone(key)))
            for a, b, key in zip(self.values, other.values, self.fan.cone_rays)
        )

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def constant(cls, fan: Fan, value: int) -> PiecewisePoly:
        return cls(fan, tuple(LaurentPoly.constant(fan.n, value) for _ in fan.cone_names))


def plp_add(first: PiecewisePoly, second: PiecewisePoly) -> PiecewisePoly:
    return first + second


def plp_mul(first: PiecewisePoly, second: PiecewisePoly) -> PiecewisePoly:
    return first * second


def _incompatibility(fan: Fan, values: Sequence[LaurentPoly]) -> Optional[Tuple[str, str, LaurentPoly]]:
    for (i, a), (j, b) in combinations(enumerate(fan.cone_rays), 2):
        common = fan.cone(a & b)
        witness = reduce(values[i] - values[j], cone_ideal(common))
        if witness:
            return fan.cone_names[i], fan.cone_names[j], witness
    return None


def plp_validate(values: Union[Mapping[str, LaurentPoly], Sequence[LaurentPoly]],
                 fan: Fan) -> PiecewisePoly:
    """Check pairwise compatibility and wrap the values.

    Raises:
        IncompatiblePair: The first pair of maximal cones whose values differ
            modulo the ideal of their common face, with the reduced difference.
    """
    if isinstance(values, Mapping):
        missing = [c for c in fan.cone_names if c not in values]
        extra = [c for c in values if c not in fan.cone_names]
        if missing or extra:
            raise InputError(f"values missing for {missing}, unknown cones {extra}")
        values = [values[c] for c in fan.cone_names]
    values = tuple(values)
    if len(values) != len(fan.cone_names):
        raise InputError(f"{len(values)} values for {len(fan.cone_names)} maximal cones")
    for v in values:
        if v.n != fan.n:
            raise DimensionMismatch(f"value in {v.n} variables on a fan in R^{fan.n}")
    failure = _incompatibility(fan, values)
    if failure is not None:
        raise IncompatiblePair(*failure)
    return PiecewisePoly(fan, values)


def _value_on(F: PiecewisePoly, key: NameSet) -> LaurentPoly:
    for value, cone_rays in zip(F.values, F.fan.cone_rays):
        if key <= cone_rays:
            return value
    raise NotASubfan(f"{F.fan.label(key)} lies in no maximal cone")


def sharp_restrict(F: PiecewisePoly, gamma: Fan) -> PiecewisePoly:
    """Restriction of F to a subfan: each maximal cone of gamma takes the value of a cone containing it."""
    if not gamma.is_subfan_of(F.fan):
        raise NotASubfan(f"{gamma} is not a subfan of {F.fan}")
    return PiecewisePoly(gamma, tuple(_value_on(F, key) for key in gamma.cone_rays))


def _ray_ideal(fan: Fan, ray: str) -> LatticeIdeal:
    return cone_ideal(fan.cone([ray]))


def clump_ideal(clump: Clump) -> LatticeIdeal:
    fan = clump.fan
    return sum_of_ideals([_ray_ideal(fan, r) for r in clump.rays], fan.n)


def _check_origin(f: LaurentPoly, g: LaurentPoly, n: int) -> None:
    if f.n != n or g.n != n:
        raise DimensionMismatch(f"values must be Laurent polynomials in {n} variables")
    if f.coefficient_sum() != g.coefficient_sum():
        raise IncompatiblePair("first ray", "last ray", f - g)


def clump_boundary_image_test(f: LaurentPoly, g: LaurentPoly, clump: Clump) -> bool:
    """Whether (f, g) on the end rays of a clump lies in the image of #."""
    _check_origin(f, g, clump.fan.n)
    return contains(f - g, clump_ideal(clump))


def clump_boundary_preimage(f: LaurentPoly, g: LaurentPoly, clump: Clump) -> PiecewisePoly:
    """F on the clump with F = f on its first ray and F = g on its last ray.

    With f - g = sum_i a_i e(rho_i) the values are F_1 = f - a_1 e(rho_1) and
    F_i = F_(i-1) - a_i e(rho_i).

    Raises:
        NotInImage: f - g is not in the sum of the ray ideals.
    """
    fan = clump.fan
    _check_origin(f, g, fan.n)
    if not clump.cones:
        if not contains(f - g, _ray_ideal(fan, clump.rays[0])):
            raise NotInImage("values on a lone ray disagree", reduce(f - g, _ray_ideal(fan, clump.rays[0])))
        return PiecewisePoly(fan, (f,))
    ray_ideals = [_ray_ideal(fan, r) for r in clump.rays]
    total = sum_of_ideals(ray_ideals, fan.n)
    difference = f - g
    normal_form = reduce(difference, total)
    if normal_form:
        raise NotInImage("f - g is not in the ideal of the clump", normal_form)
    coefficients = cofactors(difference, total)
    parts: List[LaurentPoly] = []
    offset = 0
    for ideal in ray_ideals:
        part = LaurentPoly.zero(fan.n)
        for a, nu in zip(coefficients[offset:offset + len(ideal.generators)], ideal.generators):
            part = part + a * euler_class(nu)
        parts.append(part)
        offset += len(ideal.generators)
    values = []
    current = f
    for part in parts[:-1]:
        current = current - part
        values.append(current)
    by_name = dict(zip(clump.cones, values))
    result = PiecewisePoly(fan, tuple(by_name[c] for c in fan.cone_names))
    _verify_clump(result, clump, f, g)
    LOGGER.debug("clump preimage over %d cones", len(values))
    return result


def _verify_clump(F: PiecewisePoly, clump: Clump, f: LaurentPoly, g: LaurentPoly) -> None:
    fan = clump.fan
    checks = [(F[clump.cones[0]] - f, clump.rays[0]), (g - F[clump.cones[-1]], clump.rays[-1])]
    for i in range(1, len(clump.cones)):
        checks.append((F[clump.cones[i]] - F[clump.cones[i - 1]], clump.rays[i]))
    for difference, ray in checks:
        if not contains(difference, _ray_ideal(fan, ray)):
            raise InvariantViolation(f"clump preimage fails at ray {ray}")


def complete_2d_preimage(f: LaurentPoly, g: LaurentPoly, fan: Fan,
                         splitting: Splitting) -> Tuple[PiecewisePoly, PiecewisePoly]:
    """(F, G) on the two clumps with F - G restricting to (f, g) on the shared rays.

    Values f and g sit on the first and last ray of ``splitting.first``.
    f - g = A - B with A in the ideal of the first clump and B in that of
    the second, then each clump gets a preimage of its own pair.

    Raises:
        NotInImage: f - g is not in the sum of the two clump ideals.
    """
    check_splitting(fan, splitting)
    _check_origin(f, g, fan.n)
    first_ideal = clump_ideal(splitting.first)
    second_ideal = clump_ideal(splitting.second)
    total = LatticeIdeal(fan.n, first_ideal.generators + second_ideal.generators)
    difference = f - g
    normal_form = reduce(difference, total)
    if normal_form:
        raise NotInImage("f - g is not in the sum of the clump ideals", normal_form)
    coefficients = cofactors(difference, total)
    split = len(first_ideal.generators)
    A = LaurentPoly.zero(fan.n)
    B = LaurentPoly.zero(fan.n)
    for k, (a, nu) in enumerate(zip(coefficients, total.generators)):
        if k < split:
            A = A + a * euler_class(nu)
        else:
            B = B - a * euler_class(nu)
    f1, g1 = A - B, -B
    f2, g2 = g, g + B
    F = clump_boundary_preimage(f1, g1, splitting.first)
    # the second clump runs from the last ray of the first back to its first ray
    H = clump_boundary_preimage(g2, f2, splitting.second)
    G = -H
    start, end = splitting.shared_rays
    for ray, target in ((start, f), (end, g)):
        key = frozenset([ray])
        if not contains(_value_on(F, key) - _value_on(G, key) - target, _ray_ideal(fan, ray)):
            raise InvariantViolation(f"splitting preimage fails at ray {ray}")
    return F, G


def facet_normal(cone: Cone, facet: Sequence[Vector]) -> Vector:
    """nu with perp(facet) = perp(cone) + Z nu and <nu, cone> >= 0."""
    n = cone.n
    outer = perp_lattice(facet, n)
    inner = perp_lattice(cone.rays, n)
    coords = [outer.coordinates(v) for v in inner.generators]
    r = outer.rank
    if coords:
        u, _, _ = smith_rows([[c[i] for c in coords] for i in range(r)], r, len(coords))
        # last column of U^-1 completes the inner basis
        completion = sympy.Matrix(u).inv()[:, r - 1]
        local = [int(x) for x in completion]
    else:
        local = [1]
    nu = tuple(sum(local[k] * outer.generators[k][i] for k in range(r)) for i in range(n))
    if any(sum(a * b for a, b in zip(nu, ray)) < 0 for ray in cone.rays):
        nu = tuple(-x for x in nu)
    return nu


def cone_boundary_image_test(values: Sequence[LaurentPoly], cone: Cone) -> bool:
    """Whether a tuple on the facets of ``cone`` (in ``cone.facets()`` order) lies in the image of #."""
    facets = cone.facets()
    if len(values) != len(facets):
        raise InputError(f"{len(values)} values for {len(facets)} facets")
    ideals = [cone_ideal(facet) for facet in facets]
    for i, j in combinations(range(len(facets)), 2):
        if not contains(values[i] - values[j], sum_of_ideals([ideals[i], ideals[j]], cone.n)):
            return False
    return True


def cone_boundary_preimage(values: Sequence[LaurentPoly], cone: Cone) -> LaurentPoly:
    """F on ``cone`` with F = F_i modulo the ideal of the i-th facet.

    F = F_1 + e(nu_1) F_2^(1) + e(nu_1) e(nu_2) F_3^(2) + ..., where
    F_i^(j) is the cofactor of e(nu_j) in F_i^(j-1) - F_j^(j-1) modulo the
    ideal of the i-th facet.

    Raises:
        NotInImage: The tuple fails the image test at some stage.
    """
    facets = cone.facets()
    k = len(facets)
    if cone.dim == 0:
        raise InputError("the zero cone has an empty boundary")
    if len(values) != k:
        raise InputError(f"{len(values)} values for {k} facets")
    if not cone_boundary_image_test(values, cone):
        raise NotInImage("boundary tuple fails F_i - F_j in J_i + J_j")
    normals = [facet_normal(cone, facet.rays) for facet in facets]
    inner = perp_lattice(cone.rays, cone.n).generators
    stage = list(values)
    result = stage[0]
    factor = LaurentPoly.constant(cone.n, 1)
    for j in range(k - 1):
        nu = normals[j]
        factor = factor * euler_class(nu)
        nxt = [LaurentPoly.zero(cone.n)] * k
        for i in range(j + 1, k):
            ideal = LatticeIdeal(cone.n, (nu, normals[i]) + inner)
            difference = stage[i] - stage[j]
            normal_form = reduce(difference, ideal)
            if normal_form:
                raise NotInImage(f"stage {j + 1} fails for facet {i + 1}", normal_form)
            nxt[i] = cofactors(difference, ideal)[0]
        stage = nxt
        result = result + factor * stage[j + 1]
        LOGGER.debug("boundary preimage stage %d of %d", j + 1, k - 1)
    for value, facet in zip(values, facets):
        if not contains(result - value, cone_ideal(facet)):
            raise InvariantViolation("boundary preimage does not restrict to its input")
    return result


def _extend_to_cone(known: Dict[frozenset, LaurentPoly], cone: Cone) -> LaurentPoly:
    # known: faces of the cone (as ray-vector sets) with a value; fills the rest
    # dimension by dimension
    whole = frozenset(cone.rays)
    if whole in known:
        return known[whole]
    values = dict(known)
    faces = sorted(cone.face_sets, key=lambda s: (len(s), sorted(s)))
    for face_set in faces:
        if face_set in values:
            continue
        face = cone.face(face_set)
        if face.dim == 0:
            raise EmptySubfan("the subfan must contain the zero cone")
        facet_values = [values[frozenset(f.rays)] for f in face.facets()]
        values[face_set] = cone_boundary_preimage(facet_values, face)
    return values[whole]


def _known_faces(F: PiecewisePoly, cone: Cone) -> Dict[frozenset, LaurentPoly]:
    fan = F.fan
    known = {}
    for face_set in cone.face_sets:
        for value, key in zip(F.values, fan.cone_rays):
            vectors = frozenset(fan.rays[r] for r in key)
            if face_set <= vectors:
                known[face_set] = value
                break
    return known


def extend_over_smooth_cone(F: PiecewisePoly, cone: Cone, cone_name: str = "sigma") -> PiecewisePoly:
    """Extend F from a subfan of the faces of a smooth cone to the whole cone.

    Raises:
        NotSmooth: ``cone`` is singular.
        EmptySubfan: F has no values.
    """
    if not cone.is_smooth:
        raise NotSmooth(f"{cone} is not smooth")
    if not F.values:
        raise EmptySubfan("nothing to extend")
    names = [F.fan.names_of([v]) if v in F.fan.ray_vectors else None for v in cone.rays]
    used = set(F.fan.ray_names)
    resolved = []
    for i, found in enumerate(names):
        if found:
            (name,) = found
        else:
            name = f"r{i + 1}"
            while name in used:
                name += "'"
        used.add(name)
        resolved.append(name)
    target = cone_fan(cone, resolved, cone_name)
    if not F.fan.is_subfan_of(target):
        raise NotASubfan("the subfan is not made of faces of the cone")
    value = _extend_to_cone(_known_faces(F, cone), cone)
    result = PiecewisePoly(target, (value,))
    if sharp_restrict(result, F.fan) != F:
        raise InvariantViolation("cone extension does not restrict to its input")
    return result


def extend_over_smooth_fan(F: PiecewisePoly, fan: Fan) -> PiecewisePoly:
    """Extend F from a nonempty subfan to the whole smooth fan.

    Maximal cones already in the subfan come first; the others, in fan
    order, are each extended from what is covered so far.

    Raises:
        NotSmooth: The fan is singular.
        EmptySubfan: F has no values.
    """
    if not is_smooth_fan(fan):
        raise NotSmooth("extension is only guaranteed over smooth fans")
    if not F.values:
        raise EmptySubfan("nothing to extend")
    gamma = F.fan
    if not gamma.is_subfan_of(fan):
        raise NotASubfan(f"{gamma} is not a subfan of {fan}")
    covered: List[Tuple[frozenset, LaurentPoly]] = [
        (frozenset(fan.rays[r] for r in key), value) for key, value in zip(gamma.cone_rays, F.values)
    ]
    result: Dict[str, LaurentPoly] = {}
    for name, key in zip(fan.cone_names, fan.cone_rays):
        if key in gamma.cone_rays:
            result[name] = F.values[gamma.cone_rays.index(key)]
    for name, key in zip(fan.cone_names, fan.cone_rays):
        if name in result:
            continue
        cone = fan.cone(key)
        known = {}
        for face_set in cone.face_sets:
            for vectors, value in covered:
                if face_set <= vectors:
                    known[face_set] = value
                    break
        value = _extend_to_cone(known, cone)
        covered.append((frozenset(cone.rays), value))
        result[name] = value
        LOGGER.debug("extended over %s", name)
    extended = PiecewisePoly(fan, tuple(result[c] for c in fan.cone_names))
    if _incompatibility(fan, extended.values) is not None:
        raise InvariantViolation("fan extension is not piecewise")
    if sharp_restrict(extended, gamma) != F:
        raise InvariantViolation("fan extension does not restrict to its input")
    return extended
