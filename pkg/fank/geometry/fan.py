"""Fans: named rays, maximal cones and the predicates the classification uses."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from fank.errors import (
    DimensionMismatch,
    InputError,
    InvalidFan,
    NotAFace,
    NotASubfan,
    NotSmooth,
    Unsupported,
)
from fank.geometry.cone import Cone, _extreme_indices, intersect
from fank.linalg.lattice import primitive
from fank.linalg.normal_forms import Vector
from fank.linalg.rational_lp import FeasibilityProblem
from fank.records import ConeSingularity, SingularityReport

LOGGER = logging.getLogger(__name__)

NameSet = FrozenSet[str]


@dataclass(frozen=True)
class Fan:
    """A fan in R^n given by named rays and named maximal cones.

    Cones are identified by the set of names of their rays. The constructor
    trusts its input; :func:`fan_from_description` validates.

    Attributes:
        n: Ambient dimension.
        ray_names: Ray names in fan order.
        ray_vectors: Primitive generators, aligned with ``ray_names``.
        cone_names: Names of the maximal cones.
        cone_rays: Ray-name set of each maximal cone, aligned with ``cone_names``.
    """

    n: int
    ray_names: Tuple[str, ...]
    ray_vectors: Tuple[Vector, ...]
    cone_names: Tuple[str, ...]
    cone_rays: Tuple[NameSet, ...]

    @cached_property
    def rays(self) -> Dict[str, Vector]:
        return dict(zip(self.ray_names, self.ray_vectors))

    @cached_property
    def _ray_order(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.ray_names)}

    @cached_property
    def _name_of_vector(self) -> Dict[Vector, str]:
        return {v: name for name, v in zip(self.ray_names, self.ray_vectors)}

    @cached_property
    def maximal(self) -> Dict[str, NameSet]:
        return dict(zip(self.cone_names, self.cone_rays))

    def sorted_names(self, names: Iterable[str]) -> Tuple[str, ...]:
        return tuple(sorted(names, key=self._ray_order.__getitem__))

    def cone(self, names: Union[str, Iterable[str]]) -> Cone:
        """The cone spanned by the named rays, or the maximal cone with that name."""
        key = self.maximal[names] if isinstance(names, str) else frozenset(names)
        return self._cone(key)

    def _cone(self, key: NameSet) -> Cone:
        cache = self.__dict__.setdefault("_cone_cache", {})
        if key not in cache:
            cache[key] = Cone(self.n, tuple(sorted(self.rays[r] for r in key)))
        return cache[key]

    def names_of(self, rays: Iterable[Vector]) -> NameSet:
        return frozenset(self._name_of_vector[v] for v in rays)

    def label(self, names: Iterable[str]) -> str:
        key = frozenset(names)
        for cone_name, cone_rays in zip(self.cone_names, self.cone_rays):
            if cone_rays == key:
                return cone_name
        return "<" + ",".join(self.sorted_names(key)) + ">"

    def resolve(self, label: str) -> NameSet:
        """Inverse of :meth:`label` for maximal cone names and ``<r1,r2>`` labels."""
        label = label.strip()
        if label in self.maximal:
            return self.maximal[label]
        if label.startswith("<") and label.endswith(">"):
            inner = [part.strip() for part in label[1:-1].split(",") if part.strip()]
            unknown = [r for r in inner if r not in self.rays]
            if unknown:
                raise InputError(f"unknown rays {unknown} in {label}")
            key = frozenset(inner)
            if key not in self.all_cones:
                raise NotAFace(f"{label} is not a cone of the fan")
            return key
        raise InputError(f"unknown cone {label!r}")

    @cached_property
    def all_cones(self) -> FrozenSet[NameSet]:
        cones = set()
        for key in self.cone_rays:
            cone = self._cone(key)
            cones.update(self.names_of(face) for face in cone.face_sets)
        return frozenset(cones)

    def cones(self, dim: Optional[int] = None) -> List[NameSet]:
        """Every cone of the fan (the zero cone included), by dimension then ray order."""
        found = [c for c in self.all_cones if dim is None or self._cone(c).dim == dim]
        return sorted(found, key=lambda c: (self._cone(c).dim, [self._ray_order[r] for r in
                                                                self.sorted_names(c)]))

    @cached_property
    def facet_owners(self) -> Dict[NameSet, Tuple[str, ...]]:
        """Facet of a maximal cone -> maximal cones having it as a facet."""
        owners: Dict[NameSet, List[str]] = {}
        for name, key in zip(self.cone_names, self.cone_rays):
            for facet in self._cone(key).facet_sets:
                owners.setdefault(self.names_of(facet), []).append(name)
        return {facet: tuple(names) for facet, names in owners.items()}

    @cached_property
    def walls(self) -> Tuple[Tuple[str, str, NameSet], ...]:
        return tuple(
            (names[0], names[1], facet)
            for facet, names in self.facet_owners.items() if len(names) == 2
        )

    def subfan(self, generators: Iterable[Union[str, Iterable[str]]]) -> Fan:
        """Subfan generated by the given cones (maximal cone names or ray-name sets)."""
        keys = []
        for item in generators:
            key = self.maximal[item] if isinstance(item, str) else frozenset(item)
            if key not in self.all_cones:
                raise NotASubfan(f"{self.label(key)} is not a cone of the fan")
            if key not in keys:
                keys.append(key)
        tops = [k for k in keys if not any(k < other for other in keys)]
        ray_names = tuple(r for r in self.ray_names if any(r in k for k in tops))
        return Fan(
            n=self.n,
            ray_names=ray_names,
            ray_vectors=tuple(self.rays[r] for r in ray_names),
            cone_names=tuple(self.label(k) for k in tops),
            cone_rays=tuple(tops),
        )

    def is_subfan_of(self, other: Fan) -> bool:
        if self.n != other.n:
            return False
        if any(other.rays.get(name) != vector for name, vector in self.rays.items()):
            return False
        return all(key in other.all_cones for key in self.cone_rays)

    def __str__(self) -> str:
        return f"fan in R^{self.n} with {len(self.ray_names)} rays, {len(self.cone_names)} maximal cones"


def _default_names(prefix: str, count: int) -> Tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, count + 1))


def fan_from_description(rays: Sequence[Sequence[int]],
                         cones: Sequence[Sequence[Union[int, str]]],
                         ray_names: Optional[Sequence[str]] = None,
                         cone_names: Optional[Sequence[str]] = None,
                         n: Optional[int] = None) -> Fan:
    """Validate rays and maximal cones and build the fan.

    Args:
        rays: Ray generators; non-primitive ones are normalized with a warning.
        cones: For each maximal cone the indices (0-based) or names of its rays.
        ray_names: Defaults to r1, r2, ...
        cone_names: Defaults to c1, c2, ...
        n: Ambient dimension, needed only when ``rays`` is empty.

    Returns:
        The validated fan. Duplicate cones and listed cones that are faces of
        other listed cones are dropped with a warning, as are unused rays.

    Raises:
        InvalidFan: Two cones do not meet in a common face, or a listed ray is
            not extreme in its cone.
        NotStronglyConvex: A cone contains a line.
    """
    if n is None:
        if not rays:
            raise DimensionMismatch("ambient dimension needed for a fan without rays")
        n = len(rays[0])
    ray_names = tuple(ray_names) if ray_names is not None else _default_names("r", len(rays))
    cone_names = tuple(cone_names) if cone_names is not None else _default_names("c", len(cones))
    if len(ray_names) != len(rays) or len(cone_names) != len(cones):
        raise InputError("name lists do not match the ray and cone lists")
    for kind, names in (("ray", ray_names), ("cone", cone_names)):
        if len(set(names)) != len(names):
            raise InvalidFan(f"duplicate {kind} names")

    vectors: List[Vector] = []
    for name, ray in zip(ray_names, rays):
        if len(ray) != n:
            raise DimensionMismatch(f"ray {name} = {tuple(ray)} is not in Z^{n}")
        p = primitive(ray)
        if p != tuple(ray):
            LOGGER.warning("ray %s = %s normalized to %s", name, tuple(ray), p)
        if p in vectors:
            raise InvalidFan(f"rays {ray_names[vectors.index(p)]} and {name} coincide")
        vectors.append(p)
    index = {name: i for i, name in enumerate(ray_names)}

    keys: List[NameSet] = []
    for cone_name, members in zip(cone_names, cones):
        resolved = []
        for m in members:
            if isinstance(m, str):
                if m not in index:
                    raise InputError(f"cone {cone_name} uses unknown ray {m}")
                resolved.append(m)
            else:
                if not 0 <= m < len(ray_names):
                    raise InputError(f"cone {cone_name} uses ray index {m} out of range")
                resolved.append(ray_names[m])
        if len(set(resolved)) != len(resolved):
            raise InvalidFan(f"cone {cone_name} lists a ray twice")
        keys.append(frozenset(resolved))

    trusted = Fan(n, ray_names, tuple(vectors), cone_names, tuple(keys))
    for cone_name, key in zip(cone_names, keys):
        cone = trusted.cone(key)
        cone.certificate  # raises NotStronglyConvex
        if len(_extreme_indices(cone.rays, n)) != len(cone.rays):
            raise InvalidFan(f"cone {cone_name} lists a ray that is not extreme")

    kept: List[int] = []
    for i, key in enumerate(keys):
        duplicate = next((j for j in kept if keys[j] == key), None)
        if duplicate is not None:
            LOGGER.warning("cone %s duplicates %s and is dropped", cone_names[i], cone_names[duplicate])
            continue
        kept.append(i)
    maximal: List[int] = []
    for i in kept:
        container = next(
            (j for j in kept if j != i and keys[i] < keys[j]
             and frozenset(vectors[index[r]] for r in keys[i]) in trusted.cone(keys[j]).face_sets),
            None,
        )
        if container is not None:
            LOGGER.warning("cone %s is a face of %s and is dropped", cone_names[i], cone_names[container])
            continue
        maximal.append(i)

    for i, j in combinations(maximal, 2):
        try:
            intersect(trusted.cone(keys[i]), trusted.cone(keys[j]))
        except NotAFace as err:
            raise InvalidFan(f"cones do not meet in a common face: {err}",
                             (cone_names[i], cone_names[j])) from err

    used = set().union(*(keys[i] for i in maximal)) if maximal else set()
    unused = [r for r in ray_names if r not in used]
    if unused:
        LOGGER.warning("rays %s belong to no cone and are dropped", unused)
    kept_rays = tuple(r for r in ray_names if r in used)
    return Fan(
        n=n,
        ray_names=kept_rays,
        ray_vectors=tuple(vectors[index[r]] for r in kept_rays),
        cone_names=tuple(cone_names[i] for i in maximal),
        cone_rays=tuple(keys[i] for i in maximal),
    )


def cone_fan(cone: Cone, ray_names: Optional[Sequence[str]] = None, name: str = "sigma") -> Fan:
    """The fan of all faces of ``cone``."""
    ray_names = tuple(ray_names) if ray_names is not None else _default_names("r", len(cone.rays))
    return Fan(cone.n, ray_names, cone.rays, (name,), (frozenset(ray_names),))


def boundary(cone: Cone, ray_names: Optional[Sequence[str]] = None) -> Fan:
    """The fan of proper faces of ``cone``; its maximal cones are the facets."""
    whole = cone_fan(cone, ray_names)
    facets = [whole.names_of(f) for f in cone.facet_sets]
    return whole.subfan(facets) if facets else Fan(cone.n, (), (), (), ())


def is_smooth(cone: Cone) -> bool:
    return cone.is_smooth


def is_smooth_fan(fan: Fan) -> bool:
    return all(fan.cone(key).is_smooth for key in fan.cone_rays)


def is_simplicial(item: Union[Cone, Fan]) -> bool:
    if isinstance(item, Cone):
        return item.is_simplicial
    return all(item.cone(key).is_simplicial for key in item.cone_rays)


def is_complete(fan: Fan) -> bool:
    if not fan.cone_rays or fan.n == 0:
        return False
    if any(fan.cone(key).dim != fan.n for key in fan.cone_rays):
        return False
    return all(len(owners) == 2 for owners in fan.facet_owners.values())


def support_function(fan: Fan) -> Optional[Dict[str, Tuple[Fraction, ...]]]:
    """Linear functionals m_sigma of a strictly convex support function, or None.

    Across each wall the functionals agree on the wall's rays and the one of
    the cone on the far side is at least one smaller on every off-wall ray.

    Raises:
        Unsupported: The fan is not complete.
    """
    if not is_complete(fan):
        raise Unsupported("polytopality is only decided for complete fans")
    n = fan.n
    slot = {name: k * n for k, name in enumerate(fan.cone_names)}
    problem = FeasibilityProblem(n * len(fan.cone_names))
    for i in range(n):
        # the functionals are only defined up to a common linear function
        problem.add_equality({i: 1}, 0)
    for first, second, wall in fan.walls:
        for ray_name in wall:
            ray = fan.rays[ray_name]
            problem.add_equality(_difference(slot[first], slot[second], ray), 0)
        for near, far in ((first, second), (second, first)):
            for ray_name in fan.maximal[near] - wall:
                problem.add_lower_bound(_difference(slot[near], slot[far], fan.rays[ray_name]), 1)
    solution = problem.solve()
    if solution is None:
        return None
    return {name: tuple(solution[slot[name]:slot[name] + n]) for name in fan.cone_names}


def _difference(near: int, far: int, ray: Vector) -> Dict[int, int]:
    coefficients: Dict[int, int] = {}
    for k, x in enumerate(ray):
        if x:
            coefficients[near + k] = coefficients.get(near + k, 0) + x
            coefficients[far + k] = coefficients.get(far + k, 0) - x
    return coefficients


def is_polytopal(fan: Fan) -> bool:
    return support_function(fan) is not None


def singularity_report(fan: Fan) -> SingularityReport:
    """Flag every singular cone (maximal or not) as isolated and/or distant."""
    cones = fan.cones()
    singular = [c for c in cones if not fan.cone(c).is_smooth]
    entries = []
    for sigma in singular:
        isolated = all(fan.cone(sigma & tau).is_smooth for tau in cones if tau != sigma)
        distant = all(not (sigma & tau) for tau in singular if tau != sigma)
        entries.append(ConeSingularity(
            cone=fan.label(sigma), dim=fan.cone(sigma).dim, isolated=isolated, distant=distant,
        ))
    return SingularityReport(tuple(entries))


def pyramid_fan(base: Fan, apex_name: Optional[str] = None) -> Fan:
    """Lift a smooth complete fan to the pyramid fan one dimension up.

    Every ray v becomes (v, 1), the ray (0, ..., 0, -1) is added, and the
    maximal cones are the cone over all lifted rays together with, for each
    maximal cone of ``base``, its lifted rays plus the new ray.
    """
    if not is_smooth_fan(base):
        raise NotSmooth("pyramid base must be smooth")
    if not is_complete(base):
        raise Unsupported("pyramid base must be complete")
    n = base.n + 1
    apex_name = apex_name or f"r{len(base.ray_names) + 1}"
    rays = [tuple(v) + (1,) for v in base.ray_vectors] + [(0,) * base.n + (-1,)]
    ray_names = base.ray_names + (apex_name,)
    cones: List[List[str]] = [list(base.ray_names)]
    cones += [base.sorted_names(key) + (apex_name,) for key in base.cone_rays]
    return fan_from_description(rays, cones, ray_names=ray_names,
                                cone_names=_default_names("C", len(cones)), n=n)


def relabel(fan: Fan, ray_map: Mapping[str, str], cone_map: Optional[Mapping[str, str]] = None) -> Fan:
    cone_map = cone_map or {}
    return Fan(
        n=fan.n,
        ray_names=tuple(ray_map.get(r, r) for r in fan.ray_names),
        ray_vectors=fan.ray_vectors,
        cone_names=tuple(cone_map.get(c, c) for c in fan.cone_names),
        cone_rays=tuple(frozenset(ray_map.get(r, r) for r in key) for key in fan.cone_rays),
    )


def transform(fan: Fan, matrix: Sequence[Sequence[int]]) -> Fan:
    """Apply an integer matrix (unimodular for a lattice automorphism) to every ray."""
    vectors = tuple(
        tuple(sum(row[k] * v[k] for k in range(fan.n)) for row in matrix) for v in fan.ray_vectors
    )
    return Fan(fan.n, fan.ray_names, vectors, fan.cone_names, fan.cone_rays)
