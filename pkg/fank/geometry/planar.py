"""Two-dimensional fans: cyclic order, clumps and splittings into two clumps."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cmp_to_key
from math import ceil
from typing import Dict, List, Sequence, Tuple

from fank.errors import CompleteFanError, DimensionMismatch, ImproperSplitting
from fank.geometry.fan import Fan, NameSet, is_complete
from fank.linalg.normal_forms import Vector

LOGGER = logging.getLogger(__name__)


def _half(v: Vector) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def compare_angles(a: Vector, b: Vector) -> int:
    """Exact comparison of the counterclockwise angles of a and b in [0, 2 pi)."""
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def angular_sort(vectors: Sequence[Vector]) -> List[Vector]:
    return sorted(vectors, key=cmp_to_key(compare_angles))


def _cross(a: Vector, b: Vector) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _oriented(fan: Fan, key: NameSet) -> Tuple[str, str]:
    # (clockwise ray, counterclockwise ray) of a 2-cone
    first, second = fan.sorted_names(key)
    if _cross(fan.rays[first], fan.rays[second]) > 0:
        return first, second
    return second, first


@dataclass(frozen=True)
class Clump:
    """A subfan whose complement of the origin is connected.

    Attributes:
        fan: The clump as a subfan.
        cones: Two-dimensional cones sigma_1, ..., sigma_k in counterclockwise
            order, sigma_i and sigma_(i+1) sharing ray rho_(i+1).
        rays: rho_1, ..., rho_(k+1); a lone ray when k = 0.
    """

    fan: Fan
    cones: Tuple[str, ...]
    rays: Tuple[str, ...]

    @property
    def first_ray(self) -> str:
        return self.rays[0]

    @property
    def last_ray(self) -> str:
        return self.rays[-1]


@dataclass(frozen=True)
class Splitting:
    first: Clump
    second: Clump

    @property
    def shared_rays(self) -> Tuple[str, str]:
        return self.first.first_ray, self.first.last_ray


def _require_planar(fan: Fan) -> None:
    if fan.n != 2:
        raise DimensionMismatch(f"expected a fan in R^2, got R^{fan.n}")


def cyclic_order(fan: Fan) -> List[str]:
    """Maximal 2-cones of a complete 2D fan in counterclockwise order."""
    _require_planar(fan)
    start = {name: _oriented(fan, fan.maximal[name])[0] for name in fan.cone_names}
    key = cmp_to_key(lambda a, b: compare_angles(fan.rays[start[a]], fan.rays[start[b]]))
    return sorted(fan.cone_names, key=key)


def _chain(fan: Fan, names: Sequence[str]) -> Clump:
    two_cones = [c for c in names if len(fan.maximal[c]) == 2]
    if not two_cones:
        (lone,) = names
        return Clump(fan.subfan([lone]), (), tuple(fan.maximal[lone]))
    oriented = {c: _oriented(fan, fan.maximal[c]) for c in two_cones}
    by_start = {o[0]: c for c, o in oriented.items()}
    ends = {o[1] for o in oriented.values()}
    head = next(c for c, o in oriented.items() if o[0] not in ends)
    order = [head]
    rays = [oriented[head][0], oriented[head][1]]
    while rays[-1] in by_start and len(order) < len(two_cones):
        nxt = by_start[rays[-1]]
        order.append(nxt)
        rays.append(oriented[nxt][1])
    return Clump(fan.subfan(order), tuple(order), tuple(rays))


def clump_decomposition(fan: Fan) -> List[Clump]:
    """Split an incomplete 2D fan into its maximal clumps.

    Raises:
        CompleteFanError: The fan is complete.
    """
    _require_planar(fan)
    if is_complete(fan):
        raise CompleteFanError("a complete fan is not a union of clumps meeting at the origin")
    # connected components of the nonzero cones, grouped by shared rays
    parent: Dict[str, str] = {r: r for r in fan.ray_names}

    def find(r: str) -> str:
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for key in fan.cone_rays:
        members = fan.sorted_names(key)
        for other in members[1:]:
            parent[find(other)] = find(members[0])
    groups: Dict[str, List[str]] = {}
    for name, key in zip(fan.cone_names, fan.cone_rays):
        if key:
            groups.setdefault(find(next(iter(key))), []).append(name)
    clumps = [_chain(fan, names) for names in groups.values()]
    clumps.sort(key=cmp_to_key(lambda a, b: compare_angles(fan.rays[a.rays[0]], fan.rays[b.rays[0]])))
    LOGGER.debug("%d clumps", len(clumps))
    return clumps


def splitting_at(fan: Fan, start: int, size: int) -> Splitting:
    """Cut the cyclic order into ``size`` cones from position ``start`` and the rest."""
    if not is_complete(fan):
        raise ImproperSplitting("splittings into two clumps need a complete 2D fan")
    order = cyclic_order(fan)
    k = len(order)
    if not 1 <= size < k:
        raise ImproperSplitting(f"cannot cut {size} of {k} cones into a proper splitting")
    rotated = order[start:] + order[:start]
    return Splitting(_chain(fan, rotated[:size]), _chain(fan, rotated[size:]))


def all_splittings(fan: Fan) -> List[Splitting]:
    """Every proper splitting of a complete 2D fan into two clumps (unordered)."""
    k = len(fan.cone_names)
    seen = set()
    result = []
    for start in range(k):
        for size in range(1, k):
            split = splitting_at(fan, start, size)
            key = frozenset((split.first.cones, split.second.cones))
            if key not in seen:
                seen.add(key)
                result.append(split)
    return result


def complete_2d_splitting(fan: Fan) -> Splitting:
    """Deterministic splitting of a complete 2D fan into two clumps.

    The cyclic order starts at the maximal cone whose clockwise ray is the
    lexicographically smallest ray; the first ceil(k/2) cones form the first
    clump.
    """
    _require_planar(fan)
    if not is_complete(fan):
        raise ImproperSplitting("only complete 2D fans are split into two clumps")
    if len(fan.cone_names) < 2:
        raise ImproperSplitting("a fan with one maximal cone has no proper splitting")
    order = cyclic_order(fan)
    smallest = min(fan.ray_names, key=lambda r: fan.rays[r])
    start = next(i for i, c in enumerate(order) if _oriented(fan, fan.maximal[c])[0] == smallest)
    return splitting_at(fan, start, ceil(len(order) / 2))


def check_splitting(fan: Fan, splitting: Splitting) -> None:
    """Raise ImproperSplitting unless the two clumps split the fan properly."""
    first, second = set(splitting.first.cones), set(splitting.second.cones)
    if not first or not second or first & second or first | second != set(fan.cone_names):
        raise ImproperSplitting("the two clumps must partition the maximal cones")
    shared = set(splitting.first.fan.ray_names) & set(splitting.second.fan.ray_names)
    if shared != {splitting.first.first_ray, splitting.first.last_ray}:
        raise ImproperSplitting("the clumps must meet in exactly their end rays")
