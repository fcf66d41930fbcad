"""Bundled example fans, addressable by name from the command line."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from fank.errors import InputError
from fank.geometry.fan import Fan, fan_from_description, pyramid_fan
from fank.io.fan_reader import format_fan_file


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    builder: Callable[[int], Fan]   # receives the parameter r, ignored when not parametric
    parametric: bool = False


def _numbered(prefix: str, count: int) -> List[str]:
    return [f"{prefix}{i}" for i in range(1, count + 1)]


def _fan(rays: Sequence[Tuple[int, ...]], cones: Sequence[Sequence[int]], cone_prefix: str = "c") -> Fan:
    # cones are given by 1-based ray numbers, as in the tables they come from
    ray_names = _numbered("r", len(rays))
    return fan_from_description(
        rays,
        [[ray_names[i - 1] for i in cone] for cone in cones],
        ray_names=ray_names,
        cone_names=_numbered(cone_prefix, len(cones)),
    )


def _cycle(count: int) -> List[List[int]]:
    return [[i, i % count + 1] for i in range(1, count + 1)]


def hirzebruch_fan(r: int) -> Fan:
    """Hirzebruch surface H_r: rays (1,0), (0,1), (-1,r), (0,-1)."""
    if r < 0:
        raise InputError(f"Hirzebruch parameter must be >= 0, got {r}")
    return _fan([(1, 0), (0, 1), (-1, r), (0, -1)], _cycle(4))


def _triangle(rays: Sequence[Tuple[int, int]]) -> Fan:
    return _fan(rays, _cycle(3))


def p2_fan() -> Fan:
    return _triangle([(1, 0), (0, 1), (-1, -1)])


def _pyramid() -> Fan:
    return _fan(
        [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (0, 0, -1)],
        [[1, 2, 3, 4], [1, 2, 5], [1, 4, 5], [2, 3, 5], [3, 4, 5]],
        cone_prefix="C",
    )


_EQUATOR_RAYS = [
    (1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1),
    (1, 0, -1), (0, 1, -1), (-1, 0, -1), (0, -1, -1),
    (1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0),
]


def _two_distant() -> Fan:
    return _fan(_EQUATOR_RAYS, [
        [1, 2, 3, 4], [5, 6, 7, 8],
        [1, 2, 9], [2, 9, 10], [2, 3, 10], [3, 10, 11], [3, 4, 11], [4, 11, 12],
        [1, 4, 12], [1, 9, 12],
        [5, 6, 9], [6, 9, 10], [6, 7, 10], [7, 10, 11], [7, 8, 11], [8, 11, 12],
        [5, 8, 12], [5, 9, 12],
    ], cone_prefix="sigma")


def _isolated_not_distant() -> Fan:
    # the bottom cone closes the fan below the equator, mirroring sigma9
    return _fan(_EQUATOR_RAYS, [
        [1, 4, 9, 12], [1, 2, 9, 10], [2, 3, 10, 11], [3, 4, 11, 12],
        [5, 8, 9, 12], [5, 6, 9, 10], [6, 7, 10, 11], [7, 8, 11, 12],
        [1, 2, 3, 4], [5, 6, 7, 8],
    ], cone_prefix="sigma")


def _gt_flag3() -> Fan:
    return _fan(
        [(-1, 0, 0), (1, 0, 0), (0, -1, 0), (0, 1, 0), (1, 0, -1), (0, -1, 1)],
        [[1, 3, 5], [1, 3, 6], [1, 4, 5], [1, 4, 6], [2, 3, 5, 6], [2, 4, 5], [2, 4, 6]],
        cone_prefix="sigma",
    )


CATALOG: Dict[str, CatalogEntry] = {
    entry.name: entry for entry in [
        CatalogEntry("hirzebruch-r", "Hirzebruch surface H_r (smooth, complete, polytopal)",
                     hirzebruch_fan, parametric=True),
        CatalogEntry("p2", "projective plane", lambda r: p2_fan()),
        CatalogEntry("wps-1-1-2", "weighted projective plane P(1,1,2)",
                     lambda r: _triangle([(1, 0), (-1, 2), (0, -1)])),
        CatalogEntry("wps-2-3-5", "weighted projective plane P(2,3,5), not divisive",
                     lambda r: _triangle([(-1, -4), (-1, 1), (1, 1)])),
        CatalogEntry("fake-p2", "fake projective plane P^2/(Z/3), rays span index 3",
                     lambda r: _triangle([(1, 2), (1, -1), (-2, -1)])),
        CatalogEntry("pyramid", "normal fan of the square-based pyramid (one distant singular cone)",
                     lambda r: _pyramid()),
        CatalogEntry("pyramid-p2", "pyramid over the fan of P^2, the weighted projective space P(1,1,1,3)",
                     lambda r: pyramid_fan(p2_fan())),
        CatalogEntry("simplicial-distant", "simplicial complete fan with one distant singular cone",
                     lambda r: _fan([(1, 0, 2), (0, 1, 2), (-1, -1, 1), (0, 0, -1)],
                                    [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]], cone_prefix="C")),
        CatalogEntry("two-distant", "non-polytopal fan with two distant singular cones",
                     lambda r: _two_distant()),
        CatalogEntry("isolated-not-distant", "every maximal cone isolated singular, none distant",
                     lambda r: _isolated_not_distant()),
        CatalogEntry("gt-flag3", "Gelfand-Tsetlin toric degeneration of Flags(C^3)",
                     lambda r: _gt_flag3()),
    ]
}


def names() -> List[str]:
    return list(CATALOG)


def entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise InputError(f"unknown example {name!r}; known: {', '.join(CATALOG)}") from None


def build(name: str, r: int = 1) -> Fan:
    return entry(name).builder(r)


def fan_text(name: str, r: int = 1) -> str:
    """The example as a fan file, its description as a comment."""
    chosen = entry(name)
    title = chosen.description + (f", r = {r}" if chosen.parametric else "")
    return format_fan_file(build(name, r), comments=[f"{name}: {title}"])
