import pytest

from conftest import fan_2d
from fank import catalog
from fank.errors import (
    InputError,
    InvalidFan,
    NotAFace,
    NotASubfan,
    NotSmooth,
    NotStronglyConvex,
    Unsupported,
)
from fank.geometry.cone import cone_from_rays
from fank.geometry.fan import (
    boundary,
    cone_fan,
    fan_from_description,
    is_complete,
    is_polytopal,
    is_simplicial,
    is_smooth_fan,
    pyramid_fan,
    relabel,
    singularity_report,
    support_function,
    transform,
)


def _ray_sets(fan):
    return {frozenset(fan.cone(key).rays) for key in fan.cone_rays}


def test_quadrant_fan():
    fan = fan_from_description([(1, 0), (0, 1)], [[0, 1]])
    assert fan.ray_names == ("r1", "r2") and fan.cone_names == ("c1",)
    assert is_smooth_fan(fan) and not is_complete(fan)
    assert len(fan.cones()) == 4
    assert fan.cones(1) == [frozenset(["r1"]), frozenset(["r2"])]


def test_cones_by_name_or_rays():
    fan = catalog.build("p2")
    assert fan.cone("c1") == fan.cone(["r1", "r2"])
    assert fan.label(frozenset(["r1", "r2"])) == "c1"
    assert fan.label(frozenset(["r1"])) == "<r1>"
    assert fan.resolve("<r1>") == frozenset(["r1"])
    assert fan.resolve("c2") == frozenset(["r2", "r3"])
    with pytest.raises(InputError):
        fan.resolve("nope")


def test_non_primitive_ray_normalized(caplog):
    fan = fan_from_description([(2, 0), (0, 3)], [[0, 1]])
    assert fan.ray_vectors == ((1, 0), (0, 1))
    assert "normalized" in caplog.text


def test_duplicate_and_face_cones_dropped(caplog):
    fan = fan_from_description([(1, 0), (0, 1)], [[0, 1], [1, 0], [0]])
    assert fan.cone_names == ("c1",)
    assert "duplicates" in caplog.text and "face of" in caplog.text


def test_unused_ray_dropped():
    fan = fan_from_description([(1, 0), (0, 1), (-1, 0)], [[0, 1]])
    assert fan.ray_names == ("r1", "r2")


@pytest.mark.parametrize("rays, cones, error", [
    ([(1, 0), (0, 1), (1, 1)], [[0, 1], [0, 2]], InvalidFan),          # overlap
    ([(1, 0), (-1, 0)], [[0, 1]], NotStronglyConvex),
    ([(1, 0), (1, 0)], [[0], [1]], InvalidFan),                         # coinciding rays
    ([(1, 0), (0, 1), (1, 1)], [[0, 1, 2]], InvalidFan),                # non-extreme listed ray
    ([(1, 0), (0, 1)], [[0, 0]], InvalidFan),                           # ray twice
    ([(1, 0)], [[3]], InputError),
])
def test_invalid_fans(rays, cones, error):
    with pytest.raises(error):
        fan_from_description(rays, cones)


def test_invalid_fan_names_the_pair():
    with pytest.raises(InvalidFan) as info:
        fan_from_description([(1, 0), (0, 1), (1, 1), (-1, 1)], [[0, 1], [2, 3]], cone_names=["a", "b"])
    assert info.value.pair == ("a", "b")


def test_completeness():
    assert is_complete(catalog.build("p2"))
    assert not is_complete(fan_2d([(1, 0), (0, 1), (-1, 0)], cyclic=False))
    assert is_complete(catalog.build("pyramid"))
    assert not is_complete(cone_fan(cone_from_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1)])))


def test_walls_of_p2():
    fan = catalog.build("p2")
    assert len(fan.walls) == 3
    assert all(len(facet) == 1 for _, _, facet in fan.walls)


def test_subfan():
    fan = catalog.build("hirzebruch-r", 1)
    gamma = fan.subfan(["c1", "c2"])
    assert gamma.is_subfan_of(fan)
    assert gamma.cone_names == ("c1", "c2")
    assert set(gamma.ray_names) == {"r1", "r2", "r3"}
    rays_only = fan.subfan([["r1"], ["r3"]])
    assert rays_only.cone_names == ("<r1>", "<r3>")
    with pytest.raises(NotASubfan):
        fan.subfan([["r1", "r3"]])


def test_boundary_fan():
    cone = cone_from_rays([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    edge = boundary(cone)
    assert len(edge.cone_names) == 4
    assert all(len(key) == 2 for key in edge.cone_rays)


def test_simplicial_and_smooth_predicates():
    assert is_simplicial(catalog.build("simplicial-distant"))
    assert not is_simplicial(catalog.build("pyramid"))
    assert not is_smooth_fan(catalog.build("fake-p2"))


def test_polytopal_needs_complete():
    with pytest.raises(Unsupported):
        support_function(fan_2d([(1, 0), (0, 1)], cyclic=False))


def test_support_function_is_strictly_convex():
    fan = catalog.build("pyramid")
    functionals = support_function(fan)
    assert functionals is not None
    for first, second, wall in fan.walls:
        for name in wall:
            ray = fan.rays[name]
            assert sum(a * b for a, b in zip(functionals[first], ray)) == \
                sum(a * b for a, b in zip(functionals[second], ray))


def test_singularity_report_of_pyramid():
    report = singularity_report(catalog.build("pyramid"))
    assert report.singular_cones == ("C1",)
    assert report.has_distant_singular_cones and report.has_isolated_singular_cones


def test_singularity_report_counts_faces():
    # the singular 2-cone is a face of the singular 3-cone: neither is distant
    fan = fan_from_description([(1, 0, 0), (1, 2, 0), (0, 0, 1)], [[0, 1, 2]])
    report = singularity_report(fan)
    assert len(report.entries) == 2
    assert not report.has_distant_singular_cones
    assert not report.has_isolated_singular_cones


def test_pyramid_over_square_is_the_catalog_pyramid():
    built = pyramid_fan(catalog.hirzebruch_fan(0))
    assert _ray_sets(built) == _ray_sets(catalog.build("pyramid"))
    assert built.cone_names[0] == "C1" and len(built.cone_rays[0]) == 4


def test_pyramid_over_p2_is_simplicial_and_distant():
    fan = pyramid_fan(catalog.p2_fan())
    assert is_simplicial(fan) and is_complete(fan) and not is_smooth_fan(fan)
    assert singularity_report(fan).has_distant_singular_cones


def test_pyramid_base_requirements():
    with pytest.raises(NotSmooth):
        pyramid_fan(catalog.build("fake-p2"))
    with pytest.raises(Unsupported):
        pyramid_fan(fan_2d([(1, 0), (0, 1)], cyclic=False))
    # (0, 1) lies between (1, 0) and (-1, 2) after lifting: not extreme in the top cone
    with pytest.raises(InvalidFan):
        pyramid_fan(catalog.hirzebruch_fan(2))


def test_relabel_and_transform():
    fan = catalog.build("p2")
    renamed = relabel(fan, {"r1": "x"}, {"c1": "first"})
    assert renamed.cone("first") == fan.cone("c1")
    sheared = transform(fan, [[1, 1], [0, 1]])
    assert is_complete(sheared) and is_smooth_fan(sheared)


def test_polytopal_flags():
    assert is_polytopal(catalog.build("pyramid"))
    assert not is_polytopal(catalog.build("two-distant"))


def test_intersection_outside_faces_is_rejected():
    fan = catalog.build("p2")
    with pytest.raises(NotAFace):
        fan.resolve("<r1,r2,r3>")
