import pytest

from fank import catalog
from fank.errors import InputError
from fank.geometry.fan import (
    is_complete,
    is_polytopal,
    is_simplicial,
    is_smooth_fan,
    singularity_report,
)
from fank.io.fan_reader import parse_fan_text


@pytest.mark.parametrize("name", catalog.names())
def test_examples_parse_back(name):
    fan = catalog.build(name, 2)
    text = catalog.fan_text(name, 2)
    assert text.startswith(f"# {name}: ")
    again = parse_fan_text(text)
    assert again.cone_rays == fan.cone_rays
    assert again.ray_vectors == fan.ray_vectors


# name -> smooth, complete, simplicial, polytopal, distant (None: not checked)
FLAGS = {
    "pyramid": (False, True, False, True, True),
    "simplicial-distant": (False, True, True, True, True),
    "two-distant": (False, True, False, False, True),
    "isolated-not-distant": (False, True, False, True, False),
    "gt-flag3": (False, True, False, True, True),
    "pyramid-p2": (None, True, True, None, True),
}


@pytest.mark.parametrize("name", sorted(FLAGS))
def test_flags(name):
    fan = catalog.build(name)
    observed = (
        is_smooth_fan(fan),
        is_complete(fan),
        is_simplicial(fan),
        is_polytopal(fan),
        singularity_report(fan).has_distant_singular_cones,
    )
    for want, got in zip(FLAGS[name], observed):
        if want is not None:
            assert got == want


def test_isolated_examples():
    assert singularity_report(catalog.build("pyramid")).has_isolated_singular_cones
    assert singularity_report(catalog.build("isolated-not-distant")).has_isolated_singular_cones


def test_isolated_not_distant_bottom_cone():
    fan = catalog.build("isolated-not-distant")
    bottom = [name for name, key in fan.maximal.items() if key == {"r5", "r6", "r7", "r8"}]
    assert len(bottom) == 1


def test_hirzebruch_parameter():
    fan = catalog.build("hirzebruch-r", 3)
    assert fan.rays["r3"] == (-1, 3)
    assert is_smooth_fan(fan)
    with pytest.raises(InputError):
        catalog.build("hirzebruch-r", -1)


def test_unknown_example():
    with pytest.raises(InputError) as info:
        catalog.entry("p3")
    assert "p2" in str(info.value)


def test_catalog_order():
    assert catalog.names()[:2] == ["hirzebruch-r", "p2"]
    assert catalog.entry("hirzebruch-r").parametric
    assert not catalog.entry("fake-p2").parametric
