import pytest

from fank import catalog
from fank.errors import FanSyntaxError, IncompatiblePair, InputError
from fank.io.plp_reader import (
    PlpFileReader,
    format_plp,
    load_plp,
    plp_from_file,
    resolve_fan_path,
)
from fank.laurent import parse_laurent

P2_PLP = """\
fan p2.fan
# a Thom-like class
on c1: 0
on c2: 1 - a1
on c3: 1 - a2   # trailing comment
"""


@pytest.fixture
def p2_dir(tmp_path):
    (tmp_path / "p2.fan").write_text(catalog.fan_text("p2"))
    (tmp_path / "f.plp").write_text(P2_PLP)
    return tmp_path


def test_read():
    data = PlpFileReader(text=P2_PLP).read()
    assert data.fan_path == "p2.fan"
    assert [e.cone for e in data.entries] == ["c1", "c2", "c3"]
    assert data.entries[2].expression == "1 - a2"
    assert data.entries[0].line_number == 3


def test_fan_path_is_relative_to_the_plp_file(p2_dir):
    data = PlpFileReader(p2_dir / "f.plp").read()
    assert resolve_fan_path(data) == p2_dir / "p2.fan"


def test_load(p2_dir):
    fan, F = load_plp(p2_dir / "f.plp")
    assert fan.cone_names == ("c1", "c2", "c3")
    assert F["c3"] == parse_laurent("1 - a2", 2)


def test_format_reads_back(p2_dir):
    fan, F = load_plp(p2_dir / "f.plp")
    text = format_plp("p2.fan", F)
    assert plp_from_file(PlpFileReader(text=text).read(), fan) == F


def test_incompatible_values():
    fan = catalog.build("p2")
    text = "fan p2.fan\non c1: 1\non c2: 1\non c3: a1\n"
    with pytest.raises(IncompatiblePair):
        plp_from_file(PlpFileReader(text=text).read(), fan)


def test_missing_cone():
    fan = catalog.build("p2")
    text = "fan p2.fan\non c1: 1\non c2: 1\n"
    with pytest.raises(InputError, match="missing"):
        plp_from_file(PlpFileReader(text=text).read(), fan)


def test_partial_on_faces():
    fan = catalog.build("p2")
    text = "fan p2.fan\non c1: a1\non <r3>: 1\n"
    F = plp_from_file(PlpFileReader(text=text).read(), fan, partial=True)
    assert F.fan.cone_names == ("c1", "<r3>")
    assert F["<r3>"] == parse_laurent("1", 2)


def test_partial_refuses_nested_cones():
    fan = catalog.build("p2")
    text = "fan p2.fan\non c1: a1\non <r1>: a1\n"
    with pytest.raises(InputError, match="faces of other listed cones"):
        plp_from_file(PlpFileReader(text=text).read(), fan, partial=True)


@pytest.mark.parametrize("text, line", [
    ("on c1: 1\n", 1),
    ("fan\n", 1),
    ("fan p2.fan\nc1: 1\n", 2),
    ("fan p2.fan\non c1 1\n", 2),
    ("fan p2.fan\non : 1\n", 2),
    ("# only a comment\n", 1),
])
def test_syntax_errors(text, line):
    with pytest.raises(FanSyntaxError) as info:
        PlpFileReader(text=text).read()
    assert info.value.line_number == line


def test_bad_expression_keeps_the_line():
    fan = catalog.build("p2")
    text = "fan p2.fan\non c1: 1\non c2: 1 +* a1\non c3: 1\n"
    with pytest.raises(FanSyntaxError) as info:
        plp_from_file(PlpFileReader(text=text).read(), fan)
    assert info.value.line_number == 3


def test_cone_given_twice():
    fan = catalog.build("p2")
    text = "fan p2.fan\non c1: 1\non <r1,r2>: 1\n"
    with pytest.raises(FanSyntaxError, match="given twice"):
        plp_from_file(PlpFileReader(text=text).read(), fan)
