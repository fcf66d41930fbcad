import json

import pytest

from fank import catalog
from fank.io.fan_reader import parse_fan_file
from fank.io.plp_reader import PlpFileReader, plp_from_file
from fank.records import Report
from fank.scripts.fank_cli import (
    EXIT_INPUT,
    EXIT_NOT_ISOMORPHIC,
    EXIT_OK,
    main,
    parse_generators,
)


def _write_fan(directory, name, r=1):
    path = directory / f"{name}.fan"
    path.write_text(catalog.fan_text(name, r))
    return path


def test_check_pyramid(capsys):
    assert main(["check", "pyramid"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "polytopal: true" in out
    assert "smooth: false" in out
    assert "singular cones: C1" in out
    assert "intersection(C1,C2) = <r1,r2>: smooth true" in out


def test_check_json(capsys):
    assert main(["check", "two-distant", "--json"]) == EXIT_OK
    report = Report.from_json(capsys.readouterr().out)
    assert report.flags["polytopal"] is False
    assert report.flags["distant"] is True
    assert "support_function" not in report.certificates


def test_check_incomplete_fan_file(tmp_path, capsys):
    path = tmp_path / "quadrant.fan"
    path.write_text("dim 2\nray a 1 0\nray b 0 1\ncone q a b\n")
    assert main(["check", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "complete: false" in out
    assert "polytopal: n/a" in out


def test_classify_exit_codes(capsys):
    assert main(["classify", "p2"]) == EXIT_OK
    assert "verdict: Isomorphic (smooth fan)" in capsys.readouterr().out
    assert main(["classify", "fake-p2"]) == EXIT_NOT_ISOMORPHIC
    out = capsys.readouterr().out
    assert "verdict: NotIsomorphic" in out
    assert "odd K-group rank: 2" in out


def test_classify_parametric_example(capsys):
    assert main(["classify", "hirzebruch-r", "--r", "4", "--json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"]["outcome"] == "Isomorphic"
    assert main(["classify", "hirzebruch-r", "--r", "0"]) == EXIT_INPUT


def test_classify_missing_source(capsys):
    assert main(["classify", "no-such.fan"]) == EXIT_INPUT
    assert "not found" in capsys.readouterr().err


def test_classify_batch(tmp_path, capsys):
    _write_fan(tmp_path, "p2")
    _write_fan(tmp_path, "fake-p2")
    _write_fan(tmp_path, "wps-1-1-2")
    assert main(["classify", "--batch", str(tmp_path), "--workers", "2"]) == EXIT_NOT_ISOMORPHIC
    out = capsys.readouterr().out
    sources = [line for line in out.splitlines() if line.startswith("source: ")]
    assert sources == sorted(sources)
    assert len(sources) == 3


def test_parse_generators():
    assert parse_generators("1,0; 0 2", 2) == ((1, 0), (0, 2))


def test_ideal_member(capsys):
    assert main(["ideal", "member", "--n", "2", "--gens", "1,0", "--json", "1 - a1^2"]) == EXIT_OK
    certificates = json.loads(capsys.readouterr().out)["certificates"]
    assert certificates["member"] is True
    assert len(certificates["cofactors"]) == 1
    assert main(["ideal", "member", "--n", "2", "--gens", "2,0", "1 - a1"]) == EXIT_OK
    assert "member: False" in capsys.readouterr().out


def test_ideal_member_bad_generator(capsys):
    assert main(["ideal", "member", "--n", "2", "--gens", "1,0,0", "1"]) == EXIT_INPUT
    assert "coordinates" in capsys.readouterr().err


def test_ideal_leq(capsys):
    assert main(["ideal", "leq", "--n", "2", "--gens", "2,0", "--other", "1,0", "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["certificates"]["leq"] is True


def test_plp_verify(tmp_path, capsys):
    _write_fan(tmp_path, "p2")
    good = tmp_path / "good.plp"
    good.write_text("fan p2.fan\non c1: 0\non c2: 1 - a1\non c3: 1 - a2\n")
    assert main(["plp", "verify", str(good)]) == EXIT_OK
    assert "valid: True" in capsys.readouterr().out
    bad = tmp_path / "bad.plp"
    bad.write_text("fan p2.fan\non c1: 1\non c2: 1\non c3: a1\n")
    assert main(["plp", "verify", str(bad), "--json"]) == EXIT_INPUT
    certificates = json.loads(capsys.readouterr().out)["certificates"]
    assert certificates["valid"] is False
    assert certificates["pair"] == ["c1", "c3"]


def test_plp_verify_catalog_fan(tmp_path, capsys):
    plp = tmp_path / "p.plp"
    plp.write_text("fan p2\non c1: 1\non c2: 1\non c3: 1\n")
    assert main(["plp", "verify", str(plp)]) == EXIT_OK
    assert "valid: True" in capsys.readouterr().out


def test_plp_extend(tmp_path):
    fan_path = _write_fan(tmp_path, "hirzebruch-r", 2)
    gamma = tmp_path / "gamma.plp"
    gamma.write_text(f"fan {fan_path.name}\non c1: a1\non <r3>: a2\n")
    output = tmp_path / "extended.plp"
    assert main(["plp", "extend", "--gamma", str(gamma), "--output", str(output)]) == EXIT_OK
    fan = parse_fan_file(fan_path)
    F = plp_from_file(PlpFileReader(output).read(), fan)
    assert len(F.values) == 4


def test_plp_extend_refuses_singular_fan(tmp_path, capsys):
    fan_path = _write_fan(tmp_path, "fake-p2")
    gamma = tmp_path / "gamma.plp"
    gamma.write_text(f"fan {fan_path.name}\non c1: 1\n")
    assert main(["plp", "extend", "--gamma", str(gamma)]) == EXIT_INPUT
    assert "smooth" in capsys.readouterr().err


def test_plp_preimage_on_cone(tmp_path, capsys):
    (tmp_path / "quadrant.fan").write_text("dim 2\nray a 1 0\nray b 0 1\ncone q a b\n")
    plp = tmp_path / "boundary.plp"
    plp.write_text("fan quadrant.fan\non <a>: a1\non <b>: a2\n")
    assert main(["plp", "preimage", str(plp), "--cone", "q"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("fan quadrant.fan\non q: ")


def test_plp_preimage_on_splitting(tmp_path, capsys):
    _write_fan(tmp_path, "p2")
    plp = tmp_path / "ends.plp"
    plp.write_text("fan p2.fan\non <r3>: a1\non <r2>: a2\n")
    assert main(["plp", "preimage", str(plp), "--rays", "r3", "r2", "--json"]) == EXIT_OK
    certificates = json.loads(capsys.readouterr().out)["certificates"]
    assert set(certificates) == {"first", "second"}


def test_plp_preimage_not_in_image(tmp_path, capsys):
    _write_fan(tmp_path, "fake-p2")
    plp = tmp_path / "ends.plp"
    plp.write_text("fan fake-p2.fan\non <r1>: a1\non <r3>: 1\n")
    code = main(["plp", "preimage", str(plp), "--rays", "r1", "r3"])
    assert code == EXIT_INPUT
    assert "error:" in capsys.readouterr().err


def test_plp_preimage_needs_a_target(tmp_path, capsys):
    _write_fan(tmp_path, "p2")
    plp = tmp_path / "ends.plp"
    plp.write_text("fan p2.fan\non <r1>: 1\n")
    assert main(["plp", "preimage", str(plp)]) == EXIT_INPUT


def test_examples(tmp_path, capsys):
    assert main(["examples"]) == EXIT_OK
    listing = capsys.readouterr().out
    assert listing.splitlines()[0].startswith("hirzebruch-r")
    output = tmp_path / "pyr.fan"
    assert main(["examples", "pyramid", "--output", str(output)]) == EXIT_OK
    assert parse_fan_file(output).cone_names == ("C1", "C2", "C3", "C4", "C5")
    assert main(["examples", "p9"]) == EXIT_INPUT


@pytest.mark.parametrize("argv", [[], ["plp"], ["ideal", "member"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit):
        main(argv)


def test_log_level_choices(monkeypatch):
    assert main(["examples", "--log-level", "debug"]) == EXIT_OK
    with pytest.raises(SystemExit) as err:
        main(["examples", "--log-level", "LOUD"])
    assert err.value.code == EXIT_INPUT
    monkeypatch.setenv("FANK_LOG_LEVEL", "noisy")
    with pytest.raises(SystemExit) as err:
        main(["examples"])
    assert err.value.code == EXIT_INPUT
