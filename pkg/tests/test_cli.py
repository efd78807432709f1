import json

from singan import __version__
from singan.cli import main

CQII = """
map "cqii" {
    kind: scalar
    forward: (x^2 - 1)/y
}
"""


def test_version(capsys):
    assert main(["--version"]) == 0
    assert __version__ in capsys.readouterr().out


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert "golden" in out
    assert "dp2-generic" in out


def test_catalog_show(capsys):
    assert main(["catalog", "show", "golden"]) == 0
    out = capsys.readouterr().out
    assert out.startswith('map "golden" {')
    assert "forward:" in out


def test_unknown_catalog_key_is_a_user_error(capsys):
    assert main(["catalog", "show", "nope"]) == 2
    assert "unknown catalog key" in capsys.readouterr().err


def test_bad_only_filter(capsys):
    assert main(["catalog", "run-all", "--only", "tag=SOMETIMES"]) == 2
    assert "--only expects" in capsys.readouterr().err


def test_missing_source_is_a_usage_error(capsys):
    assert main(["analyze"]) == 2


def test_broken_mapfile(tmp_path, capsys):
    path = tmp_path / "broken.map"
    path.write_text('map "m" {\n  kind: scalar\n  forward: x +\n}\n', encoding="utf-8")
    assert main(["analyze", str(path)]) == 2
    err = capsys.readouterr().err
    assert err.startswith("parse error:")
    assert "4:1:" in err


def test_missing_file(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "missing.map")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_invalid_environment(monkeypatch, capsys):
    monkeypatch.setenv("SINGAN_STEPS", "1")
    assert main(["catalog", "run-all", "--only", "tag=TRIVIAL"]) == 2
    assert "invalid configuration" in capsys.readouterr().err


def test_analyze_catalog_json_is_deterministic(capsysbinary):
    assert main(["analyze", "--catalog", "eq1", "--json"]) == 0
    first = capsysbinary.readouterr().out
    assert main(["analyze", "--catalog", "eq1", "--json"]) == 0
    second = capsysbinary.readouterr().out
    assert first == second
    data = json.loads(first)
    assert data["name"] == "eq1"
    assert data["verdict"]["kind"] == "InconclusiveRecommendFullDeautonomisation"


def test_analyze_mapfile_with_probe(tmp_path, capsysbinary):
    path = tmp_path / "cqii.map"
    path.write_text(CQII, encoding="utf-8")
    assert main(["analyze", str(path), "--probe", "c, 1/eps @ 0", "--json", "--steps", "8"]) == 0
    data = json.loads(capsysbinary.readouterr().out)
    assert data["singular_values"] == ["-1", "1"]
    assert data["probes"][0]["value"] == "c, 1/eps @ 0"
    assert data["probes"][0]["class"] == "anticonfined"
    assert data["config"]["steps"] == 8


def test_probes_do_not_apply_to_catalog_entries(capsys):
    assert main(["analyze", "--catalog", "eq1", "--probe", "c, eps"]) == 3
    assert "--probe and --deauto" in capsys.readouterr().err


def test_rule_with_a_pole_everywhere_is_a_user_error(tmp_path, capsys):
    path = tmp_path / "pole.map"
    path.write_text('map "m" {\n  kind: scalar\n  forward: 1/(x - x)\n}\n', encoding="utf-8")
    assert main(["analyze", str(path)]) == 2
    assert "undefined for every state" in capsys.readouterr().err
