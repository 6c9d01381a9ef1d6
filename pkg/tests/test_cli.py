import json
import shlex
from pathlib import Path

import pytest

import qtorb
from qtorb.cli import QtorbApp
from qtorb.main import build_parser, main
from qtorb.modelfile import fixture_path, load_model
from qtorb.settings import Settings

TRANSCRIPTS = sorted((Path(qtorb.__file__).parent / "fixtures" / "transcripts").glob("*.txt"))
PROMPT = "$ qtorb "


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_fixtures_command(capsys):
    code, report = run_json(capsys, "fixtures")
    assert code == 0
    assert report["command"] == "fixtures"
    assert report["input"] is None
    assert "simplex4" in report["result"]["fixtures"]


def test_validate(capsys):
    assert main(["validate", "simplex4"]) == 0
    out = capsys.readouterr().out
    assert "simplex4.json: model is valid" in out
    assert "vertices: 5" in out


def test_validate_invalid_model(capsys, tmp_path):
    data = json.loads(fixture_path("w2").read_text(encoding="utf-8"))
    data["facets"][2]["charvec"] = [2, 4]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    code, report = run_json(capsys, "validate", str(path))
    assert code == 1
    assert report["input"] == "bad.json"
    assert report["result"]["valid"] is False
    assert any("primitivity violated" in d for d in report["diagnostics"])


def test_invalid_model_fails_other_commands(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("[", encoding="utf-8")
    code, report = run_json(capsys, "euler", str(path))
    assert code == 1
    assert report["result"] is None
    assert report["diagnostics"]


def test_unknown_model_is_a_usage_error(capsys):
    assert main(["info", "no_such_model"]) == 2
    assert "no model file or fixture named no_such_model" in capsys.readouterr().err


def test_argparse_errors_exit_2(capsys):
    assert main(["blowup", "simplex4", "--face", "F1,F5"]) == 2
    assert main(["frobnicate"]) == 2


def test_version(capsys):
    assert main(["--version"]) == 0
    assert Settings.__version__ in capsys.readouterr().out


def test_sectors(capsys):
    code, report = run_json(capsys, "sectors", "simplex4")
    assert code == 0
    result = report["result"]
    assert result["count"] == 2
    first = result["sectors"][0]
    assert first == {
        "face": ["F1", "F5"],
        "dimension": 2,
        "lattice_point": [1, 1, 1, 1],
        "coefficients": ["2/3", "1/3"],
        "age": "1",
    }


def test_sectors_human(capsys):
    assert main(["sectors", "simplex4"]) == 0
    out = capsys.readouterr().out
    assert "TWISTED SECTORS" in out
    assert "(1, 2, 2, 2)" in out
    assert "2 twisted sectors" in out

    assert main(["sectors", "cp2"]) == 0
    assert "no twisted sectors" in capsys.readouterr().out


def test_info(capsys):
    code, report = run_json(capsys, "info", "simplex4")
    assert code == 0
    result = report["result"]
    assert result["h_vector"] == [1, 1, 1, 1, 1]
    assert result["manifold"] is False
    assert result["positively_omnioriented"] is False
    assert sorted(v["order"] for v in result["vertices"]) == [1, 1, 3, 3, 3]
    assert sorted(v["sign"] for v in result["vertices"]) == [-1, -1, -1, -1, 1]
    assert {"face": ["F1", "F5"], "order": 3, "divisors": [3]} in result["singular_faces"]


def test_info_human_without_normals(capsys):
    assert main(["info", "w2"]) == 0
    out = capsys.readouterr().out
    assert "VERTICES" in out
    assert "Z2" in out
    assert "positively omnioriented" not in out


def test_betti(capsys):
    code, report = run_json(capsys, "betti", "simplex4")
    assert code == 0
    result = report["result"]
    assert [(e["degree"], e["rank"]) for e in result["table"]] == [
        ("0", 1),
        ("2", 3),
        ("4", 3),
        ("6", 3),
        ("8", 1),
    ]
    assert result["total"] == 11
    assert result["palindromic"] is True


def test_betti_fractional_degrees(capsys):
    code, report = run_json(capsys, "betti", "simplex4_fan")
    assert code == 0
    degrees = [e["degree"] for e in report["result"]["table"]]
    assert "4/3" in degrees and "8/3" in degrees
    assert report["result"]["quasi_sl"] is False


@pytest.mark.parametrize("command", ["euler", "chi"])
def test_euler(capsys, command):
    code, report = run_json(capsys, command, "simplex4")
    assert code == 0
    assert report["command"] == "euler"
    assert report["result"]["value"] == 11
    assert report["result"]["k_theory_ranks"] == [11, 0]


def test_euler_human_sector_count(capsys):
    assert main(["euler", "simplex4_fan"]) == 0
    out = capsys.readouterr().out
    assert "chi_CR: 11" in out
    assert "sector-count invariant" in out


def test_quasi_sl(capsys):
    code, report = run_json(capsys, "qsl", "simplex4_fan")
    assert code == 0
    assert report["result"]["quasi_sl"] is False
    assert [s["age"] for s in report["result"]["offenders"]] == ["4/3", "2/3"]


def test_crepant_candidates(capsys):
    code, report = run_json(capsys, "crepant-candidates", "simplex4", "--face", "F1,F5")
    assert code == 0
    result = report["result"]
    assert [c["lattice_point"] for c in result["candidates"]] == [[1, 1, 1, 1], [1, 2, 2, 2]]
    assert {"vertex": ["F1", "F2", "F3", "F5"], "vector": ["1", "1", "1", "-2"]} in result["dual_vectors"]


def test_bad_face_is_a_usage_error(capsys):
    assert main(["crepant-candidates", "simplex4", "--face", "F1,F9"]) == 2
    assert main(["blowup", "cp1xcp1", "--face", "F1,F3", "--lambda0", "1,1"]) == 2


def test_product_of_two_sectors(capsys):
    code, report = run_json(
        capsys, "product", "simplex4", "--s1", "F1,F5:1,1,1,1", "--s2", "F1,F5:1,1,1,1"
    )
    assert code == 0
    result = report["result"]
    assert result["zero"] is False
    assert result["target"]["lattice_point"] == [1, 2, 2, 2]
    assert result["theta"] == ["F1"]
    assert result["cases"] == {"F1": "integer-plus-frac", "F5": "frac-only"}


def test_product_with_untwisted(capsys):
    code, report = run_json(capsys, "product", "simplex4", "--s1", "P", "--s2", "F1,F5:1,2,2,2")
    assert code == 0
    assert report["result"]["target"]["lattice_point"] == [1, 2, 2, 2]
    assert report["result"]["theta"] == []


def test_product_table(capsys):
    code, report = run_json(capsys, "product", "simplex4")
    assert code == 0
    result = report["result"]
    assert result["sectors"] == ["P", "F1∩F5:1,1,1,1", "F1∩F5:1,2,2,2"]
    assert len(result["entries"]) == 9
    assert result["associative"] is True


def test_product_arguments(capsys):
    assert main(["product", "simplex4", "--s1", "P"]) == 2
    assert main(["product", "simplex4", "--s1", "F1,F5:0,1,1,1", "--s2", "P"]) == 1


def test_reorient(capsys, tmp_path):
    out = tmp_path / "fan.json"
    code, report = run_json(capsys, "reorient", "simplex4", "--facets", "F5", "--out", str(out))
    assert code == 0
    assert report["result"]["quasi_sl"] is False
    assert report["result"]["was_quasi_sl"] is True
    assert load_model(out) == load_model(fixture_path("simplex4_fan"))


def test_blowup(capsys, tmp_path):
    out = tmp_path / "y.json"
    argv = ["blowup", "simplex4", "--face", "F1,F5", "--lambda0", "1,1,1,1", "--out", str(out), "--json"]
    assert main(argv) == 0
    captured = capsys.readouterr()
    assert "model written to" in captured.err
    result = json.loads(captured.out)["result"]
    assert result["b"] == ["2/3", "1/3"]
    assert result["crepant"] is True
    assert result["new_facet"] == "F0"
    assert out.read_text(encoding="utf-8") == fixture_path("simplex4_y").read_text(encoding="utf-8")


def test_out_into_missing_directory(capsys, tmp_path):
    out = tmp_path / "missing" / "y.json"
    code, report = run_json(capsys, "blowup", "simplex4", "--face", "F1,F5", "--lambda0", "1,1,1,1", "--out", str(out))
    assert code == 2
    assert report["command"] == "blowup"
    assert report["result"] is None
    assert report["diagnostics"][0].startswith(f"cannot write model file {out}")
    assert not out.exists()

    assert main(["resolve", "w2", "-o", str(out)]) == 2
    assert "cannot write model file" in capsys.readouterr().err


def test_blowup_negative_lambda0(capsys):
    code, report = run_json(capsys, "blowup", "pp112", "--face", "F1,F3", "--lambda0=0,-1")
    assert code == 0
    assert report["result"]["manifold"] is True


def test_blowup_rejected(capsys):
    code, report = run_json(capsys, "blowup", "simplex4", "--face", "F1,F5", "--lambda0", "2,2,2,2")
    assert code == 1
    assert "not primitive" in report["diagnostics"][0]


def test_mckay(capsys):
    code, report = run_json(capsys, "mckay", "simplex4", "--face", "F1,F5", "--lambda0", "1,1,1,1")
    assert code == 0
    result = report["result"]
    assert result["in_scope"] is True
    assert result["euler_conserved"] is True
    assert result["h2_before"] == result["h2_after"] == 3
    assert result["untwisted_h2_gain"] == 1
    assert result["violations"] == []


def test_mckay_out_of_scope(capsys):
    assert main(["mckay", "simplex4", "--face", "F1,F5", "--lambda0", "2,3,3,3"]) == 0
    assert "out of theorem scope" in capsys.readouterr().out


def test_resolve(capsys, tmp_path):
    out = tmp_path / "z.json"
    code, report = run_json(capsys, "resolve", "simplex4", "-o", str(out))
    assert code == 0
    result = report["result"]
    assert [s["lambda0"] for s in result["steps"]] == [[1, 1, 1, 1], [1, 2, 2, 2]]
    assert [s["new_facet"] for s in result["steps"]] == ["F0", "F0_2"]
    assert result["manifold"] is True
    assert result["vertices"] == 11
    assert load_model(out) == load_model(fixture_path("simplex4_z"))


def test_config_file(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    cfg = tmp_path / "qtorb.cfg"
    cfg.write_text('{"client": {"json_indent": 4}}', encoding="utf-8")
    assert main(["fixtures", "--json"]) == 0
    assert '\n    "command"' in capsys.readouterr().out


def test_config_lasts_one_run(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    cfg = tmp_path / "qtorb.cfg"
    cfg.write_text('{"client": {"json_indent": 4}, "compute": {"new_facet_name": "E"}}', encoding="utf-8")
    assert main(["fixtures", "--json"]) == 0
    assert Settings.client["json_indent"] == 2
    assert Settings.compute["new_facet_name"] == "F0"
    cfg.unlink()
    capsys.readouterr()
    assert main(["fixtures", "--json"]) == 0
    out = capsys.readouterr().out
    assert '\n  "command"' in out
    assert '\n    "command"' not in out


def test_missing_config_file(capsys, tmp_path):
    assert main(["-c", str(tmp_path / "missing.cfg"), "fixtures"]) == 2
    assert "not found" in capsys.readouterr().err


def test_app_streams(tmp_path):
    out, err = tmp_path / "out.txt", tmp_path / "err.txt"
    with open(out, "w", encoding="utf-8") as fo, open(err, "w", encoding="utf-8") as fe:
        app = QtorbApp(stdout=fo, stderr=fe)
        args = build_parser().parse_args(["quasi-sl", "simplex4"])
        assert app.run(args) == 0
    assert "quasi-SL" in out.read_text(encoding="utf-8")
    assert err.read_text(encoding="utf-8") == ""


def test_transcripts_shipped():
    names = {p.stem for p in TRANSCRIPTS}
    for command in ("sectors", "euler", "betti", "blowup", "mckay", "resolve"):
        assert {command, f"{command}_json"} <= names


@pytest.mark.parametrize("path", TRANSCRIPTS, ids=lambda p: p.stem)
def test_golden_transcript(capsys, tmp_path, monkeypatch, path):
    monkeypatch.chdir(tmp_path)
    command, _, expected = path.read_text(encoding="utf-8").partition("\n")
    assert command.startswith(PROMPT)
    assert main(shlex.split(command[len(PROMPT):])) == 0
    assert capsys.readouterr().out == expected
