"""Command-line front end: config resolution, output formats, exit codes."""

import json

import pytest

from chi2qec.cli import (
    RunConfig,
    emit,
    load_config_file,
    main,
    resolve_config,
    validate_report_json,
)


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(tolerance=0)
    with pytest.raises(ValueError):
        RunConfig(format="yaml")
    with pytest.raises(ValueError):
        RunConfig(threads=0)


def test_load_config_file(tmp_path):
    path = tmp_path / "cfg"
    path.write_text("# comment\nseed = 7\nformat=text  # trailing\n\n")
    assert load_config_file(str(path)) == {"seed": "7", "format": "text"}
    bad = tmp_path / "bad"
    bad.write_text("seed 7\n")
    with pytest.raises(ValueError):
        load_config_file(str(bad))


def test_resolve_config_precedence(tmp_path, monkeypatch):
    path = tmp_path / "cfg"
    path.write_text("seed=7\ntolerance=1e-6\nthreads=2\n")

    class Args:
        config = str(path)
        tolerance = 1e-8  # flag overrides file
        seed = None
        format = None

    monkeypatch.setenv("CHI2QEC_THREADS", "4")
    cfg = resolve_config(Args())
    assert cfg.seed == 7
    assert cfg.tolerance == 1e-8
    assert cfg.threads == 4


def test_resolve_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "cfg"
    path.write_text("speed=7\n")

    class Args:
        config = str(path)

    with pytest.raises(ValueError):
        resolve_config(Args())


def test_emit_formats():
    cfg = RunConfig()
    results = [{"name": "x", "passed": True, "detail": "a,b"}]
    doc = json.loads(emit(cfg, "synth", True, results))
    assert doc["tool"] == "chi2qec" and doc["passed"] is True
    csv = emit(RunConfig(format="csv"), "synth", True, results)
    assert csv.splitlines() == ["name,passed,detail", "x,True,a;b"]
    assert emit(RunConfig(format="csv"), "synth", True, []) == ""
    text = emit(RunConfig(format="text"), "synth", False, results)
    assert text.endswith("overall: FAIL")


def test_main_synth_exit_zero(capsys):
    assert main(["synth", "eecc", "--N", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["command"] == "synth"
    assert doc["passed"] is True


def test_main_accepts_global_flags_after_subcommand(capsys):
    assert main(["synth", "eecc", "--N", "2", "--format", "text"]) == 0
    assert "overall: PASS" in capsys.readouterr().out


def test_main_is_deterministic_for_fixed_seed(capsys):
    args = ["--seed", "7", "recover", "eecc", "--N", "2",
            "--error", "a_s", "--trials", "5"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first


def test_main_gates_exit_one(capsys):
    # The documented failing decompositions make the gates verdict red.
    assert main(["gates", "verify"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is False


def test_main_usage_errors(capsys, tmp_path):
    assert main(["synth", "nope", "--N", "2"]) == 2
    assert main(["bounds", "loss", "--n", "0"]) == 2
    missing = str(tmp_path / "absent")
    assert main(["--config", missing, "bounds", "theorems"]) == 2
    capsys.readouterr()


def test_main_bounds_and_sweep(capsys):
    assert main(["bounds", "theorems"]) == 0
    capsys.readouterr()
    assert main(["bounds", "rotation", "--sweep", "--b", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert any(r["name"] == "min_n_q6" and "min_n=3" in r["detail"]
               for r in doc["results"])


def test_main_syndromes_csv(capsys):
    assert main(["--format", "csv", "syndromes", "eecc", "--N", "2"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0] == "error_label,p,q"
    assert len(lines) == 7
    assert any(line.startswith("a_s,1 1 0,2") for line in lines)


def test_main_kl_check(capsys):
    assert main(["kl-check", "bc", "--N", "2", "--errors", "xi1"]) == 0
    capsys.readouterr()


def test_config_file_drives_output_format(capsys, tmp_path):
    path = tmp_path / "cfg"
    path.write_text("format=text\nseed=3\n")
    assert main(["--config", str(path), "bounds", "theorems"]) == 0
    assert "overall: PASS" in capsys.readouterr().out


def test_report_json_validates_against_schema():
    cfg = RunConfig()
    text = emit(cfg, "bounds", True, [{"name": "x", "passed": True}])
    validate_report_json(text)
    import jsonschema

    with pytest.raises(jsonschema.ValidationError):
        validate_report_json(json.dumps({"tool": "chi2qec"}))
