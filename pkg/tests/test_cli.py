import csv
import io
import json

import numpy as np
import pytest

from qmask import serialization as ser
from qmask.cli import main, read_config, UsageError
from qmask.ic_sets import hidable_witness


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def canonical3(tmp_path, capsys):
    path = tmp_path / "m3.json"
    assert main(["mask", "build", "--kind", "canonical", "--d", "3", "--out", str(path)]) == 0
    capsys.readouterr()
    return path


@pytest.fixture
def magic(tmp_path, capsys):
    path = tmp_path / "magic.json"
    assert main(["mask", "build", "--kind", "magic", "--out", str(path)]) == 0
    capsys.readouterr()
    return path


def test_hr_gen_and_verify(tmp_path, capsys):
    path = tmp_path / "hr.json"
    assert main(["hr", "gen", "--count", "4", "--dim", "8", "--real", "--out", str(path)]) == 0
    obj = json.loads(path.read_text())
    assert obj["count"] == 4 and obj["dim"] == 8 and obj["real_orthogonal"]
    code, rep = run_json(capsys, "hr", "verify", str(path))
    assert code == 0 and rep["pass"]
    bad = dict(obj, matrices=[obj["matrices"][0]] * 2, count=2)
    path.write_text(json.dumps(bad))
    code, rep = run_json(capsys, "hr", "verify", str(path))
    assert code == 1 and not rep["pass"]


def test_hr_kappa(capsys):
    code, rep = run_json(capsys, "hr", "kappa", "--max-d", "9")
    assert code == 0
    assert rep["rows"][-1] == [9, 16, 16, 16]


def test_mask_verify_exit_codes(canonical3, capsys):
    code, rep = run_json(capsys, "mask", "verify", str(canonical3), "--n", "100")
    assert code == 0 and rep["extra"]["is_masker"]
    code, rep = run_json(capsys, "mask", "verify", str(canonical3), "--set", "complex", "--n", "50")
    assert code == 1 and not rep["pass"]
    assert "witness_state" in rep["extra"]
    code, rep = run_json(capsys, "mask", "verify", str(canonical3), "--set", "complex", "--n", "50", "--expect", "not-masker")
    assert code == 0


def test_mask_verify_hidable(magic, capsys):
    for name in ("hidable", "sec6"):
        code, rep = run_json(capsys, "mask", "verify", str(magic), "--set", name, "--n", "200", "--expect", "partial-a")
        assert code == 0
        assert rep["extra"]["max_dev_a"] <= 1e-9
    code, _, err = run(capsys, "mask", "verify", str(magic), "--set", "phase")
    assert code == 2 and "--c" in err


def test_mask_verify_phase(tmp_path, capsys):
    path = tmp_path / "p.json"
    assert main(["mask", "build", "--kind", "phase", "--c", "0.6,0.8", "--out", str(path)]) == 0
    code, rep = run_json(capsys, "mask", "verify", str(path), "--set", "phase", "--c", "0.6,0.8", "--n", "100")
    assert code == 0 and rep["pass"]


def test_mask_build_kinds(capsys):
    for argv in (
        ["--kind", "spectrum", "--d", "3", "--spectrum", "1/4:4"],
        ["--kind", "qubit", "--mu", "0.25,0.25,0.5"],
        ["--kind", "canonical", "--d", "5", "--real"],
    ):
        code, obj = run_json(capsys, "mask", "build", *argv)
        assert code == 0 and "isometry" in obj
    assert run(capsys, "mask", "build", "--kind", "canonical")[0] == 2
    assert run(capsys, "mask", "build", "--kind", "spectrum", "--d", "3", "--spectrum", "0.3:3")[0] == 2


def test_extract_hr(canonical3, capsys):
    code, obj = run_json(capsys, "mask", "extract-hr", str(canonical3))
    assert code == 0
    assert obj["hr_a"]["count"] == 2
    assert max(obj["conditions"].values()) <= 1e-9


def test_measure_commands(tmp_path, canonical3, capsys):
    state = tmp_path / "s.json"
    ser.save_json(ser.matrix_to_json(np.array([[1], [1j]]) / np.sqrt(2)), state)
    code, rep = run_json(capsys, "measure", "roi", str(state))
    assert code == 0 and rep["rows"][0][1] == pytest.approx(1.0)
    code, rep = run_json(capsys, "measure", "table", "--max-d", "5")
    assert code == 0 and rep["rows"][-1][:3] == [5, 2, 3]
    code, rep = run_json(capsys, "measure", "maskcon", "--masker", str(canonical3), "--n", "20")
    assert code == 0 and rep["pass"]


def test_ic_commands(tmp_path, capsys):
    sic = tmp_path / "sic.json"
    basis = tmp_path / "basis.json"
    assert main(["ic", "fixtures", "--name", "sic2", "--out", str(sic)]) == 0
    assert main(["ic", "fixtures", "--name", "basis3", "--out", str(basis)]) == 0
    code, rep = run_json(capsys, "ic", "check", str(sic))
    assert code == 0 and dict(rep["rows"])["informationally_complete"] is True
    code, rep = run_json(capsys, "ic", "check", str(basis))
    assert code == 0 and dict(rep["rows"])["informationally_complete"] is False
    assert dict(rep["rows"])["separator_max_overlap"] <= 1e-10
    assert run_json(capsys, "ic", "design", str(sic))[0] == 0
    assert run_json(capsys, "ic", "design", str(basis))[0] == 1
    assert run(capsys, "ic", "design", str(sic), "--t", "3")[0] == 2
    code, rep = run_json(capsys, "ic", "disk", str(sic))
    assert code == 0 and dict(rep["rows"])["in_disk"] is False


def test_ic_triple_obstruction_extend(capsys):
    code, rep = run_json(capsys, "ic", "triple", "--c-squared", "0.5,0.5")
    assert code == 0 and abs(dict(rep["rows"])["imag"]) <= 1e-12
    code, rep = run_json(capsys, "ic", "triple", "--c-squared", "0.2,0.3,0.5")
    assert abs(dict(rep["rows"])["imag"]) >= 0.1
    code, rep = run_json(capsys, "ic", "obstruction")
    assert code == 0 and rep["claims"][0]["observed"] >= 0.5 - 1e-12
    code, rep = run_json(capsys, "ic", "extend", "--c", "1,1,1,1")
    assert code == 0
    vals = dict(rep["rows"])
    assert vals["correlation_rank"] == 2 and vals["marginal_deviation"] <= 1e-12


@pytest.mark.parametrize("which", ["entmask", "maskcon", "counterexample-d2", "hide-not-mask", "bott"])
def test_repro_passes(which, capsys):
    extra = ["--n", "50"] if which in ("maskcon", "hide-not-mask") else []
    code, rep = run_json(capsys, "repro", which, *extra)
    assert code == 0 and rep["pass"], rep
    assert "wall_time" not in rep


def test_json_is_byte_identical(capsys):
    a = run(capsys, "repro", "maskcon", "--n", "30", "--seed", "5")[1]
    b = run(capsys, "repro", "maskcon", "--n", "30", "--seed", "5")[1]
    c = run(capsys, "repro", "maskcon", "--n", "30", "--seed", "6")[1]
    assert a == b and a != c


def test_timing_flag(capsys):
    code, rep = run_json(capsys, "repro", "bott", "--timing")
    assert code == 0 and rep["wall_time"] >= 0


def test_csv_agrees_with_json(capsys):
    _, js = run_json(capsys, "repro", "counterexample-d2")
    code, text, _ = run(capsys, "repro", "counterexample-d2", "--format", "csv")
    assert code == 0
    claims_part = text.split("\n\n")[0]
    rows = list(csv.DictReader(io.StringIO(claims_part)))
    assert len(rows) == len(js["claims"])
    for row, claim in zip(rows, js["claims"]):
        assert row["description"] == claim["description"]
        if isinstance(claim["observed"], float):
            assert float(row["observed"]) == claim["observed"]


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nseed = 5\nn = 30\nformat = json\n")
    from_cfg = run(capsys, "repro", "maskcon", "--config", str(cfg))[1]
    direct = run(capsys, "repro", "maskcon", "--n", "30", "--seed", "5")[1]
    assert from_cfg == direct
    override = run(capsys, "repro", "maskcon", "--config", str(cfg), "--seed", "6")[1]
    assert override == run(capsys, "repro", "maskcon", "--n", "30", "--seed", "6")[1]
    assert read_config(cfg) == {"seed": 5, "n": 30, "format": "json"}
    cfg.write_text("colour = red\n")
    with pytest.raises(UsageError):
        read_config(cfg)
    assert run(capsys, "repro", "bott", "--config", str(cfg))[0] == 2


def test_usage_errors(tmp_path, capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "hr", "gen", "--count", "3")[0] == 2
    assert run(capsys, "hr", "gen", "--count", "3", "--dim", "3")[0] == 2
    assert run(capsys, "hr", "verify", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "repro", "bott", "--tol", "-1")[0] == 2
    assert run(capsys, "repro", "maskcon", "--n", "0")[0] == 2


def test_dimension_cap_exit_3(capsys):
    code, _, err = run(capsys, "hr", "gen", "--count", "1", "--dim", "8192")
    assert code == 3 and "limit" in err


def test_witness_state_file_roundtrip(tmp_path, magic, capsys):
    # a user-supplied state goes through the same reader as the CLI
    path = tmp_path / "w.json"
    ser.save_json(ser.matrix_to_json(hidable_witness()), path)
    code, rep = run_json(capsys, "measure", "roi", str(path))
    assert code == 0 and rep["rows"][0][1] > 0
