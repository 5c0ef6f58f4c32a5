import json
import math
import os
from pathlib import Path

import numpy as np
import pytest

from cpcpower import cli, waveform
from cpcpower.circuit import circuit_to_dict, load_circuit, parse_circuit

ROOT = Path(__file__).resolve().parents[1]
EXAMPLES = ROOT / "src" / "cpcpower" / "examples"
DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"
NONSIN = str(EXAMPLES / "rl_nonsinusoidal.json")


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def cell(out, quantity, column=1):
    for line in out.splitlines():
        parts = line.split()
        if parts and parts[0] == quantity:
            return parts[column]
    raise AssertionError(f"{quantity} not in output")


@pytest.mark.parametrize("name", ["rl_sinusoidal", "rl_nonsinusoidal", "rl_full_comp"])
def test_report_golden(capsys, name):
    code, out, _ = run(capsys, "report", EXAMPLES / f"{name}.json")
    assert code == 0
    assert out == (GOLDEN / f"report_{name}.txt").read_text()


@pytest.mark.parametrize("strategy", ["budeanu", "iliovici", "full"])
def test_compensate_golden(capsys, strategy):
    code, out, _ = run(capsys, "compensate", NONSIN, "--strategy", strategy)
    assert code == 0
    assert out == (GOLDEN / f"compensate_{strategy}.txt").read_text()


def test_decompose_and_lissajous_golden(capsys):
    assert run(capsys, "decompose", NONSIN)[1] == (GOLDEN / "decompose_rl_nonsinusoidal.txt").read_text()
    pairs = ",".join(cli.PAIRS)
    assert run(capsys, "lissajous", NONSIN, "--pairs", pairs)[1] == (
        GOLDEN / "lissajous_rl_nonsinusoidal.txt"
    ).read_text()


def test_report_values(capsys):
    _, out, _ = run(capsys, "report", NONSIN)
    assert cell(out, "P") == "20.248"
    assert cell(out, "Q_I") == "52.376"
    assert cell(out, "character") == "passive-inductive"


def test_report_resistive(capsys):
    _, out, _ = run(capsys, "report", DATA / "resistive.json")
    assert cell(out, "PF") == "1.000"
    assert cell(out, "Q_r") == "0.000"


def test_report_json_and_csv_full_precision(capsys):
    code, out, _ = run(capsys, "report", NONSIN, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["P"] == pytest.approx(20.247524752475247, rel=1e-15)
    assert data["per_harmonic"]["5"]["G"] == pytest.approx(1 / 101)
    _, out, _ = run(capsys, "report", NONSIN, "--format", "csv")
    rows = dict(line.split(",", 1) for line in out.splitlines())
    assert float(rows["S"]) == pytest.approx(data["S"], rel=1e-15)
    assert rows["load_character"] == "passive-inductive"
    _, out, _ = run(capsys, "compensate", NONSIN, "--strategy", "full", "--format", "json")
    stages = json.loads(out)
    assert [s["stage"] for s in stages] == ["Uncompensated", "Iliovici comp.", "Full comp."]
    assert stages[-1]["compensators"][1]["kind"] == "SeriesLC"


def test_compensate_budeanu_warns(capsys):
    code, out, err = run(capsys, "compensate", NONSIN, "--strategy", "budeanu")
    assert code == 0
    assert "power factor degraded" in err
    assert cell(out, "PF", 2) == "0.353"
    assert cell(out, "C", 2) == "0.189"


def test_compensate_full_values(capsys):
    _, out, err = run(capsys, "compensate", NONSIN, "--strategy", "full")
    assert err == ""
    assert (cell(out, "C", 3), cell(out, "L_x", 3), cell(out, "C_x", 3)) == ("0.072", "0.922", "0.252")
    assert cell(out, "PF", 3) == "0.905"


def test_compensate_iliovici_on_resistive(capsys):
    code, out, _ = run(capsys, "compensate", DATA / "resistive.json", "--strategy", "iliovici")
    assert code == 0
    assert out.startswith("Compensator: none\n")
    for line in out.splitlines()[3:]:
        parts = line.split()
        if len(parts) >= 3 and parts[0] != "character":
            assert parts[1] == parts[2], line


def test_malformed_input_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, err = run(capsys, "report", bad)
    assert code == 2 and err.startswith("error:") and out == ""
    bad.write_text(json.dumps({"omega": -1, "source": {}, "load": {"R": 1}}))
    assert run(capsys, "report", bad)[0] == 2
    bad.write_text(json.dumps({"omega": 1, "source": {"harmonics": [{"n": 1, "a": 1}, {"n": 1, "a": 2}]},
                               "load": {"R": 1}}))
    assert run(capsys, "report", bad)[0] == 2
    assert run(capsys, "report", tmp_path / "missing.json")[0] == 2


def test_unknown_pair_exit_2(capsys):
    code, _, err = run(capsys, "lissajous", NONSIN, "--pairs", "source,bogus")
    assert code == 2 and "bogus" in err


def test_undersampling_exit_2(capsys):
    assert run(capsys, "lissajous", NONSIN, "--samples", "8")[0] == 2


def test_singular_exit_3(capsys, tmp_path):
    # an ideal inductor across a source with a DC term draws unbounded current
    f = tmp_path / "short.json"
    f.write_text(json.dumps({"omega": 1, "source": {"dc": 1.0, "harmonics": [{"n": 1, "a": 1}]}, "load": {"L": 1}}))
    code, _, err = run(capsys, "report", f)
    assert code == 3 and err.startswith("error:")


def test_unsupported_compensation_exit_5(capsys):
    code, _, err = run(capsys, "compensate", DATA / "three_harmonics.json", "--strategy", "full")
    assert code == 5 and "unsupported compensator order" in err
    code, _, err = run(capsys, "compensate", EXAMPLES / "rl_sinusoidal.json", "--strategy", "full")
    assert code == 5 and "unsupported compensator order" in err


def test_decompose_writes_csvs(capsys, tmp_path):
    code, out, _ = run(capsys, "decompose", NONSIN, "--out", tmp_path / "rl", "--samples", "128")
    assert code == 0
    assert "ia       1   1.620" in out and "ia       5   0.810" in out
    for name in ("ia", "isa", "ir", "iI", "isr", "ig", "total"):
        header, data = waveform.read_csv(tmp_path / f"rl_{name}.csv")
        assert header == ["t", "u", "i"] and data.shape == (128, 3)


def test_decompose_sinusoidal_isa_is_zero(capsys, tmp_path):
    run(capsys, "decompose", EXAMPLES / "rl_sinusoidal.json", "--out", tmp_path / "s")
    _, data = waveform.read_csv(tmp_path / "s_isa.csv")
    assert np.all(data[:, 2] == 0.0)


def test_unwritable_prefix_exit_4(capsys, tmp_path):
    target = tmp_path / "no" / "such" / "dir" / "x"
    assert run(capsys, "decompose", NONSIN, "--out", target)[0] == 4
    assert run(capsys, "lissajous", NONSIN, "--out", target)[0] == 4


def test_lissajous_areas(capsys, tmp_path):
    _, out, _ = run(capsys, "lissajous", NONSIN, "--pairs", "source,active", "--out", tmp_path / "f")
    assert cell(out, "source", 2) == "52.376"
    assert cell(out, "active", 4) == "degenerate"
    header, data = waveform.read_csv(tmp_path / "f_source.csv")
    assert header == ["u", "i"] and data.shape == (4096, 2)
    _, out, _ = run(capsys, "lissajous", DATA / "inductor.json")
    assert float(cell(out, "source", 1)) == pytest.approx(math.pi, abs=5e-4)
    assert cell(out, "source", 4) == "anticlockwise"


def test_samples_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("CPC_SAMPLES", "64")
    run(capsys, "lissajous", NONSIN, "--out", tmp_path / "e")
    assert waveform.read_csv(tmp_path / "e_source.csv")[1].shape == (64, 2)
    run(capsys, "lissajous", NONSIN, "--out", tmp_path / "e", "--samples", "32")
    assert waveform.read_csv(tmp_path / "e_source.csv")[1].shape == (32, 2)
    monkeypatch.setenv("CPC_SAMPLES", "many")
    assert run(capsys, "lissajous", NONSIN)[0] == 2


def test_bad_arguments_exit_2(capsys):
    assert run(capsys, "compensate", NONSIN)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


@pytest.mark.parametrize("path", sorted(EXAMPLES.glob("*.json")) + sorted(DATA.glob("*.json")))
def test_circuit_round_trip(path):
    c = load_circuit(path)
    again = parse_circuit(json.loads(json.dumps(circuit_to_dict(c))))
    assert again == c


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "cpcpower", "report", NONSIN, "--format", "json"],
                         capture_output=True, text=True, env={**os.environ, "PYTHONIOENCODING": "utf-8"})
    assert res.returncode == 0
    assert json.loads(res.stdout)["Q_I"] == pytest.approx(52.376, abs=1e-3)


@pytest.mark.parametrize("value, text", [
    (0.4025, "0.403"), (-0.4025, "-0.403"), (0.0004, "0.000"), (-0.0004, "0.000"), (50.3085, "50.309"),
])
def test_round3_half_away_from_zero(value, text):
    # decimal expansion of the float decides ties: 0.4025 is stored as 0.40250000000000002
    assert cli.round3(value) == text
