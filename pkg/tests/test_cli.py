import json

import numpy as np
import pytest

from dsscat.circuit import CircuitSpec
from dsscat.cli import main, parse_angle, parse_complex
from dsscat.states import EVEN, ODD, scs
from dsscat.wigner import load_grid


@pytest.mark.parametrize("text,value", [("+", EVEN), ("-", ODD), ("even", EVEN), ("0.3", 0.3)])
def test_parse_angle(text, value):
    assert parse_angle(text) == value


def test_parse_complex():
    assert parse_complex("0.5,-1") == 0.5 - 1j
    assert parse_complex("2") == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "dsscat" in capsys.readouterr().out


def test_missing_subcommand():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_bad_flag_value():
    with pytest.raises(SystemExit) as exc:
        main(["optimize", "--order", "3", "--q", "+", "--alpha-scs", "1"])
    assert exc.value.code == 1


def test_optimize(capsys):
    assert main(["optimize", "--order", "1", "--q", "-", "--alpha-scs", "0.8", "--restarts", "4"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["fidelity_sq"] == pytest.approx(0.999376, abs=2e-4)


def test_optimize_numeric_failure(capsys):
    assert main(["optimize", "--order", "1", "--q", "+", "--alpha-scs", "-1"]) == 2
    assert "numeric failure" in capsys.readouterr().err


def test_small_dim_rejected(capsys):
    assert main(["verify", "--dim", "4"]) == 1


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"restarts": 3, "seed_list": [5, 6]}))
    assert main(["optimize", "--config", str(cfg), "--order", "1", "--q", "+", "--alpha-scs", "0.8"]) == 0
    assert json.loads(capsys.readouterr().out)["restarts_used"] == 3


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"colour": 1}))
    assert main(["verify", "--config", str(cfg)]) == 1


def test_table_writes_files(tmp_path, capsys):
    assert main(["table", "1", "--out-dir", str(tmp_path), "--restarts", "6"]) == 0
    assert (tmp_path / "table1.csv").read_text().startswith("alpha_scs,q,branch")
    assert json.loads((tmp_path / "table1.json").read_text())["table"] == 1
    assert "max |dF|" in capsys.readouterr().out


def test_simulate(tmp_path, capsys):
    path = tmp_path / "c.json"
    spec = CircuitSpec.two_addition(0.5j, -1j, 40)
    path.write_text(spec.to_json())
    assert main(["simulate", str(path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "# n re im" and lines[-1].startswith("# scale")
    amps = np.array([complex(float(l.split()[1]), float(l.split()[2])) for l in lines[1:-1]])
    assert np.sum(np.abs(amps) ** 2) > 1 - 1e-9


def test_simulate_bad_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text("{}")
    assert main(["simulate", str(path)]) == 1


def test_wigner_scs(tmp_path, capsys):
    out = tmp_path / "w.txt"
    assert main(["wigner", "scs", "--alpha-scs", "1", "--q", "-", "--nx", "41", "--np", "41",
                 "--x-range=-4,4", "--p-range=-4,4", "--out", str(out)]) == 0
    grid = load_grid(out)
    assert grid.values[20, 20] == pytest.approx(-2 / np.pi)
    assert "W near origin -0.63" in capsys.readouterr().out


def test_wigner_circuit_json(tmp_path):
    circ = tmp_path / "c.json"
    circ.write_text(CircuitSpec.two_addition(0.373226j, -2.64328j).to_json())
    out = tmp_path / "w.json"
    assert main(["wigner", "circuit", "--circuit", str(circ), "--nx", "5", "--np", "5", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["format"] == "wigner v1"


def test_wigner_file_numeric(tmp_path):
    state = tmp_path / "s.npy"
    np.save(state, scs(EVEN, 1.0, 40).amps)
    out = tmp_path / "w.txt"
    assert main(["wigner", "file", "--state", str(state), "--nx", "2", "--np", "2", "--out", str(out)]) == 0
    assert load_grid(out).values.shape == (2, 2)


def test_wigner_missing_amplitude():
    assert main(["wigner", "scs"]) == 1


def test_wigner_rejects_single_point():
    with pytest.raises(SystemExit) as exc:
        main(["wigner", "scs", "--alpha-scs", "1", "--nx", "1"])
    assert exc.value.code == 1


def test_verify_subset(capsys):
    assert main(["verify", "--only", "gamma_transform", "parity_zeros"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 2 and all(l.startswith("PASS") for l in out)


def test_verify_json_failure(capsys):
    assert main(["verify", "--dim", "12", "--json", "--only", "vacuum_rep"]) == 2
    assert json.loads(capsys.readouterr().out)["passed"] is False
