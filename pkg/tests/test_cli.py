import json

import numpy as np
import pytest

from ligi import cli
from ligi.errors import FixedPointDivergence


def run(argv):
    return cli.main(argv)


def read_csv(path):
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    return header, rows


def test_integrate_writes_csv(tmp_path):
    out = tmp_path / "traj.csv"
    code = run(["integrate", "--problem", "frb_s2", "--scheme", "rkmk4",
                "--h", "0.05", "--steps", "10", "--out", str(out)])
    assert code == 0
    header, rows = read_csv(out)
    assert header == ["t", "m1", "m2", "m3", "norm", "energy"]
    assert len(rows) == 11
    assert float(rows[0][0]) == 0.0
    assert abs(float(rows[-1][0]) - 0.5) < 1e-15


def test_integrate_single_step_two_rows(tmp_path):
    out = tmp_path / "one.csv"
    assert run(["integrate", "--problem", "duffing_sl2", "--scheme", "lie_euler",
                "--h", "0.1", "--steps", "1", "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert len(rows) == 2


def test_integrate_deterministic_output(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["integrate", "--problem", "stiefel_pca", "--scheme", "cf4",
            "--h", "0.05", "--steps", "5", "--seed", "3"]
    assert run(argv + ["--out", str(a)]) == 0
    assert run(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_integrate_seed_changes_start(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    base = ["integrate", "--problem", "stiefel_pca", "--scheme", "cf4",
            "--h", "0.05", "--steps", "1"]
    run(base + ["--seed", "3", "--out", str(a)])
    run(base + ["--seed", "4", "--out", str(b)])
    assert a.read_bytes() != b.read_bytes()


def test_heavytop_preset_config(tmp_path):
    # Desk-scale preset, shortened for the smoke test; full runs live in the
    # acceptance suite.
    out = tmp_path / "ht.csv"
    code = run(["integrate", "--preset", "heavytop-theta05", "--steps", "50",
                "--out", str(out)])
    assert code == 0
    header, rows = read_csv(out)
    assert header[0] == "t"
    assert header[1:10] == [f"g{i}{j}" for i in (1, 2, 3) for j in (1, 2, 3)]
    assert header[10:13] == ["mu1", "mu2", "mu3"]
    assert header[13] == "energy"
    assert len(rows) == 51
    energies = np.array([float(r[13]) for r in rows])
    assert abs(energies[0] - 600001.0) < 1e-9


def test_frb_s3_dg_flags(tmp_path):
    out = tmp_path / "dg.csv"
    code = run(["integrate", "--problem", "frb_s3", "--scheme", "dg",
                "--h", "0.015625", "--steps", "20", "--out", str(out)])
    assert code == 0
    header, rows = read_csv(out)
    assert header[:5] == ["t", "q0", "q1", "q2", "q3"]
    energies = np.array([float(r[header.index("energy")]) for r in rows])
    assert np.max(np.abs(energies - energies[0])) / abs(energies[0]) < 1e-11
    norms = np.array([float(r[header.index("norm")]) for r in rows])
    assert np.max(np.abs(norms - 1.0)) < 1e-12


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"problem": "frb_s2", "scheme": "rkmk4",
                               "h": 0.05, "steps": 100}))
    out = tmp_path / "o.csv"
    # flags override file values: 3 steps, not 100
    assert run(["integrate", "--config", str(cfg), "--steps", "3",
                "--out", str(out)]) == 0
    _, rows = read_csv(out)
    assert len(rows) == 4


def test_order_json_rkmk4(capsys):
    code = run(["order", "--problem", "frb_s2", "--scheme", "rkmk4",
                "--h-list", "0.1,0.05,0.025,0.0125", "--T", "2.0"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["scheme"] == "rkmk4"
    assert 3.7 <= report["slope"] <= 4.3
    assert len(report["errors"]) == 4


def test_order_json_lie_euler(capsys):
    code = run(["order", "--problem", "frb_s2", "--scheme", "lie_euler",
                "--h-list", "0.1,0.05,0.025,0.0125", "--T", "2.0"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    assert 0.8 <= report["slope"] <= 1.2


def test_order_requires_three_step_sizes(capsys):
    code = run(["order", "--problem", "frb_s2", "--scheme", "rkmk4",
                "--h-list", "0.1"])
    assert code == 2
    assert "step sizes" in capsys.readouterr().err


def test_drift_report_classification(capsys):
    code = run(["drift", "--problem", "frb_s2", "--scheme", "rkmk4",
                "--h", "0.05", "--steps", "400"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    inv = report["invariants"]
    assert inv["norm"]["classification"] == "no-drift"
    assert inv["energy"]["classification"] == "no-drift"
    assert inv["energy"]["max_rel_deviation"] < 1e-6


def test_drift_frb_s3_energy_preserving(capsys):
    code = run(["drift", "--problem", "frb_s3", "--scheme", "dg",
                "--h", "0.015625", "--steps", "150"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    energy = report["invariants"]["energy"]
    assert energy["classification"] == "no-drift"
    assert energy["max_rel_deviation"] <= 1e-10
    assert report["invariants"]["norm"]["max_rel_deviation"] <= 1e-12


def test_validation_failures_exit_2(capsys):
    assert run(["integrate", "--problem", "nope", "--scheme", "rkmk4",
                "--h", "0.1", "--steps", "2"]) == 2
    assert run(["integrate", "--problem", "frb_s2", "--scheme", "rkmk4",
                "--h", "-0.1", "--steps", "2"]) == 2
    assert run(["integrate", "--problem", "frb_s2", "--scheme", "rkmk4",
                "--h", "0.1", "--steps", "0"]) == 2
    assert run(["integrate", "--problem", "frb_s2", "--scheme", "symplectic_theta",
                "--h", "0.1", "--steps", "2"]) == 2
    capsys.readouterr()


def test_unknown_config_key_exit_2(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"problem": "frb_s2", "scheme": "rkmk4",
                               "h": 0.05, "steps": 2, "bogus": 1}))
    assert run(["integrate", "--config", str(cfg)]) == 2
    assert "bogus" in capsys.readouterr().err


def test_solver_divergence_exit_3(monkeypatch, capsys):
    def exploding(*args, **kwargs):
        raise FixedPointDivergence("stage equations diverged", h=0.05,
                                   residual=1.0)

    monkeypatch.setattr(cli, "integrate_cotangent", exploding)
    code = run(["integrate", "--preset", "heavytop-theta05", "--steps", "3"])
    assert code == 3
    assert "divergence" in capsys.readouterr().err


def test_presets_all_valid():
    for name, values in cli.PRESETS.items():
        config = cli.RunConfig(command="integrate", **values)
        config.validate()
        assert values["problem"] in cli.PROBLEMS


def test_help_lists_presets(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--help"])
    out = capsys.readouterr().out
    assert "heavytop-theta05" in out
