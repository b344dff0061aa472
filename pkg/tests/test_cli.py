import json
import subprocess
import sys

import pytest

from jampose import read_results
from jampose.cli import main

FAST = ["--restarts", "3", "--iterations", "300"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def min_sinr(out):
    line = next(l for l in out.splitlines() if l.startswith("min SINR"))
    return float(line.split()[2])


@pytest.fixture
def three_nodes(tmp_path):
    p = tmp_path / "three.json"
    p.write_text(json.dumps({
        "name": "three",
        "legit_nodes": [[0, 0, 0], [0, 50, 0], [30, 0, 0]],
        "jammer": [17, 15, 4],
        "sigma2_over_p": 0.001,
        "pm_over_p": 1,
        "z_bounds": [8, 30],
    }))
    return p


def test_solve_report(capsys):
    code, out, _ = run(capsys, "solve", "--strategy", "vertical", *FAST)
    assert code == 0
    for key in ("position [m]", "roll", "pitch", "SINR node 1", "SINR node 2", "min SINR", "evaluations"):
        assert key in out
    assert "deg)" in out and "dB)" in out


def test_solve_zero_interference_ignores_pm(capsys):
    a = min_sinr(run(capsys, "solve", "--strategy", "zero-interference", "--pm-over-p", "0.01", *FAST)[1])
    b = min_sinr(run(capsys, "solve", "--strategy", "zero-interference", "--pm-over-p", "1000", *FAST)[1])
    assert a == b


def test_solve_max_gain_three_nodes_exit_3(capsys, three_nodes):
    code, _, err = run(capsys, "solve", "--scenario", str(three_nodes), "--strategy", "max-gain", *FAST)
    assert code == 3
    assert "N = 2" in err


def test_solve_seed_is_reproducible(capsys):
    argv = ["solve", "--strategy", "optimal", "--seed", "7", *FAST]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_solve_bad_scenario_exit_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"legit_nodes": [[0,0,0],[0,0,0]], "jammer": [1,1,1], "sigma2_over_p": 1, "z_bounds": [1,2]}')
    code, _, err = run(capsys, "solve", "--scenario", str(p), "--strategy", "vertical")
    assert code == 2 and "duplicate" in err
    code, _, _ = run(capsys, "solve", "--scenario", str(tmp_path / "nope.json"), "--strategy", "vertical")
    assert code == 2


def test_unknown_strategy_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--strategy", "beamforming"])
    assert exc.value.code == 2


def test_sweep_writes_csv(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    code, stdout, _ = run(capsys, "sweep", "--pm-range", "0.1", "10", "3",
                          "--strategies", "vertical,zero-interference", "--out", str(out), *FAST)
    assert code == 0
    rows = read_results(out)
    assert [(r["pm_over_p"], r["strategy"]) for r in rows] == [
        (0.1, "vertical"), (0.1, "zero_interference"),
        (1.0, "vertical"), (1.0, "zero_interference"),
        (10.0, "vertical"), (10.0, "zero_interference"),
    ]
    assert "wrote 6 rows" in stdout


def test_sweep_explicit_values_with_zero(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "sweep", "--pm-values", "0,5", "--strategies", "vertical",
                     "--out", str(out), *FAST)
    assert code == 0
    assert [r["pm_over_p"] for r in read_results(out)] == [0.0, 5.0]


def test_sweep_failure_leaves_previous_file(capsys, tmp_path, three_nodes):
    out = tmp_path / "sweep.csv"
    out.write_text("old\n")
    code, _, _ = run(capsys, "sweep", "--scenario", str(three_nodes), "--pm-values", "1,2",
                     "--strategies", "vertical,max-gain", "--out", str(out), *FAST)
    assert code == 3
    assert out.read_text() == "old\n"


def test_sweep_rejects_unsorted_values(capsys, tmp_path):
    code, _, _ = run(capsys, "sweep", "--pm-values", "5,1", "--out", str(tmp_path / "x.csv"))
    assert code == 2


def test_verify_single_point_grid(capsys):
    code, out, _ = run(capsys, "verify", "--strategy", "vertical", "--grid", "1", "1", "1", *FAST)
    assert code == 0
    assert "PASS" in out and "oracle objective" in out and "relative gap" in out


def test_verify_grid_cap(capsys):
    code, _, err = run(capsys, "verify", "--strategy", "optimal",
                       "--grid", "100", "100", "100", "100", "100")
    assert code == 2 and "grid cap exceeded" in err


def test_verify_reports_failure(capsys):
    # a crippled solver (one chain, no annealing, no polish) loses to the grid
    code, out, _ = run(capsys, "verify", "--strategy", "vertical", "--grid", "20", "20", "10",
                       "--pm-over-p", "1000", "--restarts", "1", "--iterations", "0",
                       "--tolerance", "0.0")
    assert code == 1
    assert "FAIL" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jampose.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "solve" in proc.stdout
