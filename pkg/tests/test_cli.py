import json
import subprocess
import sys

import numpy as np
import pytest

from swarmsphere.cli import main
from swarmsphere.io import read_cloud
from swarmsphere.welzl import brute_force_ses, welzl_ses


@pytest.fixture
def shell_csv(tmp_path):
    path = tmp_path / "a.csv"
    assert main(["gen", "--radius", "7", "--n", "634", "--sigma", "0.35", "--seed", "1", "--out", str(path)]) == 0
    return path


def test_gen_writes_rows(shell_csv, capsys):
    assert len(shell_csv.read_text().splitlines()) == 635
    assert read_cloud(shell_csv).shape == (634, 3)


def test_gen_two_sphere(tmp_path):
    path = tmp_path / "b.json"
    assert main(["gen", "--two-sphere", "--n", "634", "--seed", "2", "--out", str(path)]) == 0
    assert read_cloud(path).shape == (1268, 3)


def test_gen_summary_and_stdout(capsys):
    assert main(["gen", "--n", "5", "--seed", "4"]) == 0
    out, err = capsys.readouterr()
    assert out.splitlines()[0] == "x,y,z" and len(out.splitlines()) == 6
    assert "n: 5" in err and "seed: 4" in err and "bounding box" in err


def test_gen_prints_generated_seed(capsys, tmp_path):
    assert main(["gen", "--n", "5", "--out", str(tmp_path / "c.csv")]) == 0
    err = capsys.readouterr().err
    seed = int(err.split("seed: ")[1].split()[0])
    again = tmp_path / "d.csv"
    main(["gen", "--n", "5", "--seed", str(seed), "--out", str(again)])
    assert again.read_bytes() == (tmp_path / "c.csv").read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--n", "0"],
        ["gen", "--radius", "-1"],
        ["gen", "--sigma", "-0.1"],
        ["gen", "--seed", "-3"],
        ["gen", "--bogus"],
        ["solve", "x.csv", "--algo", "magic"],
        ["solve", "x.csv", "--weights", "1,2"],
        ["solve", "x.csv", "--particles", "0"],
        [],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1


def test_invalid_config_rejected_before_reading(tmp_path, capsys):
    # One particle is invalid; the missing file must not be touched first.
    assert main(["solve", str(tmp_path / "missing.csv"), "--particles", "1", "--seed", "0"]) == 1
    assert "invalid swarm config" in capsys.readouterr().err


def test_missing_file_exit_2(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "nope.csv"), "--algo", "welzl"]) == 2


def test_parse_error_names_line(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y,z\n1,2,3\n1,oops,3\n")
    assert main(["solve", str(bad), "--algo", "welzl"]) == 2
    assert "line 3" in capsys.readouterr().err


def test_solver_failure_exit_3(tmp_path, capsys):
    big = tmp_path / "big.csv"
    main(["gen", "--n", "61", "--seed", "0", "--out", str(big)])
    assert main(["solve", str(big), "--algo", "brute"]) == 3
    assert "oracle size limit" in capsys.readouterr().err


def test_solve_welzl_report(shell_csv, tmp_path):
    out = tmp_path / "w.json"
    assert main(["solve", str(shell_csv), "--algo", "welzl", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["enclosed_fraction"] == 1.0
    assert 1 <= len(rep["support"]) <= 4
    assert set(rep) >= {"center", "radius", "support", "max_violation", "enclosed_fraction"}


def test_solve_brute_matches_welzl(tmp_path, capsys):
    small = tmp_path / "small.csv"
    main(["gen", "--n", "40", "--seed", "9", "--out", str(small)])
    main(["solve", str(small), "--algo", "brute", "--out", str(tmp_path / "b.json")])
    main(["solve", str(small), "--algo", "welzl", "--out", str(tmp_path / "w.json")])
    b = json.loads((tmp_path / "b.json").read_text())
    w = json.loads((tmp_path / "w.json").read_text())
    assert w["radius"] == pytest.approx(b["radius"], rel=1e-9)
    assert b["radius"] == brute_force_ses(read_cloud(small)).radius


def test_solve_pso_is_byte_deterministic(shell_csv, tmp_path):
    for name in ("r1.json", "r2.json"):
        argv = ["solve", str(shell_csv), "--algo", "pso", "--seed", "7", "--iters", "150",
                "--out", str(tmp_path / name)]
        assert main(argv) == 0
    assert (tmp_path / "r1.json").read_bytes() == (tmp_path / "r2.json").read_bytes()
    assert (tmp_path / "r1.trace.csv").read_bytes() == (tmp_path / "r2.trace.csv").read_bytes()
    rep = json.loads((tmp_path / "r1.json").read_text())
    assert rep["seed"] == 7 and rep["config"]["max_iters"] == 150
    assert rep["cloud"]["sha256"]


def test_solve_pso_flags(shell_csv, tmp_path):
    out, trace = tmp_path / "r.json", tmp_path / "t.csv"
    argv = ["solve", str(shell_csv), "--seed", "1", "--weights", "1,0.5,0.01", "--particles", "12",
            "--iters", "30", "--out", str(out), "--trace", str(trace)]
    assert main(argv) == 0
    rep = json.loads(out.read_text())
    assert rep["weights"] == {"lambda": 1.0, "alpha": 0.5, "beta": 0.01}
    assert rep["config"]["n_particles"] == 12
    assert trace.read_text().startswith("iter,gbest_j,")


def test_compare_report(shell_csv, tmp_path, capsys):
    out = tmp_path / "c.json"
    assert main(["compare", str(shell_csv), "--seed", "3", "--iters", "200", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["welzl_inside_fraction"] == 1.0
    assert rep["radius_ratio"] == pytest.approx(rep["pso"]["radius"] / rep["welzl"]["radius"])
    assert len(rep["pso_trace"]["gbest_j"]) == rep["pso"]["iterations"] + 1
    assert rep["cloud_meta"]["n_points"] == 634
    table = capsys.readouterr().out
    assert "radius ratio" in table and "Welzl" in table


def test_compare_generates_cloud(capsys):
    assert main(["compare", "--n", "80", "--seed", "5", "--iters", "50", "--two-sphere"]) == 0
    out = capsys.readouterr().out
    rep = json.loads(out)
    meta = rep["cloud_meta"]
    assert meta["source"] == "generated" and meta["two_sphere"] and meta["seed"] == 5
    assert meta["n_points"] == 160


def test_numeric_output_precision(shell_csv, tmp_path):
    main(["solve", str(shell_csv), "--algo", "welzl", "--out", str(tmp_path / "w.json")])
    radius = json.loads((tmp_path / "w.json").read_text())["radius"]
    # Reports carry full round-trip precision, well beyond ten digits.
    assert radius == welzl_ses(read_cloud(shell_csv)).sphere.radius


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "swarmsphere", "gen", "--n", "3", "--seed", "0"],
                          capture_output=True, text=True, check=True)
    rows = np.array([line.split(",") for line in proc.stdout.splitlines()[1:]], dtype=float)
    assert rows.shape == (3, 3)
