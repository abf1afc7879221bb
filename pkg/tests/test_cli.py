import numpy as np
from click.testing import CliRunner

from coanneal.cli import main
from coanneal.fixtures import validate_extremal_dnn


def run(*args):
    return CliRunner().invoke(main, list(args), catch_exceptions=False)


def test_help_lists_subcommands():
    res = run("--help")
    assert res.exit_code == 0
    for cmd in ("theta-ball", "covlab", "meanlab", "gap", "separate",
                "anneal", "ellipsoid", "gen-instance"):
        assert cmd in res.output


def test_theta_ball(tmp_path):
    out = tmp_path / "theta.csv"
    res = run("theta-ball", "--n", "2", "--s-max", "20", "--samples", "5",
              "--out", str(out))
    assert res.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,s,value"
    assert len(lines) == 6
    assert (tmp_path / "theta_long.csv").exists()


def test_covlab_cube_stdout():
    res = run("covlab", "--body", "cube", "--n", "3", "--ell", "0",
              "--ell", "20", "--samples", "200", "--seed", "1")
    assert res.exit_code == 0
    lines = res.output.splitlines()
    assert lines[0] == "n,ell,S,rho"
    assert len(lines) == 3


def test_gap_command(tmp_path):
    out = tmp_path / "gap.csv"
    res = run("gap", "--m", "2", "--ell", "8", "--samples", "8",
              "--seed", "2", "--out", str(out))
    assert res.exit_code == 0
    assert out.read_text().splitlines()[0] == "m,ell,S,gap,oracle_calls"


def test_anneal_with_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# small smoke run\n"
        "body = dnn\n"
        "m = 2\n"
        "algorithm = alg3\n"
        "ell = 8\n"
        "samples = 8\n"
        "seed = 5\n")
    out = tmp_path / "report.json"
    res = run("anneal", "--config", str(cfg), "--out", str(out))
    assert res.exit_code == 0
    import json
    data = json.loads(out.read_text())
    assert data["algorithm"] == "anneal_heuristic"
    assert len(data["phases"]) > 0


def test_anneal_rejects_bad_config(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("this line has no equals sign\n")
    res = CliRunner().invoke(main, ["anneal", "--config", str(cfg)])
    assert res.exit_code != 0
    assert "bad config line" in res.output


def test_ellipsoid_command():
    res = run("ellipsoid", "--m", "2", "--tol", "1e-4", "--seed", "0")
    assert res.exit_code == 0
    assert "value:" in res.output


def test_gen_instance(tmp_path):
    out = tmp_path / "inst.txt"
    res = run("gen-instance", "--seed", "3", "--out", str(out))
    assert res.exit_code == 0
    Y = np.loadtxt(out)
    validate_extremal_dnn(Y)
