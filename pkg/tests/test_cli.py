import csv
import io
import json

import pytest

from eiwe import eiwe_pipeline
from eiwe.cli import ConfigError, main, parse_config


@pytest.fixture
def write_config(tmp_path):
    def _write(text, name="run.cfg"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_parse_config():
    cfg = parse_config("# comment\nr = 0.1, 0.2\nn_bar = 1e-3\nlambda = 0.5,1\nseed = 4\noracle = on\n")
    assert cfg.r == [0.1, 0.2] and cfg.n_bar == [1e-3] and cfg.strength == [0.5, 1.0]
    assert cfg.seed == 4 and cfg.cutoff == 60


@pytest.mark.parametrize(
    "text",
    [
        "r = 0.1\nn_bar = 1e-3\nbogus = 1\n",
        "r = 0.1\n",
        "r = 0.1\nn_bar = 1e-3\ntemperature = 300\n",
        "n_bar = 1e-3\n",
        "r = 0.1\nn_bar = abc\n",
        "r = 0.1\nn_bar = 1e-3\nmodel = classical\n",
        "r = 0.1 n_bar\n",
    ],
)
def test_parse_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_verify_eq4_zero_squeezing(write_config, capsys):
    path = write_config("r = 0\nn_bar = 1e-3, 1e-4\n")
    assert main(["verify-eq4", "--config", path]) == 0
    rows = read_csv(capsys.readouterr().out)
    assert list(rows[0]) == ["r", "xi", "n_bar", "S_eq", "S_cond", "W", "W_closed", "rel_dev"]
    assert all(float(row["W"]) == 0 for row in rows)


def test_verify_eq4_monotone(write_config, capsys):
    path = write_config("r = 0.6\nn_bar = 1e-3, 1e-4, 1e-5, 1e-6\n")
    assert main(["verify-eq4", "--config", path]) == 0
    devs = [float(row["rel_dev"]) for row in read_csv(capsys.readouterr().out)]
    assert all(b < a for a, b in zip(devs, devs[1:]))


def test_verify_eq4_threshold_violation(write_config, capsys):
    # xi = 0.9 at n_bar = 1e-4 deviates by ~8%, above the 5% bound.
    path = write_config("r = 1.818\nn_bar = 1e-4\n")
    assert main(["verify-eq4", "--config", path]) == 1


def test_malformed_config_exit_code(write_config):
    path = write_config("r = 0.6\nn_bar = 1e-3\nfrequency = 3\n")
    assert main(["verify-eq4", "--config", path]) == 2
    assert main(["verify-eq4", "--config", path + ".missing"]) == 2
    assert main(["no-such-command"]) == 2


def test_sweep_single_point_matches_pipeline(write_config, capsys):
    path = write_config("r = 0.6\nn_bar = 1e-3\nomega = 1.2e15\n")
    assert main(["sweep", "--config", path]) == 0
    (row,) = read_csv(capsys.readouterr().out)
    rep = eiwe_pipeline(0.6, 1.2e15, n_bar=1e-3)
    assert float(row["work"]) == pytest.approx(rep.work, rel=1e-14)
    # at least 12 significant digits
    mantissa = row["work"].split("e")[0].replace(".", "").lstrip("-")
    assert len(mantissa) >= 12


def test_sweep_grid_ordering_and_determinism(write_config, tmp_path):
    path = write_config("r = 0.6, 0.3\nn_bar = 1e-3\nlambda = 2, 0.5, 1\nphi = 0\nseed = 3\n")
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "--config", path, "--out", str(out1)]) == 0
    assert main(["sweep", "--config", path, "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    rows = read_csv(out1.read_text())
    keys = [(float(r["r"]), float(r["lambda"])) for r in rows]
    assert keys == sorted(keys) and len(rows) == 6


def test_sweep_json_carries_constants(write_config, capsys):
    path = write_config("r = 0.6\ntemperature = 2000\nmodel = bose_einstein\n")
    assert main(["sweep", "--config", path, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["metadata"]["constants"]["hbar"] == 1.054571817e-34
    assert len(doc["rows"]) == 1 and doc["rows"][0]["temperature"] == 2000.0


def test_oracle_compare(write_config, capsys):
    path = write_config("r = 0, 0.5\nn_bar = 0.2\noracle = on\ncutoff = 60\nn_outcomes = 3\n")
    assert main(["oracle-compare", "--config", path]) == 0
    rows = read_csv(capsys.readouterr().out)
    zero, main_row = rows
    assert float(zero["W_gaussian"]) == 0 and abs(float(zero["W_oracle"])) <= 1e-10
    assert float(main_row["rel_dev"]) <= 1e-5
    assert float(main_row["alpha_spread"]) <= 1e-5


def test_oracle_compare_truncation_flag(write_config, capsys):
    path = write_config("r = 1\nn_bar = 0.1\n")
    assert main(["oracle-compare", "--config", path, "--cutoff", "8"]) == 1
    (row,) = read_csv(capsys.readouterr().out)
    assert row["truncated"] == "1" and float(row["trace_defect"]) > 1e-6


def test_oracle_compare_needs_cutoff_and_warm_grid(write_config):
    assert main(["oracle-compare", "--config", write_config("r = 0.5\nn_bar = 0.2\n")]) == 2
    assert main(["oracle-compare", "--config", write_config("r = 0.5\nn_bar = 1e-3\ncutoff = 20\n")]) == 2


def test_curvature_command(capsys):
    assert main(["curvature", "--xi", "0", "--p0", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["delta_R"] == 0
    assert main(["curvature", "--xi", "1", "--p0", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["delta_R"] == pytest.approx(2.6441e-43, rel=1e-4)
    assert main(["curvature", "--xi", "1.5", "--p0", "1"]) == 2
