import json
import subprocess
import sys

import numpy as np
import pytest

from monodelta import build_tournament, load_csv
from monodelta.cli import run_cli


@pytest.fixture
def data_csv(tmp_path):
    rng = np.random.default_rng(0)
    z = rng.standard_normal(30)[:, None] + 0.7 * rng.standard_normal((30, 4))
    x = np.clip(np.rint(3 + z), 1, 5).astype(int)
    p = tmp_path / "survey.csv"
    p.write_text("q1,q2,q3,q4\n" + "\n".join(",".join(map(str, r)) for r in x) + "\n")
    return p


def test_compute_json(data_csv, capsys):
    code = run_cli(["compute", "--input", str(data_csv), "--measures", "alpha,delta", "--seed", "42", "--format", "json"])
    out, err = capsys.readouterr()
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert [r["measure"] for r in payload["rows"]] == ["alpha", "monotone_delta"]
    assert payload["meta"]["seed"] == 42
    assert payload["meta"]["variance_mode"] == "sample"


def test_compute_table_to_file(data_csv, tmp_path, capsys):
    out_path = tmp_path / "out.txt"
    assert run_cli(["compute", "--input", str(data_csv), "--output", str(out_path), "--restarts", "2"]) == 0
    assert capsys.readouterr().out == ""
    header = out_path.read_text().splitlines()[0].split()
    assert header[0] == "dataset" and "monotone_delta" in header


def test_omega_alias_follows_variant(data_csv, capsys):
    run_cli(["compute", "--input", str(data_csv), "--measures", "omega", "--omega-variant", "conventional", "--format", "csv"])
    assert capsys.readouterr().out.splitlines()[1].startswith("survey,omega_conventional,")


def test_missing_file(capsys):
    assert run_cli(["compute", "--input", "missing.csv"]) == 1
    assert capsys.readouterr().err.startswith("error[IO]:")


def test_bad_data_file(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    p.write_text("a,b\n1,2\n3\n")
    assert run_cli(["compute", "--input", str(p)]) == 1
    assert capsys.readouterr().err.startswith("error[RAGGED_ROW]:")


@pytest.mark.parametrize(
    "argv",
    [["compute"], ["frobnicate"], ["compute", "--input", "x.csv", "--measures", "nope"], ["compute", "--format", "xml"], []],
)
def test_usage_errors(argv, capsys):
    assert run_cli(argv) == 2
    assert "error[USAGE]:" in capsys.readouterr().err


def test_oracle_limit(tmp_path, capsys):
    rng = np.random.default_rng(1)
    p = tmp_path / "big.csv"
    p.write_text("a,b,c\n" + "\n".join(",".join(map(str, r)) for r in rng.integers(1, 6, (50, 3))) + "\n")
    assert run_cli(["oracle", "--input", str(p)]) == 1
    assert capsys.readouterr().err.startswith("error[INSTANCE_TOO_LARGE]:")


def test_oracle_small(tmp_path, capsys):
    p = tmp_path / "small.csv"
    p.write_text("a,b,c\n1,2,3\n2,3,4\n3,3,5\n5,4,4\n1,5,2\n")
    assert run_cli(["oracle", "--input", str(p), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["meta"]["agree"] is True
    exact, local = payload["rows"]
    assert exact["value"] == local["value"]


def test_dump_tournament(data_csv, capsys):
    assert run_cli(["dump-tournament", "--input", str(data_csv)]) == 0
    w = np.loadtxt(capsys.readouterr().out.splitlines(), delimiter=",", dtype=int)
    np.testing.assert_array_equal(w, build_tournament(load_csv(data_csv.read_bytes())).w)


def test_scenario_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("seed = 3\nn_respondents = 30\nn_items = 5\ndatasets = x\nrestarts = 1\nscenarios = ideal\n")
    code = run_cli(["scenario", "--config", str(cfg), "--seed", "4", "--measures", "alpha,omega", "--format", "json",
                    "--set", "x.loading=0.6"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["meta"]["seed"] == 4
    assert payload["meta"]["dataset_overrides"] == {"x": {"loading": 0.6}}
    assert [(r["scenario"], r["dataset"], r["measure"]) for r in payload["rows"]] == [
        ("ideal", "x", "alpha"), ("ideal", "x", "omega_paper")
    ]


def test_scenario_config_error(tmp_path, capsys):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("colour = blue\n")
    assert run_cli(["scenario", "--config", str(cfg)]) == 1
    assert capsys.readouterr().err.startswith("error[CONFIG]:")


def test_print_config(capsys):
    assert run_cli(["scenario", "--print-config", "--n-items", "9"]) == 0
    assert "n_items = 9" in capsys.readouterr().out


def test_module_entry_point_streams_are_disjoint(data_csv):
    proc = subprocess.run(
        [sys.executable, "-m", "monodelta", "compute", "--input", str(data_csv), "--measures", "alpha", "--format", "csv"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stderr == ""
    assert proc.stdout.startswith("dataset,measure,value,seconds\nsurvey,alpha,")
    bad = subprocess.run([sys.executable, "-m", "monodelta", "compute", "--input", "nope.csv"],
                         capture_output=True, text=True, check=False)
    assert bad.returncode == 1 and bad.stdout == "" and bad.stderr.startswith("error[IO]:")
