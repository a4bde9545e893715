import json

import pytest
from click.testing import CliRunner

from conftest import PAPER_TABLE
from sumscore.cli import cli


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(cli, list(args), catch_exceptions=False)

    return invoke


def test_table_golden(run, data_dir):
    result = run("table")
    assert result.exit_code == 0
    assert result.output == (data_dir / "table_default.txt").read_text()


def test_golden_file_matches_paper_values(data_dir):
    lines = (data_dir / "table_default.txt").read_text().splitlines()
    assert [c.strip() for c in lines[0].split("|")] == ["Scale", "Range", "Upper Value", "Suggested Value"]
    rows = [[c.strip() for c in ln.split("|")] for ln in lines[1:]]
    assert len(rows) == 8
    for row, (k, rng, upper, sugg) in zip(rows, PAPER_TABLE):
        assert (int(row[0]), float(row[1]), float(row[2]), int(row[3])) == (k, rng, upper, sugg)


def test_table_row_k9(run):
    rows = run("table").output.splitlines()
    assert " ".join(rows[7].split()) == "9 | 5.163978 | 6.163978 | 6"


def test_table_single_row(run):
    out = run("table", "--kmin", "7", "--kmax", "7").output.splitlines()
    assert len(out) == 2
    assert " ".join(out[1].split()) == "7 | 4.000000 | 5.000000 | 5"


def test_table_json_and_csv(run):
    doc = json.loads(run("table", "--format", "json").output)
    assert [d["suggested_upper"] for d in doc] == [3, 3, 4, 4, 5, 6, 6, 7]
    csv_out = run("table", "--kmin", "11", "--kmax", "11", "--format", "csv").output
    assert csv_out == "scale,range,upper_value,suggested_value\n11,6.324555,7.324555,7\n"


def test_table_inverted_bounds(run):
    result = run("table", "--kmin", "5", "--kmax", "3")
    assert result.exit_code == 1
    assert result.output.startswith("usage-error:")
    assert len(result.output.strip().splitlines()) == 1


@pytest.mark.parametrize("k,suggested", [("8", 6), ("11", 7)])
def test_solve(run, k, suggested):
    doc = json.loads(run("solve", "--k", k, "--format", "json").output)
    assert doc["suggested_upper"] == suggested
    assert f"suggested upper {suggested}" in run("solve", "--k", k).output


def test_solve_below_minimum(run):
    result = run("solve", "--k", "2")
    assert result.exit_code == 1
    assert result.output.startswith("usage-error:")


def test_contrib_naive_upper(run):
    result = run("contrib", "--n1", "2", "--n2", "8", "--k", "5", "--upper", "5", "--format", "json")
    assert result.exit_code == 0
    doc = json.loads(result.stdout)
    dich = [i for i in doc["report"]["items"] if i["kind"] == "dichotomous"]
    assert dich[0]["contribution"] == pytest.approx(1 / 6, abs=1e-12)
    assert doc["flagged"] and doc["calibration"]["suggested_upper"] == 4
    assert "warning:" in result.stderr and "suggested value 4" in result.stderr


def test_contrib_text_default_upper(run):
    result = run("contrib", "--n1", "2", "--n2", "8", "--k", "5")
    assert "warning" not in result.output
    assert "0.109756" in result.output and "0.097561" in result.output


def test_contrib_needs_items(run):
    assert run("contrib", "--n1", "0", "--n2", "0", "--k", "5").exit_code == 1


def test_score_fixture(run, data_dir, tmp_path):
    args = ["score", "--design", str(data_dir / "design.json"),
            "--responses", str(data_dir / "responses.csv")]
    result = run(*args)
    assert result.exit_code == 0
    assert result.output == (data_dir / "scores_expected.csv").read_text()
    out = tmp_path / "s.csv"
    assert run(*args, "--out", str(out)).exit_code == 0
    assert out.read_text() == result.output
    doc = json.loads(run(*args, "--format", "json").output)
    assert [d["score"] for d in doc] == [17, 5, 23]


def test_score_invalid_answers(run, data_dir, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("respondent,q1,d1,q2,d2,q3\nr1,6,1,4,0,5\nr2,1,2,1,0,\n")
    result = run("score", "--design", str(data_dir / "design.json"), "--responses", str(bad))
    assert result.exit_code == 2
    assert result.output.startswith("validation-error: 3 invalid answer(s)")
    assert "respondent=r1 item=q1" in result.output and "respondent=r2 item=q3" in result.output


def test_score_schema_mismatch(run, data_dir, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("respondent,q1,d1\nr1,1,1\n")
    result = run("score", "--design", str(data_dir / "design.json"), "--responses", str(bad))
    assert result.exit_code == 2
    assert "missing=" in result.output


def test_score_missing_file(run, data_dir, tmp_path):
    result = run("score", "--design", str(tmp_path / "nope.json"),
                 "--responses", str(data_dir / "responses.csv"))
    assert result.exit_code == 3
    assert result.output.startswith("io-error:")


def test_simulate_default_layout(run):
    result = run("simulate", "--n", "1000000", "--seed", "42", "--format", "json")
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["seed"] == 42 and doc["respondents"] == 1000000
    assert doc["max_abs_error"] < 0.005
    assert run("simulate", "--n", "1000000", "--seed", "42", "--format", "json").output == result.output


def test_simulate_requires_seed(run):
    result = run("simulate", "--n", "100")
    assert result.exit_code == 1
    assert "--seed" in result.output


def test_simulate_design_file_and_weights(run, data_dir, tmp_path):
    w = tmp_path / "w.json"
    w.write_text(json.dumps({"q1": [1, 0, 0, 0, 0]}))
    result = run("simulate", "--design", str(data_dir / "design.json"), "--n", "500",
                 "--seed", "1", "--weights", str(w), "--format", "json")
    doc = json.loads(result.output)
    assert doc["scenario"] == "weighted"
    assert doc["items"][2]["empirical_variance"] == 0.0


def test_simulate_bad_weights(run, tmp_path):
    w = tmp_path / "w.json"
    w.write_text(json.dumps({"q1": [0.5, 0.5]}))
    result = run("simulate", "--n", "100", "--seed", "1", "--weights", str(w))
    assert result.exit_code == 2


def test_simulate_sweep_text(run):
    result = run("simulate", "--seed", "3", "--sweep", "1000,10000")
    assert result.exit_code == 0
    assert result.output.count("max abs error") == 2


def test_version(run):
    assert run("--version").exit_code == 0


@pytest.mark.parametrize("args,code,prefix", [
    (["solve", "--k", "8"], 0, "k = 8"),
    (["solve", "--k", "2"], 1, "usage-error:"),
    (["score", "--design", "/nonexistent.json", "--responses", "/nonexistent.csv"], 3, "io-error:"),
])
def test_console_exit_codes(args, code, prefix):
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "sumscore", *args], capture_output=True, text=True)
    assert proc.returncode == code
    assert (proc.stdout + proc.stderr).startswith(prefix)
