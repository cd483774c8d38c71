import json

import pytest
from click.testing import CliRunner

from app import cli, run
from cycles.enumeration import theta_expansion
from lattices.corpus import a1
from modform.serialization import save_expansion

A1_YAML = "label: A1\ngram: [[2]]\n"
A2_YAML = "label: A2\ngram: [[2, 1], [1, 2]]\n"
U_YAML = "label: U\ngram: [[0, 1], [1, 0]]\n"
TERNARY_TXT = "2 0 0\n0 -2 0\n0 0 -2\n"
S_WORD = "- kind: S\n"


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture
def e8_path(write_text, E8):
    rows = [[str(v) for v in row] for row in E8.gram]
    return write_text("e8.json", json.dumps({"label": "E8", "gram": rows}))


# ===== ARTIFACTS =====

def test_milgram(runner, write_text):
    result = runner.invoke(cli, ["milgram", "--lattice", write_text("a1.yaml", A1_YAML)])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[-1] == "verdict PASS"


def test_disc(runner, write_text):
    result = runner.invoke(cli, ["disc", "--lattice", write_text("a1.yaml", A1_YAML)])
    assert result.exit_code == 0
    assert "order 2" in result.stdout.splitlines()


def test_weil(runner, write_text):
    result = runner.invoke(cli, ["weil", "--lattice", write_text("a1.yaml", A1_YAML), "--word", write_text("s.yaml", S_WORD)])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == "# dim 2 nonzero 4"


def test_reps_count(runner, e8_path):
    result = runner.invoke(cli, ["reps", "--lattice", e8_path, "--t", "1", "--threads", "2"])
    assert result.exit_code == 0
    assert result.stdout == "count 240\n"


def test_reps_listing(runner, write_text):
    result = runner.invoke(cli, ["reps", "--lattice", write_text("a2.yaml", A2_YAML), "--t", "1 1/2; 1/2 1", "--list"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "count 12"
    assert len(lines) == 13


def test_witt(runner, write_text):
    result = runner.invoke(cli, ["witt", "--lattice", write_text("t.txt", TERNARY_TXT)])
    assert result.exit_code == 0
    assert "witness (1,1,0)" in result.stdout.splitlines()


def test_hurwitz_and_zagier(runner):
    result = runner.invoke(cli, ["hurwitz", "--bound", "4"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["H(0) -1/12", "H(1) 0", "H(2) 0", "H(3) 1/3", "H(4) 1/2"]
    result = runner.invoke(cli, ["zagier", "--bound", "4"])
    assert result.exit_code == 0
    assert "mock 1" in result.stdout.splitlines()


def test_theta_then_slash_check(runner, write_text, tmp_path):
    lattice = write_text("a1.yaml", A1_YAML)
    expansion = str(tmp_path / "a1.exp")
    result = runner.invoke(cli, ["theta", "--lattice", lattice, "--bound", "12", "--out", expansion])
    assert result.exit_code == 0
    assert result.stdout == ""
    result = runner.invoke(cli, ["slash-check", "--lattice", lattice, "--expansion", expansion, "--word", write_text("s.yaml", S_WORD)])
    assert result.exit_code == 0
    assert result.stdout.splitlines()[-1] == "verdict PASS"


def test_verify_selected_suite(runner, tmp_path):
    out = str(tmp_path / "report.txt")
    result = runner.invoke(cli, ["verify", "--suite", "FactorizationSuite", "--out", out])
    assert result.exit_code == 0
    with open(out, encoding="utf-8") as f:
        assert f.read().splitlines()[-1] == "verdict PASS"


@pytest.mark.slow
def test_verify_output_does_not_depend_on_threads(runner, tmp_path):
    reports = []
    for threads in (1, 2, 8):
        out = tmp_path / f"report{threads}.txt"
        args = ["verify", "--suite", "MilgramSuite", "--suite", "HurwitzSuite", "--threads", str(threads), "--out", str(out)]
        assert runner.invoke(cli, args).exit_code == 0
        reports.append(out.read_bytes())
    assert reports[0] == reports[1] == reports[2]


def test_json_logs(runner):
    result = runner.invoke(cli, ["--log-json", "--log-level", "info", "zagier", "--bound", "3"])
    assert result.exit_code == 0
    records = [json.loads(line) for line in result.stderr.splitlines() if line.startswith("{")]
    assert any("[Zagier]" in r["message"] for r in records)


# ===== EXIT CODES =====

@pytest.mark.parametrize(
    "args",
    [
        ["hurwitz", "--bound", "1/2"],
        ["hurwitz", "--bound", "-3"],
        ["hurwitz", "--bound", "x"],
        ["reps", "--lattice", "missing.yaml", "--t", "1"],
        ["verify", "--suite", "NoSuchSuite"],
        ["theta", "--lattice", "missing.yaml"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_2(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_usage_error_names_the_error(runner):
    result = runner.invoke(cli, ["hurwitz", "--bound", "1/2"])
    assert result.stderr.startswith("UsageError:")


def test_bad_lattice_document_exits_2(runner, write_text):
    result = runner.invoke(cli, ["disc", "--lattice", write_text("bad.yaml", "gram: [[x]]\n")])
    assert result.exit_code == 2
    assert "ParseError" in result.stderr


def test_math_domain_errors_exit_3(runner, write_text):
    result = runner.invoke(cli, ["reps", "--lattice", write_text("u.yaml", U_YAML), "--t", "1"])
    assert result.exit_code == 3
    assert result.stderr.startswith("IndefiniteLattice:")
    result = runner.invoke(cli, ["disc", "--lattice", write_text("odd.yaml", "gram: [[1]]\n")])
    assert result.exit_code == 3


def test_failed_slash_check_exits_4(runner, write_text, tmp_path):
    theta = theta_expansion(a1(), 1, 12)
    (T0, mu0), c = theta.coefficients[1]
    expansion = str(tmp_path / "broken.exp")
    save_expansion(theta.with_coefficient(T0, mu0, c + 1), expansion)
    result = runner.invoke(cli, ["slash-check", "--lattice", write_text("a1.yaml", A1_YAML), "--expansion", expansion,
                                 "--word", write_text("s.yaml", S_WORD)])
    assert result.exit_code == 4
    assert result.stdout.splitlines()[-1] == "verdict FAIL"
    assert "VerificationFailure" in result.stderr


def test_run_returns_exit_status(capsys):
    assert run(["hurwitz", "--bound", "3"]) == 0
    assert capsys.readouterr().out.startswith("H(0) -1/12")
    assert run(["hurwitz", "--bound", "1/2"]) == 2
