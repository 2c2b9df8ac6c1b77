import csv
import subprocess
import sys

import pytest

from orbgrand.cli import CSV_COLUMNS, UsageError, main, parse_snr_sweep

PAIR_FILE = "8 6\n11110110\n01010010\n"


def run_args(out_path, **overrides):
    base = {
        "--code": "ebch8",
        "--snr": "2:3:1",
        "--frames": "30",
        "--budget": "64",
        "--constraints": "1",
        "--seed": "1",
        "--out": str(out_path),
    }
    base.update(overrides)
    argv = ["run"]
    for key, val in base.items():
        argv += [key, val]
    return argv


def test_parse_snr_sweep():
    assert parse_snr_sweep("3:5.5:0.5") == (3.0, 3.5, 4.0, 4.5, 5.0, 5.5)
    assert parse_snr_sweep("4:4:1") == (4.0,)
    assert parse_snr_sweep("4.5:5:0.25") == (4.5, 4.75, 5.0)
    # endpoints inclusive and snapped to 0.01 dB despite float accumulation
    sweep = parse_snr_sweep("0:1:0.1")
    assert len(sweep) == 11
    assert sweep[3] == 0.3
    assert sweep[-1] == 1.0
    for bad in ("3:5", "a:b:c", "3:5:0", "3:5:-1", "5:3:1", "3;5;1"):
        with pytest.raises(UsageError):
            parse_snr_sweep(bad)


def test_run_writes_csv_and_figures(tmp_path, capsys):
    out = tmp_path / "results.csv"
    assert main(run_args(out)) == 0
    with open(out, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == 3
    first = dict(zip(CSV_COLUMNS, rows[1]))
    assert first["snr_db"] == "2.00"
    assert rows[2][0] == "3.00"
    assert first["frames"] == "30"
    assert (first["p"], first["b"], first["b_prime"], first["seed"]) == ("1", "64", "64", "1")
    assert 0.0 <= float(first["bler"]) <= 1.0
    assert float(first["avg_queries_checked"]) <= 64.0
    assert (tmp_path / "results_bler.png").exists()
    assert (tmp_path / "results_queries.png").exists()
    text = capsys.readouterr().out
    assert "Eb/N0 [dB]" in text
    assert "p=1 avg queries" in text
    assert "BLER" in text
    assert "abandons" in text


def test_run_is_byte_deterministic(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    argv_a = run_args(a) + ["--no-plot"]
    argv_b = run_args(b) + ["--no-plot"]
    assert main(argv_a) == 0
    assert main(argv_b) == 0
    assert a.read_bytes() == b.read_bytes()
    assert not (tmp_path / "a_bler.png").exists()


def test_run_budget_checked_flag(tmp_path):
    out = tmp_path / "r.csv"
    argv = run_args(out) + ["--budget-checked", "5", "--no-plot"]
    assert main(argv) == 0
    with open(out, newline="") as f:
        row = dict(zip(CSV_COLUMNS, list(csv.reader(f))[1]))
    assert (row["b"], row["b_prime"]) == ("5", "64")
    assert float(row["avg_queries_checked"]) <= 5.0


def test_run_usage_errors(tmp_path, capsys):
    assert main(["run", "--snr", "2:3:1"]) == 1  # --code is required
    assert "usage error" in capsys.readouterr().err
    assert main(run_args(tmp_path / "x.csv", **{"--snr": "bad"})) == 1
    assert main(run_args(tmp_path / "x.csv", **{"--frames": "0"})) == 1
    assert main(run_args(tmp_path / "x.csv", **{"--budget": "0"})) == 1
    assert main(run_args(tmp_path / "x.csv", **{"--constraints": "-1"})) == 1
    assert main(["nosuchcommand"]) == 1


def test_run_runtime_errors(tmp_path, capsys):
    assert main(run_args(tmp_path / "x.csv", **{"--code": "nosuch"})) == 2
    assert "error:" in capsys.readouterr().err
    # p beyond what the dual row space supports
    argv = run_args(tmp_path / "x.csv", **{"--code": "ebch8", "--constraints": "3"})
    assert main(argv + ["--no-plot"]) == 2
    err = capsys.readouterr().err
    assert "2" in err  # reports the achievable count


def test_analyze_loaded_code(tmp_path, capsys):
    path = tmp_path / "pair.txt"
    path.write_text(PAIR_FILE)
    assert main(["analyze", "--code", f"file:{path}"]) == 0
    text = capsys.readouterr().out
    assert "n=8, k=6, n-k=2" in text
    assert "all-one row in dual space: no" in text
    assert "derived constraints: p=2" in text
    assert "constraint 1: |set|=3, interval=[3, 5]" in text
    assert "row: 10100100" in text
    assert "constraint 2: |set|=3, interval=[6, 8]" in text
    assert "row: 01010010" in text


def test_analyze_defaults_to_largest_achievable(capsys):
    assert main(["analyze", "--code", "ebch8"]) == 0
    text = capsys.readouterr().out
    assert "all-one row in dual space: yes" in text
    assert "derived constraints: p=2" in text
    assert text.count("|set|=4") == 2


def test_analyze_errors(capsys):
    assert main(["analyze", "--code", "ebch8", "--constraints", "0"]) == 1
    assert main(["analyze", "--code", "ebch8", "--constraints", "3"]) == 2
    assert main(["analyze", "--code", "nosuch"]) == 2


def test_verify_pass(capsys):
    assert main(["verify", "--n", "10", "--p", "2", "--trials", "5", "--seed", "3"]) == 0
    text = capsys.readouterr().out
    assert text.count(" pass") == 5
    assert "PASS: 5 trials, count = 2^(10-2) = 256" in text
    assert main(["verify", "--n", "6", "--p", "0", "--trials", "2"]) == 0
    assert "= 64" in capsys.readouterr().out


def test_verify_usage_errors():
    assert main(["verify", "--n", "25", "--p", "1"]) == 1
    assert main(["verify", "--n", "0", "--p", "0"]) == 1
    assert main(["verify", "--n", "10", "--p", "11"]) == 1
    assert main(["verify", "--n", "10", "--p", "1", "--trials", "0"]) == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "orbgrand", "verify", "--n", "6", "--p", "1",
         "--trials", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "PASS" in proc.stdout
