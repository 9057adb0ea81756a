import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

import schurwalk.verify as verify_mod
from schurwalk.cli import run
from schurwalk.report import Report


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_spectrum_example():
    code, out, _ = call("spectrum", "--n", "3", "--alpha", "2")
    assert code == 0
    assert json.loads(out)["eigenvalues"] == ["1", "7/16"]


def test_measure_example():
    code, out, _ = call("measure", "--n", "3", "--alpha", "2")
    assert code == 0 and json.loads(out) == {"[3]": "8/9", "[2,1]": "1/9"}


def test_enumerate_example():
    assert call("enumerate", "--n", "0")[:2] == (0, "[[]]\n")
    code, out, _ = call("enumerate", "--n", "5")
    assert json.loads(out) == [[5], [4, 1], [3, 2]]


def test_plancherel_measure():
    code, out, _ = call("measure", "--n", "3", "--plancherel")
    data = json.loads(out)
    assert code == 0 and set(data) == {"[3]", "[2,1]"}
    assert sum(Fraction(v) for v in data.values()) == 1


def test_matrix_json_and_csv():
    code, out, _ = call("matrix", "--n", "3", "--alpha", "2")
    assert code == 0
    assert "15/16" in out and "1/16" in out
    code, out, _ = call("matrix", "--n", "3", "--alpha", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3
    assert "15/16" in rows[1] and "1/2" in rows[2]


def test_csv_outputs():
    _, out, _ = call("measure", "--n", "3", "--alpha", "2", "--format", "csv")
    assert list(csv.reader(io.StringIO(out))) == [["partition", "weight"], ["[3]", "8/9"], ["[2,1]", "1/9"]]
    _, out, _ = call("spectrum", "--n", "3", "--alpha", "2", "--format", "csv")
    assert list(csv.reader(io.StringIO(out))) == [["eigenvalue", "multiplicity"], ["1", "1"], ["7/16", "1"]]
    _, out, _ = call("enumerate", "--n", "3", "--format", "csv")
    assert list(csv.reader(io.StringIO(out))) == [["partition"], ["[3]"], ["[2,1]"]]


@pytest.mark.parametrize("suite", ["coherence", "kerov", "ivanov", "sl2", "spectrum"])
def test_verify_suites_pass(suite):
    code, out, _ = call("verify", "--suite", suite, "--max-weight", "5")
    data = json.loads(out)
    assert code == 0
    assert data["pass"] is True and data["suite"] == suite and data["checks_run"] > 0 and data["failures"] == []


def test_verify_all_with_threads():
    code, out, _ = call("verify", "--suite", "all", "--max-weight", "4", "--threads", "2")
    lines = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(lines) == len(verify_mod.SUITES)
    assert all(line["pass"] for line in lines)


def test_verify_failure_gives_exit_one(monkeypatch):
    def broken(alpha, max_weight):
        rep = Report("broken", {"alpha": alpha})
        rep.add("always wrong", 1, 2)
        return rep

    monkeypatch.setitem(verify_mod.SUITES, "sl2", broken)
    code, out, _ = call("verify", "--suite", "sl2", "--max-weight", "3")
    data = json.loads(out)
    assert code == 1 and data["pass"] is False and len(data["failures"]) == 1
    code, out, _ = call("verify", "--suite", "sl2", "--format", "csv")
    assert code == 1 and "summary" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--suite", "nonsense"],
        ["spectrum", "--n", "0"],
        ["enumerate", "--n", "-1"],
        ["measure", "--n", "3", "--alpha", "x"],
        ["spectrum", "--n", "3", "--alpha", "inf"],
        ["simulate", "--n", "4", "--steps", "5", "--start", "3"],
        ["simulate", "--n", "4", "--steps", "5", "--start", "2,2"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_two(argv):
    code, out, _ = call(*argv)
    assert code == 2 and out == ""


def test_domain_error_message_goes_to_stderr():
    code, out, err = call("spectrum", "--n", "17", "--alpha", "2")
    assert code == 2 and out == "" and "error" in err


def test_simulate_is_deterministic():
    argv = ["simulate", "--n", "10", "--alpha", "2", "--steps", "50", "--seed", "4"]
    a, b = call(*argv), call(*argv)
    assert a == b and a[0] == 0
    lines = [json.loads(line) for line in a[1].splitlines()]
    assert len(lines) == 51 and lines[0]["step"] == 0
    assert all(sum(line["state"]) == 10 for line in lines)
    assert call(*argv[:-1], "5")[1] != a[1]


def test_simulate_start_and_moments():
    code, out, _ = call("simulate", "--n", "4", "--steps", "3", "--start", "3,1", "--moments", "2")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and set(rows[0]) == {"step", "scaled_time", "q2", "q4"}
    assert rows[0]["q2"] == pytest.approx((3 / 4) ** 3 + (1 / 4) ** 3)
    code, out, _ = call("simulate", "--n", "4", "--steps", "3", "--start", "3,1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["step", "state"] and rows[1] == ["0", "[3,1]"]


def test_simulate_replicas():
    argv = ["simulate", "--n", "6", "--steps", "10", "--seed", "1", "--replicas", "3"]
    one = call(*argv)
    two = call(*argv, "--threads", "2")
    assert one == two and one[0] == 0
    rows = [json.loads(line) for line in one[1].splitlines()]
    assert len(rows) == 33 and {r["replica"] for r in rows} == {0, 1, 2}


def test_moments_exact_and_mc():
    code, out, _ = call("moments", "--n", "3", "--alpha", "2", "--exact")
    assert code == 0 and json.loads(out) == {"n": 3, "alpha": "2", "q2": "25/27"}
    code, out, _ = call("moments", "--n", "3", "--alpha", "2", "--steps", "5000", "--seed", "2")
    data = json.loads(out)
    assert code == 0 and data["moment"] == "q2" and abs(data["mean"] - 25 / 27) < 0.05
    code, out, _ = call("moments", "--n", "3", "--exact", "--K", "2", "--format", "csv")
    # measure (8/9, 1/9) on (3), (2,1): q4 = 1 and (2^5 + 1) / 3^5
    q4 = Fraction(8, 9) + Fraction(1, 9) * Fraction(33, 243)
    assert list(csv.reader(io.StringIO(out)))[1:] == [["3", "2", "q2", "25/27"], ["3", "2", "q4", str(q4)]]


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "schurwalk", "measure", "--n", "3", "--alpha", "2"], capture_output=True, text=True
    )
    assert res.returncode == 0 and json.loads(res.stdout) == {"[3]": "8/9", "[2,1]": "1/9"}
