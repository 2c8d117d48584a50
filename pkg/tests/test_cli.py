import csv
import io
import json

import pytest

from extendlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_set_operations(capsys):
    assert run(capsys, "set", "canon", "--A", "[0,1) U [1,2]")[:2] == (0, "[0,2]")
    assert run(capsys, "set", "complement", "--A", "(0,1)")[1] == "(-inf,0] U [1,inf)"
    assert run(capsys, "set", "contains", "--A", "[0,1)", "--x", "1")[1] == "false"
    assert run(capsys, "set", "decompose", "--A", "(0,1)", "--n", "4")[1] == "[1/4,3/4]"


def test_parse_error_exit_and_caret(capsys):
    code, out, err = run(capsys, "set", "canon", "--A", "[0,1")
    assert code == 2 and not out
    assert err.splitlines()[-1].strip() == "^"


def test_missing_option_is_usage_error(capsys):
    code, _, err = run(capsys, "set", "union", "--A", "[0,1]")
    assert code == 2 and "B" in err


def test_json_envelope(capsys):
    code, out, _ = run(capsys, "func", "norm", "--f", "[0,2]: x^2-x", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["command"] == "func norm"
    assert doc["result"]["exact"] == "2" and "schema" in doc


def test_retract_and_extend(capsys):
    assert run(capsys, "retract", "approx", "--A", "(0,1)", "--n", "4")[1] == (
        "(-inf,0): 1/2; [0,1/4): -x + 1/2; [1/4,3/4): x; [3/4,1): -x + 3/2; [1,inf): 1/2"
    )
    assert run(capsys, "extend", "phi-star", "--A", "[0,1]", "--f", "[0,1]: x^2")[1] == (
        "(-inf,0): 0; [0,1): x^2; [1,inf): 1"
    )
    code, out, _ = run(capsys, "extend", "chain", "--A", "[0,1]", "--f", "[0,1]: x", "--U", "(1/2,2)")
    assert code == 0 and out == "stabilized at N=1: (1/2,inf)"


def test_verify_defaults_to_json(capsys):
    code, out, _ = run(capsys, "extend", "verify", "--A", "[0,1]", "--op", "phi-star", "--f", "[0,1]: x")
    assert code == 0
    assert json.loads(out)["result"]


def test_range_violation_exits_one(capsys):
    code, out, _ = run(capsys, "retract", "build", "--A", "(0,1)", "--g", "(-inf,0] U [1,inf): 2")
    assert code == 1 and "witness" in out


def test_sample_csv_rows(capsys):
    code, out, _ = run(capsys, "sample", "--f", "[0,1]: x^2", "--count", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [r["x_rational"] for r in rows] == ["0", "1/2", "1"]
    assert [r["value_rational"] for r in rows] == ["0", "1/4", "1"]
    assert rows[1]["value_decimal"].startswith("0.25")


def test_classify_and_demo(capsys):
    assert run(capsys, "classify", "continuity", "--f", "[-1,0): 0; [0,1]: 1")[1] == "jumps at 0"
    code, out, _ = run(capsys, "demo", "riemann", "--x", "22/7")
    assert code == 0 and "f(22/7) = 1/7" in out
    code, out, _ = run(capsys, "classify", "gallery", "kalenda-spurny")
    assert code == 0 and "Baire-one" in out


@pytest.mark.parametrize("text", ["[0,1) U {3}", "(-inf,2]", "empty"])
def test_round_trip_through_cli(capsys, text):
    _, out, _ = run(capsys, "set", "canon", "--A", text)
    _, again, _ = run(capsys, "set", "canon", "--A", out)
    assert again == out
