import io
import json
import subprocess
import sys

import pytest

from polyrep.cli import (
    CountError,
    InputSpec,
    ParseError,
    RangeError,
    parse_input,
    run,
    serialize_input,
)

EXAMPLE = "p=2 n=3 m=1\n2 1 6 1 2 1 6 1\n"


def run_cli(argv, stdin_text=None):
    out, err = io.StringIO(), io.StringIO()
    stdin = io.StringIO(stdin_text) if stdin_text is not None else io.StringIO("")
    code = run(argv, stdin=stdin, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_text_example():
    spec = parse_input(EXAMPLE)
    assert spec == InputSpec(2, 3, 1, (2, 1, 6, 1, 2, 1, 6, 1), "text")


def test_parse_identity_on_z2():
    spec = parse_input("p=2 n=1 m=1\n0 1")
    assert (spec.p, spec.n, spec.m, spec.values) == (2, 1, 1, (0, 1))


def test_count_error():
    with pytest.raises(CountError):
        parse_input("p=2 n=2 m=1\n0 1 2")


def test_range_error_names_position():
    with pytest.raises(RangeError, match="position 3"):
        parse_input("p=2 n=2 m=1\n0 1 7 2")


@pytest.mark.parametrize(
    "text",
    ["", "p=2 n=2\n0 1 2 3", "p=x n=2 m=1\n0", "p=2 n=2 m=1\n0 zz 2 3"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_input(text)


def test_json_parsing_and_errors():
    spec = parse_input('{"p": 2, "n": 2, "m": 1, "values": [0, 1, 2, 3]}', "json")
    assert spec.values == (0, 1, 2, 3)
    with pytest.raises(ParseError):
        parse_input("[1, 2]", "json")
    with pytest.raises(ParseError):
        parse_input('{"p": 2, "n": 2, "m": 1}', "json")


@pytest.mark.parametrize("fmt", ["text", "json"])
def test_serialize_parse_round_trip(fmt):
    spec = InputSpec(2, 3, 1, (2, 1, 6, 1, 2, 1, 6, 1), fmt)
    assert parse_input(serialize_input(spec, fmt), fmt) == spec
    mv = InputSpec(2, 1, 2, (0, 1, 1, 0), fmt)
    assert parse_input(serialize_input(mv, fmt), fmt) == mv


def test_decide_command_on_worked_example():
    code, out, err = run_cli(["decide"], EXAMPLE)
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "polynomial"
    assert report["witness"] == {"(0,0)": 2, "(1,0)": 2, "(0,1)": 1}
    assert report["counterexample"] is None
    assert set(report["timings"]) == {"split", "divisibility", "solve", "residual", "total"}


def test_decide_reports_rejection_stage():
    code, out, _ = run_cli(["decide"], "p=2 n=2 m=1\n0 0 1 0")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "not_polynomial"
    assert report["stage"] == "divisibility_check"
    assert report["counterexample"] == 2


def test_decide_empty_stream_is_exit_2():
    code, out, err = run_cli(["decide"], "")
    assert code == 2
    assert out == ""
    assert err.strip().startswith("error:")


def test_decide_two_stage_flag():
    code, out, _ = run_cli(["decide", "--two-stage"], EXAMPLE)
    assert code == 0
    report = json.loads(out)
    assert report["two_stage"]["agrees"] is True
    assert report["two_stage"]["verdict"] == "polynomial"


def test_synth_command():
    code, out, _ = run_cli(["synth"], EXAMPLE)
    assert code == 0
    report = json.loads(out)
    poly = report["polynomial"]
    assert poly["verified"] is True
    assert poly["coefficients"] == {
        "(0)": 2, "(1)": 6, "(2)": 2, "(3)": 4, "(4)": 5, "(5)": 6,
    }
    assert poly["pretty"] == "2 + 6*x + 2*x^2 + 4*x^3 + 5*x^4 + 6*x^5"


def test_gens_command():
    code, out, _ = run_cli(["gens", "--p", "2", "--n", "3"])
    assert code == 0
    report = json.loads(out)
    assert report["count"] == 6
    first = report["generators"][0]
    assert first["degrees"] == [0] and first["shift"] == [0]
    assert first["table"] == [1, 0, 1, 0, 1, 0, 1, 0]


def test_count_command():
    code, out, _ = run_cli(["count", "--p", "2", "--n", "2"])
    assert code == 0
    report = json.loads(out)
    assert report["formula"] == 64
    assert report["enumerated"] == 64
    assert report["match"] is True


def test_count_over_budget_reports_formula_only():
    code, out, err = run_cli(["count", "--p", "2", "--n", "6"])
    assert code == 0
    report = json.loads(out)
    assert report["enumerated"] is None and report["match"] is None
    assert "budget" in err


def test_oracle_membership():
    code, out, _ = run_cli(["oracle", "--input", "-"], EXAMPLE)
    assert code == 0
    report = json.loads(out)
    assert report["set_size"] == 1024
    assert report["member"] is True
    assert report["decide_agrees"] is True


def test_oracle_requires_parameters_or_input():
    code, _, err = run_cli(["oracle"])
    assert code == 2 or "error" in err
    # Without --input, p and n select the ring.
    code, out, _ = run_cli(["oracle", "--p", "3", "--n", "1"])
    assert code == 0
    assert json.loads(out)["set_size"] == 27


def test_budget_exceeded_is_exit_3():
    code, out, err = run_cli(["oracle", "--p", "2", "--n", "5"])
    assert code == 3
    assert out == ""
    assert "error:" in err


def test_invalid_ring_is_exit_2():
    code, _, err = run_cli(["count", "--p", "4", "--n", "2"])
    assert code == 2
    assert "prime" in err


def test_reports_are_deterministic_apart_from_timings():
    def stripped():
        _, out, _ = run_cli(["decide"], EXAMPLE)
        report = json.loads(out)
        report.pop("timings")
        return json.dumps(report, sort_keys=False)

    assert stripped() == stripped()


def test_bench_structure_small():
    code, out, _ = run_cli(
        ["bench", "--n-min", "4", "--n-max", "6", "--repeats", "1", "--oracle-n", "2"]
    )
    assert code == 0
    report = json.loads(out)
    assert [entry["n"] for entry in report["sizes"]] == [4, 5, 6]
    assert len(report["doubling"]) == 2
    assert report["oracle_comparison"]["speedup"] > 0


def test_module_invocation_smoke(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text(EXAMPLE)
    proc = subprocess.run(
        [sys.executable, "-m", "polyrep", "decide", "--input", str(path)],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "polynomial"
