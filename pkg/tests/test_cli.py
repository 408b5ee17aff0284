"""CLI: subcommands, formats, and the exit code contract."""

import json

import pytest

from qdeq.cli import main


def run(capsys, *argv):
    # usage errors leave main via SystemExit; everything else returns
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_text(capsys):
    code, out, _ = run(capsys, "parse", "x*y[1] - y[0] + 1")
    assert code == 0
    assert out.strip() == "nonlinear: 1 + (-1)*y[0] + x*y[1]"


def test_parse_json(capsys):
    code, out, _ = run(capsys, "parse", "x*S[1] - 1", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "linear_operator"
    assert obj["text"] == "x*S[1] - 1"


def test_polygon_basic(capsys):
    code, out, _ = run(capsys, "polygon", "x*S[1] - 1", "--format", "json")
    assert code == 0
    assert json.loads(out)["slopes"] == ["1"]


def test_polygon_rejects_nonlinear(capsys):
    code, out, err = run(capsys, "polygon", "y[0]*y[1] - 1")
    assert code == 1
    assert json.loads(err)["error"] == "QdeqError"


def test_linearize(capsys):
    code, out, _ = run(capsys, "linearize", "x*y[1] - y[0] + 1",
                       "--seed", "1", "--order", "3")
    assert code == 0
    assert "S[1]" in out and "S[0]" in out


def test_linearize_rejects_operator(capsys):
    code, _, err = run(capsys, "linearize", "x*S[1] - 1", "--seed", "1")
    assert code == 1
    assert "already linear" in json.loads(err)["message"]


def test_solve_qeuler(capsys):
    code, out, _ = run(capsys, "solve", "x*y[1] - y[0] + 1",
                       "--seed", "1", "--order", "6", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["coeffs"] == ["1", "1", "q", "q^3", "q^6", "q^10", "q^15"]
    assert obj["resolved_through"] == 6


def test_solve_operator_input(capsys):
    # linear operators route through the same solver
    code, out, _ = run(capsys, "solve", "S[-2]*(S[1]-1)*(S[1]+1) + q^-2*x",
                       "--seed", "1", "--order", "2", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["coeffs"][1] == "-1/(q^2-1)"


def test_solve_needs_seed(capsys):
    code, _, err = run(capsys, "solve", "x*y[1] - y[0] + 1")
    assert code == 1
    assert "--seed" in json.loads(err)["message"]


def test_input_file_and_stdin(capsys, tmp_path, monkeypatch):
    eq = tmp_path / "eq.txt"
    eq.write_text("x*S[1] - 1\n", encoding="utf-8")
    code, out, _ = run(capsys, "polygon", "--input", str(eq))
    assert code == 0 and "slope 1" in out

    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("x*S[1] - 1"))
    code, out, _ = run(capsys, "polygon", "--input", "-")
    assert code == 0 and "slope 1" in out


def test_growth_from_solve_json(capsys, tmp_path):
    code, solve_out, _ = run(capsys, "solve", "x*y[1] - y[0] + 1",
                             "--seed", "1", "--order", "15",
                             "--format", "json")
    assert code == 0
    f = tmp_path / "sol.json"
    f.write_text(solve_out, encoding="utf-8")
    code, out, _ = run(capsys, "growth", "--input", str(f),
                       "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["estimated_order_deg"] == "1"


def test_growth_bare_list(capsys, tmp_path):
    f = tmp_path / "series.json"
    f.write_text(json.dumps(["1", "q", "q^3", "q^6", "q^10", "q^15"]),
                 encoding="utf-8")
    code, out, _ = run(capsys, "growth", "--input", str(f),
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["estimated_order_deg"] == "1"


def test_growth_asserted_bound_failure_exits_2(capsys):
    code, out, _ = run(capsys, "growth", "x*y[1] - y[0] + 1",
                       "--seed", "1", "--order", "15", "--s", "0", "--C", "1")
    assert code == 2
    assert "FAIL" in out


def test_growth_asserted_bound_pass_exits_0(capsys):
    code, _, _ = run(capsys, "growth", "x*y[1] - y[0] + 1",
                     "--seed", "1", "--order", "15", "--s", "1", "--C", "0")
    assert code == 0


def test_growth_predict_from_polygon(capsys):
    code, out, _ = run(capsys, "growth", "x*y[1] - y[0] + 1",
                       "--seed", "1", "--order", "15",
                       "--predict-from-polygon")
    assert code == 0
    assert "within polygon prediction" in out


def test_growth_predict_needs_equation(capsys, tmp_path):
    f = tmp_path / "series.json"
    f.write_text(json.dumps(["1", "q"]), encoding="utf-8")
    code, _, err = run(capsys, "growth", "--input", str(f),
                       "--predict-from-polygon")
    assert code == 1
    assert "needs an equation" in json.loads(err)["message"]


def test_jones_text_and_json(capsys):
    code, out, _ = run(capsys, "jones", "--n", "2")
    assert code == 0
    assert out.strip() == "q^2-q+1-q^-1+q^-2"
    code, out, _ = run(capsys, "jones", "--n", "3", "--format", "json")
    obj = json.loads(out)
    assert obj["deg_q"] == 6 and obj["ord_q"] == -6


def test_jones_negative_exits_1(capsys):
    code, _, err = run(capsys, "jones", "--n", "-1")
    assert code == 1
    assert json.loads(err)["error"] == "ValueError"


def test_corpus_listing(capsys):
    code, out, _ = run(capsys, "corpus", "--format", "json")
    assert code == 0
    ids = [e["id"] for e in json.loads(out)["entries"]]
    assert ids == ["q-euler", "jones-figure8", "q-painleve-2", "phi11-basic"]


def test_corpus_run_single_entry(capsys):
    code, out, _ = run(capsys, "corpus", "--run", "--entry", "phi11-basic",
                       "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] is True
    assert obj["entries"][0]["entry"] == "phi11-basic"


def test_corpus_run_unknown_entry(capsys):
    code, _, err = run(capsys, "corpus", "--run", "--entry", "nope")
    assert code == 1
    assert "nope" in json.loads(err)["message"]


def test_diophantine_root_of_unity(capsys):
    code, out, _ = run(capsys, "diophantine", "--theta", "1/3",
                       "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj == {"verdict": "root_of_unity", "n": 3}


def test_diophantine_golden_small(capsys):
    code, out, _ = run(capsys, "diophantine", "--theta", "0.6180339887",
                       "--N", "500", "--format", "json")
    assert code == 0
    assert json.loads(out)["verdict"]["status"] == "pass"


def test_diophantine_roots_flag(capsys):
    code, out, _ = run(capsys, "diophantine", "--theta", "0.1234",
                       "--roots", "2,1", "--N", "200", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert len(obj["roots"]) == 2


def test_diophantine_op_file(capsys, tmp_path):
    f = tmp_path / "op.txt"
    f.write_text("S[2] - (1+q)*S[1] + q*S[0]", encoding="utf-8")
    code, out, _ = run(capsys, "diophantine", "--theta", "0.6180339887",
                       "--op", str(f), "--N", "300", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["roots"]) == 2  # resonance roots 1 and q


def test_diophantine_custom_grid(capsys):
    code, out, _ = run(capsys, "diophantine", "--theta", "0.6180339887",
                       "--N", "500", "--c2-grid", "3/2,2", "--format", "json")
    assert code == 0
    assert json.loads(out)["verdict"]["c2"] == "3/2"


def test_usage_error_exits_1(capsys):
    code, _, err = run(capsys, "polygon", "--badflag")
    assert code == 1
    assert json.loads(err)["error"] == "UsageError"


def test_missing_equation_exits_1(capsys):
    code, _, err = run(capsys, "polygon")
    assert code == 1
    assert "no equation" in json.loads(err)["message"]


def test_syntax_error_carries_position(capsys):
    code, _, err = run(capsys, "parse", "x + %")
    assert code == 1
    obj = json.loads(err)
    assert obj["error"] == "EquationSyntaxError" and obj["pos"] == 4
