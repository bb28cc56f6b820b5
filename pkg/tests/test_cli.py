import json

import pytest

from conftest import SPEC_DIR
from gaussmanin.cli import main
from gaussmanin.engine import RelationData, GMOperator, analyze, build_operator, load_spec_file
from gaussmanin.ode import DiffOp


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_e61(capsys):
    code, out, _ = run_cli(capsys, "analyze", str(SPEC_DIR / "e61.json"))
    assert code == 0
    assert "d = 61" in out and "h = 15" in out and "r = -61" in out
    c = analyze(load_spec_file(SPEC_DIR / "e61.json")).c
    assert f"c = {c}" in out


def test_analyze_quasi_homogeneous_exits_2(capsys):
    code, _, err = run_cli(capsys, "analyze", str(SPEC_DIR / "homog.json"))
    assert code == 2
    assert "quasi-homogeneous" in err


def test_analyze_json_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "analyze", str(SPEC_DIR / "e2.json"), "--format", "json")
    assert code == 0
    data = json.loads(out)
    data.pop("file")
    assert RelationData.from_json(data) == analyze(load_spec_file(SPEC_DIR / "e2.json"))


def test_analyze_batch(capsys, tmp_path):
    for name in ("e2.json", "e3.json"):
        (tmp_path / name).write_text((SPEC_DIR / name).read_text())
    code, out, _ = run_cli(capsys, "analyze", str(tmp_path), "--batch")
    assert code == 0
    assert out.count("== ") == 2
    assert out.index("e2.json") < out.index("e3.json")


def test_operator_json_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "operator", str(SPEC_DIR / "e2.json"), "--format", "json")
    assert code == 0
    op = GMOperator.from_json(json.loads(out))
    ref = build_operator(load_spec_file(SPEC_DIR / "e2.json"))
    assert op.P_d == ref.P_d and op.P_dh == ref.P_dh and op.c == ref.c


def test_operator_mu_flag(capsys):
    code, out, _ = run_cli(capsys, "operator", str(SPEC_DIR / "e2.json"), "--mu", "1,0",
                           "--format", "json")
    assert code == 0
    assert json.loads(out)["spec"]["mu"] == [1, 0]
    code, _, err = run_cli(capsys, "operator", str(SPEC_DIR / "e2.json"), "--mu", "1")
    assert code == 2


def test_ode_text(capsys):
    code, out, _ = run_cli(capsys, "ode", str(SPEC_DIR / "e2.json"), "--format", "text")
    assert code == 0
    assert "order 6 operator" in out
    assert "s^6 + (1/432·λ^6)·s^5" in out
    assert "s^1 = -1/432·λ^6" in out


def test_ode_json_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "ode", str(SPEC_DIR / "e2.json"), "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["order"] == 6
    diff = DiffOp.from_json(data["operator"])
    assert diff.order == 6


def test_factor_text(capsys):
    code, out, _ = run_cli(capsys, "factor", str(SPEC_DIR / "e2.json"),
                           "--lambda", "1", "--prec", "12")
    assert code == 0
    assert "right-divides P_d: yes" in out
    assert "rank 5" in out and "rank 1" in out


def test_factor_json(capsys):
    code, out, _ = run_cli(capsys, "factor", str(SPEC_DIR / "e2.json"),
                           "--lambda", "1", "--prec", "8", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["zero_block"]["divides_P_d"] is True
    assert [f["rank"] for f in data["factors"]] == [5, 1]


def test_factor_lambda_zero_exits_2(capsys):
    code, _, err = run_cli(capsys, "factor", str(SPEC_DIR / "e2.json"), "--lambda", "0")
    assert code == 2


def test_intdep_verify(capsys):
    code, out, _ = run_cli(capsys, "intdep", str(SPEC_DIR / "e2.json"), "--verify")
    assert code == 0
    assert "degree 6" in out
    assert "PASS" in out


def test_intdep_json(capsys):
    code, out, _ = run_cli(capsys, "intdep", str(SPEC_DIR / "e3.json"),
                           "--format", "json", "--verify")
    assert code == 0
    data = json.loads(out)
    assert data["degree"] == 13
    assert data["verified"] is True


def test_verify_critical(capsys):
    code, out, _ = run_cli(capsys, "verify-critical", str(SPEC_DIR / "e2.json"),
                           "--lambda", "1", "--starts", "40")
    assert code == 0
    assert "satisfied: yes" in out


def test_verify_critical_json(capsys):
    code, out, _ = run_cli(capsys, "verify-critical", str(SPEC_DIR / "e2.json"),
                           "--lambda", "1", "--starts", "40", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["equation_satisfied"] is True


def test_selftest(capsys):
    code, out, _ = run_cli(capsys, "selftest")
    assert code == 0
    assert out.count("PASS") >= 5


def test_missing_file_exits_2(capsys):
    code, _, err = run_cli(capsys, "analyze", "no/such/file.json")
    assert code == 2
    assert err


def test_malformed_json_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "analyze", str(bad))
    assert code == 2


def test_schema_error_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"nvars": 2, "monomials": [[2, 0]],
                               "lambda_monomial": [1, 1]}))
    code, _, err = run_cli(capsys, "analyze", str(bad))
    assert code == 2


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "x.json", "--nonsense"])
    assert exc.value.code == 2
