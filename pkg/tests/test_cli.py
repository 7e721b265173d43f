import json

import pytest

from hasseorder.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_identity(capsys):
    code, out, _ = run(capsys, "eval", "1")
    assert code == 0
    assert "ord_D: 0" in out
    assert "Trd: 2" in out
    assert "Nrd: 1" in out


def test_eval_pi_d_spec_example(capsys):
    code, out, _ = run(capsys, "--p", "3", "--d", "2", "--r", "1", "--N", "4",
                       "eval", "x")
    assert code == 0
    assert "ord_D: 1" in out
    assert "Trd: 0" in out
    assert "Nrd: -3" in out
    assert "embed: [[0, 3], [1, 0]]" in out


def test_eval_spec_product(capsys):
    code, out, _ = run(capsys, "eval", "(3+x)*(3-x)")
    assert code == 0
    assert "embed: [[6, 0], [0, 6]]" in out
    assert "Nrd: 36" in out


def test_eval_json_output(capsys):
    code, out, _ = run(capsys, "--output", "json", "eval", "x")
    assert code == 0
    data = json.loads(out)
    assert data["ord_D"] == 1


def test_eval_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "eval", "3 + $")
    assert code == 2
    assert "position 4" in err


def test_verify_default_passes(capsys):
    code, out, _ = run(capsys, "--output", "json", "verify")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == "hasse-order-report/1"
    assert report["params"] == {"p": 3, "f": 1, "d": 2, "r": 1, "N": 8,
                                "mode": "mixed", "seed": 0}
    assert all(not s["failures"] for s in report["suites"])
    assert {s["name"] for s in report["suites"]} == {
        "finite_field", "local_ring", "witt", "algebra", "tensor", "modcat"}


def test_verify_suite_selection(capsys):
    code, out, _ = run(capsys, "--output", "json", "verify",
                       "--suites", "finite_field,algebra")
    assert code == 0
    report = json.loads(out)
    assert [s["name"] for s in report["suites"]] == ["finite_field", "algebra"]


def test_verify_fault_injection_fails(capsys):
    code, out, _ = run(capsys, "--output", "json", "verify",
                       "--suites", "modcat", "--inject-fault", "modcat.cycle")
    assert code == 1
    report = json.loads(out)
    assert any(s["failures"] for s in report["suites"])


def test_verify_bad_twist_exit_2(capsys):
    code, _, err = run(capsys, "--d", "4", "--r", "2", "verify")
    assert code == 2
    assert "parameter error" in err


def test_verify_unknown_suite_exit_2(capsys):
    code, _, err = run(capsys, "verify", "--suites", "nope")
    assert code == 2


def test_determinism_modulo_timing(capsys):
    _, out1, _ = run(capsys, "--output", "json", "verify",
                     "--suites", "finite_field,witt")
    _, out2, _ = run(capsys, "--output", "json", "verify",
                     "--suites", "finite_field,witt")
    a, b = json.loads(out1), json.loads(out2)
    a.pop("wall_time")
    b.pop("wall_time")
    assert json.dumps(a) == json.dumps(b)


def test_dump_idempotents_d1(capsys):
    code, out, _ = run(capsys, "--d", "1", "--r", "0", "dump", "idempotents")
    assert code == 0
    assert json.loads(out) == [[[1]]]


def test_dump_witt_laws_p2(capsys):
    code, out, _ = run(capsys, "--p", "2", "dump", "witt-laws")
    assert code == 0
    data = json.loads(out)
    assert data["add"] == ["a0 + b0", "-a0*b0 + a1 + b1"]


def test_dump_milnor_basis_dimension(capsys):
    for (p, f, d) in ((3, 1, 2), (5, 1, 3), (3, 2, 2)):
        code, out, _ = run(capsys, "--p", str(p), "--f", str(f),
                           "--d", str(d), "dump", "milnor-basis")
        assert code == 0
        data = json.loads(out)
        assert data["dimension_kT"] == d * (d + 1) // 2
        assert data["dimension_Fp"] == d * (d + 1) // 2 * (f * d)


def test_dump_peirce(capsys):
    code, out, _ = run(capsys, "--p", "5", "--d", "3", "--r", "2",
                       "dump", "peirce")
    assert code == 0
    data = json.loads(out)
    for entry in data:
        expect = 1 if (entry["g"] - entry["h"] - 2) % 3 == 0 else 0
        assert entry["cokernel_length"] == expect
