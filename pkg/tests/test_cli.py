import json
import subprocess
import sys

import pytest

from weylsum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_integrate_projective_plane(capsys):
    # H spanned by simple root 2 leaves U(1) x U(2), i.e. G(1,3)
    code, out, _ = run(capsys, "integrate", "--family", "A", "--rank", "3", "--h", "2", "--expr", "c1(S)^2")
    assert (code, out) == (0, "1\n")
    assert run(capsys, "integrate", "--k", "1", "--n", "3", "--expr", "c1(S)^2")[1] == "1\n"


def test_h_equal_to_g_has_no_grassmann_structure(capsys):
    code, _, err = run(capsys, "integrate", "--family", "A", "--rank", "3", "--h", "1,2", "--expr", "c1(S)^2")
    assert code == 1 and "SpaceMismatch" in err


def test_euler_char_b2(capsys):
    assert run(capsys, "euler-char", "--family", "B", "--rank", "2", "--h", "") == (0, "8\n", "")


def test_eq_integrate_one_on_cp1(capsys):
    assert run(capsys, "eq-integrate", "--family", "A", "--rank", "2", "--h", "", "--expr", "1") == (0, "0\n", "")


def test_eq_integrate_prints_polynomial(capsys):
    code, out, _ = run(capsys, "eq-integrate", "--k", "1", "--n", "3", "--expr", "c1(S)^3")
    assert (code, out) == (0, "u1 + u2 + u3\n")


def test_grassmann_sugar(capsys):
    assert run(capsys, "grassmann", "--k", "1", "--n", "3", "--m", "2")[1] == "1\n"
    assert run(capsys, "grassmann", "--k", "2", "--n", "4", "--m", "0,2")[1] == "1\n"
    assert run(capsys, "grassmann", "--k", "3", "--n", "6", "--m", "9")[1] == "-42\n"
    assert run(capsys, "grassmann", "--k", "3", "--n", "6", "--m", "9", "--orientation", "positive")[1] == "42\n"


def test_json_schema(capsys):
    code, doc = run_json(capsys, "integrate", "--k", "2", "--n", "4", "--expr", "c1(S)^4")
    assert code == 0
    assert doc["command"] == "integrate"
    assert doc["space"]["family"] == "A" and doc["space"]["rank"] == 4 and doc["space"]["h_simple"] == [1, 3]
    assert doc["result"] == {"kind": "rational", "value": "2"}


def test_json_polynomial_and_table(capsys):
    _, doc = run_json(capsys, "poincare", "--k", "1", "--n", "3")
    assert doc["result"]["kind"] == "polynomial"
    assert [(t["exponents"], t["coeff"]) for t in doc["result"]["value"]] == [([0], "1"), ([2], "1"), ([4], "1")]
    _, doc = run_json(capsys, "fixed-points", "--k", "2", "--n", "4")
    assert doc["result"]["kind"] == "table"
    assert [r["blocks"][0] for r in doc["result"]["value"]] == [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]
    _, doc = run_json(capsys, "euler-class", "--family", "A", "--rank", "2", "--h", "")
    assert doc["result"]["text"] == "-y1 + y2"


def test_rational_printing(capsys):
    code, out, _ = run(capsys, "integrate", "--k", "1", "--n", "3", "--expr", "1/3 * c1(S)^2")
    assert (code, out) == (0, "1/3\n")


def test_verify_relations(capsys):
    code, out, _ = run(capsys, "verify-relations", "--family", "C", "--rank", "3", "--h", "1")
    assert code == 0
    assert out.splitlines() == ["p2: ok", "p4: ok", "p6: ok", "e1(sq): ok", "e2(sq): ok", "e3(sq): ok"]
    code, _, err = run(capsys, "verify-relations", "--family", "A", "--rank", "3", "--h", "", "--expr", "y1")
    assert code == 1 and "NotInvariant" in err


def test_expert_subsystem_file(capsys, tmp_path):
    f = tmp_path / "d2.txt"
    f.write_text("# long roots of B2\n0\n3\n")
    assert run(capsys, "euler-char", "--family", "B", "--rank", "2", "--h-file", str(f))[1] == "2\n"
    assert run(capsys, "poincare", "--family", "B", "--rank", "2", "--h-file", str(f))[1] == "1 + t^4\n"


def test_engine_errors_carry_payload(capsys):
    code, out, _ = run(capsys, "integrate", "--k", "2", "--n", "4", "--expr", "y1 * c1(S)^3", "--json")
    doc = json.loads(out)
    assert code == 1
    assert doc["error"]["type"] == "NotInvariant"
    assert doc["error"]["payload"] == {"reflection": [2, 1, 3, 4]}

    code, out, _ = run(capsys, "integrate", "--k", "2", "--n", "4", "--expr", "c1(S)", "--json")
    doc = json.loads(out)
    assert code == 1 and doc["error"]["type"] == "DegreeMismatch"
    assert doc["error"]["payload"] == {"expected": 4, "found": [1]}

    code, out, _ = run(capsys, "integrate", "--k", "1", "--n", "3", "--expr", "c1(S", "--json")
    doc = json.loads(out)
    assert code == 1 and doc["error"]["type"] == "ExprSyntaxError"
    assert doc["error"]["payload"] == {"line": 1, "column": 5}


@pytest.mark.parametrize(
    "argv",
    [
        ["integrate", "--k", "1", "--n", "3"],
        ["frobnicate"],
        ["euler-char", "--family", "A"],
        ["euler-char", "--family", "A", "--rank", "3"],
        ["euler-char", "--family", "A", "--rank", "3", "--h", "x"],
        ["euler-char", "--k", "3", "--n", "3"],
        ["euler-char", "--k", "1", "--n", "3", "--family", "A"],
        ["grassmann", "--k", "1", "--n", "3"],
        ["integrate", "--k", "1", "--n", "3", "--expr", "c1(S)^2", "--workers", "0"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_output_independent_of_workers(capsys):
    outs = set()
    for workers in ("1", "2", "4"):
        code, out, _ = run(capsys, "eq-integrate", "--family", "A", "--rank", "4", "--h", "",
                           "--expr", "y1^8 * y2 + 3 * y3^7", "--workers", workers, "--json")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "weylsum", "euler-char", "--k", "2", "--n", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "6\n"
