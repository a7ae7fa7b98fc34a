import json
import subprocess
import sys

import pytest

from motivic_nearby.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nearby_cusp_text(capsys):
    code, out, _ = run(capsys, "nearby", "x^2 + y^3")
    assert code == 0
    assert "Lambda = (0, 2, 3, 2, 0, -1)" in out
    assert "zeta(t) = (1-t^2)^(-1)*(1-t^3)^(-1)*(1-t^6)" in out
    assert "chi(fiber) = -1" in out


def test_nearby_json_is_deterministic(capsys):
    _, first, _ = run(capsys, "nearby", "x^2 + y^3", "--json")
    _, second, _ = run(capsys, "nearby", "x^2 + y^3", "--json")
    assert first == second
    data = json.loads(first)
    assert data["milnor_number"] == 2 and data["zeta_exponents"] == {"2": 1, "3": 1, "6": -1}


def test_newton_monomial(capsys):
    code, out, _ = run(capsys, "newton", "x*y", "--json")
    faces = json.loads(out)["faces"]
    assert code == 0 and len(faces) == 1 and faces[0]["J"] == []


def test_nondeg_reports_witness(capsys):
    code, out, _ = run(capsys, "nondeg", "x^2 + 2*x*y + y^2")
    assert code == 0 and "witness=[1, -1]" in out and "DEGENERATE" in out


@pytest.mark.parametrize("fixture", ["line", "node", "cusp", "product_2_3", "product_3_4"])
def test_compare_passes(capsys, fixture):
    code, out, _ = run(capsys, "compare", "--fixture", fixture)
    assert code == 0 and "FAIL" not in out


def test_zeta_coefficients(capsys):
    code, out, _ = run(capsys, "zeta", "--fixture", "cusp", "--order", "2", "--q", "3", "--json")
    rows = json.loads(out)["coefficients"]
    assert code == 0 and rows[2]["counts"]["3"] == "10/9"


def test_truncated_limit_check(capsys):
    code, out, _ = run(capsys, "truncated", "--fixture", "product_2_3", "--cone", "a=b; a>0; b>0",
                       "--ell", "a+b", "--json")
    assert code == 0 and json.loads(out)["limit_matches"] is True


def test_jets(capsys):
    code, out, _ = run(capsys, "jets", "x*y", "--order", "2", "--q", "3", "--json")
    assert code == 0 and json.loads(out)["counts"]["3"]["total"] == 108


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "nearby", "x^2 +")
    assert code == 1 and "position" in err


def test_degenerate_exit_code(capsys):
    code, _, err = run(capsys, "nearby", "(x+y)^2")
    assert code == 2 and "degenerate" in err


def test_guard_exit_code(capsys):
    code, _, _ = run(capsys, "jets", "x*y", "--order", "30", "--q", "7")
    assert code == 2


def test_missing_datum_is_input_error(capsys):
    code, _, _ = run(capsys, "zeta")
    assert code == 1


def test_inconsistency_exit_code(capsys, tmp_path):
    bad = json.loads(json.dumps({
        "name": "wrong_cusp", "functions": ["x^2 + y^3"], "vars": ["x", "y"], "p": 1, "dim": 2,
        "divisors": [{"id": "E", "N": [2], "nu": 2}],
        "strata": [{"I": ["E"], "chi": 1, "count_poly": [0, 1], "over_X0": True}],
    }))
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "compare", "--resolution", str(path))
    assert code == 3 and "FAIL" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "motivic_nearby", "nearby", "x + y"],
                          capture_output=True, text=True, check=True)
    assert "Lambda = (1)" in proc.stdout
