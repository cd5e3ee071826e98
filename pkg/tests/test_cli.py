"""Command-line interface: subcommand outputs, exit codes, determinism."""

import json
import math

import pytest

from ncdr.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_algebra_show_json_round_trips(capsys):
    code, out, _ = run(capsys, "algebra", "show", "--alg", "H", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["name"] == "H" and doc["dim"] == 4
    from ncdr.algebra import QUATERNIONS, AlgebraSpec

    assert AlgebraSpec.from_json(out) == QUATERNIONS


def test_algebra_check(capsys):
    code, out, _ = run(capsys, "algebra", "check", "--alg", "C")
    assert code == 0 and "axioms hold" in out


def test_algebra_check_rejects_corrupted_file(tmp_path, capsys):
    from ncdr.algebra import QUATERNIONS

    doc = json.loads(QUATERNIONS.to_json())
    doc["structure"][int("123", 4)] = "2"  # corrupt C[1][2][3]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "algebra", "check", "--file", str(bad))
    assert code == 1
    assert "ValueError" in err


def test_map_convert_identity(capsys):
    code, out, _ = run(
        capsys, "map", "convert", "--dir", "coord2std", "--alg", "H",
        "--matrix", "I4", "--json",
    )
    assert code == 0
    grid = json.loads(out)
    assert grid[0][0] == "1"
    assert all(grid[i][j] == "0" for i in range(4) for j in range(4) if (i, j) != (0, 0))


def test_map_convert_reports_nonunique(capsys):
    code, out, _ = run(
        capsys, "map", "convert", "--dir", "coord2std", "--alg", "C", "--matrix", "I2"
    )
    assert code == 0 and "not unique" in out


def test_map_convert_rejects_complex_conjugation(capsys):
    code, _, err = run(
        capsys, "map", "convert", "--dir", "coord2std", "--alg", "C",
        "--matrix", "diag(1,-1)",
    )
    assert code == 1
    assert "NotRepresentable" in err


def test_map_compose(capsys):
    g = json.dumps([["0", "0", "1", "0"], ["0"] * 4, ["0"] * 4, ["0"] * 4])
    f = json.dumps([["0"] * 4, ["1", "0", "0", "0"], ["0"] * 4, ["0"] * 4])
    code, out, _ = run(capsys, "map", "compose", "--alg", "H", "--g", g, "--f", f, "--json")
    assert code == 0
    grid = json.loads(out)
    assert grid[1][2] == "1"


def test_map_bigc_report(capsys):
    code, out, _ = run(capsys, "map", "bigc", "--alg", "C", "--report")
    assert code == 0
    assert "rank 2 of 4" in out


def test_map_convert_from_file(tmp_path, capsys):
    grid = tmp_path / "conj.json"
    grid.write_text(json.dumps([["1", "0", "0", "0"], ["0", "-1", "0", "0"],
                                ["0", "0", "-1", "0"], ["0", "0", "0", "-1"]]))
    code, out, _ = run(
        capsys, "map", "convert", "--dir", "coord2std", "--alg", "H",
        "--matrix", f"@{grid}", "--json",
    )
    assert code == 0
    parsed = json.loads(out)
    assert all(parsed[i][i] == "-1/2" for i in range(4))


def test_diff_table_all_small(capsys):
    code, out, _ = run(capsys, "diff", "table", "--seed", "1", "--points", "10", "--json")
    assert code == 0
    residuals = json.loads(out)
    assert len(residuals) == 7
    assert all(v < 1e-8 for v in residuals.values())


def test_diff_jacobian(capsys):
    code, out, _ = run(
        capsys, "diff", "jacobian", "--map", "conj", "--at", "1+2i-1j+0k", "--json"
    )
    assert code == 0
    jac = json.loads(out)
    for i in range(4):
        for j in range(4):
            want = 1.0 if i == j == 0 else (-1.0 if i == j else 0.0)
            assert abs(jac[i][j] - want) < 1e-10


def test_diff_std_components_poly_map(capsys):
    code, out, _ = run(
        capsys, "diff", "std-components", "--map", "poly:i*x*j", "--at", "1", "--json"
    )
    assert code == 0
    grid = json.loads(out)
    assert grid[1][2] == "1"


def test_poly_commands(capsys):
    code, out, _ = run(capsys, "poly", "derive", "--poly", "x^2", "--order", "1")
    assert code == 0 and "h1" in out
    code, out, _ = run(capsys, "poly", "taylor", "--poly", "x^2", "--at", "1+1i", "--json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["terms"]) == 3


def test_ode_solve(capsys):
    code, out, _ = run(
        capsys, "ode", "solve", "--rhs", "h*x^2 + x*h*x + x^2*h", "--x0", "0", "--y0", "0"
    )
    assert code == 0
    assert out.strip() == "y(x) = x*x*x"
    code, _, err = run(capsys, "ode", "solve", "--rhs", "3*h*x^2", "--x0", "0", "--y0", "0")
    assert code == 1 and "NoSolution" in err


def test_exp_and_gap(capsys):
    code, out, _ = run(capsys, "exp", "--at", "0+1i+0j+0k", "--tol", "1e-12", "--json")
    assert code == 0
    coords = json.loads(out)["coords"]
    assert abs(coords[0] - math.cos(1.0)) < 1e-12
    assert abs(coords[1] - math.sin(1.0)) < 1e-12
    code, out, _ = run(capsys, "exp", "gap", "--a", "0+1i", "--b", "0+0i+1j", "--json")
    assert code == 0
    assert json.loads(out)["gap"] > 0.01
    code, _, err = run(capsys, "exp", "gap", "--a", "0+1i")
    assert code == 1 and "ParseError" in err


def test_verify_all_json_and_determinism(capsys):
    code, out, _ = run(capsys, "verify", "all", "--seed", "7", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] is True
    names = [c["name"] for c in doc["checks"]]
    assert names == sorted(names)
    pattern = [(c["name"], c["status"]) for c in doc["checks"]]
    code2, out2, _ = run(capsys, "verify", "all", "--seed", "7", "--json")
    pattern2 = [(c["name"], c["status"]) for c in json.loads(out2)["checks"]]
    assert pattern == pattern2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["map", "convert", "--dir", "sideways", "--matrix", "I4"])
    assert exc.value.code == 2


def test_tolerance_env_override(capsys, monkeypatch):
    monkeypatch.setenv("NCDR_TOL", "1e-3")
    code, out, _ = run(capsys, "diff", "table", "--seed", "3", "--points", "5", "--json")
    assert code == 0
