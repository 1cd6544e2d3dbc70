from fractions import Fraction

import pytest

import cyclica


J3 = [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
E12 = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
E13 = [[0, 0, 1], [0, 0, 0], [0, 0, 0]]


def test_commands_listed():
    assert "mrb analyze" in cyclica.commands()
    assert "hautus" in cyclica.commands()


def test_triangular_vector_is_cyclic():
    code, report = cyclica.run("cyclic-vector", {"schema": "v1", "generators": [J3], "b": [0, 0, 1]})
    assert code == 0
    assert report["result"]["certificate"]["verdict"] == "cyclic"
    assert report["result"]["certificate"]["orbit_dim"] == 3


def test_first_row_algebra_has_no_cyclic_vector():
    code, report = cyclica.run("cyclic-vector", {"generators": [E12, E13]}, seed=4)
    assert code == 0
    cert = report["result"]["certificate"]
    assert cert["verdict"] == "not_cyclic"
    assert cert["obstruction"]["kind"] == "rank_drop"
    assert cert["obstruction"]["dimP"] == 2
    assert report["config"]["seed"] == 4


def test_deterministic_reports():
    a = cyclica.run("design", {"generators": [[[1, 0, 0], [0, 1, 0], [0, 0, 2]]]}, seed=9)
    b = cyclica.run("design", {"generators": [[[1, 0, 0], [0, 1, 0], [0, 0, 2]]]}, seed=9)
    assert a == b
    assert a[1]["result"]["r_min"] == 2


def test_input_errors_exit_one():
    code, report = cyclica.run("closure", {"generators": [[[1, 2], [3]]]})
    assert code == 1
    assert report["error"]["kind"] == "schema"
    assert "$.generators[0][1]" in report["error"]["message"]
    with pytest.raises(ValueError):
        cyclica.run("closure", "{not json")


def test_closure_and_orbit_dims():
    assert cyclica.closure_dim([J3]) == 3
    assert cyclica.closure_dim([E12, E13]) == 3
    assert cyclica.orbit_dim([J3], [1, 0, 0]) == 1
    assert cyclica.orbit_dim([J3], [0, 0, 1]) == 3


def test_rigid_body_operators():
    C = [1, 2, 3, 4]
    assert cyclica.coupling(C, 2, 3) == Fraction(1, 5)
    assert cyclica.coupling(C, 1, 4) == Fraction(3, 5)
    lam = cyclica.lambda_operator(C, 1, 2)
    assert lam[3][1] == Fraction(1, 5)
    assert lam[1][3] == Fraction(-1, 2)
    table = cyclica.lambda_operator(C, 3, 4, convention="table")
    shown = cyclica.lambda_operator(C, 3, 4)
    assert table == [[-x for x in row] for row in shown]
    with pytest.raises(ValueError):
        cyclica.coupling(C, 2, 2)


def test_char_poly_of_lambda_has_double_zero():
    p = cyclica.char_poly(cyclica.lambda_operator([1, 2, 3, 4], 1, 2))
    assert p[0] == 0 and p[1] == 0 and p[2] != 0
    assert p[-1] == 1


def test_mrb_analyze_cases():
    code, rep = cyclica.run("mrb analyze", {"n": 4, "C": [1, 2, 3, 4], "axes": [[1, 2], [2, 3]]})
    assert code == 0
    assert rep["result"]["cyclic_vector"]["verdict"] == "cyclic"
    assert rep["result"]["perturbation"]["first"]["min_gap"] > 1e-6
    code, rep = cyclica.run("mrb analyze", {"n": 4, "C": [1, 2, 3, 4], "axes": [[1, 2], [3, 4]]})
    assert code == 0
    assert rep["result"]["cyclic_vector"]["verdict"] == "not_cyclic"
    assert rep["result"]["minimal"]["r"] == 2


def test_float_backend():
    code, rep = cyclica.run("hautus", {"generators": [E12, E13]}, backend="float", r=1)
    assert code == 0
    assert rep["result"]["verdict"] == "no_cyclic_subspace"
