"""Command-line surface: loading, reports, exit codes, determinism."""

import json

import numpy as np
import numpy.testing as npt
import pytest

from tanglie import (
    ExprError,
    ParseError,
    UnknownCatalogEntry,
    ValidationError,
    build_tangent,
    catalog_algebra,
    levi_civita,
    load_problem,
    parse_base_expr,
    parse_lifted_expr,
    run_command,
)
from tanglie.cli_io import problem_from_dict
from tanglie.metric_geometry import MetricLieAlgebra


def _write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if isinstance(doc, dict) else doc)
    return str(path)


def _heisenberg_doc():
    return {
        "schema": "tanglie/1",
        "name": "heis",
        "dim": 3,
        "basis": ["X", "Y", "Z"],
        "brackets": [{"i": 0, "j": 1, "k": 2, "value": 1.0}],
        "metrics": {
            "g1": np.eye(3).tolist(),
            "g2": np.diag([2.0, 2.0, 1.0]).tolist(),
        },
    }


# ---------------------------------------------------------------------------
# load_problem
# ---------------------------------------------------------------------------


def test_load_problem_runs_jacobi_check(tmp_path):
    problem = load_problem(_write(tmp_path, "h.json", _heisenberg_doc()))
    assert problem.dim == 3
    assert problem.basis == ("X", "Y", "Z")


def test_load_rejects_malformed_json(tmp_path):
    with pytest.raises(ParseError):
        load_problem(_write(tmp_path, "bad.json", "{not json"))


def test_load_rejects_duplicate_orientation(tmp_path):
    doc = _heisenberg_doc()
    doc["brackets"].append({"i": 1, "j": 0, "k": 2, "value": 1.0})
    with pytest.raises(ValidationError, match="i < j"):
        load_problem(_write(tmp_path, "dup.json", doc))


def test_load_rejects_indefinite_metric(tmp_path):
    doc = _heisenberg_doc()
    doc["metrics"]["g1"] = np.diag([1.0, -1.0, 1.0]).tolist()
    with pytest.raises(ValidationError, match="metrics.g1"):
        load_problem(_write(tmp_path, "npd.json", doc))


def test_load_rejects_jacobi_violation(tmp_path):
    doc = _heisenberg_doc()
    doc["brackets"] = [
        {"i": 0, "j": 1, "k": 2, "value": 1.0},
        {"i": 0, "j": 2, "k": 2, "value": 1.0},
        {"i": 1, "j": 2, "k": 0, "value": 1.0},
    ]
    with pytest.raises(ValidationError, match="Jacobi"):
        load_problem(_write(tmp_path, "jac.json", doc))


def test_catalog_unknown_entry():
    with pytest.raises(UnknownCatalogEntry):
        catalog_algebra("nope")


def test_catalog_heisenberg_contents():
    problem = catalog_algebra("heisenberg")
    npt.assert_array_equal(problem.metrics["g2"], np.diag([2.0, 2.0, 1.0]))
    npt.assert_allclose(
        problem.algebra().c[0, 1], np.array([0.0, 0.0, 1.0])
    )


# ---------------------------------------------------------------------------
# expression parsing
# ---------------------------------------------------------------------------


def _heis_tangent():
    problem = catalog_algebra("heisenberg")
    return build_tangent(
        problem.algebra(), problem.metric("g1"), problem.metric("g2")
    )


def test_parse_complete_basis_vector():
    t = _heis_tangent()
    u = parse_lifted_expr(t, "X^c")
    i = t.base.basis_labels.index("X")
    expected = np.zeros(6)
    expected[3 + i] = 1.0
    npt.assert_allclose(u, expected, atol=1e-12)


def test_parse_mixed_expression():
    t = _heis_tangent()
    u = parse_lifted_expr(t, "0.5*X^v + Z^c - 2*Y^v")
    from tanglie import complete_lift, vertical_lift

    expected = (
        0.5 * vertical_lift(t, [1, 0, 0])
        + complete_lift(t, [0, 0, 1])
        - 2.0 * vertical_lift(t, [0, 1, 0])
    )
    npt.assert_allclose(u, expected, atol=1e-12)


@pytest.mark.parametrize(
    "expr,column",
    [
        ("X^w", 2),
        ("Q^c", 0),
        ("2 Y^v", 2),
        ("X^c +", 5),
        ("", 0),
    ],
)
def test_parse_errors_carry_columns(expr, column):
    t = _heis_tangent()
    with pytest.raises(ExprError) as err:
        parse_lifted_expr(t, expr)
    assert err.value.column == column


def test_parse_base_expression():
    algebra = catalog_algebra("heisenberg").algebra()
    npt.assert_allclose(parse_base_expr(algebra, "X + 2*Z"), [1.0, 0.0, 2.0])
    with pytest.raises(ExprError):
        parse_base_expr(algebra, "X^c")


# ---------------------------------------------------------------------------
# run_command: values and exit codes
# ---------------------------------------------------------------------------


def _run_json(argv, capsys):
    code = run_command(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_sectional_heisenberg(capsys):
    code, report = _run_json(
        ["sectional", "heisenberg", "--plane", "Y^v,Z^v"], capsys
    )
    assert code == 0
    npt.assert_allclose(report["result"]["sectional"], 0.125, atol=1e-12)


def test_sectional_solvable(capsys):
    code, report = _run_json(
        ["sectional", "solvable_rr2", "--plane", "Z^v,X^v"], capsys
    )
    assert code == 0
    npt.assert_allclose(report["result"]["sectional"], 1.0 / 12.0, atol=1e-12)


def test_connection_lift_abelian_zero(capsys):
    code, report = _run_json(
        ["connection", "abelian3", "--metric", "lift"], capsys
    )
    assert code == 0
    data = np.array(report["result"]["connection"]["data"])
    npt.assert_allclose(data, 0.0)


def test_connection_methods_agree(capsys):
    results = []
    for method in ("koszul", "closed", "structconst"):
        code, report = _run_json(
            ["connection", "heisenberg", "--metric", "lift", "--method", method],
            capsys,
        )
        assert code == 0
        results.append(np.array(report["result"]["connection"]["data"]))
    npt.assert_allclose(results[0], results[1], atol=1e-10)
    npt.assert_allclose(results[0], results[2], atol=1e-10)


def test_curvature_compare_blocks(capsys):
    code, report = _run_json(
        ["curvature", "solvable_rr2", "--metric", "lift", "--compare"], capsys
    )
    assert code == 0
    dev = report["result"]["block_deviations"]
    assert dev["ccc"] <= 1e-8 and dev["vvv"] <= 1e-8
    assert set(dev) == {"ccc", "ccv", "vcc", "vvc", "vcv", "vvv"}


def test_check_command(capsys):
    code, report = _run_json(["check", "su2"], capsys)
    assert code == 0
    assert report["result"]["metrics"]["g1"]["bi_invariant"] is True


def test_field_command(capsys):
    code, report = _run_json(
        ["field", "heisenberg", "--vector", "Z"], capsys
    )
    assert code == 0
    res = report["result"]
    assert res["killing"] == {"g1": True, "g2": True}
    assert res["in_center"] is True and res["vertical_lift_killing"] is True


def test_equiv_command(capsys):
    code, report = _run_json(
        ["equiv", "heisenberg", "--tau", "dilation", "--tau2", "dilation"], capsys
    )
    assert code == 0
    assert report["result"]["lifted_is_automorphism"] is True


def test_equiv_rejects_non_automorphism(capsys):
    assert run_command(["equiv", "heisenberg", "--tau", "not_auto"]) == 2


def test_symplectic_command(capsys):
    code, report = _run_json(["symplectic", "aff1"], capsys)
    assert code == 0
    assert report["result"]["smallest_singular_value"] > 1e-6


def test_symplectic_odd_dimension_rejected(capsys):
    assert run_command(["symplectic", "heisenberg"]) == 2
    assert "NotSymplecticInput" in capsys.readouterr().err


def test_lift_round_trip(tmp_path, capsys):
    code, report = _run_json(["lift", "heisenberg"], capsys)
    assert code == 0
    doc = report["result"]["problem"]
    reloaded = problem_from_dict(doc)
    conn_reloaded = levi_civita(
        MetricLieAlgebra(reloaded.algebra(), reloaded.metric("g1"))
    )
    t = _heis_tangent()
    conn_memory = levi_civita(t.lifted_mla())
    npt.assert_allclose(conn_reloaded.gamma, conn_memory.gamma, atol=1e-9)
    npt.assert_array_equal(
        np.array(doc["meta"]["lifted_metric_unnormalized"]),
        np.array(
            np.block(
                [
                    [np.diag([2.0, 2.0, 1.0]), np.zeros((3, 3))],
                    [np.zeros((3, 3)), np.eye(3)],
                ]
            )
        ),
    )


def test_lift_writes_output_file(tmp_path, capsys):
    out = tmp_path / "lifted.json"
    code = run_command(["lift", "heisenberg", "-o", str(out)])
    capsys.readouterr()
    assert code == 0
    reloaded = load_problem(str(out))
    assert reloaded.dim == 6


def test_reports_are_deterministic(capsys):
    run_command(["curvature", "heisenberg", "--metric", "lift", "--json"])
    first = capsys.readouterr().out
    run_command(["curvature", "heisenberg", "--metric", "lift", "--json"])
    second = capsys.readouterr().out
    assert first == second


def test_exit_codes(tmp_path, capsys):
    assert run_command(["check", "nope"]) == 2
    capsys.readouterr()
    bad = _write(tmp_path, "bad.json", "{nope")
    assert run_command(["check", bad]) == 2
    capsys.readouterr()
    doc = _heisenberg_doc()
    doc["metrics"]["g1"] = np.diag([1.0, -1.0, 1.0]).tolist()
    npd = _write(tmp_path, "npd.json", doc)
    assert run_command(["check", npd]) == 2
    capsys.readouterr()
    assert run_command(["sectional", "heisenberg", "--plane", "X^w,Z^v"]) == 2
    capsys.readouterr()
    # degenerate plane is an input error
    assert run_command(["sectional", "heisenberg", "--plane", "X^c,X^c"]) == 2
    capsys.readouterr()
    # an absurd tolerance turns rounding noise into check failures
    assert (
        run_command(
            ["connection", "heisenberg", "--metric", "lift", "--tol", "1e-300"]
        )
        == 1
    )
    capsys.readouterr()


def test_usage_error_is_exit_2(capsys):
    assert run_command(["connection", "heisenberg"]) == 2  # missing --metric
    capsys.readouterr()
