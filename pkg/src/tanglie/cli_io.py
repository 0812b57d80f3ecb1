"""Problem-file ingestion, built-in catalog, CLI commands, and reports.

Problem files are JSON documents with schema tag ``tanglie/1``::

    {
      "schema": "tanglie/1",
      "name": "heisenberg",
      "dim": 3,
      "basis": ["X", "Y", "Z"],
      "brackets": [{"i": 0, "j": 1, "k": 2, "value": 1.0}],
      "metrics": {"g1": [[...]], "g2": [[...]]},
      "symplectic": {"w1": [[...]], "w2": [[...]]},      # optional
      "automorphisms": {"dilation": [[...]]},            # optional
      "meta": {...}                                      # optional, ignored
    }

Bracket entries carry only the ``i < j`` orientation; the opposite one is
implied by antisymmetry and rejected if present.  Lie algebras are checked
against the Jacobi identity and metrics against positive definiteness at
load time.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import metric_geometry as mg
from . import symplectic_lift as sp
from . import tangent_lift as tl
from .errors import (
    DegeneratePlane,
    ExprError,
    InvalidDimension,
    NonPositiveDefinite,
    NotSymplecticInput,
    ParseError,
    PreconditionViolated,
    SingularMap,
    UnknownCatalogEntry,
    ValidationError,
)
from .lie_core import (
    CHECK_TOL,
    EPS_JACOBI,
    EPS_SYM,
    LieAlgebra,
    Metric,
    is_automorphism,
    jacobi_defect,
    pullback_metric,
)

SCHEMA = "tanglie/1"

LIFT_INDEX_CONVENTION = (
    "indices 0..n-1: normalized vertical lifts X_i^v/sqrt(lambda_i); "
    "indices n..2n-1: complete lifts X_i^c; X_i runs over the eigenbasis "
    "of the metric pair, eigenvalues ascending"
)


# ---------------------------------------------------------------------------
# Problem files
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProblemFile:
    """Validated problem description: algebra, metrics, optional extras."""

    name: str
    dim: int
    basis: tuple[str, ...]
    brackets: tuple[tuple[int, int, int, float], ...]
    metrics: dict[str, np.ndarray] = field(default_factory=dict)
    symplectic: dict[str, np.ndarray] = field(default_factory=dict)
    automorphisms: dict[str, np.ndarray] = field(default_factory=dict)

    def algebra(self) -> LieAlgebra:
        entries = {(i, j, k): v for i, j, k, v in self.brackets}
        return LieAlgebra.from_brackets(self.dim, entries, self.basis)

    def metric(self, name: str) -> Metric:
        if name not in self.metrics:
            raise ValidationError(f"metrics.{name}: not present in problem")
        return Metric(self.metrics[name])

    def two_form(self, name: str) -> sp.TwoForm:
        if name not in self.symplectic:
            raise ValidationError(f"symplectic.{name}: not present in problem")
        return sp.TwoForm(self.symplectic[name])

    def automorphism(self, name: str) -> np.ndarray:
        if name not in self.automorphisms:
            raise ValidationError(f"automorphisms.{name}: not present in problem")
        return self.automorphisms[name]

    def to_dict(self) -> dict:
        doc = {
            "schema": SCHEMA,
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.basis),
            "brackets": [
                {"i": i, "j": j, "k": k, "value": v} for i, j, k, v in self.brackets
            ],
            "metrics": {n: m.tolist() for n, m in self.metrics.items()},
        }
        if self.symplectic:
            doc["symplectic"] = {n: m.tolist() for n, m in self.symplectic.items()}
        if self.automorphisms:
            doc["automorphisms"] = {
                n: m.tolist() for n, m in self.automorphisms.items()
            }
        return doc

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return "sha256:" + hashlib.sha256(blob).hexdigest()


def _require(cond: bool, path: str, message: str):
    if not cond:
        raise ValidationError(f"{path}: {message}")


def _as_matrix(raw, path: str, dim: int) -> np.ndarray:
    try:
        m = np.asarray(raw, dtype=float)
    except (TypeError, ValueError):
        raise ValidationError(f"{path}: not a numeric matrix") from None
    _require(m.shape == (dim, dim), path, f"shape {m.shape}, expected ({dim}, {dim})")
    return m


def problem_from_dict(
    doc: dict, fallback_name: str = "problem", eps_jacobi: float = EPS_JACOBI
) -> ProblemFile:
    """Validate a parsed JSON document and construct the problem."""
    _require(isinstance(doc, dict), "$", "document must be a JSON object")
    schema = doc.get("schema", SCHEMA)
    _require(schema == SCHEMA, "schema", f"unsupported schema {schema!r}")
    dim = doc.get("dim")
    _require(isinstance(dim, int) and dim > 0, "dim", "must be a positive integer")
    basis = doc.get("basis", [f"X{i + 1}" for i in range(dim)])
    _require(
        isinstance(basis, list) and len(basis) == dim, "basis", f"needs {dim} labels"
    )
    basis = tuple(str(b) for b in basis)

    entries: list[tuple[int, int, int, float]] = []
    seen: set[tuple[int, int, int]] = set()
    for idx, item in enumerate(doc.get("brackets", [])):
        path = f"brackets[{idx}]"
        _require(isinstance(item, dict), path, "must be an object")
        try:
            i, j, k = int(item["i"]), int(item["j"]), int(item["k"])
            v = float(item["value"])
        except (KeyError, TypeError, ValueError):
            raise ValidationError(f"{path}: needs integer i, j, k and value") from None
        _require(0 <= i < dim and 0 <= j < dim and 0 <= k < dim, path, "index out of range")
        _require(
            i < j,
            path,
            f"duplicate orientation: entries must have i < j (got i={i}, j={j})",
        )
        _require((i, j, k) not in seen, path, f"duplicate entry for ({i},{j},{k})")
        seen.add((i, j, k))
        entries.append((i, j, k, v))

    metrics = {}
    for name, raw in (doc.get("metrics") or {}).items():
        m = _as_matrix(raw, f"metrics.{name}", dim)
        try:
            Metric(m)
        except NonPositiveDefinite as exc:
            raise ValidationError(f"metrics.{name}: {exc}") from None
        metrics[str(name)] = m

    symplectic = {}
    for name, raw in (doc.get("symplectic") or {}).items():
        m = _as_matrix(raw, f"symplectic.{name}", dim)
        try:
            sp.TwoForm(m)
        except ValidationError as exc:
            raise ValidationError(f"symplectic.{name}: {exc}") from None
        symplectic[str(name)] = m

    autos = {}
    for name, raw in (doc.get("automorphisms") or {}).items():
        autos[str(name)] = _as_matrix(raw, f"automorphisms.{name}", dim)

    problem = ProblemFile(
        name=str(doc.get("name", fallback_name)),
        dim=dim,
        basis=basis,
        brackets=tuple(entries),
        metrics=metrics,
        symplectic=symplectic,
        automorphisms=autos,
    )
    defect = jacobi_defect(problem.algebra())
    _require(
        defect <= eps_jacobi,
        "brackets",
        f"Jacobi identity violated: defect {defect:.3e} exceeds {eps_jacobi:.1e}",
    )
    return problem


def load_problem(path: str, eps_jacobi: float = EPS_JACOBI) -> ProblemFile:
    """Read and validate a problem file."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from None
    return problem_from_dict(doc, fallback_name=path, eps_jacobi=eps_jacobi)


# ---------------------------------------------------------------------------
# Built-in catalog
# ---------------------------------------------------------------------------


def _catalog_heisenberg() -> ProblemFile:
    return ProblemFile(
        name="heisenberg",
        dim=3,
        basis=("X", "Y", "Z"),
        brackets=((0, 1, 2, 1.0),),
        metrics={"g1": np.eye(3), "g2": np.diag([2.0, 2.0, 1.0])},
        automorphisms={
            "dilation": np.diag([2.0, 3.0, 6.0]),
            "not_auto": np.diag([2.0, 3.0, 1.0]),
        },
    )


def _catalog_solvable_rr2() -> ProblemFile:
    # [Z, X] = X, [Z, Y] = -Y
    return ProblemFile(
        name="solvable_rr2",
        dim=3,
        basis=("X", "Y", "Z"),
        brackets=((0, 2, 0, -1.0), (1, 2, 1, 1.0)),
        metrics={"g1": np.eye(3), "g2": np.diag([1.0, 2.0, 3.0])},
        automorphisms={"axis_scale": np.diag([2.0, 3.0, 1.0])},
    )


def _catalog_su2() -> ProblemFile:
    # cyclic bracket table; metrics are the negative Killing form
    return ProblemFile(
        name="su2",
        dim=3,
        basis=("X", "Y", "Z"),
        brackets=((0, 1, 2, 1.0), (1, 2, 0, 1.0), (0, 2, 1, -1.0)),
        metrics={"g1": 2.0 * np.eye(3), "g2": 2.0 * np.eye(3)},
        automorphisms={
            "rot_z": np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
        },
    )


def _catalog_aff1() -> ProblemFile:
    omega = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return ProblemFile(
        name="aff1",
        dim=2,
        basis=("X", "Y"),
        brackets=((0, 1, 1, 1.0),),
        metrics={"g1": np.eye(2), "g2": np.diag([1.0, 2.0])},
        symplectic={"w1": omega, "w2": omega},
    )


def _catalog_abelian2() -> ProblemFile:
    omega = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return ProblemFile(
        name="abelian2",
        dim=2,
        basis=("X", "Y"),
        brackets=(),
        metrics={"g1": np.eye(2), "g2": np.diag([1.0, 2.0])},
        symplectic={"w1": omega, "w2": 2.0 * omega},
    )


def _catalog_abelian3() -> ProblemFile:
    return ProblemFile(
        name="abelian3",
        dim=3,
        basis=("X", "Y", "Z"),
        brackets=(),
        metrics={"g1": np.eye(3), "g2": np.diag([1.0, 2.0, 3.0])},
    )


_CATALOG = {
    "heisenberg": _catalog_heisenberg,
    "solvable_rr2": _catalog_solvable_rr2,
    "su2": _catalog_su2,
    "aff1": _catalog_aff1,
    "abelian2": _catalog_abelian2,
    "abelian3": _catalog_abelian3,
}

CATALOG_NAMES = tuple(sorted(_CATALOG))


def catalog_algebra(name: str) -> ProblemFile:
    """Return a built-in problem by name."""
    try:
        builder = _CATALOG[name]
    except KeyError:
        raise UnknownCatalogEntry(
            f"unknown catalog entry {name!r}; available: {', '.join(CATALOG_NAMES)}"
        ) from None
    return builder()


def resolve_problem(source: str) -> ProblemFile:
    """Interpret a CLI argument as a file path or a catalog name."""
    import os

    if os.path.exists(source):
        return load_problem(source)
    if source in _CATALOG:
        return catalog_algebra(source)
    raise UnknownCatalogEntry(
        f"{source!r} is neither an existing file nor a catalog name "
        f"({', '.join(CATALOG_NAMES)})"
    )


# ---------------------------------------------------------------------------
# Vector expressions
# ---------------------------------------------------------------------------

_NUMBER = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?")
_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _scan_terms(s: str, labels: tuple[str, ...], lifted: bool):
    """Yield (signed coefficient, basis index, lift kind) triples.

    Grammar: term (("+"|"-") term)*; term := [coef "*"] label suffix,
    where suffix is "^c" or "^v" in lifted mode and empty otherwise.
    """
    pos = 0
    n = len(s)
    first = True
    while True:
        while pos < n and s[pos].isspace():
            pos += 1
        if pos >= n:
            if first:
                raise ExprError("empty expression", pos)
            return
        sign = 1.0
        if not first:
            if s[pos] == "+":
                pos += 1
            elif s[pos] == "-":
                sign = -1.0
                pos += 1
            else:
                raise ExprError("expected '+' or '-' between terms", pos)
            while pos < n and s[pos].isspace():
                pos += 1
        coef = 1.0
        m = _NUMBER.match(s, pos)
        if m:
            coef = float(m.group())
            pos = m.end()
            while pos < n and s[pos].isspace():
                pos += 1
            if pos < n and s[pos] == "*":
                pos += 1
                while pos < n and s[pos].isspace():
                    pos += 1
            else:
                raise ExprError("expected '*' after coefficient", pos)
        m = _LABEL.match(s, pos)
        if not m:
            raise ExprError("expected a basis label", pos)
        label = m.group()
        if label not in labels:
            raise ExprError(f"unknown basis label {label!r}", m.start())
        pos = m.end()
        kind = None
        if lifted:
            if pos >= n or s[pos] != "^":
                raise ExprError("expected '^c' or '^v' after label", pos)
            pos += 1
            if pos >= n or s[pos] not in "cv":
                raise ExprError("expected 'c' or 'v' after '^'", pos)
            kind = s[pos]
            pos += 1
        elif pos < n and s[pos] == "^":
            raise ExprError("lift suffix not allowed in a base-vector expression", pos)
        yield sign * coef, labels.index(label), kind
        first = False


def parse_lifted_expr(t: tl.TangentLieAlgebra, s: str) -> np.ndarray:
    """Parse a lifted-vector expression such as ``"0.5*X^v + Z^c"``.

    Labels refer to the input basis of the base algebra; vertical terms
    are raw (unnormalized) vertical lifts.
    """
    labels = t.input_algebra.basis_labels
    u = np.zeros(2 * t.dim)
    for coef, idx, kind in _scan_terms(s, labels, lifted=True):
        e = t.input_algebra.basis_vector(idx)
        u += coef * (tl.vertical_lift(t, e) if kind == "v" else tl.complete_lift(t, e))
    return u


def parse_base_expr(algebra: LieAlgebra, s: str) -> np.ndarray:
    """Parse a base-vector expression such as ``"X + 2*Z"``."""
    x = np.zeros(algebra.dim)
    for coef, idx, _ in _scan_terms(s, algebra.basis_labels, lifted=False):
        x[idx] += coef
    return x


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def tensor_payload(arr: np.ndarray, convention: str) -> dict:
    return {
        "shape": list(arr.shape),
        "data": [float(v) for v in np.asarray(arr, dtype=float).ravel()],
        "index_convention": convention,
    }


class Report:
    """Accumulates results and pass/fail residual rows for one command."""

    def __init__(self, command: list[str], problem: ProblemFile, tol: float | None):
        self.command = list(command)
        self.problem = problem
        self.tol = tol
        self.result: dict = {}
        self.checks: list[dict] = []

    def check(self, name: str, residual: float, default_tol: float):
        tol = self.tol if self.tol is not None else default_tol
        self.checks.append(
            {
                "name": name,
                "residual": float(residual),
                "tol": tol,
                "passed": bool(residual <= tol),
            }
        )

    def check_bool(self, name: str, passed: bool):
        self.checks.append(
            {"name": name, "residual": None, "tol": None, "passed": bool(passed)}
        )

    def info(self, name: str, residual: float):
        """Residual reported without a pass/fail judgement."""
        self.checks.append(
            {"name": name, "residual": float(residual), "tol": None, "passed": None}
        )

    @property
    def passed(self) -> bool:
        return all(c["passed"] is not False for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "input": {"name": self.problem.name, "digest": self.problem.digest()},
            "tolerance": self.tol,
            "result": self.result,
            "checks": self.checks,
            "passed": self.passed,
        }

    def emit(self, json_mode: bool, stream=None) -> None:
        stream = stream or sys.stdout
        if json_mode:
            json.dump(self.to_dict(), stream, indent=2)
            stream.write("\n")
            return
        stream.write(
            f"problem: {self.problem.name} (dim {self.problem.dim})  "
            f"{self.problem.digest()}\n"
        )
        stream.write(f"command: {' '.join(self.command)}\n")
        if self.result:
            stream.write("result:\n")
            for key, val in self.result.items():
                stream.write(f"  {key} = {_render_value(val)}\n")
        if self.checks:
            stream.write("checks:\n")
            for row in self.checks:
                status = {True: "pass", False: "FAIL", None: "info"}[row["passed"]]
                res = "" if row["residual"] is None else f"  residual {_fmt(row['residual'])}"
                tol = "" if row["tol"] is None else f"  tol {_fmt(row['tol'])}"
                stream.write(f"  [{status}] {row['name']}{res}{tol}\n")
        stream.write(f"overall: {'PASS' if self.passed else 'FAIL'}\n")


def _render_value(val) -> str:
    if isinstance(val, float):
        return _fmt(val)
    if isinstance(val, dict) and "shape" in val and "data" in val:
        return f"tensor shape {val['shape']} ({val['index_convention']})"
    if isinstance(val, dict):
        return "{" + ", ".join(f"{k}: {_render_value(v)}" for k, v in val.items()) + "}"
    if isinstance(val, list):
        return "[" + ", ".join(_render_value(v) for v in val) + "]"
    return str(val)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _base_mla(problem: ProblemFile, metric_name: str) -> mg.MetricLieAlgebra:
    return mg.MetricLieAlgebra(problem.algebra(), problem.metric(metric_name))


def _tangent(problem: ProblemFile) -> tl.TangentLieAlgebra:
    return tl.build_tangent(
        problem.algebra(), problem.metric("g1"), problem.metric("g2")
    )


def _cmd_check(args, report: Report):
    problem = report.problem
    algebra = problem.algebra()
    report.check("jacobi_defect", jacobi_defect(algebra), EPS_JACOBI)
    payload = {"jacobi_defect": jacobi_defect(algebra), "metrics": {}}
    for name, raw in problem.metrics.items():
        report.check(f"metrics.{name}.symmetry", float(np.max(np.abs(raw - raw.T))), EPS_SYM)
        metric = problem.metric(name)
        mla = mg.MetricLieAlgebra(algebra, metric)
        bi = mg.bi_invariance_defect(mla)
        eq23 = mg.canonical_metricity_defect(mla)
        eq24 = mg.double_bracket_defect(mla)
        tol = report.tol if report.tol is not None else CHECK_TOL
        payload["metrics"][name] = {
            "min_cholesky_pivot": float(np.min(np.diag(np.linalg.cholesky(metric.g))) ** 2),
            "bi_invariant": bool(bi <= tol),
            "bi_invariance_residual": bi,
            "canonical_metricity_defect": eq23,
            "double_bracket_residual": eq24,
            "satisfies_double_bracket_condition": bool(eq24 <= tol),
        }
        report.info(f"metrics.{name}.bi_invariance_residual", bi)
        report.info(f"metrics.{name}.canonical_metricity_defect", eq23)
        report.info(f"metrics.{name}.double_bracket_residual", eq24)
    report.result = payload


def _cmd_connection(args, report: Report):
    problem = report.problem
    if args.metric in ("g1", "g2"):
        if args.method not in (None, "koszul"):
            raise ValidationError(
                f"method {args.method!r} applies only to the lifted metric"
            )
        mla = _base_mla(problem, args.metric)
        conn = mg.levi_civita(mla)
        convention = "gamma[i,j,k]: coefficient of X_k in nabla_{X_i} X_j, input basis"
    else:
        t = _tangent(problem)
        mla = t.lifted_mla()
        method = args.method or "koszul"
        if method == "koszul":
            conn = mg.levi_civita(mla)
        elif method == "closed":
            conn = tl.lifted_connection_closed_form(t)
        else:
            conn = tl.lifted_connection_structure_constants(t)
        oracle = mg.levi_civita(mla)
        closed = tl.lifted_connection_closed_form(t)
        structconst = tl.lifted_connection_structure_constants(t)
        report.check(
            "closed_form_vs_koszul",
            float(np.max(np.abs(closed.gamma - oracle.gamma))),
            CHECK_TOL,
        )
        report.check(
            "structure_constants_vs_koszul",
            float(np.max(np.abs(structconst.gamma - oracle.gamma))),
            CHECK_TOL,
        )
        convention = f"gamma[i,j,k] on the lift basis; {LIFT_INDEX_CONVENTION}"
    report.check("torsion_free", mg.torsion_defect(mla, conn), 1e-9)
    report.check("metric_compatible", mg.compatibility_defect(mla, conn), 1e-9)
    report.result = {"connection": tensor_payload(conn.gamma, convention)}


def _cmd_curvature(args, report: Report):
    problem = report.problem
    if args.metric in ("g1", "g2"):
        if args.compare:
            raise ValidationError("--compare applies only to the lifted metric")
        mla = _base_mla(problem, args.metric)
        riem = mg.curvature(mla, mg.levi_civita(mla))
        convention = "r[i,j,k,h]: coefficient of X_h in R(X_i,X_j)X_k, input basis"
    else:
        t = _tangent(problem)
        mla = t.lifted_mla()
        riem = tl.lifted_curvature(t)
        convention = f"r[i,j,k,h] on the lift basis; {LIFT_INDEX_CONVENTION}"
        if args.compare:
            deviations = tl.curvature_block_deviations(t, riem)
            report.result["block_deviations"] = deviations
            # only the two unambiguous formula blocks gate the outcome
            report.check("block_ccc_vs_oracle", deviations["ccc"], CHECK_TOL)
            report.check("block_vvv_vs_oracle", deviations["vvv"], CHECK_TOL)
            for key in ("ccv", "vcc", "vvc", "vcv"):
                report.info(f"block_{key}_vs_oracle", deviations[key])
    defects = mg.curvature_invariant_defects(mla, riem)
    for name, value in defects.items():
        report.check(name, value, CHECK_TOL)
    report.result["curvature"] = tensor_payload(riem.r, convention)


def _cmd_sectional(args, report: Report):
    t = _tangent(report.problem)
    parts = args.plane.split(",")
    if len(parts) != 2:
        raise ExprError("plane needs exactly two comma-separated expressions", 0)
    u = parse_lifted_expr(t, parts[0])
    v = parse_lifted_expr(t, parts[1])
    value = tl.lifted_sectional(t, u, v)
    report.result = {
        "sectional": value,
        "plane": [parts[0].strip(), parts[1].strip()],
    }


def _lifted_problem_doc(t: tl.TangentLieAlgebra, name: str) -> dict:
    n = t.dim
    b = t.lifted.c
    brackets = []
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            for k in range(2 * n):
                if b[i, j, k] != 0.0:
                    brackets.append({"i": i, "j": j, "k": k, "value": float(b[i, j, k])})
    return {
        "schema": SCHEMA,
        "name": f"{name}_tangent",
        "dim": 2 * n,
        "basis": list(t.lifted.basis_labels),
        "brackets": brackets,
        "metrics": {
            "g1": np.eye(2 * n).tolist(),
            "g2": np.eye(2 * n).tolist(),
        },
        "meta": {
            "index_convention": LIFT_INDEX_CONVENTION,
            "lambdas": [float(v) for v in t.phi_data.lambdas],
            "eigenbasis_columns": t.phi_data.b1.tolist(),
            "lifted_metric_unnormalized": tl.unnormalized_lifted_metric(t).tolist(),
        },
    }


def _cmd_lift(args, report: Report):
    t = _tangent(report.problem)
    doc = _lifted_problem_doc(t, report.problem.name)
    reloaded = problem_from_dict(json.loads(json.dumps(doc)))
    conn_reloaded = mg.levi_civita(
        mg.MetricLieAlgebra(reloaded.algebra(), reloaded.metric("g1"))
    )
    conn_memory = mg.levi_civita(t.lifted_mla())
    report.check(
        "round_trip_connection",
        float(np.max(np.abs(conn_reloaded.gamma - conn_memory.gamma))),
        1e-9,
    )
    report.result = {"problem": doc}
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")


def _cmd_field(args, report: Report):
    problem = report.problem
    algebra = problem.algebra()
    x = parse_base_expr(algebra, args.vector)
    mla1 = _base_mla(problem, "g1")
    mla2 = _base_mla(problem, "g2")
    tol = report.tol if report.tol is not None else CHECK_TOL
    cls = mg.classify_field(mla1, mla2, x, tol)
    geo1 = mg.is_geodesic_vector(mla1, mg.levi_civita(mla1), x, tol)
    geo2 = mg.is_geodesic_vector(mla2, mg.levi_civita(mla2), x, tol)
    # direct check on the lift: vertical lifts are Killing exactly for
    # central vectors
    t = _tangent(problem)
    lift_l = mg.lie_derivative_metric(t.lifted_mla(), tl.vertical_lift(t, x))
    vertical_killing = float(np.max(np.abs(lift_l))) <= tol
    report.check_bool(
        "vertical_killing_iff_central", vertical_killing == cls.in_center
    )
    report.result = {
        "vector": args.vector.strip(),
        "killing": {"g1": cls.killing1, "g2": cls.killing2},
        "conformal": {"g1": cls.conformal1, "g2": cls.conformal2},
        "conformal_factor": {
            "g1": cls.conformal_factor1,
            "g2": cls.conformal_factor2,
        },
        "lie_derivative_residual": {"g1": cls.residual1, "g2": cls.residual2},
        "geodesic": {"g1": geo1, "g2": geo2},
        "in_center": cls.in_center,
        "vertical_lift_killing": vertical_killing,
    }


def _cmd_equiv(args, report: Report):
    problem = report.problem
    algebra = problem.algebra()
    tau = problem.automorphism(args.tau)
    report.check_bool("tau_is_automorphism", is_automorphism(algebra, tau))
    payload = {"tau": args.tau, "defects": {}}
    for name in sorted(problem.metrics):
        mla = _base_mla(problem, name)
        pulled = mg.MetricLieAlgebra(algebra, pullback_metric(mla.metric, tau))
        defects = mg.equivariance_defect(mla, pulled, tau)
        payload["defects"][name] = {
            "connection": defects.connection_defect,
            "curvature": defects.curvature_defect,
            "sectional": defects.sectional_defect,
        }
        report.check(f"{name}.connection_equivariance", defects.connection_defect, CHECK_TOL)
        report.check(f"{name}.curvature_equivariance", defects.curvature_defect, CHECK_TOL)
        report.check(f"{name}.sectional_equivariance", defects.sectional_defect, CHECK_TOL)
    if args.tau2:
        tau2 = problem.automorphism(args.tau2)
        big = tl.lift_automorphism(tau, tau2)
        t = _tangent(problem)
        g_lift = tl.unnormalized_lifted_metric(t)
        n = problem.dim
        expected = np.zeros_like(g_lift)
        expected[:n, :n] = tau2.T @ problem.metric("g2").g @ tau2
        expected[n:, n:] = tau.T @ problem.metric("g1").g @ tau
        report.check(
            "lifted_pullback_identity",
            float(np.max(np.abs(big.T @ g_lift @ big - expected))),
            1e-9,
        )
        lifted_auto = is_automorphism(tl.tangent_algebra_unnormalized(algebra), big)
        payload["tau2"] = args.tau2
        payload["lifted_is_automorphism"] = lifted_auto
        if np.array_equal(tau, tau2):
            report.check_bool("lifted_automorphism", lifted_auto)
    report.result = payload


def _cmd_symplectic(args, report: Report):
    problem = report.problem
    if problem.dim % 2 == 1:
        raise NotSymplecticInput(
            f"no symplectic form exists in odd dimension {problem.dim}"
        )
    t = _tangent(problem)
    w1 = problem.two_form("w1")
    w2 = problem.two_form("w2")
    lifted = sp.lift_symplectic(t, w1, w2)
    residuals = sp.verify_closedness_identities(t, lifted)
    for pattern, value in residuals.items():
        report.check(f"closedness_{pattern}", value, 1e-9)
    singular = np.linalg.svd(lifted.w, compute_uv=False)
    report.check_bool("nondegenerate", bool(singular[-1] > 1e-6))
    report.check_bool(
        "lifted_is_symplectic", sp.is_symplectic(t.lifted, lifted, 1e-9)
    )
    report.result = {
        "lifted_form": tensor_payload(
            lifted.w, f"antisymmetric matrix on the lift basis; {LIFT_INDEX_CONVENTION}"
        ),
        "smallest_singular_value": float(singular[-1]),
    }


# ---------------------------------------------------------------------------
# Argument parsing and dispatch
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tanglie",
        description=(
            "Geometry of tangent Lie groups from two left-invariant metrics: "
            "connections, curvature, sectional curvature, vector-field "
            "classification, metric equivalence, and symplectic lifts."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument(
        "--tol", type=float, default=None, help="override every check tolerance"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("problem", help="problem file path or catalog name")
        return p

    add("check", "structural residuals of the algebra and its metrics")
    p = add("connection", "Levi-Civita Christoffel tensor")
    p.add_argument("--metric", choices=("g1", "g2", "lift"), required=True)
    p.add_argument("--method", choices=("koszul", "closed", "structconst"))
    p = add("curvature", "curvature tensor and its invariants")
    p.add_argument("--metric", choices=("g1", "g2", "lift"), required=True)
    p.add_argument(
        "--compare",
        action="store_true",
        help="per-block deviation of the structure-constant formulas",
    )
    p = add("sectional", "sectional curvature of a lifted plane")
    p.add_argument("--plane", required=True, help='two expressions, e.g. "Y^v,Z^c"')
    p = add("lift", "emit the tangent algebra as a problem document")
    p.add_argument("-o", "--output", help="also write the document to this file")
    p = add("field", "Killing/conformal/geodesic classification of a base vector")
    p.add_argument("--vector", required=True, help='base expression, e.g. "X + 2*Z"')
    p = add("equiv", "equivalence-up-to-automorphism defects")
    p.add_argument("--tau", required=True, help="automorphism name in the problem")
    p.add_argument("--tau2", help="second automorphism for the lifted pullback check")
    add("symplectic", "lift the symplectic pair and verify it")
    return parser


_COMMANDS = {
    "check": _cmd_check,
    "connection": _cmd_connection,
    "curvature": _cmd_curvature,
    "sectional": _cmd_sectional,
    "lift": _cmd_lift,
    "field": _cmd_field,
    "equiv": _cmd_equiv,
    "symplectic": _cmd_symplectic,
}

_INPUT_ERRORS = (
    ParseError,
    ValidationError,
    UnknownCatalogEntry,
    ExprError,
    NotSymplecticInput,
    InvalidDimension,
    NonPositiveDefinite,
    SingularMap,
    DegeneratePlane,
    PreconditionViolated,
)


def run_command(argv: list[str]) -> int:
    """Execute one CLI invocation; returns the process exit code.

    0: all checks passed; 1: a check failed; 2: input or usage error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        problem = resolve_problem(args.problem)
        report = Report(argv, problem, args.tol)
        _COMMANDS[args.subcommand](args, report)
    except _INPUT_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    report.emit(args.json)
    return 0 if report.passed else 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
