"""Scenario files: JSON descriptions of prepare / transform / measure experiments.

A scenario fixes a phase space (prime modulus or the rationals), a preparation
(V, v), an optional reversible affine-symplectic transformation (S, a), a sharp
measurement V', and a mode saying which engine(s) to run:

* ``epistricted`` — exact classical statistics (or, over the rationals, the
  affine set of possible measured values);
* ``quantum`` — Born-rule statistics of the matching quadrature eigenstate,
  Clifford unitary and quadrature PVM;
* ``compare`` — both, with the maximum absolute difference and a verdict.

Numbers in scenario files are exact: integers for prime fields, integers or
``"num/den"`` strings for the rationals.  Floats are refused — they would
silently destroy the exactness the engines guarantee.  Parsing canonicalizes
every subspace and coset representative, so parse → serialize → parse is a
fixed point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .epistemic import (
    EpistemicState,
    SharpMeasurement,
    measure,
    possibilistic,
    transform,
)
from .fields import RATIONALS, Field, PrimeField
from .linalg import AffineSubspace, Matrix, vec_dot
from .quantum import born, clifford, quadrature_pvm, quadrature_state
from .symplectic import PhaseSpace, SymplecticAffine, symp_inner

MODES = ("epistricted", "quantum", "compare")

#: Agreement threshold for the compare verdict.
COMPARE_TOL = 1e-9


class ScenarioError(ValueError):
    """A scenario file is malformed or describes an invalid experiment."""


@dataclass(frozen=True)
class Scenario:
    """A fully validated experiment description."""

    space: PhaseSpace
    preparation: EpistemicState
    transformation: Optional[SymplecticAffine]
    measurement: SharpMeasurement
    mode: str


# ---------------------------------------------------------------------------
# scalar and vector I/O
# ---------------------------------------------------------------------------


def _scalar_in(fld: Field, raw, where: str):
    if isinstance(raw, bool):
        raise ScenarioError(f"{where}: booleans are not field elements")
    if isinstance(raw, float):
        raise ScenarioError(
            f"{where}: floats are not exact; use an int or a 'num/den' string")
    if isinstance(raw, str):
        if fld.is_finite:
            raise ScenarioError(
                f"{where}: entries over a prime field must be plain ints, got {raw!r}")
        try:
            raw = Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ScenarioError(f"{where}: cannot read {raw!r} as a rational") from exc
    try:
        return fld.element(raw)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"{where}: {exc}") from exc


def _scalar_out(fld: Field, x):
    if fld.is_finite:
        return int(x)
    frac = Fraction(x)
    return frac.numerator if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"


def _vector_in(fld: Field, raw, length: int, where: str) -> tuple:
    if not isinstance(raw, list):
        raise ScenarioError(f"{where}: expected a list of {length} entries")
    if len(raw) != length:
        raise ScenarioError(f"{where}: expected length {length}, got {len(raw)}")
    return tuple(_scalar_in(fld, x, f"{where}[{i}]") for i, x in enumerate(raw))


def _rows_in(fld: Field, raw, width: int, where: str) -> tuple:
    if not isinstance(raw, list):
        raise ScenarioError(f"{where}: expected a list of row vectors")
    return tuple(_vector_in(fld, row, width, f"{where}[{i}]")
                 for i, row in enumerate(raw))


def _vector_out(fld: Field, v) -> list:
    return [_scalar_out(fld, x) for x in v]


def _rows_out(fld: Field, rows) -> list:
    return [_vector_out(fld, r) for r in rows]


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def _require_keys(data: dict, required: tuple, optional: tuple, where: str) -> None:
    if not isinstance(data, dict):
        raise ScenarioError(f"{where}: expected a JSON object")
    missing = [k for k in required if k not in data]
    if missing:
        raise ScenarioError(f"{where}: missing required keys {missing}")
    unknown = [k for k in data if k not in required + optional]
    if unknown:
        raise ScenarioError(f"{where}: unknown keys {unknown}")


def _field_in(raw) -> Field:
    if raw == "rational":
        return RATIONALS
    if isinstance(raw, int) and not isinstance(raw, bool):
        try:
            return PrimeField(raw)
        except ValueError as exc:
            raise ScenarioError(f"field: {exc}") from exc
    raise ScenarioError(f"field: expected a prime modulus or 'rational', got {raw!r}")


def _field_out(fld: Field):
    return fld.modulus if fld.is_finite else "rational"


def _require_isotropic(space: PhaseSpace, rows: tuple, where: str) -> None:
    """Pairwise Poisson-commutation check, naming the offending rows."""
    fld = space.field
    bad = [(i, j)
           for i in range(len(rows))
           for j in range(i + 1, len(rows))
           if symp_inner(space, rows[i], rows[j]) != fld.zero]
    if bad:
        detail = "; ".join(
            f"rows {i} and {j} ({list(rows[i])} vs {list(rows[j])})" for i, j in bad)
        raise ScenarioError(
            f"{where}: functionals must pairwise Poisson-commute "
            f"(isotropic span); offending {detail}")


def scenario_from_dict(data: dict) -> Scenario:
    """Validate and canonicalize a scenario given as parsed JSON."""
    _require_keys(data, ("field", "n", "preparation", "measurement", "mode"),
                  ("transformation",), "scenario")

    fld = _field_in(data["field"])
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ScenarioError(f"n: expected a positive int, got {n!r}")
    space = PhaseSpace(fld, n)
    dim = space.dim

    mode = data["mode"]
    if mode not in MODES:
        raise ScenarioError(f"mode: expected one of {MODES}, got {mode!r}")
    if mode in ("quantum", "compare") and not fld.is_finite:
        raise ScenarioError(
            f"mode {mode!r} needs a finite-dimensional quantum engine; "
            "the rational field supports only mode 'epistricted'")

    prep = data["preparation"]
    _require_keys(prep, ("known",), ("valuation",), "preparation")
    known_rows = _rows_in(fld, prep["known"], dim, "preparation.known")
    _require_isotropic(space, known_rows, "preparation.known")
    valuation = (_vector_in(fld, prep["valuation"], dim, "preparation.valuation")
                 if "valuation" in prep else space.zero())
    known = AffineSubspace.span(fld, known_rows, ambient=dim)
    try:
        preparation = EpistemicState(space, known, valuation)
    except ValueError as exc:  # pragma: no cover — pre-checked above
        raise ScenarioError(f"preparation: {exc}") from exc

    transformation = None
    if "transformation" in data:
        tr = data["transformation"]
        _require_keys(tr, ("S",), ("a",), "transformation")
        s_rows = _rows_in(fld, tr["S"], dim, "transformation.S")
        if len(s_rows) != dim:
            raise ScenarioError(
                f"transformation.S: expected {dim} rows, got {len(s_rows)}")
        a = (_vector_in(fld, tr["a"], dim, "transformation.a")
             if "a" in tr else space.zero())
        try:
            transformation = SymplecticAffine(space, Matrix.from_rows(fld, s_rows), a)
        except ValueError as exc:
            raise ScenarioError(f"transformation.S: {exc}") from exc

    meas = data["measurement"]
    _require_keys(meas, ("measured",), (), "measurement")
    meas_rows = _rows_in(fld, meas["measured"], dim, "measurement.measured")
    _require_isotropic(space, meas_rows, "measurement.measured")
    measurement = SharpMeasurement(
        space, AffineSubspace.span(fld, meas_rows, ambient=dim))

    return Scenario(space, preparation, transformation, measurement, mode)


def parse_scenario(text: str) -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"not valid JSON: {exc}") from exc
    return scenario_from_dict(data)


def scenario_to_dict(sc: Scenario) -> dict:
    """Canonical dictionary form; inverse of :func:`scenario_from_dict`."""
    fld = sc.space.field
    data = {
        "field": _field_out(fld),
        "n": sc.space.n,
        "preparation": {
            "known": _rows_out(fld, sc.preparation.known.basis),
            "valuation": _vector_out(fld, sc.preparation.valuation),
        },
        "measurement": {
            "measured": _rows_out(fld, sc.measurement.measured.basis),
        },
        "mode": sc.mode,
    }
    if sc.transformation is not None:
        data["transformation"] = {
            "S": _rows_out(fld, sc.transformation.s.rows),
            "a": _vector_out(fld, sc.transformation.a),
        }
    return data


def serialize_scenario(sc: Scenario) -> str:
    return json.dumps(scenario_to_dict(sc), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------


def _possible_value_set(state: EpistemicState, meas: SharpMeasurement) -> dict:
    """Affine set of jointly possible measured-value tuples (any field)."""
    fld = state.space.field
    reach = possibilistic(state, meas)
    functionals = meas.measured.basis
    offset = tuple(vec_dot(fld, f, reach.offset) for f in functionals)
    directions = tuple(tuple(vec_dot(fld, f, b) for f in functionals)
                       for b in reach.basis)
    image = AffineSubspace(fld, len(functionals), directions, offset)
    return {
        "functionals": _rows_out(fld, functionals),
        "offset": _vector_out(fld, image.offset),
        "directions": _rows_out(fld, image.basis),
        "deterministic": len(image.basis) == 0,
    }


def run_scenario(sc: Scenario, tolerance: float = COMPARE_TOL) -> dict:
    """Execute the scenario and return a JSON-ready report."""
    state = sc.preparation
    if sc.transformation is not None:
        state = transform(state, sc.transformation)

    report = {
        "field": _field_out(sc.space.field),
        "n": sc.space.n,
        "mode": sc.mode,
    }

    if not sc.space.field.is_finite:
        report["possible_values"] = _possible_value_set(state, sc.measurement)
        return report

    want_classical = sc.mode in ("epistricted", "compare")
    want_quantum = sc.mode in ("quantum", "compare")

    dist = measure(state, sc.measurement) if want_classical else None
    probs = None
    if want_quantum:
        rho = quadrature_state(sc.space, sc.preparation.known,
                               sc.preparation.valuation).rho
        if sc.transformation is not None:
            rho = clifford(sc.space, sc.transformation).apply(rho)
        probs = born(rho, quadrature_pvm(sc.space, sc.measurement.measured))

    rows = []
    max_diff = 0.0
    for label in sc.measurement.outcomes():
        entry = {
            "label": [int(x) for x in label],
            "values": [int(x) for x in sc.measurement.values_at(label)],
        }
        if want_classical:
            entry["epistricted"] = str(dist[label])
        if want_quantum:
            entry["quantum"] = probs[label]
        if want_classical and want_quantum:
            diff = abs(float(dist[label]) - probs[label])
            entry["difference"] = diff
            max_diff = max(max_diff, diff)
        rows.append(entry)
    report["outcomes"] = rows

    if sc.mode == "compare":
        report["max_difference"] = max_diff
        report["verdict"] = "agree" if max_diff <= tolerance else "differ"
    return report
