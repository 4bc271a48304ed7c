"""Shared JSON formats for matrices, setups, tables and reports.

Complex matrices serialize as {"rows": n, "cols": n, "entries": [[re, im],
...]} with entries in row-major order; density matrices and perturbation
operators add a "kind" tag.  All on-disk artifacts of the CLI use these
helpers, so library and CLI stay bit-identical.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bases import MeasurementSetup, OrthonormalBasis
from .detection import DetectionReport
from .errors import ValidationError
from .recon import OffdiagonalReconstruction, ProbabilityTable


def complex_matrix_to_json(matrix, kind: str | None = None) -> dict:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2:
        raise ValidationError(f"expected a matrix, got shape {m.shape}")
    flat = m.reshape(-1)
    obj = {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [[float(c.real), float(c.imag)] for c in flat],
    }
    if kind is not None:
        obj["kind"] = kind
    return obj


def complex_matrix_from_json(obj: dict, expected_kind: str | None = None) -> np.ndarray:
    try:
        rows, cols, entries = int(obj["rows"]), int(obj["cols"]), obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed matrix object: {exc}") from exc
    if expected_kind is not None and obj.get("kind") != expected_kind:
        raise ValidationError(f"expected kind {expected_kind!r}, got {obj.get('kind')!r}")
    if len(entries) != rows * cols:
        raise ValidationError(f"{len(entries)} entries for a {rows} x {cols} matrix")
    flat = np.array([complex(re, im) for re, im in entries])
    return flat.reshape(rows, cols)


def _vectors_to_json(vectors: np.ndarray) -> list:
    return [[[float(c.real), float(c.imag)] for c in vec] for vec in vectors]


def _vectors_from_json(data) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in vec] for vec in data])


def setup_to_json(setup: MeasurementSetup) -> dict:
    return {
        "dim": setup.dim,
        "alpha": setup.alpha,
        "reference": _vectors_to_json(setup.reference.vectors),
        "measured": [_vectors_to_json(b.vectors) for b in setup.measured],
    }


def setup_from_json(obj: dict) -> MeasurementSetup:
    try:
        reference = OrthonormalBasis(_vectors_from_json(obj["reference"]))
        measured = tuple(OrthonormalBasis(_vectors_from_json(b)) for b in obj["measured"])
        alpha = obj.get("alpha")
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed setup object: {exc}") from exc
    return MeasurementSetup(
        reference=reference,
        measured=measured,
        alpha=None if alpha is None else float(alpha),
    )


def table_to_json(table: ProbabilityTable) -> dict:
    return {"dim": table.dim, "probs": [[float(p) for p in row] for row in table.probs]}


def table_from_json(obj: dict) -> ProbabilityTable:
    try:
        probs = np.array(obj["probs"], dtype=float)
        dim = int(obj["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed probability table: {exc}") from exc
    table = ProbabilityTable(probs)
    if table.dim != dim:
        raise ValidationError(f"declared dim {dim} does not match {table.dim} columns")
    return table


def report_to_json(report: DetectionReport, extra: dict | None = None) -> dict:
    obj = {
        "undetected_dim": report.undetected_dim,
        "undetected_basis": [
            complex_matrix_to_json(m, kind="perturbation") for m in report.undetected_basis
        ],
        "all_undetected_diagonal": report.all_undetected_diagonal,
        "max_offdiag_leak": report.max_offdiag_leak,
        "span_dim": report.span_dim,
        "info_complete_with_reference": report.info_complete_with_reference,
    }
    if extra:
        obj.update(extra)
    return obj


def reconstruction_to_json(rec: OffdiagonalReconstruction, dim: int, alpha: float) -> dict:
    return {
        "dim": dim,
        "alpha": alpha,
        "matrix": complex_matrix_to_json(rec.matrix, kind="offdiagonal"),
        "condition_numbers": [float(c) for c in rec.condition_numbers],
        "hermiticity_mismatch": rec.hermiticity_mismatch,
        "error_estimate": rec.error_estimate,
        "diagonal_filled": rec.diagonal_filled,
    }


def save_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ValidationError(f"input file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
