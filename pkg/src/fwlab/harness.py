"""Runs the transform catalog over one model and serializes the outcome.

A comparison report holds one row per requested method (diagnostics or an
error record, never both), cross rows with pairwise disagreements of the
produced transforms and transformed Hamiltonians, and model context.  The
JSON form is deterministic: stable key order, shortest round-trip floats,
and no timing data unless explicitly requested.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from .algebra import frobenius, make_beta, relative_norm
from .eriksen import (
    METHOD_ERIKSEN,
    METHOD_ERIKSEN_ALT,
    METHOD_EXACT_CASE,
    METHOD_STEPWISE,
    METHOD_TAGS,
    METHOD_WEAK_FIELD,
    DiagnosticSet,
    compute_diagnostics,
    eriksen_transform,
    eriksen_transform_alt,
)
from .errors import FWLabError
from .exact_case import check_commutation, u_fw_exact, weak_field_sqrt
from .matfunc import inv_sqrt, principal_sqrt, spectral_gap
from .models import ModelSpec, build_model
from .fileio import write_text
from .stepwise import stepwise_fw

DIAGNOSTIC_FIELDS = (
    "unitarity_residual",
    "eriksen_condition_residual",
    "block_diagonality",
    "exponent_odd_residual",
    "spectrum_drift",
)


@dataclass(frozen=True)
class ToleranceConfig:
    """Knobs shared by every method run in one comparison."""

    commute_tol: float = 1e-12
    gap_tol: float | None = None
    stepwise_tol: float = 1e-8
    max_iterations: int = 50

    def to_dict(self) -> dict:
        return {
            "commute_tol": self.commute_tol,
            "gap_tol": self.gap_tol,
            "stepwise_tol": self.stepwise_tol,
            "max_iterations": self.max_iterations,
        }


@dataclass
class MethodRow:
    """Outcome of one method on one model."""

    method: str
    diagnostics: DiagnosticSet | None = None
    error: str | None = None
    error_type: str | None = None
    wall_time_seconds: float = 0.0
    extras: dict = field(default_factory=dict)

    def to_dict(self, include_timings: bool) -> dict:
        row = {
            "method": self.method,
            "diagnostics": None if self.diagnostics is None else self.diagnostics.to_dict(),
            "error": self.error,
            "error_type": self.error_type,
            "extras": dict(sorted(self.extras.items())),
        }
        if include_timings:
            row["wall_time_seconds"] = self.wall_time_seconds
        return row


@dataclass
class CrossRow:
    """Pairwise disagreement of two produced transforms."""

    method_pair: tuple[str, str]
    hamiltonian_disagreement: float
    transform_disagreement: float

    def to_dict(self) -> dict:
        return {
            "method_pair": list(self.method_pair),
            "hamiltonian_disagreement": self.hamiltonian_disagreement,
            "transform_disagreement": self.transform_disagreement,
        }


@dataclass
class ReportContext:
    """Model-level facts shared by all rows."""

    mass: float
    dim: int
    commutation_residual: float
    spectral_gap: float
    even_strength_ratio: float   # ||E||_F / (mass * sqrt(dim))

    def to_dict(self) -> dict:
        return {
            "mass": self.mass,
            "dim": self.dim,
            "commutation_residual": self.commutation_residual,
            "spectral_gap": self.spectral_gap,
            "even_strength_ratio": self.even_strength_ratio,
        }


@dataclass
class ComparisonReport:
    model_descriptor: str
    context: ReportContext
    methods: list[MethodRow]
    cross: list[CrossRow]
    tolerances: ToleranceConfig

    def to_dict(self, include_timings: bool = False) -> dict:
        return {
            "model": self.model_descriptor,
            "context": self.context.to_dict(),
            "methods": [row.to_dict(include_timings) for row in self.methods],
            "cross": [row.to_dict() for row in self.cross],
            "tolerances": self.tolerances.to_dict(),
        }

    def has_errors(self) -> bool:
        return any(row.error is not None for row in self.methods)

    def row(self, method: str) -> MethodRow:
        for candidate in self.methods:
            if candidate.method == method:
                return candidate
        raise KeyError(method)


def _weak_field_row(decomposition, h, grading, row: MethodRow):
    """Approximate-root route: diagnostics of the transform it induces.

    The approximate root replaces sqrt(H^2) in the sign operator, and the
    transform is assembled from that surrogate exactly as in the one-shot
    construction.  Off the commuting case the result is only approximately
    unitary, which is what the diagnostics are meant to show, so the
    unconditionally-unitary result wrapper is bypassed on purpose.
    """
    root = weak_field_sqrt(decomposition)
    reference = principal_sqrt(h @ h)
    row.extras["sqrt_relative_error"] = relative_norm(root - reference, reference)
    root_h = 0.5 * (root + root.conj().T)
    w, v = np.linalg.eigh(root_h)
    if w[0] <= 0.0:
        row.error = "approximate root is not positive definite"
        row.error_type = "OutsideValidityDomain"
        return None
    lam = h @ ((v * (1.0 / w)) @ v.conj().T)
    eye = np.eye(grading.dim, dtype=complex)
    beta = make_beta(grading)
    core = eye + 0.25 * (beta @ lam + lam @ beta - 2.0 * eye)
    u = 0.5 * (eye + beta @ lam) @ inv_sqrt(core)
    row.diagnostics = compute_diagnostics(u, h, grading)
    return u


def run_comparison(spec: ModelSpec, methods=METHOD_TAGS,
                   tolerances: ToleranceConfig = ToleranceConfig()) -> ComparisonReport:
    """Build the model once and run every requested method on it.

    Methods always appear in canonical order.  A method failure (for
    example NotCommuting for the closed forms on a non-commuting model)
    becomes an error record in its row; it never aborts the report.
    """
    methods = list(methods)
    for method in methods:
        if method not in METHOD_TAGS:
            raise ValueError(f"unknown method {method!r}; known: {METHOD_TAGS}")
    methods = [m for m in METHOD_TAGS if m in methods]

    h, grading, decomposition = build_model(spec)
    commutation = check_commutation(decomposition, commute_tol=tolerances.commute_tol)
    context = ReportContext(
        mass=spec.mass,
        dim=grading.dim,
        commutation_residual=commutation.commutator_residual,
        spectral_gap=spectral_gap(h).min_abs_eigenvalue,
        even_strength_ratio=frobenius(decomposition.even_part)
        / (spec.mass * np.sqrt(grading.dim)),
    )

    rows = []
    transforms = {}
    transformed = {}
    for method in methods:
        row = MethodRow(method=method)
        started = time.perf_counter()
        try:
            if method == METHOD_ERIKSEN:
                result = eriksen_transform(h, grading, gap_tol=tolerances.gap_tol)
            elif method == METHOD_ERIKSEN_ALT:
                result = eriksen_transform_alt(h, grading, gap_tol=tolerances.gap_tol)
            elif method == METHOD_EXACT_CASE:
                result = u_fw_exact(decomposition, commute_tol=tolerances.commute_tol)
            elif method == METHOD_STEPWISE:
                result, trace = stepwise_fw(
                    h, grading, spec.mass,
                    tol=tolerances.stepwise_tol,
                    max_iterations=tolerances.max_iterations,
                )
                row.extras["converged"] = trace.converged
                row.extras["stop_reason"] = trace.stop_reason
                row.extras["iterations"] = len(trace.iterations)
            else:
                result = None
                u = _weak_field_row(decomposition, h, grading, row)
                if u is not None:
                    transforms[method] = u
                    transformed[method] = u @ h @ u.conj().T
            if result is not None:
                row.diagnostics = result.diagnostics
                transforms[method] = result.transform
                transformed[method] = result.transformed_hamiltonian
        except FWLabError as exc:
            row.error = str(exc)
            row.error_type = type(exc).__name__
        row.wall_time_seconds = time.perf_counter() - started
        rows.append(row)

    cross = []
    produced = [m for m in methods if m in transforms]
    for i, first in enumerate(produced):
        for second in produced[i + 1:]:
            cross.append(CrossRow(
                method_pair=(first, second),
                hamiltonian_disagreement=relative_norm(
                    transformed[second] - transformed[first], transformed[first]
                ),
                transform_disagreement=relative_norm(
                    transforms[second] - transforms[first], transforms[first]
                ),
            ))

    return ComparisonReport(
        model_descriptor=spec.describe(),
        context=context,
        methods=rows,
        cross=cross,
        tolerances=tolerances,
    )


def report_json(report: ComparisonReport, include_timings: bool = False) -> str:
    """Canonical JSON text: sorted keys, shortest round-trip floats."""
    return json.dumps(report.to_dict(include_timings), sort_keys=True, indent=2) + "\n"


def report_csv(report: ComparisonReport) -> str:
    """One row per (method, metric); blank value where a metric is absent."""
    lines = ["method,metric,value"]
    for row in report.methods:
        metrics = row.diagnostics.to_dict() if row.diagnostics is not None else {}
        for name in DIAGNOSTIC_FIELDS:
            value = metrics.get(name)
            rendered = "" if value is None else repr(float(value))
            lines.append(f"{row.method},{name},{rendered}")
    return "\n".join(lines) + "\n"


def emit_report(report: ComparisonReport, fmt: str, path=None,
                include_timings: bool = False) -> str:
    """Serialize a report; write atomically when a path is given."""
    if fmt == "json":
        text = report_json(report, include_timings)
    elif fmt == "csv":
        text = report_csv(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path is not None:
        write_text(path, text)
    return text
