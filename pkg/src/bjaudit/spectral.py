"""Spectral measures of small Hermitian matrices and their rearrangement audits.

A unit state psi against a Hermitian matrix A induces the discrete measure
sum_i |<v_i, psi>|^2 delta_{lambda_i}.  Treating lambda -> |lambda| as a
simple function on that measure space lets every rearrangement tool and the
weak-type audit run unchanged; here ||f||_1 is exactly <psi, |A| psi>.

Scope is deliberately desk scale (n <= 64): eigh is exact enough there to
certify residuals, and the audits are about constants, not linear algebra.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace

import numpy as np

from .audit import AuditReport, audit_weak_l1
from .errors import DomainError, NumericError, UsageError
from .measures import DiscreteMeasureSpace, SimpleFunction
from .rearrange import StepFunction, decreasing_rearrangement

__all__ = [
    "MAX_MATRIX_DIM",
    "SpectralModel",
    "spectral_measure",
    "spectral_instance",
    "spectral_rearrangement",
    "audit_spectral_bound",
    "load_matrix_csv",
    "load_state_csv",
    "matrix_csv_text",
    "state_csv_text",
]

MAX_MATRIX_DIM = 64


@dataclass(frozen=True)
class SpectralModel:
    """Finite spectral measure: distinct eigenvalues with state weights.

    Eigenvalues ascend and are distinct after degeneracy merging; weights are
    |projection|^2 masses summing to 1 (some may be exactly 0).
    """

    eigenvalues: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        evs = np.asarray(self.eigenvalues, dtype=float)
        ws = np.asarray(self.weights, dtype=float)
        if evs.ndim != 1 or ws.shape != evs.shape or evs.size == 0:
            raise DomainError("eigenvalues and weights must be matching 1-d arrays")
        if np.any(np.diff(evs) <= 0):
            raise DomainError("eigenvalues must be strictly increasing after merging")
        if np.any(ws < 0) or not np.all(np.isfinite(ws)):
            raise DomainError("weights must be nonnegative finite")
        evs = evs.copy()
        ws = ws.copy()
        evs.setflags(write=False)
        ws.setflags(write=False)
        object.__setattr__(self, "eigenvalues", evs)
        object.__setattr__(self, "weights", ws)

    @property
    def n_points(self) -> int:
        return int(self.eigenvalues.size)


def _merge_degenerate(evals: np.ndarray, weights: np.ndarray, tol: float):
    """Collapse eigenvalues closer than tol; weights add, values average."""
    groups = np.concatenate(([0], np.cumsum(np.diff(evals) > tol)))
    n_groups = int(groups[-1]) + 1
    merged_w = np.zeros(n_groups)
    merged_ev = np.zeros(n_groups)
    np.add.at(merged_w, groups, weights)
    counts = np.zeros(n_groups)
    np.add.at(counts, groups, 1.0)
    np.add.at(merged_ev, groups, evals)
    merged_ev /= counts
    return merged_ev, merged_w


def spectral_measure(
    matrix,
    psi,
    herm_tol: float = 1e-10,
    residual_tol: float = 1e-8,
    merge_tol: float = 1e-10,
) -> SpectralModel:
    """Diagonalize a Hermitian matrix and project a unit state onto it.

    Residuals ||A v - lambda v|| are checked after the fact; if any exceeds
    residual_tol (relative to the spectral scale) the decomposition is not
    trusted and a NumericError is raised.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"matrix must be square, got shape {a.shape}")
    n = a.shape[0]
    if n < 1 or n > MAX_MATRIX_DIM:
        raise DomainError(f"matrix dimension must lie in 1..{MAX_MATRIX_DIM}, got {n}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise DomainError("matrix entries must be finite")
    scale = max(1.0, float(np.max(np.abs(a))) if n else 1.0)
    herm_defect = float(np.max(np.abs(a - a.conj().T)))
    if herm_defect > herm_tol * scale:
        raise DomainError(
            f"matrix is not Hermitian: max |A - A^H| = {herm_defect:.3e}"
        )
    v = np.asarray(psi, dtype=complex).ravel()
    if v.size != n:
        raise DomainError(f"state has length {v.size}, matrix has dimension {n}")
    if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
        raise DomainError("state entries must be finite")
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > 1e-10:
        raise DomainError(f"state must be unit norm, got ||psi|| = {nrm!r}")

    sym = 0.5 * (a + a.conj().T)
    evals, evecs = np.linalg.eigh(sym)
    resid = np.linalg.norm(a @ evecs - evecs * evals, axis=0)
    resid_scale = max(1.0, float(np.max(np.abs(evals))))
    worst = float(np.max(resid))
    if worst > residual_tol * resid_scale:
        raise NumericError(
            f"eigendecomposition residual {worst:.3e} exceeds "
            f"{residual_tol:.1e} * {resid_scale:g}"
        )

    weights = np.abs(evecs.conj().T @ v) ** 2
    merged_ev, merged_w = _merge_degenerate(evals, weights, merge_tol)
    total = float(merged_w.sum())
    if abs(total - 1.0) > 1e-10:
        raise NumericError(f"projection weights sum to {total!r}, expected 1")
    # Exact-zero weights carry no measure; drop them so aligned eigenbases
    # yield exactly the atoms the state sees.
    keep = merged_w > 0.0
    return SpectralModel(eigenvalues=merged_ev[keep], weights=merged_w[keep])


def _identity(x: float) -> float:
    return x


def spectral_instance(
    model: SpectralModel, g=None
) -> tuple[DiscreteMeasureSpace, SimpleFunction]:
    """The measure-space instance carried by a spectral model.

    Atoms are the positive-weight spectral points weighted by the state; the
    function value at each is |g(lambda)| (g defaults to the identity).
    """
    if g is None:
        g = _identity
    keep = model.weights > 0
    if not np.any(keep):
        raise DomainError("spectral model has no positive-weight points")
    ws = model.weights[keep]
    evs = model.eigenvalues[keep]
    vals = np.empty(evs.size)
    for i, lam in enumerate(evs):
        y = float(g(float(lam)))
        if not math.isfinite(y):
            raise DomainError(f"g is not finite at eigenvalue {lam!r}: {y!r}")
        vals[i] = abs(y)
    ids = tuple(f"lam{i}" for i in np.nonzero(keep)[0])
    sp = DiscreteMeasureSpace(weights=ws, atom_ids=ids)
    return sp, SimpleFunction(vals)


def spectral_rearrangement(model: SpectralModel, g=None) -> StepFunction:
    """Decreasing rearrangement of lambda -> |g(lambda)| under state weights."""
    sp, f = spectral_instance(model, g)
    return decreasing_rearrangement(f, sp)


def audit_spectral_bound(
    model: SpectralModel,
    g,
    variant: str,
    grid,
    abs_tol: float = 1e-12,
) -> AuditReport:
    """Weak-type audit of the spectral rearrangement of g.

    Same inequality as audit_weak_l1 (here ||f||_1 is the quadratic form of
    |g|(A) at the state), with the report renamed so downstream consumers can
    tell the source apart.
    """
    sp, f = spectral_instance(model, g)
    rep = audit_weak_l1(f, sp, variant, grid, abs_tol=abs_tol)
    return replace(rep, inequality_name="spectral_weak_l1")


# CSV formats.  Matrix: header "row,col,re,im", all n^2 entries, 0-based.
# State: header "index,re,im", all n entries, 0-based.

def _read_csv_rows(path_or_text: str, what: str):
    if "\n" in path_or_text:
        text = path_or_text
    else:
        try:
            with open(path_or_text, "r", newline="") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {what} CSV: {exc}") from exc
    reader = csv.reader(io.StringIO(text))
    rows = [(i + 1, row) for i, row in enumerate(reader) if row]
    if not rows:
        raise UsageError(f"{what} CSV is empty")
    return rows


def _parse_float(field: str, rownum: int) -> float:
    try:
        val = float(field)
    except ValueError as exc:
        raise UsageError(f"row {rownum}: non-numeric field ({exc})") from exc
    if not math.isfinite(val):
        raise UsageError(f"row {rownum}: entries must be finite, got {field}")
    return val


def _parse_index(field: str, rownum: int, name: str) -> int:
    try:
        val = int(field)
    except ValueError as exc:
        raise UsageError(f"row {rownum}: non-integer {name} ({exc})") from exc
    if val < 0:
        raise UsageError(f"row {rownum}: {name} must be >= 0, got {val}")
    return val


def load_matrix_csv(path_or_text: str) -> np.ndarray:
    """Read a dense complex matrix; every entry must be listed exactly once."""
    rows = _read_csv_rows(path_or_text, "matrix")
    header = [c.strip() for c in rows[0][1]]
    if header != ["row", "col", "re", "im"]:
        raise UsageError(
            "row 1: expected header 'row,col,re,im', got " + ",".join(header)
        )
    entries: dict[tuple[int, int], complex] = {}
    for rownum, row in rows[1:]:
        if len(row) != 4:
            raise UsageError(f"row {rownum}: expected 4 fields, got {len(row)}")
        i = _parse_index(row[0], rownum, "row index")
        j = _parse_index(row[1], rownum, "col index")
        if (i, j) in entries:
            raise UsageError(f"row {rownum}: duplicate entry for ({i},{j})")
        entries[(i, j)] = complex(
            _parse_float(row[2], rownum), _parse_float(row[3], rownum)
        )
    if not entries:
        raise UsageError("matrix CSV has a header but no data rows")
    n = 1 + max(max(i, j) for i, j in entries)
    if n > MAX_MATRIX_DIM:
        raise UsageError(f"matrix dimension {n} exceeds the limit {MAX_MATRIX_DIM}")
    if len(entries) != n * n:
        raise UsageError(
            f"matrix CSV implies dimension {n} but lists {len(entries)} of "
            f"{n * n} entries"
        )
    a = np.zeros((n, n), dtype=complex)
    for (i, j), z in entries.items():
        a[i, j] = z
    return a


def load_state_csv(path_or_text: str) -> np.ndarray:
    """Read a complex state vector; indices must cover 0..n-1 exactly."""
    rows = _read_csv_rows(path_or_text, "state")
    header = [c.strip() for c in rows[0][1]]
    if header != ["index", "re", "im"]:
        raise UsageError(
            "row 1: expected header 'index,re,im', got " + ",".join(header)
        )
    entries: dict[int, complex] = {}
    for rownum, row in rows[1:]:
        if len(row) != 3:
            raise UsageError(f"row {rownum}: expected 3 fields, got {len(row)}")
        i = _parse_index(row[0], rownum, "index")
        if i in entries:
            raise UsageError(f"row {rownum}: duplicate entry for index {i}")
        entries[i] = complex(
            _parse_float(row[1], rownum), _parse_float(row[2], rownum)
        )
    if not entries:
        raise UsageError("state CSV has a header but no data rows")
    n = 1 + max(entries)
    if len(entries) != n:
        raise UsageError(
            f"state CSV implies length {n} but lists {len(entries)} entries"
        )
    return np.array([entries[i] for i in range(n)], dtype=complex)


def matrix_csv_text(matrix) -> str:
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"matrix must be square, got shape {a.shape}")
    lines = ["row,col,re,im"]
    n = a.shape[0]
    for i in range(n):
        for j in range(n):
            lines.append(f"{i},{j},{float(a[i, j].real)!r},{float(a[i, j].imag)!r}")
    return "\n".join(lines) + "\n"


def state_csv_text(psi) -> str:
    v = np.asarray(psi, dtype=complex).ravel()
    lines = ["index,re,im"]
    for i, z in enumerate(v):
        lines.append(f"{i},{float(z.real)!r},{float(z.imag)!r}")
    return "\n".join(lines) + "\n"
