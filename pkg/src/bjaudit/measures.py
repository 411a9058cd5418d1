"""Finite measure spaces and magnitude-valued simple functions.

Everything downstream (rearrangements, E/K-functionals, audits) depends on a
function only through its magnitudes |f(x)|, so a function is just a
nonnegative vector aligned with a weighted atom list.  Continuous densities
enter through SampledDensitySpace, a midpoint-rule discretization.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, UsageError

__all__ = [
    "DiscreteMeasureSpace",
    "SimpleFunction",
    "SampledDensitySpace",
    "lp_norm",
    "distribution_function",
    "gaussian_measure_space",
    "load_instance_csv",
    "instance_csv_text",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class DiscreteMeasureSpace:
    """Ordered atoms with strictly positive weights."""

    weights: np.ndarray
    atom_ids: tuple[str, ...] = ()

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if w.ndim != 1:
            raise UsageError("weights must be a 1-d sequence")
        if w.size and (not np.all(np.isfinite(w)) or np.any(w <= 0.0)):
            raise DomainError("every weight must be a positive finite real")
        object.__setattr__(self, "weights", _freeze(w))
        ids = tuple(self.atom_ids) if self.atom_ids else tuple(
            f"a{i}" for i in range(w.size)
        )
        if len(ids) != w.size:
            raise UsageError(
                f"atom_ids length {len(ids)} does not match weight count {w.size}"
            )
        object.__setattr__(self, "atom_ids", ids)

    @property
    def n_atoms(self) -> int:
        return self.weights.size

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())


@dataclass(frozen=True, eq=False)
class SimpleFunction:
    """Magnitudes aligned with a space's atoms.

    support_threshold declares magnitudes <= threshold as zero for support
    purposes (useful for sampled continuous data); it defaults to 0, which
    keeps discrete instances exact.
    """

    magnitudes: np.ndarray
    support_threshold: float = 0.0

    def __post_init__(self):
        m = np.atleast_1d(np.asarray(self.magnitudes, dtype=float))
        if m.ndim != 1:
            raise UsageError("magnitudes must be a 1-d sequence")
        if m.size and (not np.all(np.isfinite(m)) or np.any(m < 0.0)):
            raise DomainError("magnitudes must be nonnegative finite reals")
        if not (math.isfinite(self.support_threshold) and self.support_threshold >= 0):
            raise DomainError("support_threshold must be >= 0")
        object.__setattr__(self, "magnitudes", _freeze(m))


def _check_aligned(f: SimpleFunction, sp: DiscreteMeasureSpace) -> None:
    if f.magnitudes.size != sp.n_atoms:
        raise UsageError(
            f"function has {f.magnitudes.size} magnitudes but space has "
            f"{sp.n_atoms} atoms"
        )


def sorted_mass_profile(
    f: SimpleFunction, sp: DiscreteMeasureSpace
) -> tuple[np.ndarray, np.ndarray]:
    """Magnitudes sorted descending (positives only) with cumulative weights.

    This single summation order backs both distribution_function and the
    decreasing rearrangement, which makes equimeasurability exact in floats,
    not just up to rounding.
    """
    _check_aligned(f, sp)
    pos = f.magnitudes > 0.0
    mags = f.magnitudes[pos]
    w = sp.weights[pos]
    order = np.argsort(-mags, kind="stable")
    return mags[order], np.cumsum(w[order])


def _mass_above(mags_desc: np.ndarray, cumw: np.ndarray, sigma: float) -> float:
    # number of sorted magnitudes strictly above sigma
    k = int(np.searchsorted(-mags_desc, -sigma, side="left"))
    return float(cumw[k - 1]) if k > 0 else 0.0


def distribution_function(
    f: SimpleFunction, sp: DiscreteMeasureSpace, sigma: float
) -> float:
    """m(sigma, f): total weight of atoms with |f| > sigma (strict)."""
    if not (math.isfinite(sigma) and sigma >= 0.0):
        raise DomainError(f"sigma must be >= 0, got {sigma!r}")
    mags, cumw = sorted_mass_profile(f, sp)
    return _mass_above(mags, cumw, sigma)


def lp_norm(f: SimpleFunction, sp: DiscreteMeasureSpace, p: float) -> float:
    """L^p quasinorm: (sum w|f|^p)^(1/p); max for p=inf; support mass for p=0."""
    _check_aligned(f, sp)
    if p == 0:
        mags, cumw = sorted_mass_profile(f, sp)
        return _mass_above(mags, cumw, f.support_threshold)
    if p == math.inf:
        return float(f.magnitudes.max()) if f.magnitudes.size else 0.0
    if not (isinstance(p, (int, float)) and math.isfinite(p) and p > 0):
        raise DomainError(f"p must be in (0,inf), inf, or 0; got {p!r}")
    if f.magnitudes.size == 0:
        return 0.0
    total = float(np.sum(sp.weights * f.magnitudes**p))
    return total ** (1.0 / p)


@dataclass(frozen=True, eq=False)
class SampledDensitySpace:
    """Midpoint-rule discretization of a density on a cell grid."""

    grid: np.ndarray  # strictly increasing cell midpoints
    cell_widths: np.ndarray
    density: np.ndarray  # nonnegative density at midpoints

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        w = np.asarray(self.cell_widths, dtype=float)
        d = np.asarray(self.density, dtype=float)
        if not (g.ndim == w.ndim == d.ndim == 1 and g.size == w.size == d.size):
            raise UsageError("grid, cell_widths, density must be 1-d and aligned")
        if g.size and np.any(np.diff(g) <= 0):
            raise DomainError("grid midpoints must be strictly increasing")
        if np.any(w <= 0) or not np.all(np.isfinite(w)):
            raise DomainError("cell widths must be positive")
        if np.any(d < 0) or not np.all(np.isfinite(d)):
            raise DomainError("density must be nonnegative and finite")
        object.__setattr__(self, "grid", _freeze(g))
        object.__setattr__(self, "cell_widths", _freeze(w))
        object.__setattr__(self, "density", _freeze(d))

    def kept_mask(self) -> np.ndarray:
        return self.density * self.cell_widths > 0.0

    def compile(self) -> DiscreteMeasureSpace:
        """Weights density*width; zero-weight cells dropped."""
        keep = self.kept_mask()
        w = (self.density * self.cell_widths)[keep]
        ids = tuple(f"cell{i}" for i in np.nonzero(keep)[0])
        return DiscreteMeasureSpace(weights=w, atom_ids=ids)

    def sample(self, fn, support_threshold: float = 0.0) -> SimpleFunction:
        """Evaluate |fn| at the midpoints of kept cells, aligned with compile()."""
        vals = np.abs(np.asarray(fn(self.grid[self.kept_mask()]), dtype=float))
        return SimpleFunction(vals, support_threshold=support_threshold)


def gaussian_measure_space(t_lo: float, t_hi: float, n_cells: int) -> SampledDensitySpace:
    """Uniform cells on (t_lo, t_hi) carrying the standard Gaussian density."""
    if not (math.isfinite(t_lo) and math.isfinite(t_hi) and t_lo < t_hi):
        raise DomainError("need t_lo < t_hi, both finite")
    if n_cells < 2:
        raise DomainError("n_cells must be >= 2")
    width = (t_hi - t_lo) / n_cells
    mids = t_lo + width * (np.arange(n_cells) + 0.5)
    dens = np.exp(-0.5 * mids * mids) / math.sqrt(2.0 * math.pi)
    return SampledDensitySpace(
        grid=mids, cell_widths=np.full(n_cells, width), density=dens
    )


# CSV format: header "atom_id,weight,magnitude", one atom per row.

def load_instance_csv(path_or_text: str) -> tuple[DiscreteMeasureSpace, SimpleFunction]:
    """Read an instance from a CSV file path (or literal CSV text).

    Errors carry 1-based file row numbers.
    """
    if "\n" in path_or_text:
        text = path_or_text
    else:
        try:
            with open(path_or_text, "r", newline="") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read instance CSV: {exc}") from exc
    reader = csv.reader(io.StringIO(text))
    rows = [(i + 1, row) for i, row in enumerate(reader) if row]
    if not rows:
        raise UsageError("instance CSV is empty")
    header = [c.strip() for c in rows[0][1]]
    if header != ["atom_id", "weight", "magnitude"]:
        raise UsageError(
            "row 1: expected header 'atom_id,weight,magnitude', got "
            + ",".join(header)
        )
    ids: list[str] = []
    weights: list[float] = []
    mags: list[float] = []
    for rownum, row in rows[1:]:
        if len(row) != 3:
            raise UsageError(f"row {rownum}: expected 3 fields, got {len(row)}")
        ids.append(row[0].strip())
        try:
            w = float(row[1])
            m = float(row[2])
        except ValueError as exc:
            raise UsageError(f"row {rownum}: non-numeric field ({exc})") from exc
        if not (math.isfinite(w) and w > 0):
            raise UsageError(f"row {rownum}: weight must be positive, got {row[1]}")
        if not (math.isfinite(m) and m >= 0):
            raise UsageError(
                f"row {rownum}: magnitude must be nonnegative, got {row[2]}"
            )
        weights.append(w)
        mags.append(m)
    if not weights:
        raise UsageError("instance CSV has a header but no data rows")
    sp = DiscreteMeasureSpace(weights=np.array(weights), atom_ids=tuple(ids))
    return sp, SimpleFunction(np.array(mags))


def instance_csv_text(sp: DiscreteMeasureSpace, f: SimpleFunction) -> str:
    _check_aligned(f, sp)
    lines = ["atom_id,weight,magnitude"]
    for aid, w, m in zip(sp.atom_ids, sp.weights, f.magnitudes):
        lines.append(f"{aid},{float(w)!r},{float(m)!r}")
    return "\n".join(lines) + "\n"
