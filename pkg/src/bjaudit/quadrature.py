"""Adaptive quadrature over (0, inf) for quasinorm integrands.

All improper integrals in this package share one scheme: split at t = 1 and
map the upper half to (0, 1) with u = 1/t, so the adaptive rule only ever
sees finite intervals.  Known kink locations can be passed through so the
subdivision does not waste effort hunting for them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import QuadratureError

__all__ = ["QuadratureConfig", "integrate_zero_to_inf"]


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 0.0
    limit: int = 200  # max subdivisions per finite piece


def _quad_piece(fn, lo: float, hi: float, cfg: QuadratureConfig, points=None):
    val, err = quad(
        fn,
        lo,
        hi,
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.limit,
        points=points,
    )
    return val, err


def integrate_zero_to_inf(fn, cfg: QuadratureConfig | None = None, breakpoints=()):
    """Integrate fn over (0, inf).

    ``breakpoints`` are interior t-values where fn has kinks.  Raises
    QuadratureError when the combined error estimate misses
    max(abs_tol, rel_tol * |value|).
    """
    cfg = cfg or QuadratureConfig()
    pts = np.asarray(sorted(p for p in breakpoints if 0.0 < p < np.inf), dtype=float)
    lower_pts = [p for p in pts if p < 1.0] or None
    upper_pts = [1.0 / p for p in pts if p > 1.0] or None

    val_lo, err_lo = _quad_piece(fn, 0.0, 1.0, cfg, points=lower_pts)
    val_hi, err_hi = _quad_piece(
        lambda u: fn(1.0 / u) / (u * u), 0.0, 1.0, cfg, points=upper_pts
    )
    val = val_lo + val_hi
    err = err_lo + err_hi
    tol = max(cfg.abs_tol, cfg.rel_tol * abs(val), 1e-300)
    # quad's reported estimates are conservative; allow modest slack
    if err > 100.0 * tol and err > 1e-12:
        raise QuadratureError(
            f"integral error estimate {err:.3e} exceeds tolerance {tol:.3e}",
            achieved=err,
        )
    return val
