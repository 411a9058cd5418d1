"""Decreasing rearrangements as canonical step functions.

A rearrangement of a finite instance is a right-continuous nonincreasing
step function on (0, inf): value v_i on [t_{i-1}, t_i), zero past the last
break.  Ties are merged so values are strictly decreasing, which makes every
integral below a short closed form.
"""

from __future__ import annotations

import math

import numpy as np
from dataclasses import dataclass

from .errors import DomainError
from .measures import DiscreteMeasureSpace, SimpleFunction, sorted_mass_profile, _freeze

__all__ = [
    "StepFunction",
    "decreasing_rearrangement",
    "eval_step",
    "lp_from_rearrangement",
    "approx_quasinorm",
    "step_csv_text",
]


@dataclass(frozen=True, eq=False)
class StepFunction:
    """breaks: 0 = t_0 < t_1 < ... < t_n; values: v_1 > ... > v_n > 0."""

    breaks: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        b = np.atleast_1d(np.asarray(self.breaks, dtype=float))
        v = np.atleast_1d(np.asarray(self.values, dtype=float)) if np.size(
            self.values
        ) else np.empty(0)
        if b.size != v.size + 1 or b[0] != 0.0:
            raise DomainError("breaks must start at 0 and have one more entry than values")
        if np.any(np.diff(b) <= 0):
            raise DomainError("breaks must be strictly increasing")
        if v.size and (np.any(v <= 0) or np.any(np.diff(v) >= 0)):
            raise DomainError("values must be strictly decreasing and positive")
        object.__setattr__(self, "breaks", _freeze(b))
        object.__setattr__(self, "values", _freeze(v))

    @property
    def n_steps(self) -> int:
        return self.values.size

    @property
    def support_mass(self) -> float:
        return float(self.breaks[-1]) if self.n_steps else 0.0

    @property
    def sup_value(self) -> float:
        return float(self.values[0]) if self.n_steps else 0.0


EMPTY_STEP = StepFunction(breaks=np.array([0.0]), values=np.empty(0))


def decreasing_rearrangement(
    f: SimpleFunction, sp: DiscreteMeasureSpace
) -> StepFunction:
    """Sort magnitudes descending, merge ties, accumulate weights into breaks."""
    mags, cumw = sorted_mass_profile(f, sp)
    keep = mags > f.support_threshold
    mags, cumw = mags[keep], cumw[keep]
    if mags.size == 0:
        return EMPTY_STEP
    # last index of each tie group
    last = np.nonzero(np.diff(mags) != 0.0)[0]
    group_end = np.concatenate([last, [mags.size - 1]])
    group_start = np.concatenate([[0], last + 1])
    breaks = np.concatenate([[0.0], cumw[group_end]])
    values = mags[group_start]
    # A weight can be absorbed by the running sum (cumw stalls in double
    # precision when a tiny weight meets a large accumulated mass).  Such a
    # group has zero representable width: its level is invisible to every
    # integral of the step function, so it is dropped rather than allowed to
    # produce a degenerate break.
    widths_pos = np.diff(breaks) > 0.0
    if not np.all(widths_pos):
        values = values[widths_pos]
        breaks = np.concatenate([[0.0], breaks[1:][widths_pos]])
        if values.size == 0:
            return EMPTY_STEP
    return StepFunction(breaks=breaks, values=values)


def eval_step(sf: StepFunction, t):
    """Right-continuous evaluation; accepts a scalar or an array, t >= 0."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
        raise DomainError("eval_step requires finite t >= 0")
    if sf.n_steps == 0:
        out = np.zeros_like(arr)
        return float(out) if np.isscalar(t) or arr.ndim == 0 else out
    idx = np.searchsorted(sf.breaks, arr, side="right") - 1
    inside = idx < sf.n_steps
    out = np.where(inside, sf.values[np.minimum(idx, sf.n_steps - 1)], 0.0)
    return float(out) if arr.ndim == 0 else out


def lp_from_rearrangement(sf: StepFunction, p: float) -> float:
    """(sum v_i^p (t_i - t_{i-1}))^(1/p); sup value for p = inf."""
    if p == math.inf:
        return sf.sup_value
    if not (isinstance(p, (int, float)) and math.isfinite(p) and p > 0):
        raise DomainError(f"p must be in (0,inf) or inf, got {p!r}")
    if sf.n_steps == 0:
        return 0.0
    widths = np.diff(sf.breaks)
    return float(np.sum(sf.values**p * widths) ** (1.0 / p))


def _log_space_quasinorm(sf: StepFunction, s: float, tau: float) -> float:
    # per-segment log contributions; segments below exp(-740) of the max drop out
    st = s * tau
    hi = sf.breaks[1:]
    lo = sf.breaks[:-1]
    with np.errstate(divide="ignore"):
        log_hi = np.log(hi)
        ratio = np.where(lo > 0.0, lo / hi, 0.0)
    tail = np.log1p(-(ratio**st))
    logs = tau * np.log(sf.values) + st * log_hi + tail - math.log(st)
    m = logs.max()
    keep = logs - m > -740.0
    total = np.exp(logs[keep] - m).sum()
    return float(math.exp(m / tau) * total ** (1.0 / tau))


def approx_quasinorm(sf: StepFunction, s: float, tau: float) -> float:
    """Q_{s,tau}(f*) = (int_0^inf [t^s f*(t)]^tau dt/t)^(1/tau).

    Closed form on steps: (sum v_i^tau (t_i^{s tau} - t_{i-1}^{s tau})/(s tau))^(1/tau);
    tau = inf gives sup t^s f*(t) = max v_i t_i^s.
    """
    if not (isinstance(s, (int, float)) and math.isfinite(s) and s > 0):
        raise DomainError(f"s must be positive and finite, got {s!r}")
    if tau != math.inf and not (math.isfinite(tau) and tau > 0):
        raise DomainError(f"tau must be positive or inf, got {tau!r}")
    if sf.n_steps == 0:
        return 0.0
    if tau == math.inf:
        with np.errstate(over="ignore"):
            vals = sf.values * sf.breaks[1:] ** s
        if np.all(np.isfinite(vals)):
            return float(vals.max())
        logs = np.log(sf.values) + s * np.log(sf.breaks[1:])
        return float(math.exp(logs.max()))
    st = s * tau
    with np.errstate(over="ignore", invalid="ignore"):
        powers = sf.breaks**st
        terms = sf.values**tau * np.diff(powers) / st
        total = terms.sum()
    if np.all(np.isfinite(terms)) and math.isfinite(total) and total > 0.0:
        return float(total ** (1.0 / tau))
    return _log_space_quasinorm(sf, s, tau)


def step_csv_text(sf: StepFunction) -> str:
    """CSV rows t_break,value: each row's value holds on [t_break, next break).

    A final row marks where the function falls to zero.
    """
    lines = ["t_break,value"]
    for left, v in zip(sf.breaks[:-1], sf.values):
        lines.append(f"{float(left)!r},{float(v)!r}")
    if sf.n_steps:
        lines.append(f"{float(sf.breaks[-1])!r},0.0")
    return "\n".join(lines) + "\n"
