"""Parameter conversions and approximation constants.

The whole package runs on one parameter quadruple: an approximation order
s > 0 with summation exponent tau, coupled to an interpolation pair
(theta, q) through

    s + 1 = 1/theta,        tau = theta * q.

Several published normalization constants for this scale are mutually
inconsistent; this module exposes each candidate separately (``c_exact``,
``n_factor_algebraic``, ``n_factor_integral``, ``c_big``) together with a
consistency reporter that quantifies the disagreement instead of hiding it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .quadrature import QuadratureConfig, integrate_zero_to_inf

__all__ = [
    "ApproxParams",
    "params_from_s_tau",
    "params_from_theta_q",
    "c_exact",
    "n_factor_algebraic",
    "n_factor_integral",
    "c_big",
    "constant_consistency_report",
]


def _check_finite_positive(name: str, x: float) -> None:
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0):
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")


@dataclass(frozen=True)
class ApproxParams:
    """Coupled parameter quadruple; construct via params_from_s_tau."""

    theta: float
    q: float
    s: float
    tau: float

    def __post_init__(self):
        if not (0.0 < self.theta < 1.0):
            raise DomainError(f"theta must lie in (0,1), got {self.theta!r}")
        _check_finite_positive("s", self.s)
        if self.tau == math.inf or self.q == math.inf:
            if not (self.tau == math.inf and self.q == math.inf):
                raise DomainError("tau is infinite iff q is infinite")
        else:
            _check_finite_positive("tau", self.tau)
            _check_finite_positive("q", self.q)
        if abs((self.s + 1.0) * self.theta - 1.0) > 4e-16:
            raise DomainError("coupling s + 1 = 1/theta violated")
        if math.isfinite(self.q) and abs(self.tau - self.theta * self.q) > 4e-16 * max(
            1.0, self.tau
        ):
            raise DomainError("coupling tau = theta*q violated")


def params_from_s_tau(s: float, tau: float) -> ApproxParams:
    """Build the quadruple from (s, tau); tau = inf is allowed."""
    _check_finite_positive("s", s)
    if tau != math.inf:
        _check_finite_positive("tau", tau)
    theta = 1.0 / (s + 1.0)
    q = math.inf if tau == math.inf else tau * (s + 1.0)
    return ApproxParams(theta=theta, q=q, s=float(s), tau=float(tau))


def params_from_theta_q(theta: float, q: float) -> ApproxParams:
    """Build the quadruple from (theta, q); q = inf is allowed."""
    if not (isinstance(theta, (int, float)) and 0.0 < theta < 1.0):
        raise DomainError(f"theta must lie in (0,1), got {theta!r}")
    if q != math.inf:
        _check_finite_positive("q", q)
    s = 1.0 / theta - 1.0
    tau = math.inf if q == math.inf else theta * q
    return ApproxParams(theta=float(theta), q=float(q), s=s, tau=tau)


def c_exact(p: ApproxParams) -> float:
    """The exact constant c_{s,tau} = [s/(tau*(s+1)^2)]^(1/tau), 1 for tau=inf."""
    if p.tau == math.inf:
        return 1.0
    return (p.s / (p.tau * (p.s + 1.0) ** 2)) ** (1.0 / p.tau)


def n_factor_algebraic(theta: float, q: float) -> float:
    """Algebraic normalization factor [q*theta*(1-theta)]^(1/q)."""
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta must lie in (0,1), got {theta!r}")
    if q == math.inf:
        raise DomainError("algebraic normalization factor is undefined for q=inf")
    _check_finite_positive("q", q)
    return (q * theta * (1.0 - theta)) ** (1.0 / q)


def n_factor_integral(
    theta: float, q: float, quad: QuadratureConfig | None = None
) -> float:
    """Integral normalization factor (int_0^inf |t^-theta * t/sqrt(1+t^2)|^q dt/t)^(-1/q).

    For q=2 this has the closed form (2 sin(pi*theta)/pi)^(1/2), used in tests
    as a quadrature oracle.
    """
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta must lie in (0,1), got {theta!r}")
    if q == math.inf:
        raise DomainError("integral normalization factor is undefined for q=inf")
    _check_finite_positive("q", q)

    def integrand(t: float) -> float:
        # (t^(1-theta))^q * (1+t^2)^(-q/2) / t, stable on both halves
        return math.exp(
            ((1.0 - theta) * q - 1.0) * math.log(t) - 0.5 * q * math.log1p(t * t)
        )

    val = integrate_zero_to_inf(integrand, quad or QuadratureConfig())
    return val ** (-1.0 / q)


def c_big(
    theta: float,
    q: float,
    variant: str = "table",
    quad: QuadratureConfig | None = None,
) -> float:
    """Interpolation-couple constant C_{theta,q}.

    variant="table": the tabulated three-branch value, i.e.
    (sin(pi*theta)/(pi*theta))^(1/(2 theta)) for q=2, 2^(1/(2 theta)) for
    q=inf, and 2^(1/(2 theta)) * (q^2 theta)^(-1/(q theta)) * N^(1/theta)
    with the integral N otherwise.

    variant="consistency": 2^(1/(2 theta)) * c_exact, the value forced by the
    algebraic identity relating C and c.  The two variants disagree; see
    constant_consistency_report.
    """
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta must lie in (0,1), got {theta!r}")
    if variant == "consistency":
        return 2.0 ** (1.0 / (2.0 * theta)) * c_exact(params_from_theta_q(theta, q))
    if variant != "table":
        raise DomainError(f"unknown c_big variant {variant!r}")
    if q == math.inf:
        return 2.0 ** (1.0 / (2.0 * theta))
    _check_finite_positive("q", q)
    if q == 2.0:
        return (math.sin(math.pi * theta) / (math.pi * theta)) ** (1.0 / (2.0 * theta))
    n_int = n_factor_integral(theta, q, quad)
    return (
        2.0 ** (1.0 / (2.0 * theta))
        * (q * q * theta) ** (-1.0 / (q * theta))
        * n_int ** (1.0 / theta)
    )


def constant_consistency_report(
    theta: float, q: float, quad: QuadratureConfig | None = None
) -> dict:
    """Both C_{theta,q} candidates and their absolute difference.

    Never raises on disagreement; the difference is the point.
    """
    if q == math.inf:
        raise DomainError("consistency report requires q < inf")
    table = c_big(theta, q, "table", quad)
    consistency = c_big(theta, q, "consistency")
    return {
        "theta": float(theta),
        "q": float(q),
        "table_value": table,
        "consistency_value": consistency,
        "abs_diff": abs(table - consistency),
    }
