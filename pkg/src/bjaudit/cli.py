"""Command-line surface.

One subcommand per capability; every run is deterministic given argv, input
files, and --seed, and all JSON floats carry 17 significant digits.  Exit
codes: 0 for success (a detected inequality violation is a result, so it
also exits 0), 2 for usage or domain errors, 3 for numeric failures.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .audit import (
    PROVIDER_KINDS,
    WEAK_L1_VARIANTS,
    ConstantProvider,
    audit_bernstein_right,
    audit_jackson,
    audit_q2,
    audit_weak_l1,
    counterexample_search,
    indicator_sweep,
    random_atoms,
    straddling_grid,
)
from .errors import DomainError, NumericError, UsageError
from .functionals import e_functional_trig, load_trig_csv
from .invgauss import InvGaussParams, demo_pipeline
from .jsonutil import dumps17
from .measures import load_instance_csv, lp_norm
from .params import (
    ApproxParams,
    c_big,
    c_exact,
    constant_consistency_report,
    n_factor_algebraic,
    n_factor_integral,
    params_from_s_tau,
    params_from_theta_q,
)
from .rearrange import approx_quasinorm, decreasing_rearrangement, step_csv_text
from .spectral import (
    audit_spectral_bound,
    load_matrix_csv,
    load_state_csv,
    spectral_measure,
    spectral_rearrangement,
)

AUDIT_NAMES = ("jackson", "bernstein-right", "weak-l1", "q2")
SPECTRAL_G = ("identity", "square", "zero")


def parse_grid(text: str) -> np.ndarray:
    """`lo:hi:n` linear, `log:lo:hi:n` logarithmic, or a single value."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) == 4 and parts[0] == "log":
            lo, hi, n = float(parts[1]), float(parts[2]), int(parts[3])
            if not (math.isfinite(lo) and math.isfinite(hi) and 0 < lo <= hi):
                raise UsageError(f"log grid needs 0 < lo <= hi, got {text!r}")
            if n < 1:
                raise UsageError(f"grid needs n >= 1, got {text!r}")
            return np.geomspace(lo, hi, n)
        if len(parts) == 3:
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise UsageError(f"grid needs lo <= hi, got {text!r}")
            if n < 1:
                raise UsageError(f"grid needs n >= 1, got {text!r}")
            return np.linspace(lo, hi, n)
    except ValueError as exc:
        raise UsageError(f"cannot parse grid {text!r}: {exc}") from exc
    raise UsageError(
        f"cannot parse grid {text!r}; use VALUE, lo:hi:n, or log:lo:hi:n"
    )


def _add_param_group(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--s", type=float, default=None, help="smoothness s > 0")
    sub.add_argument("--tau", type=float, default=None, help="tau > 0 or inf")
    sub.add_argument("--theta", type=float, default=None, help="theta in (0,1)")
    sub.add_argument("--q", type=float, default=None, help="q > 0 or inf")


def resolve_params(args) -> ApproxParams:
    has_st = args.s is not None or args.tau is not None
    has_tq = args.theta is not None or args.q is not None
    if has_st and has_tq:
        raise UsageError("give either (--s, --tau) or (--theta, --q), not both")
    if has_st:
        if args.s is None or args.tau is None:
            raise UsageError("--s and --tau must be given together")
        return params_from_s_tau(args.s, args.tau)
    if has_tq:
        if args.theta is None or args.q is None:
            raise UsageError("--theta and --q must be given together")
        return params_from_theta_q(args.theta, args.q)
    raise UsageError("parameters required: (--s, --tau) or (--theta, --q)")


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)


def _kv_csv(pairs) -> str:
    lines = ["key,value"]
    for k, v in pairs:
        if v is None:
            lines.append(f"{k},")
        elif isinstance(v, float):
            lines.append(f"{k},{float(v)!r}")
        else:
            lines.append(f"{k},{v}")
    return "\n".join(lines) + "\n"


def cmd_constants(args) -> str:
    p = resolve_params(args)
    out: dict[str, object] = {
        "theta": p.theta,
        "q": p.q,
        "s": p.s,
        "tau": p.tau,
        "c_exact": c_exact(p),
    }
    for key, fn in (
        ("n_algebraic", lambda: n_factor_algebraic(p.theta, p.q)),
        ("n_integral", lambda: n_factor_integral(p.theta, p.q)),
        ("c_big_table", lambda: c_big(p.theta, p.q, "table")),
        ("c_big_consistency", lambda: c_big(p.theta, p.q, "consistency")),
    ):
        try:
            out[key] = fn()
        except DomainError:
            out[key] = None
    try:
        rep = constant_consistency_report(p.theta, p.q)
        out["consistency_abs_diff"] = rep["abs_diff"]
    except DomainError:
        out["consistency_abs_diff"] = None
    if args.format == "json":
        return dumps17(out) + "\n"
    return _kv_csv(out.items())


def cmd_rearrange(args) -> str:
    sp, f = load_instance_csv(args.input)
    sf = decreasing_rearrangement(f, sp)
    if args.format == "json":
        return (
            dumps17(
                {
                    "breaks": [float(b) for b in sf.breaks],
                    "values": [float(v) for v in sf.values],
                    "support_mass": sf.support_mass if sf.n_steps else 0.0,
                    "sup_value": sf.sup_value if sf.n_steps else 0.0,
                }
            )
            + "\n"
        )
    return step_csv_text(sf)


def cmd_quasinorm(args) -> str:
    p = resolve_params(args)
    sp, f = load_instance_csv(args.input)
    sf = decreasing_rearrangement(f, sp)
    q_val = approx_quasinorm(sf, p.s, p.tau) if sf.n_steps else 0.0
    out = {
        "s": p.s,
        "tau": p.tau,
        "quasinorm": q_val,
        "l0": lp_norm(f, sp, 0),
        "l1": lp_norm(f, sp, 1.0),
        "l2": lp_norm(f, sp, 2.0),
        "linf": lp_norm(f, sp, math.inf),
    }
    if args.format == "json":
        return dumps17(out) + "\n"
    return _kv_csv(out.items())


def _resolve_grid(args, sf) -> np.ndarray:
    if args.grid is not None:
        return parse_grid(args.grid)
    return straddling_grid(sf)


def cmd_audit(args) -> str:
    name = args.name.replace("_", "-")
    sp, f = load_instance_csv(args.input)
    sf = decreasing_rearrangement(f, sp)
    if name == "jackson":
        p = resolve_params(args)
        provider = ConstantProvider(args.provider or "paper-c")
        rep = audit_jackson(f, sp, p, provider, _resolve_grid(args, sf))
    elif name == "bernstein-right":
        p = resolve_params(args)
        rep = audit_bernstein_right(f, sp, p)
    elif name == "weak-l1":
        rep = audit_weak_l1(
            f, sp, args.variant or "paper-2-over-pi", _resolve_grid(args, sf)
        )
    elif name == "q2":
        if args.theta is None:
            raise UsageError("audit --name q2 requires --theta")
        if args.s is not None or args.tau is not None or args.q is not None:
            raise UsageError("audit --name q2 takes only --theta")
        rep = audit_q2(f, sp, args.theta, _resolve_grid(args, sf))
    else:
        raise UsageError(f"unknown audit name {args.name!r}; choose from {AUDIT_NAMES}")
    if args.format == "json":
        return rep.to_json_text()
    return rep.to_csv_text()


def cmd_search(args) -> str:
    p = resolve_params(args)
    provider = ConstantProvider(args.provider)
    if args.generator == "random-atoms":
        gen = random_atoms(args.n_max, args.seed, args.draws)
    else:
        gen = indicator_sweep()
    result = counterexample_search(p, provider, gen, budget=args.budget)
    if args.format == "json":
        return dumps17(result.to_json_dict()) + "\n"
    if result.report is None:
        return "t,lhs,rhs,margin\n"
    return result.report.to_csv_text()


def _spectral_g(name: str):
    name = name.replace("_", "-")
    if name == "identity":
        return lambda lam: lam
    if name == "square":
        return lambda lam: lam * lam
    if name == "zero":
        return lambda lam: 0.0
    raise UsageError(f"unknown g {name!r}; choose from {SPECTRAL_G}")


def cmd_spectral(args) -> str:
    matrix = load_matrix_csv(args.matrix)
    psi = load_state_csv(args.state)
    model = spectral_measure(matrix, psi)
    g = _spectral_g(args.g)
    sf = spectral_rearrangement(model, g)
    grid = parse_grid(args.grid) if args.grid is not None else straddling_grid(sf)
    rep = audit_spectral_bound(model, g, args.variant, grid)
    if args.format == "json":
        out = rep.to_json_dict()
        out["eigenvalues"] = [float(x) for x in model.eigenvalues]
        out["weights"] = [float(x) for x in model.weights]
        return dumps17(out) + "\n"
    return rep.to_csv_text()


def cmd_demo_invgauss(args) -> str:
    p = InvGaussParams(amplitude=args.C, mean=args.m, shape=args.l)
    u_grid = parse_grid(args.u_grid) if args.u_grid is not None else None
    result = demo_pipeline(
        p,
        s=args.s,
        tau=args.tau,
        t_max=args.t_max,
        n_cells=args.n_cells,
        u_grid=u_grid,
    )
    if args.steps_out is not None:
        _emit(step_csv_text(result.rearrangement), args.steps_out)
    if args.metadata_out is not None:
        _emit(result.metadata_json_text(), args.metadata_out)
    if args.format == "json":
        return (
            dumps17(
                {
                    "metadata": result.metadata,
                    "table": {
                        "u": list(result.u_grid),
                        "f_star": list(result.f_star),
                        "e_value": list(result.e_value),
                        "jackson_bound": list(result.jackson_bound),
                    },
                }
            )
            + "\n"
        )
    return result.to_csv_text()


def cmd_trig(args) -> str:
    coeffs = load_trig_csv(args.input)
    if args.n_max is not None:
        n_max = args.n_max
        if n_max < 1:
            raise UsageError(f"--n-max must be >= 1, got {n_max}")
    else:
        n_max = max((abs(int(k)) for k in coeffs), default=0) + 1
    ns = list(range(1, n_max + 1))
    es = [e_functional_trig(coeffs, n) for n in ns]
    if args.format == "json":
        return dumps17({"n": ns, "e_value": es}) + "\n"
    lines = ["n,e_value"]
    for n, e in zip(ns, es):
        lines.append(f"{n},{e!r}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bjaudit",
        description=(
            "Decreasing rearrangements, E/K-functionals, and numerical audits "
            "of approximation-theoretic inequalities."
        ),
    )
    subs = parser.add_subparsers(dest="command", required=True)

    def common(sub, default_format):
        sub.add_argument(
            "--format", choices=("csv", "json"), default=default_format
        )
        sub.add_argument("--out", default=None, help="output path (default stdout)")

    sc = subs.add_parser("constants", help="exact and tabulated constants")
    _add_param_group(sc)
    common(sc, "json")
    sc.set_defaults(func=cmd_constants)

    sr = subs.add_parser("rearrange", help="instance CSV -> step-function CSV")
    sr.add_argument("--input", required=True, help="instance CSV path")
    common(sr, "csv")
    sr.set_defaults(func=cmd_rearrange)

    sq = subs.add_parser("quasinorm", help="approximation quasinorm and L^p values")
    sq.add_argument("--input", required=True, help="instance CSV path")
    _add_param_group(sq)
    common(sq, "json")
    sq.set_defaults(func=cmd_quasinorm)

    sa = subs.add_parser("audit", help="evaluate one inequality on one instance")
    sa.add_argument("--name", required=True, help="|".join(AUDIT_NAMES))
    sa.add_argument("--input", required=True, help="instance CSV path")
    sa.add_argument("--provider", choices=PROVIDER_KINDS, default=None)
    sa.add_argument("--variant", choices=WEAK_L1_VARIANTS, default=None)
    sa.add_argument(
        "--grid", default=None, help="t-grid lo:hi:n or log:lo:hi:n (default: straddle breaks)"
    )
    _add_param_group(sa)
    common(sa, "json")
    sa.set_defaults(func=cmd_audit)

    ss = subs.add_parser("search", help="hunt for the worst Jackson margin")
    ss.add_argument("--provider", choices=PROVIDER_KINDS, required=True)
    ss.add_argument(
        "--generator",
        choices=("random-atoms", "indicator-sweep"),
        default="random-atoms",
    )
    ss.add_argument("--n-max", type=int, default=6, help="max atoms per instance")
    ss.add_argument("--draws", type=int, default=200, help="instances to generate")
    ss.add_argument("--budget", type=int, default=None, help="cap on audited instances")
    ss.add_argument("--seed", type=int, default=0)
    _add_param_group(ss)
    common(ss, "json")
    ss.set_defaults(func=cmd_search)

    sp = subs.add_parser("spectral", help="spectral measure weak-type audit")
    sp.add_argument("--matrix", required=True, help="matrix CSV (row,col,re,im)")
    sp.add_argument("--state", required=True, help="state CSV (index,re,im)")
    sp.add_argument("--g", choices=SPECTRAL_G, default="identity")
    sp.add_argument("--variant", choices=WEAK_L1_VARIANTS, default="paper-2-over-pi")
    sp.add_argument("--grid", default=None, help="t-grid (default: straddle breaks)")
    common(sp, "json")
    sp.set_defaults(func=cmd_spectral)

    sd = subs.add_parser("demo-invgauss", help="inverse-Gaussian demo tables")
    sd.add_argument("--C", type=float, default=10.0, help="amplitude")
    sd.add_argument("--m", type=float, default=2.0, help="mean")
    sd.add_argument("--l", type=float, default=4.0, help="shape")
    sd.add_argument("--s", type=float, default=2.0)
    sd.add_argument("--tau", type=float, default=2.0)
    sd.add_argument("--t-max", type=float, default=10.0)
    sd.add_argument("--n-cells", type=int, default=4000)
    sd.add_argument("--u-grid", default=None, help="u-grid lo:hi:n (default 0.5:11:106)")
    sd.add_argument(
        "--steps-out", default=None, help="also write the rearrangement step CSV here"
    )
    sd.add_argument(
        "--metadata-out", default=None, help="also write the metadata JSON here"
    )
    common(sd, "csv")
    sd.set_defaults(func=cmd_demo_invgauss)

    st = subs.add_parser("trig", help="L^2 trigonometric approximation errors")
    st.add_argument("--input", required=True, help="coefficient CSV (k,re,im)")
    st.add_argument("--n-max", type=int, default=None, help="tabulate n = 1..n_max")
    common(st, "csv")
    st.set_defaults(func=cmd_trig)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        text = args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
