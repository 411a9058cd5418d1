"""Hunt for violations of the claimed Jackson constants.

Sweeps every constant provider over random instances and the indicator
family, printing the worst margin found per provider.  The sharp-oracle
provider should survive everything; margins reported for the paper-* kinds
are evidence about the claimed constants, not about the search.

Run::

    python3 scripts/search_counterexamples.py --s 1 --tau 1 --draws 2000
"""

import argparse

from bjaudit import (
    PROVIDER_KINDS,
    ConstantProvider,
    counterexample_search,
    indicator_sweep,
    params_from_s_tau,
    random_atoms,
)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--s", type=float, default=1.0)
    ap.add_argument("--tau", type=float, default=1.0)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--draws", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show-instances", action="store_true")
    args = ap.parse_args()

    p = params_from_s_tau(args.s, args.tau)
    print(f"s = {p.s:g}, tau = {p.tau:g}  (theta = {p.theta:g}, q = {p.q:g})")

    for kind in PROVIDER_KINDS:
        provider = ConstantProvider(kind)
        worst = None
        for label, gen in (
            ("random", random_atoms(args.n_max, args.seed, args.draws)),
            ("indicators", indicator_sweep()),
        ):
            res = counterexample_search(p, provider, gen)
            if res.report is None:
                continue
            if worst is None or res.report.min_margin < worst[1].report.min_margin:
                worst = (label, res)
        if worst is None:
            print(f"  {kind:18s}  no instances audited")
            continue
        label, res = worst
        rep = res.report
        mark = "VIOLATED" if rep.violated else "ok"
        t_txt = "" if rep.witness_t is None else f" at t = {rep.witness_t:.6g}"
        print(
            f"  {kind:18s}  const = {rep.params['constant']:.6g}  "
            f"worst margin = {rep.min_margin:+.6g}{t_txt}  "
            f"[{label}] {mark}"
        )
        if args.show_instances and rep.violated:
            print("    worst instance:")
            for line in res.instance_csv.strip().split("\n"):
                print(f"      {line}")


if __name__ == "__main__":
    main()
