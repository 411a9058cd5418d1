# Quick look at how the two normalization conventions drift apart across
# theta.  Run: python3 scripts/constants_table.py

import math

from bjaudit import (
    DomainError,
    c_big,
    c_exact,
    n_factor_algebraic,
    n_factor_integral,
    params_from_theta_q,
)

THETAS = [0.1, 0.2, 0.3, 1.0 / 3.0, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]
QS = [1.0, 2.0, 6.0, math.inf]


def fmt(x):
    return "   --   " if x is None else f"{x:8.5f}"


for q in QS:
    print(f"\nq = {q:g}")
    print(f"{'theta':>7} {'c_exact':>8} {'N_alg':>8} {'N_int':>8} "
          f"{'C_table':>8} {'C_consis':>8} {'ratio':>8}")
    for theta in THETAS:
        p = params_from_theta_q(theta, q)
        row = [c_exact(p)]
        for fn in (
            lambda: n_factor_algebraic(theta, q),
            lambda: n_factor_integral(theta, q),
            lambda: c_big(theta, q, "table"),
            lambda: c_big(theta, q, "consistency"),
        ):
            try:
                row.append(fn())
            except DomainError:
                row.append(None)
        ratio = None
        if row[3] is not None and row[4] is not None and row[4] != 0:
            ratio = row[3] / row[4]
        print(f"{theta:7.3f} " + " ".join(fmt(x) for x in row) + " " + fmt(ratio))

print("\nnote: C_table and C_consistency collapse to the same 2^(1/(2 theta))")
print("at q = inf (c_exact is 1 there) and disagree everywhere else; the")
print("s=1,tau=1 point (theta=1/2, q=2) gives 2/pi vs 1/2.")
