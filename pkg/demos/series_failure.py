#!/usr/bin/env python3
"""Two failure modes of coefficient-level summation in H(b).

First, the coefficient series sum_j fhat(j) phihat(j) -- which a naive
norm formula would need to converge -- has positive terms and partial sums
S_J that keep growing with J (computed at extended precision; the phi
coefficients quickly leave double range for larger powers).

Second, the Taylor partial sums s_n(f) and Cesaro means sigma_n(f) of f
have H(b) norms whose running maxima keep increasing: polynomial
approximation does not converge to f in the H(b) norm, even though f is a
perfectly nice finite combination of Cauchy kernels.  The convexity sanity
||sigma_n|| <= max_{k<=n} ||s_k|| holds on every row.
"""

from hblab import ConstructionParams, build_pair
from hblab.experiments import (
    build_divergent_combo,
    sarason_series_failure,
    summability_divergence,
)


def main():
    params = ConstructionParams(alpha=1.2, beta=1.5, power_m=1)
    pair = build_pair(params)
    f = build_divergent_combo(params, pair)

    rep = sarason_series_failure(512, f, pair, precision_bits=384)
    print("partial sums S_J of the coefficient series (log10):")
    for j, s in rep.rows:
        print(f"  J={j:4d}  log10 S_J = {s:12.8f}")
    print(f"S_Jmax / S_Jmax/2 = {float(rep.metadata['ratio_full_to_half']):.6f}"
          f"  (still growing at the truncation)")

    rep = summability_divergence(
        [0, 1, 2, 4, 8, 12, 16, 24, 32, 40, 48, 56, 64],
        f, pair, precision_bits=192,
    )
    print("\nH(b) norms of partial sums and Cesaro means (log10):")
    print(f"{'n':>4} {'log10 ||s_n||':>14} {'log10 ||sigma_n||':>18}")
    for n, ls, lsig in rep.rows:
        print(f"{n:4d} {ls:14.8f} {lsig:18.8f}")
    print(f"convexity on every row: {rep.metadata['convexity_ok']}")


if __name__ == "__main__":
    main()
