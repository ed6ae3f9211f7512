#!/usr/bin/env python3
"""Where the per-interval growth inequality actually begins to hold.

The divergence mechanism needs log|phi(r w_n)/phi(w_n)| >= e^{n^beta -
n^alpha} on every interval [w_n, w_{n+1}].  The tail ratio
(sum_{k>n} eps_k)/rho_n that the limiting argument wants to vanish in fact
grows like exp(beta n^{beta-1}) for these exponents, and the sampled ratio
is negative on every desk-scale interval -- no power of the outer function
can rescue a negative ratio.

This scan works entirely in log-domain (the quantities involved underflow
floats at n ~ 10 already) and shows the three regimes:

* n <= ~95: the ratio is negative everywhere on the interval;
* n ~ 100-182: positivity spreads across the interval from the left
  endpoint (r = w_n turns positive near n = 100) while the right endpoint
  r = w_{n+1} is still negative, so where the "interior minimum" flips
  depends on how finely one samples;
* n >= 183: positive on the whole closed interval and clearing the bound
  with power 1 except at the right endpoint, which lags the bound by a
  slowly shrinking margin.
"""

from hblab import ConstructionParams
from hblab.outer import growth_bound_scan, check_rho_condition, make_sequences


def main():
    params = ConstructionParams(alpha=1.2, beta=1.5, power_m=1)

    seq = make_sequences(params)
    print("tail ratios (sum_{k>n} eps_k)/rho_n -- observed to grow, not vanish:")
    for n in range(1, params.n_terms):
        print(f"  n={n}: {check_rho_condition(seq, n):9.4f}")

    print(f"\n{'n':>4} {'closed min':>14} {'interior min':>14} "
          f"{'log bound':>12} {'interior ok':>11} {'m needed':>9}")
    for n_lo, n_hi in ((1, 6), (95, 101), (147, 150), (182, 184), (250, 251)):
        for row in growth_bound_scan(params, n_lo, n_hi, samples=9):
            def fmt(ls):
                s = ls.sign()
                return f"{'+' if s > 0 else '-'}e^{ls.log_mag:10.2f}"

            m = "-" if row.passes_with_m is None else f"{row.passes_with_m:.0f}"
            print(f"{row.n:4d} {fmt(row.min_log_ratio):>14} "
                  f"{fmt(row.min_log_ratio_interior):>14} "
                  f"{row.log_bound:12.2f} {str(row.interior_positive):>11} {m:>9}")
        print()


if __name__ == "__main__":
    main()
