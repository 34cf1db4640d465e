#!/usr/bin/env python3
"""Sampling, exponent fitting, and KS classification of power laws.

Draws synthetic collections from the zeta-normalized power law, fits the
closed-form exponent estimator, and classifies via the Kolmogorov-Smirnov
distance against the fitted distribution. Also shows the estimator's
actual convergence target on exact zeta-law data, which matters when
interpreting fits (see README, "Known limitations").
"""

import numpy as np

from thermolens import classify, from_values, ks_statistic, mle_fit, sample, zeta
from thermolens.powerlaw import theoretical_pmf


def main() -> None:
    print("= Zeta function and the theoretical pmf =\n")
    for alpha in (1.5, 2.0, 4.0):
        print(f"zeta({alpha}) = {zeta(alpha):.9f}")
    print(f"\npmf(alpha=2, v=1) = {theoretical_pmf(2.0, 1):.6f}  (share of one-edit contributors)")
    print(f"pmf(alpha=2, v=10) = {theoretical_pmf(2.0, 10):.6f}")

    print("\n= Seeded sampling is reproducible =\n")
    a = sample(2.0, 50_000, seed=7)
    b = sample(2.0, 50_000, seed=7)
    print(f"two draws with seed 7 identical: {a == b}")
    print(f"head of the histogram: {[(v, a.counts[v]) for v in a.support[:5]]}")
    print(f"largest sampled value: {max(a.support)}")

    print("\n= Fitting: where the closed-form estimator lands =\n")
    print("The estimator 1 + N/sum(ln v) targets the continuous-model"
          " log-moment. On exact zeta-law\nsamples its population value is"
          " 1 + zeta(a)/(-zeta'(a)), biased above the sampling exponent:\n")
    for alpha in (1.5, 2.0, 2.5):
        c = sample(alpha, 100_000, seed=int(alpha * 10))
        print(f"  sampled at alpha={alpha}: fitted {mle_fit(c):.4f}")

    print("\n= KS classification at D < 0.1 =\n")
    power = sample(2.0, 10_000, seed=3)
    fit = classify(power)
    print(
        f"zeta-law sample:  alpha_hat={fit.alpha:.3f} D={fit.ks_stat:.3f} "
        f"is_power_law={fit.is_power_law}"
    )

    rng = np.random.default_rng(5)
    geometric = from_values([int(v) for v in rng.geometric(1 / 3, size=10_000)])
    fit_geo = classify(geometric)
    print(
        f"geometric sample: alpha_hat={fit_geo.alpha:.3f} D={fit_geo.ks_stat:.3f} "
        f"is_power_law={fit_geo.is_power_law}"
    )
    print("\nThe exponential tail sits far from any fitted power law, so the"
          " D = 0.1 rule rejects it\ndecisively; the bias above also pushes"
          " exact zeta-law data past the same bar.")

    print("\n= D against a hand-picked exponent =\n")
    for alpha in (1.8, 2.0, 2.2, 2.75):
        print(f"  D(power sample | alpha={alpha}) = {ks_statistic(power, alpha):.4f}")
    print("\nEvaluating D at the sampling exponent (2.0) shows the match;"
          " the fitted exponent (2.75)\ndoes not describe the same head mass.")


if __name__ == "__main__":
    main()
