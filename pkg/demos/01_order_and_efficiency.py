#!/usr/bin/env python3
"""Entropy, order, and efficiency of contribution histograms.

Walks through the metric core on three contrasting populations: a
monoculture (everyone contributes the same amount), a flat spread
(everyone different), and a heavy-tailed middle ground. Shows why
entropy efficiency, not entropy alone, distinguishes "organized" from
merely "concentrated".
"""

import math

from thermolens import (
    Collection,
    EnergyModel,
    ZeroEnergyError,
    entropy,
    entropy_efficiency,
    entropy_reduction,
    average_energy,
    from_values,
    merge,
    theoretical_energy,
    theoretical_free_energy,
    thermo_report,
)


def describe(name: str, c: Collection) -> None:
    s = entropy(c)
    r = entropy_reduction(c)
    e = average_energy(c)
    line = f"{name:<22} N={c.population:<5} S={s:.4f}  R={r:.4f}  E={e:.4f}"
    try:
        line += f"  Q={entropy_efficiency(c):.4f}"
    except ZeroEnergyError:
        line += "  Q=undefined (zero energy)"
    print(line)


def main() -> None:
    print("= Three populations, 100 contributors each =\n")
    monoculture = Collection({6: 100})          # everyone makes 6 edits
    flat = from_values(list(range(1, 101)))     # all distinct 1..100
    heavy = Collection({1: 70, 3: 15, 10: 10, 60: 4, 400: 1})

    describe("monoculture {6:100}", monoculture)
    describe("flat 1..100", flat)
    describe("heavy tail", heavy)

    print(
        "\nEntropy alone ranks the flat spread as the most disordered"
        f" (S max = ln 100 = {math.log(100):.4f}),"
        "\nand the monoculture as perfectly ordered (S = 0). Entropy"
        " reduction R = ln N - S reads the\nsame fact as order rather"
        " than disorder."
    )

    print("\n= Efficiency is entropy per unit of energy =\n")
    print(
        "The flat spread buys its entropy dearly (E = 3.64); the heavy tail"
        " spends a sixth of that\nenergy, so per energy unit it is the most"
        " efficient of the three (highest Q)."
    )

    print("\n= Scale invariance =\n")
    doubled = merge(heavy, heavy)
    print(f"S(heavy)          = {entropy(heavy):.6f}")
    print(f"S(heavy + heavy)  = {entropy(doubled):.6f}   (unchanged: S ignores population scale)")
    print(f"R(heavy)          = {entropy_reduction(heavy):.6f}")
    print(f"R(heavy + heavy)  = {entropy_reduction(doubled):.6f}   (grows: R prices the head count)")

    print("\n= Energy models =\n")
    c = from_values([1, 2, 4, 8])
    print(f"logarithmic energy of [1,2,4,8]: {average_energy(c):.6f} (= 1.5 ln 2)")
    print(f"linear energy of [1,2,4,8]:      {average_energy(c, EnergyModel.LINEAR):.6f}")

    print("\n= Closed forms for a power law with minimum value 1 =\n")
    for alpha in (1.5, 2.0, 3.0):
        e = theoretical_energy(alpha)
        a = theoretical_free_energy(alpha)
        print(f"alpha={alpha:<4} E=1/(alpha-1)={e:<8.4f} A=-ln(zeta)/alpha={a:.4f}")

    print("\n= The full report bundle =\n")
    report = thermo_report(heavy)
    for key, value in report.to_json_dict().items():
        print(f"  {key:<9} {value}")


if __name__ == "__main__":
    main()
