#!/usr/bin/env python3
"""Theoretical metric curves as the power-law exponent varies.

Reproduces the two standard pictures: entropy/efficiency/reduction of a
truncated power law across exponents (at two truncations, to show which
quantities depend on sample size), and the closed-form energy/free-energy
pair with its saturation past alpha of about 4.
"""

from thermolens import efficiency_vs_alpha_curve, energy_curve


def main() -> None:
    grid = [round(1.2 + 0.2 * k, 10) for k in range(15)]  # 1.2 .. 4.0

    print("= Entropy S, efficiency Q, reduction R (truncated support) =\n")
    small = efficiency_vs_alpha_curve(grid, 10**3)
    large = efficiency_vs_alpha_curve(grid, 10**6)
    print(f"{'alpha':>6} | {'S@1e3':>8} {'S@1e6':>8} | {'Q@1e3':>8} {'Q@1e6':>8} | {'R@1e3':>8} {'R@1e6':>8}")
    for i, alpha in enumerate(grid):
        print(
            f"{alpha:>6.2f} | {small.entropy[i]:>8.4f} {large.entropy[i]:>8.4f} |"
            f" {small.efficiency[i]:>8.4f} {large.efficiency[i]:>8.4f} |"
            f" {small.entropy_reduction[i]:>8.4f} {large.entropy_reduction[i]:>8.4f}"
        )
    print(
        "\nS and R shift with the truncation (sample size), while Q barely"
        " moves: efficiency is the\nsize-free column. The uniform reference"
        f" for the 1e3 truncation: S_u={small.uniform_entropy:.4f},"
        f" Q_u={small.uniform_efficiency:.4f}, R_u={small.uniform_entropy_reduction}."
    )

    print("\n= Energy E = 1/(alpha-1) and free energy A = -ln(zeta)/alpha =\n")
    curve = energy_curve(grid)
    print(f"{'alpha':>6} | {'E':>9} {'A':>9}")
    for alpha, e, a in zip(curve.alphas, curve.energy, curve.free_energy):
        print(f"{alpha:>6.2f} | {e:>9.4f} {a:>9.4f}")
    spans = {
        "1.4 -> 2.4": abs(curve.free_energy[grid.index(1.4)] - curve.free_energy[grid.index(2.4)]),
        "3.0 -> 4.0": abs(curve.free_energy[grid.index(3.0)] - curve.free_energy[grid.index(4.0)]),
    }
    print(
        f"\nA climbs quickly at first (|dA| {spans['1.4 -> 2.4']:.4f} across 1.4-2.4) then"
        f" saturates (|dA| {spans['3.0 -> 4.0']:.4f} across 3.0-4.0):\npast alpha of about 4 a"
        " colder system buys almost no additional free energy,\nwhich is why observed exponents"
        " crowd the 1-3 band."
    )


if __name__ == "__main__":
    main()
