"""Class decomposition, the max-entropy oracle, and theoretical curves."""

import io
import math

import numpy as np
import pytest
from scipy.optimize import brentq

from thermolens import (
    Collection,
    DomainError,
    EmptyCollectionError,
    EnergyModel,
    class_decompose,
    efficiency_vs_alpha_curve,
    energy_curve,
    from_values,
    max_entropy_oracle,
    sample,
    stationarity_report,
    theoretical_class_scaling,
)
from thermolens.structure import merge_curves, write_curve_csv

LOG = EnergyModel.LOGARITHMIC
LIN = EnergyModel.LINEAR


class TestClassDecompose:
    def test_decade_binning(self):
        d = class_decompose(from_values([1, 5, 10, 11, 100, 101]))
        assert [(b.index, b.population) for b in d.bins] == [(1, 3), (2, 2), (3, 1)]

    def test_single_class(self):
        d = class_decompose(Collection({1: 7}))
        assert [(b.index, b.population, b.mass) for b in d.bins] == [(1, 7, 7)]

    def test_boundary_values_stay_in_lower_class(self):
        # 10 belongs to class 1 and 100 to class 2 under (b^(n-1), b^n].
        d = class_decompose(from_values([1, 10, 100]))
        assert d.mass_of(1) == 11
        assert d.mass_of(2) == 100

    def test_zero_rows_up_to_max_class(self):
        d = class_decompose(from_values([1, 101]))
        assert [(b.index, b.population) for b in d.bins] == [(1, 1), (2, 0), (3, 1)]

    def test_conservation_exact(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            c = from_values([int(v) for v in rng.integers(1, 5000, size=300)])
            d = class_decompose(c)
            assert sum(b.population for b in d.bins) == c.population
            assert sum(b.mass for b in d.bins) == c.value_sum

    def test_other_base(self):
        d = class_decompose(from_values([1, 2, 3, 4, 5, 8, 9]), base=2)
        # Classes under base 2: {1,2}, {3,4}, {5..8}, {9..16}.
        assert [(b.index, b.population) for b in d.bins] == [(1, 2), (2, 2), (3, 2), (4, 1)]

    def test_errors(self):
        with pytest.raises(EmptyCollectionError):
            class_decompose(from_values([]))
        with pytest.raises(DomainError):
            class_decompose(Collection({1: 1}), base=1)


class TestTheoreticalClassScaling:
    def test_even_mass_at_alpha_two(self):
        for base in (2, 10, 16):
            assert theoretical_class_scaling(2.0, base).mass_ratio == 1.0

    def test_population_ratio_at_alpha_two(self):
        assert theoretical_class_scaling(2.0, 10).pop_ratio == pytest.approx(0.1)

    def test_mass_shifts_to_high_classes_below_two(self):
        ratio = theoretical_class_scaling(1.5, 10).mass_ratio
        assert ratio == pytest.approx(math.sqrt(10), rel=1e-12)
        assert theoretical_class_scaling(2.5, 10).mass_ratio < 1.0

    def test_index_independent(self):
        assert theoretical_class_scaling(1.7, 10, 1) == theoretical_class_scaling(1.7, 10, 5)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            theoretical_class_scaling(1.0)
        with pytest.raises(DomainError):
            theoretical_class_scaling(2.0, base=1)
        with pytest.raises(DomainError):
            theoretical_class_scaling(2.0, n=0)

    def test_sampled_population_slope(self):
        # ln N(n) over the first 3 classes falls with slope close to
        # -(alpha-1) ln b; the head class deviates most, 15% covers it.
        c = sample(2.0, 10**6, seed=99)
        d = class_decompose(c)
        pops = [d.population_of(n) for n in (1, 2, 3)]
        slope = np.polyfit([1, 2, 3], np.log(pops), 1)[0]
        expected = -(2.0 - 1.0) * math.log(10)
        assert abs(slope - expected) <= 0.15 * abs(expected)


def _truncated_mean_log(lam: float, v_max: int) -> float:
    v = np.arange(1, v_max + 1, dtype=np.float64)
    w = v ** (-lam)
    return float((w @ np.log(v)) / w.sum())


class TestMaxEntropyOracle:
    def test_logarithmic_matches_independent_solver(self):
        dist = max_entropy_oracle(1.0, 10_000, LOG)
        rate = stationarity_report(dist, LOG).rate
        # Independent route: brentq on an independently coded truncated
        # mean-log series.
        alpha_star = brentq(lambda l: _truncated_mean_log(l, 10_000) - 1.0, 1.05, 4.0, xtol=1e-12)
        assert rate == pytest.approx(alpha_star, abs=1e-3)

    def test_linear_forward_then_invert(self):
        v = np.arange(1, 10_001, dtype=np.float64)
        w = np.exp(-0.5 * v)
        target = float((w @ v) / w.sum())
        dist = max_entropy_oracle(target, 10_000, LIN)
        assert stationarity_report(dist, LIN).rate == pytest.approx(0.5, abs=1e-6)

    def test_moment_constraint_is_met(self):
        dist = max_entropy_oracle(1.0, 10_000, LOG)
        e = sum(p * math.log(v) for v, p in dist.probs.items())
        assert e == pytest.approx(1.0, abs=1e-8)

    def test_boundary_targets_rejected(self):
        with pytest.raises(DomainError):
            max_entropy_oracle(0.0, 100, LOG)  # exactly u(1)
        with pytest.raises(DomainError):
            max_entropy_oracle(math.log(100), 100, LOG)  # exactly u(V)
        with pytest.raises(DomainError):
            max_entropy_oracle(1.0, 100, LIN)  # exactly u(1) for linear
        max_entropy_oracle(math.log(100) - 1e-6, 100, LOG)  # just inside works

    def test_support_too_small(self):
        with pytest.raises(DomainError):
            max_entropy_oracle(0.5, 1, LOG)

    def test_power_law_form_pointwise(self):
        dist = max_entropy_oracle(1.0, 2_000, LOG)
        rep = stationarity_report(dist, LOG)
        scaled = np.array([p * v ** rep.rate for v, p in sorted(dist.probs.items())])
        assert scaled.max() / scaled.min() - 1 < 1e-9

    def test_exponential_form_pointwise(self):
        dist = max_entropy_oracle(4.0, 2_000, LIN)
        rep = stationarity_report(dist, LIN)
        scaled = np.array([p * math.exp(rep.rate * v) for v, p in sorted(dist.probs.items())])
        assert scaled.max() / scaled.min() - 1 < 1e-9

    def test_entropy_is_maximal_among_feasible_perturbations(self):
        v_max = 200
        dist = max_entropy_oracle(1.0, v_max, LOG)
        values = np.array(dist.support, dtype=np.float64)
        p = np.array([dist.probs[int(v)] for v in values])
        u = np.log(values)
        q_oracle = float(-(p @ np.log(p)) / (p @ u))
        rng = np.random.default_rng(23)
        ones = np.ones_like(p)
        for _ in range(100):
            d = rng.normal(size=len(p))
            # Project onto the feasible tangent space: total mass and
            # mean energy both unchanged.
            for basis in (ones, u):
                d -= (d @ basis) / (basis @ basis) * basis
            eps = 0.5 * np.min(p / np.maximum(np.abs(d), 1e-300))
            perturbed = p + eps * d
            assert perturbed.min() > 0
            e = float(perturbed @ u)
            q = float(-(perturbed @ np.log(perturbed))) / e
            assert e == pytest.approx(1.0, abs=1e-9)
            assert q_oracle >= q - 1e-12


class TestEfficiencyCurve:
    def test_truncation_independence_of_q(self):
        q_small = efficiency_vs_alpha_curve([2.0], 10**3).efficiency[0]
        q_large = efficiency_vs_alpha_curve([2.0], 10**5).efficiency[0]
        assert abs(q_large - q_small) / q_small < 0.05

    def test_monotone_in_alpha(self):
        grid = [1.2 + 0.1 * k for k in range(14)]
        curve = efficiency_vs_alpha_curve(grid, 1000)
        assert np.all(np.diff(curve.entropy) < 0)
        assert np.all(np.diff(curve.entropy_reduction) > 0)

    def test_uniform_references(self):
        curve = efficiency_vs_alpha_curve([1.5, 2.0], 1000)
        assert curve.uniform_entropy == pytest.approx(math.log(1000))
        assert curve.uniform_entropy_reduction == 0.0
        assert curve.uniform_efficiency > 0

    def test_entropy_grows_with_truncation(self):
        small = efficiency_vs_alpha_curve([2.0], 10**3)
        large = efficiency_vs_alpha_curve([2.0], 10**5)
        assert large.entropy[0] > small.entropy[0]
        assert large.entropy_reduction[0] > small.entropy_reduction[0]

    def test_grid_validation(self):
        with pytest.raises(DomainError):
            efficiency_vs_alpha_curve([], 1000)
        with pytest.raises(DomainError):
            efficiency_vs_alpha_curve([2.0, 1.5], 1000)  # not increasing
        with pytest.raises(DomainError):
            efficiency_vs_alpha_curve([1.0], 1000)  # divergent exponent
        with pytest.raises(DomainError):
            efficiency_vs_alpha_curve([2.0], 9)  # truncation too small


class TestEnergyCurve:
    def test_monotone(self):
        grid = [1.2 + 0.05 * k for k in range(20)]
        curve = energy_curve(grid)
        assert np.all(np.diff(curve.energy) < 0)
        assert np.all(np.diff(curve.free_energy) > 0)

    def test_saturation_beyond_four(self):
        curve = energy_curve([1.5, 2.5, 4.0, 5.0])
        a = dict(zip(curve.alphas, curve.free_energy))
        assert abs(a[4.0] - a[5.0]) < abs(a[1.5] - a[2.5])

    def test_closed_forms(self):
        curve = energy_curve([2.0])
        assert curve.energy[0] == 1.0
        assert curve.free_energy[0] == pytest.approx(-0.24885015123537266, abs=1e-9)


class TestCurveSerialization:
    def test_csv_with_absent_columns(self):
        curve = energy_curve([1.5, 2.0])
        buf = io.StringIO()
        write_curve_csv(curve, buf, header_comment="cfg")
        lines = buf.getvalue().splitlines()
        assert lines[0] == "# cfg"
        assert lines[1] == "alpha,S,Q,R,E,A"
        # S, Q, R are absent on a closed-form curve.
        assert lines[2].split(",")[1:4] == ["", "", ""]
        assert float(lines[2].split(",")[4]) == 2.0

    def test_merge_requires_same_grid(self):
        f1 = efficiency_vs_alpha_curve([1.5, 2.0], 100)
        f2 = energy_curve([1.5, 2.5])
        with pytest.raises(DomainError):
            merge_curves(f1, f2)

    def test_merged_curve_has_all_columns(self):
        grid = [1.5, 2.0]
        merged = merge_curves(efficiency_vs_alpha_curve(grid, 100), energy_curve(grid))
        assert merged.entropy is not None
        assert merged.free_energy is not None
        assert merged.energy[0] == 2.0  # closed form, not the truncated value
