"""Discrete power-law machinery on support {1, 2, 3, ...}.

Covers the zeta-normalized distribution p_v = v^(-alpha) / zeta(alpha), the
closed-form exponent estimator alpha = 1 + N / sum(ln(v_i / v_min)), the
Kolmogorov-Smirnov distance between the fitted and empirical cdfs, and a
seeded sampler for synthetic data.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .collection import Collection
from .errors import DegenerateError, DomainError, EmptyCollectionError

__all__ = [
    "ALPHA_MIN",
    "DEFAULT_KS_THRESHOLD",
    "PowerLawFit",
    "zeta",
    "mle_fit",
    "theoretical_pmf",
    "theoretical_cdf",
    "ks_statistic",
    "classify",
    "sample",
]

# zeta(alpha) diverges as alpha -> 1; exponents at or below this are rejected.
ALPHA_MIN = 1.0 + 1e-6

DEFAULT_KS_THRESHOLD = 0.1
DEFAULT_TOL = 1e-10

_CHUNK = 1 << 21
_SAMPLE_TABLE_SIZE = 100_000


def _require_convergent(alpha: float) -> None:
    if not alpha > ALPHA_MIN:
        raise DomainError(f"zeta divergent: alpha must exceed {ALPHA_MIN}, got {alpha}")


def _tail_cutoff(alpha: float, tol: float) -> int:
    """Smallest V with bracket width V^(-alpha) <= tol."""
    return max(2, math.ceil(tol ** (-1.0 / alpha)))


def _partial_power_sum(alpha: float, stop: int) -> float:
    """Σ v^(-alpha) for v in [1, stop), chunked to bound memory."""
    total = 0.0
    lo = 1
    while lo < stop:
        hi = min(lo + _CHUNK, stop)
        block = np.arange(lo, hi, dtype=np.float64)
        total += float(np.sum(block ** (-alpha)))
        lo = hi
    return total


def _tail_midpoint(alpha: float, start: float) -> float:
    """Midpoint of the integral bracket for Σ v^(-alpha), v >= start.

    The tail lies in [I, I + start^(-alpha)] with I = start^(1-alpha)/(alpha-1),
    so the midpoint is within half the bracket width of the true value.
    """
    return start ** (1.0 - alpha) / (alpha - 1.0) + 0.5 * start ** (-alpha)


@lru_cache(maxsize=256)
def zeta(alpha: float, tol: float = DEFAULT_TOL) -> float:
    """Σ v^(-alpha) over v >= 1, within absolute error tol.

    Sums the series directly up to a cutoff V chosen so the integral
    bracket around the remaining tail is narrower than tol, then adds the
    bracket midpoint.
    """
    _require_convergent(alpha)
    if not tol > 0.0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    cutoff = _tail_cutoff(alpha, tol)
    return _partial_power_sum(alpha, cutoff) + _tail_midpoint(alpha, cutoff)


def mle_fit(c: Collection) -> float:
    """Closed-form exponent estimate alpha = 1 + N / Σ ln(v_i / v_min).

    v_min is the smallest observed value. With v_min = 1 the denominator is
    exactly N times the logarithmic average energy, which makes
    alpha - 1 = 1/E an identity of this estimator.
    """
    if not c:
        raise EmptyCollectionError("cannot fit an empty collection")
    v_min = c.min_value
    if len(c) == 1:
        raise DegenerateError("zero log-spread: all values equal")
    if v_min == 1:
        denom = c.log_value_sum
    else:
        denom = math.fsum(s * math.log(v / v_min) for v, s in sorted(c.counts.items()))
    return 1.0 + c.population / denom


def theoretical_pmf(alpha: float, v: int, tol: float = DEFAULT_TOL) -> float:
    """P(V = v) = v^(-alpha) / zeta(alpha)."""
    _require_convergent(alpha)
    if v < 1:
        raise DomainError(f"support starts at 1, got {v}")
    return float(v) ** (-alpha) / zeta(alpha, tol)


def _cdf_at(alpha: float, values: np.ndarray, tol: float) -> np.ndarray:
    """Theoretical cdf at each of a sorted array of integer support points.

    Below the series cutoff the cdf comes from exact partial sums; above it
    the complement is the integral-bracket tail midpoint, whose error is at
    most half of tol.
    """
    z = zeta(alpha, tol)
    cutoff = _tail_cutoff(alpha, tol)
    out = np.empty(values.shape, dtype=np.float64)
    small = values < cutoff
    if small.any():
        out[small] = _partial_sums_at(alpha, values[small]) / z
    large = ~small
    if large.any():
        starts = values[large].astype(np.float64) + 1.0
        tails = starts ** (1.0 - alpha) / (alpha - 1.0) + 0.5 * starts ** (-alpha)
        out[large] = 1.0 - tails / z
    return np.minimum(out, 1.0)


def _partial_sums_at(alpha: float, targets: np.ndarray) -> np.ndarray:
    """Σ_{w<=t} w^(-alpha) for each t in an ascending integer array."""
    out = np.empty(len(targets), dtype=np.float64)
    running = 0.0
    lo = 1
    j = 0
    vmax = int(targets[-1])
    while lo <= vmax:
        hi = min(lo + _CHUNK, vmax + 1)
        block = np.cumsum(np.arange(lo, hi, dtype=np.float64) ** (-alpha))
        while j < len(targets) and targets[j] < hi:
            out[j] = running + block[int(targets[j]) - lo]
            j += 1
        running += float(block[-1])
        lo = hi
    return out


def theoretical_cdf(alpha: float, v: int, tol: float = DEFAULT_TOL) -> float:
    """F(v) = Σ_{w<=v} theoretical_pmf(alpha, w)."""
    _require_convergent(alpha)
    if v < 1:
        raise DomainError(f"support starts at 1, got {v}")
    return float(_cdf_at(alpha, np.array([v], dtype=np.int64), tol)[0])


def ks_statistic(c: Collection, alpha: float, tol: float = DEFAULT_TOL) -> float:
    """Maximum gap between the empirical cdf and the fitted cdf.

    Both cdfs are integer step functions, so the supremum over the whole
    line is attained at a support point, approached from one side or the
    other. Both one-sided gaps are taken at every observed value: the
    right gap compares the cdfs at v, the left gap compares them just
    below v (where the theoretical cdf has already grown past any
    unobserved values but the empirical one has not).
    """
    if not c:
        raise EmptyCollectionError("cannot compare an empty collection")
    _require_convergent(alpha)
    values = np.array(c.support, dtype=np.int64)
    counts = np.array([c.counts[int(v)] for v in values], dtype=np.float64)
    emp = np.cumsum(counts) / c.population
    emp_left = np.concatenate(([0.0], emp[:-1]))
    fitted = _cdf_at(alpha, values, tol)
    pmf = values.astype(np.float64) ** (-alpha) / zeta(alpha, tol)
    fitted_left = fitted - pmf
    right_gap = np.abs(emp - fitted).max()
    left_gap = np.abs(emp_left - fitted_left).max()
    return float(max(right_gap, left_gap))


@dataclass(frozen=True)
class PowerLawFit:
    """Result of fitting and testing a collection against a power law."""

    alpha: float
    v_min: int
    zeta_value: float
    ks_stat: float
    is_power_law: bool
    threshold: float = DEFAULT_KS_THRESHOLD

    def to_json_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "v_min": self.v_min,
            "zeta": self.zeta_value,
            "D": self.ks_stat,
            "is_power_law": self.is_power_law,
        }

    CSV_HEADER = "alpha,v_min,zeta,D,is_power_law"

    def to_csv_row(self) -> str:
        return (
            f"{self.alpha:.12g},{self.v_min},{self.zeta_value:.12g},"
            f"{self.ks_stat:.12g},{str(self.is_power_law).lower()}"
        )


def classify(
    c: Collection,
    threshold: float = DEFAULT_KS_THRESHOLD,
    tol: float = DEFAULT_TOL,
) -> PowerLawFit:
    """Fit the exponent, measure the KS distance, and flag D < threshold."""
    alpha = mle_fit(c)
    _require_convergent(alpha)
    d = ks_statistic(c, alpha, tol)
    return PowerLawFit(
        alpha=alpha,
        v_min=c.min_value,
        zeta_value=zeta(alpha, tol),
        ks_stat=d,
        is_power_law=d < threshold,
        threshold=threshold,
    )


@lru_cache(maxsize=32)
def _cdf_table(alpha: float, tol: float) -> np.ndarray:
    values = np.arange(1, _SAMPLE_TABLE_SIZE + 1, dtype=np.int64)
    return _cdf_at(alpha, values, tol)


def _invert_tail(alpha: float, z: float, u: float, lo: int) -> int:
    """Smallest v > lo with F(v) >= u, using the analytic tail complement."""

    def cdf_tail(v: int) -> float:
        return 1.0 - _tail_midpoint(alpha, float(v) + 1.0) / z

    hi = lo * 2
    while cdf_tail(hi) < u:
        lo = hi
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if cdf_tail(mid) >= u:
            hi = mid
        else:
            lo = mid
    return hi


def sample(alpha: float, n: int, seed: int, tol: float = DEFAULT_TOL) -> Collection:
    """Draw n values from the zeta power law by inverting the cdf.

    Uniform variates are mapped through a cached cdf table; variates beyond
    the table's reach are resolved by bisecting the analytic tail. The same
    seed always produces the same collection.
    """
    _require_convergent(alpha)
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    table = _cdf_table(alpha, tol)
    z = zeta(alpha, tol)
    in_table = u <= table[-1]
    tally: Counter[int] = Counter()
    if in_table.any():
        drawn = np.searchsorted(table, u[in_table], side="left") + 1
        for v, s in zip(*np.unique(drawn, return_counts=True)):
            tally[int(v)] = int(s)
    for ui in u[~in_table]:
        tally[_invert_tail(alpha, z, float(ui), _SAMPLE_TABLE_SIZE)] += 1
    return Collection(dict(tally))
