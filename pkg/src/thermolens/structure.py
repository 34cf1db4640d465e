"""Structural theory tools: logarithmic classes, the constrained
maximum-entropy oracle, and theoretical metric curves over the exponent.

The class decomposition groups contributors by decade of activity
(values 1..b in class 1, b+1..b^2 in class 2, ...). For a power law with
exponent alpha the adjacent-class population ratio is b^-(alpha-1) and the
contribution-mass ratio is b^-(alpha-2), so alpha = 2 spreads the total
contribution evenly across classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, NamedTuple, Sequence

import numpy as np

from .collection import Collection, Distribution, EnergyModel
from .errors import ConvergenceError, DomainError, EmptyCollectionError
from .powerlaw import ALPHA_MIN
from .thermo import theoretical_energy, theoretical_free_energy

__all__ = [
    "ClassBin",
    "ClassDecomposition",
    "ClassScaling",
    "StationarityReport",
    "TheoryCurve",
    "class_decompose",
    "theoretical_class_scaling",
    "max_entropy_oracle",
    "stationarity_report",
    "efficiency_vs_alpha_curve",
    "energy_curve",
    "merge_curves",
    "write_curve_csv",
]

_BISECT_MAX_ITER = 200
_BISECT_TOL = 1e-10


@dataclass(frozen=True)
class ClassBin:
    index: int
    population: int
    mass: int


@dataclass(frozen=True)
class ClassDecomposition:
    """Contributors bucketed by logarithmic class of their value.

    Class n holds values in (b^(n-1), b^n], with v = 1 joining class 1.
    Bins run contiguously from 1 to the highest occupied class; empty
    classes in between appear as explicit zero rows. Populations and
    masses are exact integers and sum to the collection totals.
    """

    base: int
    bins: tuple[ClassBin, ...]

    def population_of(self, index: int) -> int:
        return self.bins[index - 1].population

    def mass_of(self, index: int) -> int:
        return self.bins[index - 1].mass


def _class_index(value: int, base: int) -> int:
    # Integer arithmetic keeps boundary values (v == b^n) in class n exactly.
    index = 1
    bound = base
    while value > bound:
        bound *= base
        index += 1
    return index


def class_decompose(c: Collection, base: int = 10) -> ClassDecomposition:
    """Bucket a collection into logarithmic classes of the given base."""
    if not c:
        raise EmptyCollectionError("cannot decompose an empty collection")
    if base < 2:
        raise DomainError(f"class base must be >= 2, got {base}")
    pops: dict[int, int] = {}
    masses: dict[int, int] = {}
    for v, s in c.counts.items():
        n = _class_index(v, base)
        pops[n] = pops.get(n, 0) + s
        masses[n] = masses.get(n, 0) + v * s
    top = max(pops)
    bins = tuple(
        ClassBin(index=n, population=pops.get(n, 0), mass=masses.get(n, 0))
        for n in range(1, top + 1)
    )
    return ClassDecomposition(base=base, bins=bins)


class ClassScaling(NamedTuple):
    pop_ratio: float
    mass_ratio: float


def theoretical_class_scaling(alpha: float, base: int = 10, n: int = 1) -> ClassScaling:
    """Adjacent-class ratios N(n+1)/N(n) and C(n+1)/C(n) for a power law.

    Both ratios are independent of n: populations shrink by b^-(alpha-1)
    per class and contribution masses by b^-(alpha-2), which is exactly 1
    at alpha = 2.
    """
    if alpha <= 1.0:
        raise DomainError(f"alpha must exceed 1, got {alpha}")
    if base < 2:
        raise DomainError(f"class base must be >= 2, got {base}")
    if n < 1:
        raise DomainError(f"class index must be >= 1, got {n}")
    return ClassScaling(
        pop_ratio=float(base) ** -(alpha - 1.0),
        mass_ratio=float(base) ** -(alpha - 2.0),
    )


def _exponential_family(lam: float, u: np.ndarray) -> np.ndarray:
    logits = -lam * u
    logits -= logits.max()
    w = np.exp(logits)
    return w / w.sum()


def max_entropy_oracle(
    e_target: float,
    support_max: int,
    model: EnergyModel = EnergyModel.LOGARITHMIC,
    tol: float = _BISECT_TOL,
) -> Distribution:
    """Entropy-maximizing distribution on 1..V at a fixed average energy.

    The maximizer is the exponential family p_v proportional to
    exp(-lambda * u(v)): a truncated power law for the logarithmic energy
    model, an exponential (Boltzmann) law for the linear one. The rate
    lambda is found by bisection on the mean energy, which is strictly
    decreasing in lambda. The target must lie strictly between the
    smallest and largest attainable energy on the support.

    Support points whose probability underflows below the smallest normal
    float are omitted from the returned distribution; they carry no
    representable mass and would corrupt log-domain diagnostics.
    """
    if support_max < 2:
        raise DomainError(f"support must contain at least 2 points, got {support_max}")
    values = np.arange(1, support_max + 1, dtype=np.float64)
    u = np.log(values) if model is EnergyModel.LOGARITHMIC else values
    if not u[0] < e_target < u[-1]:
        raise DomainError(
            f"target energy {e_target} outside attainable range ({u[0]}, {u[-1]})"
        )

    def mean_energy(lam: float) -> float:
        return float(_exponential_family(lam, u) @ u)

    lo, hi = -1.0, 1.0
    while mean_energy(lo) < e_target:
        lo *= 2.0
    while mean_energy(hi) > e_target:
        hi *= 2.0
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol:
            break
        if mean_energy(mid) > e_target:
            lo = mid
        else:
            hi = mid
    else:
        raise ConvergenceError(
            f"bisection did not reach tol={tol} in {_BISECT_MAX_ITER} iterations"
        )
    lam = 0.5 * (lo + hi)
    probs = _exponential_family(lam, u)
    keep = probs >= np.finfo(np.float64).tiny
    return Distribution({int(v): float(p) for v, p in zip(values[keep], probs[keep])})


@dataclass(frozen=True)
class StationarityReport:
    """How closely a distribution matches the stationary exponential form.

    `rate` and `offset` are the affine-fit coefficients of ln(p_v) against
    the energy u(v); `max_residual` is the largest pointwise deviation of
    ln(p_v) + 1 + rate*u(v) + offset from zero, which vanishes exactly for
    the exponential-family stationary point. `efficiency_gap` reports
    |Q - rate|: the efficiency approximates the rate but exceeds it by
    ln(Z)/E, so the gap is informative rather than a pass/fail residual.
    """

    rate: float
    offset: float
    max_residual: float
    entropy: float
    avg_energy: float
    efficiency: float
    efficiency_gap: float

    def to_json_dict(self) -> dict:
        return {
            "lambda": self.rate,
            "kappa": self.offset,
            "max_residual": self.max_residual,
            "S": self.entropy,
            "E": self.avg_energy,
            "Q": self.efficiency,
            "efficiency_gap": self.efficiency_gap,
        }


def stationarity_report(
    dist: Distribution,
    model: EnergyModel = EnergyModel.LOGARITHMIC,
) -> StationarityReport:
    """Fit ln(p) = -rate*u + const and report the worst-case residual."""
    values = np.array(dist.support, dtype=np.float64)
    p = np.array([dist.probs[int(v)] for v in values])
    u = np.log(values) if model is EnergyModel.LOGARITHMIC else values
    logp = np.log(p)
    slope, intercept = np.polyfit(u, logp, 1)
    rate = -slope
    # Residual of ln(p) + 1 + rate*u + kappa with kappa = -intercept - 1.
    offset = -intercept - 1.0
    residual = float(np.abs(logp + 1.0 + rate * u + offset).max())
    s = float(-(p @ logp))
    e = float(p @ u)
    q = s / e
    return StationarityReport(
        rate=float(rate),
        offset=float(offset),
        max_residual=residual,
        entropy=s,
        avg_energy=e,
        efficiency=q,
        efficiency_gap=abs(q - rate),
    )


@dataclass(frozen=True)
class TheoryCurve:
    """Metric columns evaluated on a strictly increasing exponent grid.

    Curves from `efficiency_vs_alpha_curve` carry S, Q, R (and truncated E)
    at the stated support truncation plus uniform-distribution reference
    values; curves from `energy_curve` carry the closed-form E and A.
    Missing columns are None.
    """

    alphas: tuple[float, ...]
    entropy: tuple[float, ...] | None = None
    efficiency: tuple[float, ...] | None = None
    entropy_reduction: tuple[float, ...] | None = None
    energy: tuple[float, ...] | None = None
    free_energy: tuple[float, ...] | None = None
    truncation: int | None = None
    uniform_entropy: float | None = None
    uniform_efficiency: float | None = None
    uniform_entropy_reduction: float | None = None

    def __post_init__(self) -> None:
        grid = np.asarray(self.alphas, dtype=np.float64)
        if len(grid) == 0:
            raise DomainError("alpha grid is empty")
        if len(grid) > 1 and not np.all(np.diff(grid) > 0):
            raise DomainError("alpha grid must be strictly increasing")


def _validated_grid(alphas: Sequence[float]) -> np.ndarray:
    grid = np.asarray(list(alphas), dtype=np.float64)
    if grid.size == 0:
        raise DomainError("alpha grid is empty")
    for a in grid:
        if not a > ALPHA_MIN:
            raise DomainError(f"alpha must exceed {ALPHA_MIN}, got {a}")
    if grid.size > 1 and not np.all(np.diff(grid) > 0):
        raise DomainError("alpha grid must be strictly increasing")
    return grid


def efficiency_vs_alpha_curve(alphas: Sequence[float], n_trunc: int) -> TheoryCurve:
    """S, Q, R of the truncated, renormalized power law across a grid.

    The power-law pmf on 1..n_trunc is renormalized after truncation; the
    entropy reduction baseline ln(n_trunc) plays the role of the maximum
    entropy at that sample size. Uniform-distribution reference values
    (S_u = ln n_trunc, R_u = 0) are attached for plotting.
    """
    grid = _validated_grid(alphas)
    if n_trunc < 10:
        raise DomainError(f"truncation must be >= 10, got {n_trunc}")
    values = np.arange(1, n_trunc + 1, dtype=np.float64)
    log_values = np.log(values)
    s_col, q_col, r_col, e_col = [], [], [], []
    log_n = math.log(n_trunc)
    for alpha in grid:
        w = np.exp(-alpha * log_values)
        p = w / w.sum()
        s = float(-(p @ np.log(p)))
        e = float(p @ log_values)
        s_col.append(s)
        e_col.append(e)
        q_col.append(s / e)
        r_col.append(log_n - s)
    e_uniform = float(log_values.mean())
    return TheoryCurve(
        alphas=tuple(float(a) for a in grid),
        entropy=tuple(s_col),
        efficiency=tuple(q_col),
        entropy_reduction=tuple(r_col),
        energy=tuple(e_col),
        truncation=n_trunc,
        uniform_entropy=log_n,
        uniform_efficiency=log_n / e_uniform,
        uniform_entropy_reduction=0.0,
    )


def energy_curve(alphas: Sequence[float], tol: float = 1e-10) -> TheoryCurve:
    """Closed-form E = 1/(alpha-1) and A = -ln(zeta)/alpha across a grid."""
    grid = _validated_grid(alphas)
    return TheoryCurve(
        alphas=tuple(float(a) for a in grid),
        energy=tuple(theoretical_energy(a) for a in grid),
        free_energy=tuple(theoretical_free_energy(a, tol) for a in grid),
    )


_CURVE_COLUMNS = (
    ("S", "entropy"),
    ("Q", "efficiency"),
    ("R", "entropy_reduction"),
    ("E", "energy"),
    ("A", "free_energy"),
)


def write_curve_csv(curve: TheoryCurve, stream: IO[str], header_comment: str | None = None) -> None:
    """Write `alpha,S,Q,R,E,A` rows; absent columns serialize as blanks."""
    if header_comment:
        stream.write(f"# {header_comment}\n")
    stream.write("alpha,S,Q,R,E,A\n")
    columns = [getattr(curve, attr) for _, attr in _CURVE_COLUMNS]
    for i, alpha in enumerate(curve.alphas):
        cells = [format(alpha, ".12g")]
        cells += ["" if col is None else format(col[i], ".12g") for col in columns]
        stream.write(",".join(cells) + "\n")


def merge_curves(fig1: TheoryCurve, fig2: TheoryCurve) -> TheoryCurve:
    """Join a truncated S/Q/R curve with a closed-form E/A curve.

    Both curves must share the same alpha grid. The merged E column is the
    closed form, not the truncated energy.
    """
    if fig1.alphas != fig2.alphas:
        raise DomainError("curves were computed on different alpha grids")
    return TheoryCurve(
        alphas=fig1.alphas,
        entropy=fig1.entropy,
        efficiency=fig1.efficiency,
        entropy_reduction=fig1.entropy_reduction,
        energy=fig2.energy,
        free_energy=fig2.free_energy,
        truncation=fig1.truncation,
        uniform_entropy=fig1.uniform_entropy,
        uniform_efficiency=fig1.uniform_efficiency,
        uniform_entropy_reduction=fig1.uniform_entropy_reduction,
    )
