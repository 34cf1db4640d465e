"""Value histograms ("collections") of positive integer contributions.

A collection maps each observed value v (e.g. a per-editor edit count) to
the number of individuals holding that value. All metrics in this package
are functions of this histogram, never of individual identities.
"""

from __future__ import annotations

import csv
import math
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import IO

from .errors import DomainError, EmptyCollectionError

__all__ = [
    "Collection",
    "Distribution",
    "EnergyModel",
    "from_values",
    "merge",
    "probabilities",
    "read_collection_csv",
    "write_collection_csv",
]

_PROB_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Collection:
    """Immutable histogram: value -> count of individuals holding it.

    Keys must be integers >= 1 and counts integers >= 1. The population is
    the sum of the counts. An empty collection is representable but every
    metric operation rejects it.
    """

    counts: Mapping[int, int]

    def __post_init__(self) -> None:
        frozen = {}
        for v, s in self.counts.items():
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise DomainError(f"non-positive contribution value: {v!r}")
            if not isinstance(s, int) or isinstance(s, bool) or s < 1:
                raise DomainError(f"invalid count {s!r} for value {v}")
            frozen[v] = s
        object.__setattr__(self, "counts", frozen)

    @cached_property
    def population(self) -> int:
        """Total number of individuals (sum of all counts)."""
        return sum(self.counts.values())

    @cached_property
    def support(self) -> tuple[int, ...]:
        """Observed values, ascending."""
        return tuple(sorted(self.counts))

    @property
    def min_value(self) -> int:
        if not self.counts:
            raise EmptyCollectionError("empty collection has no minimum value")
        return self.support[0]

    @cached_property
    def value_sum(self) -> int:
        """Sum of all contribution values, Σ v·s_v (exact integer)."""
        return sum(v * s for v, s in self.counts.items())

    @cached_property
    def log_value_sum(self) -> float:
        """Σ s_v·ln(v), accumulated in ascending value order.

        This single sum backs both the logarithmic average energy and the
        power-law exponent estimator, so the identity alpha = 1 + 1/E holds
        at float precision rather than merely approximately.
        """
        return math.fsum(s * math.log(v) for v, s in sorted(self.counts.items()))

    def __len__(self) -> int:
        return len(self.counts)

    def __bool__(self) -> bool:
        return bool(self.counts)


@dataclass(frozen=True)
class Distribution:
    """Probability view of a collection: value -> fraction of individuals."""

    probs: Mapping[int, float]

    def __post_init__(self) -> None:
        frozen = dict(self.probs)
        for v, p in frozen.items():
            if not 0.0 < p <= 1.0:
                raise DomainError(f"probability out of (0, 1] for value {v}: {p}")
        total = math.fsum(frozen.values())
        if abs(total - 1.0) > _PROB_SUM_TOL:
            raise DomainError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "probs", frozen)

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.probs))


class EnergyModel(Enum):
    """Mapping from a contribution value to the energy it represents.

    LOGARITHMIC (u = ln v) is the default everywhere: marginal effort per
    additional contribution shrinks with experience. LINEAR (u = v) treats
    every contribution as equally costly.
    """

    LOGARITHMIC = "logarithmic"
    LINEAR = "linear"

    def energy(self, value: int | float) -> float:
        if value < 1:
            raise DomainError(f"energy undefined for value {value!r}")
        if self is EnergyModel.LOGARITHMIC:
            return math.log(value)
        return float(value)


def from_values(values: Iterable[int]) -> Collection:
    """Build a collection from raw per-individual values.

    Every value must be an integer >= 1; fractional contribution measures
    must be quantized by the caller first.
    """
    tally: Counter[int] = Counter()
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise DomainError(f"non-positive contribution value: {v!r}")
        tally[v] += 1
    return Collection(dict(tally))


def merge(a: Collection, b: Collection) -> Collection:
    """Pointwise sum of two histograms; populations add."""
    merged = Counter(a.counts)
    merged.update(b.counts)
    return Collection(dict(merged))


def probabilities(c: Collection) -> Distribution:
    """Empirical distribution p_v = s_v / N."""
    if not c:
        raise EmptyCollectionError("cannot normalize an empty collection")
    n = c.population
    return Distribution({v: s / n for v, s in c.counts.items()})


def write_collection_csv(c: Collection, stream: IO[str], header_comment: str | None = None) -> None:
    """Write the interchange CSV: header ``value,count``, rows ascending."""
    if header_comment:
        stream.write(f"# {header_comment}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["value", "count"])
    for v in sorted(c.counts):
        writer.writerow([v, c.counts[v]])


def read_collection_csv(stream: Iterable[str]) -> Collection:
    """Read the ``value,count`` interchange CSV; ``#`` lines are comments."""
    rows = csv.reader(line for line in stream if not line.lstrip().startswith("#"))
    try:
        header = next(rows)
    except StopIteration:
        raise DomainError("collection CSV is empty (missing 'value,count' header)") from None
    if [h.strip() for h in header] != ["value", "count"]:
        raise DomainError(f"expected header 'value,count', got {','.join(header)!r}")
    tally: Counter[int] = Counter()
    for lineno, row in enumerate(rows, start=2):
        if not row:
            continue
        if len(row) != 2:
            raise DomainError(f"line {lineno}: expected 2 fields, got {len(row)}")
        try:
            v, s = int(row[0]), int(row[1])
        except ValueError:
            raise DomainError(f"line {lineno}: non-integer field in {row!r}") from None
        if s < 0:
            raise DomainError(f"line {lineno}: negative count {s}")
        if s:
            tally[v] += s
    return Collection(dict(tally))
