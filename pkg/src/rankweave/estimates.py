"""Interval multiset estimates over an ordinal scale.

An estimate assigns eta identical elements to l ordered quality levels,
level 1 being best, and is written as its counts vector, e.g. "(3,1,0)".
An estimate is *interval* when its occupied levels are contiguous, so it
expresses "somewhere between level x and level y" without gaps.

Comparison and proximity both work on cumulative counts
C(t) = counts[1] + ... + counts[t]: dominance is C1(t) >= C2(t) for all t,
and the proximity components count the one-step element moves (level
improvements and degradations) needed to turn one estimate into another.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import accumulate
from math import comb
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class ScaleSpec:
    """Assessment pool shape: l ordered levels, eta elements to place."""

    levels: int
    cardinality: int

    def __post_init__(self) -> None:
        if self.levels < 1:
            raise ValueError("scale needs at least one level")
        if self.cardinality < 1:
            raise ValueError("scale needs at least one element")

    def __str__(self) -> str:
        return f"P(l={self.levels},eta={self.cardinality})"


@dataclass(frozen=True)
class MultisetEstimate:
    """Counts of elements per quality level; counts[0] is the best level."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(int(c) for c in self.counts)
        if not counts:
            raise ValueError("estimate needs at least one level")
        if any(c < 0 for c in counts):
            raise ValueError("counts must be nonnegative")
        if sum(counts) < 1:
            raise ValueError("estimate must place at least one element")
        object.__setattr__(self, "counts", counts)

    @property
    def levels(self) -> int:
        return len(self.counts)

    @property
    def cardinality(self) -> int:
        return sum(self.counts)

    @property
    def scale(self) -> ScaleSpec:
        return ScaleSpec(self.levels, self.cardinality)

    def cumulative(self) -> tuple[int, ...]:
        return tuple(accumulate(self.counts))

    def support(self) -> tuple[int, ...]:
        """Occupied levels, 1-based."""
        return tuple(i + 1 for i, c in enumerate(self.counts) if c > 0)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


@dataclass(frozen=True)
class Proximity:
    """Structured distance between two estimates.

    ``improvements`` counts one-step moves to a better level and
    ``degradations`` moves to a worse one, both for transforming the
    first estimate into the second.  ``total`` is their sum.
    """

    improvements: int
    degradations: int

    @property
    def total(self) -> int:
        return self.improvements + self.degradations


class Dominance(Enum):
    GREATER = "greater"
    LESS = "less"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def is_interval(estimate: MultisetEstimate) -> bool:
    """True when the occupied levels form one contiguous block."""
    support = estimate.support()
    return support[-1] - support[0] + 1 == len(support)


def multiset_number(scale: ScaleSpec) -> int:
    """Number of multisets of cardinality eta over l levels.

    Closed form l(l+1)...(l+eta-1) / eta!, i.e. a binomial coefficient.
    """
    return comb(scale.levels + scale.cardinality - 1, scale.cardinality)


def enumerate_all(scale: ScaleSpec) -> list[MultisetEstimate]:
    """Every multiset estimate on the scale, descending lexicographic."""
    return [MultisetEstimate(c) for c in _compositions(scale.cardinality, scale.levels)]


def enumerate_scale(scale: ScaleSpec) -> list[MultisetEstimate]:
    """Every *interval* estimate on the scale.

    Canonical order is descending lexicographic on counts, so the
    all-at-level-1 estimate comes first and all-at-level-l last.
    """
    return [e for e in enumerate_all(scale) if is_interval(e)]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    # Descending lexicographic: emit the largest first-coordinate first.
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _require_same_scale(a: MultisetEstimate, b: MultisetEstimate) -> None:
    if a.scale != b.scale:
        raise ValueError(f"scale mismatch: {a.scale} vs {b.scale}")


def integrate(estimates: Sequence[MultisetEstimate]) -> MultisetEstimate:
    """Combine estimates by adding counts level by level.

    All inputs must share the same scale.  The result's cardinality is
    the sum of the inputs'; note the interval property is not preserved
    in general.
    """
    if not estimates:
        raise ValueError("nothing to integrate")
    first = estimates[0]
    for e in estimates[1:]:
        _require_same_scale(first, e)
    counts = tuple(sum(col) for col in zip(*(e.counts for e in estimates)))
    return MultisetEstimate(counts)


def proximity(a: MultisetEstimate, b: MultisetEstimate) -> Proximity:
    """Minimal one-step moves transforming estimate a into estimate b.

    Closed form on cumulative counts: at each level boundary t the signed
    flow is C_b(t) - C_a(t); positive flow is covered by improvements,
    negative by degradations, and the split is minimal because every move
    changes exactly one boundary by one.
    """
    _require_same_scale(a, b)
    ca, cb = a.cumulative(), b.cumulative()
    improvements = sum(max(0, y - x) for x, y in zip(ca[:-1], cb[:-1]))
    degradations = sum(max(0, x - y) for x, y in zip(ca[:-1], cb[:-1]))
    return Proximity(improvements, degradations)


def compare(a: MultisetEstimate, b: MultisetEstimate) -> Dominance:
    """Partial order on estimates of one scale via cumulative dominance."""
    _require_same_scale(a, b)
    ca, cb = a.cumulative(), b.cumulative()
    ge = all(x >= y for x, y in zip(ca, cb))
    le = all(x <= y for x, y in zip(ca, cb))
    if ge and le:
        return Dominance.EQUAL
    if ge:
        return Dominance.GREATER
    if le:
        return Dominance.LESS
    return Dominance.INCOMPARABLE


def at_least(a: MultisetEstimate, b: MultisetEstimate) -> bool:
    return compare(a, b) in (Dominance.GREATER, Dominance.EQUAL)


class MedianUniverse(Enum):
    """Candidate pool for median searches."""

    INTERVAL = "interval"
    ALL = "all"


def _median(
    estimates: Sequence[MultisetEstimate],
    candidates: Iterable[MultisetEstimate],
    extra_cost=None,
) -> MultisetEstimate:
    if not estimates:
        raise ValueError("median of nothing")
    first = estimates[0]
    for e in estimates[1:]:
        _require_same_scale(first, e)

    best_cost: int | None = None
    minimizers: list[MultisetEstimate] = []
    for m in candidates:
        _require_same_scale(first, m)
        cost = sum(proximity(m, e).total for e in estimates)
        if extra_cost is not None:
            cost += extra_cost(m)
        if best_cost is None or cost < best_cost:
            best_cost, minimizers = cost, [m]
        elif cost == best_cost:
            minimizers.append(m)
    return _pick_greatest(minimizers)


def _pick_greatest(minimizers: Sequence[MultisetEstimate]) -> MultisetEstimate:
    """Tie policy: keep dominance-maximal minimizers, then the
    lexicographically greatest counts vector among those."""
    maximal = [
        m
        for m in minimizers
        if not any(compare(other, m) is Dominance.GREATER for other in minimizers)
    ]
    return max(maximal, key=lambda m: m.counts)


def generalized_median(
    estimates: Sequence[MultisetEstimate],
    universe: MedianUniverse = MedianUniverse.INTERVAL,
    extra_cost=None,
) -> MultisetEstimate:
    """Estimate minimizing the total proximity to all inputs.

    The search scans the whole universe (interval estimates by default),
    so the median need not be one of the inputs.  ``extra_cost`` lets a
    caller add a candidate-dependent penalty to the objective.
    """
    if not estimates:
        raise ValueError("median of nothing")
    scale = estimates[0].scale
    pool = enumerate_scale(scale) if universe is MedianUniverse.INTERVAL else enumerate_all(scale)
    return _median(estimates, pool, extra_cost)


def set_median(estimates: Sequence[MultisetEstimate]) -> MultisetEstimate:
    """Like `generalized_median` but restricted to the inputs themselves."""
    return _median(estimates, list(estimates))


def parse_counts(text: str) -> MultisetEstimate:
    """Parse the "(3,1,0)" surface form."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p.strip() for p in body.split(",") if p.strip()]
    if not parts:
        raise ValueError(f"cannot parse estimate from {text!r}")
    return MultisetEstimate(tuple(int(p) for p in parts))
