"""Morphological synthesis of composite solutions.

A morphology lists parts (subsystems); each part offers design options.
A composite picks one option per part.  Its quality point combines the
minimum pairwise compatibility w between selected options with an
aggregate estimate e: either counts of ordinal priorities (variant 1)
or a generalized median of the options' multiset estimates (variant 2),
optionally pulled toward the pairwise compatibility estimates under a
floor constraint (variant 3).

Some options are bookkeeping placeholders rather than real choices: an
option can sit outside the estimate aggregation (contributes_estimate
False), outside compatibility chains (contributes_compatibility False),
or both, in which case it is fully transparent.

Composites are enumerated exhaustively, so the search is exponential in
the number of parts; the intended scale is a handful of parts with a
handful of options each.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Mapping, Sequence

from .estimates import (
    MedianUniverse,
    MultisetEstimate,
    ScaleSpec,
    at_least,
    generalized_median,
    proximity,
)


@dataclass(frozen=True)
class DesignOption:
    """One selectable option of a part.

    ``priority`` is an ordinal grade 1..l (1 best) used by variant 1;
    ``estimate`` a multiset estimate used by variants 2 and 3.  A
    transparent option (both flags False) carries neither.
    """

    name: str
    priority: int | None = None
    estimate: MultisetEstimate | None = None
    contributes_estimate: bool = True
    contributes_compatibility: bool = True

    def __post_init__(self) -> None:
        if self.contributes_estimate:
            if self.priority is None and self.estimate is None:
                raise ValueError(f"option {self.name}: needs a priority or an estimate")
        else:
            if self.priority is not None or self.estimate is not None:
                raise ValueError(f"option {self.name}: transparent options carry no grades")


@dataclass(frozen=True)
class Part:
    name: str
    options: tuple[DesignOption, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "options", tuple(self.options))
        if not self.options:
            raise ValueError(f"part {self.name}: needs at least one option")


@dataclass(frozen=True)
class Morphology:
    """Parts, their options, and the estimate scale they share."""

    scale: ScaleSpec
    parts: tuple[Part, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("morphology needs at least one part")
        names = [p.name for p in self.parts]
        if len(set(names)) != len(names):
            raise ValueError("part names must be unique")
        seen: set[str] = set()
        for part in self.parts:
            for opt in part.options:
                if opt.name in seen:
                    raise ValueError(f"duplicate option name {opt.name}")
                seen.add(opt.name)
                if opt.priority is not None and not (1 <= opt.priority <= self.scale.levels):
                    raise ValueError(f"option {opt.name}: priority outside 1..{self.scale.levels}")
                if opt.estimate is not None and opt.estimate.scale != self.scale:
                    raise ValueError(f"option {opt.name}: estimate off the morphology scale")

    def option(self, name: str) -> DesignOption:
        for part in self.parts:
            for opt in part.options:
                if opt.name == name:
                    return opt
        raise KeyError(name)

    def part_of(self, name: str) -> str:
        for part in self.parts:
            if any(o.name == name for o in part.options):
                return part.name
        raise KeyError(name)


def _pair_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class CompatibilitySpec:
    """Symmetric pairwise compatibility between options of different parts.

    Ordinal mode grades pairs 0..max_level (0 blocks the pair).  Multiset
    mode grades pairs with multiset estimates and carries the floor w0
    used by variant 3; a missing pair entry means incompatible.
    """

    max_level: int = 1
    ordinal: Mapping[tuple[str, str], int] = field(default_factory=dict)
    multiset: Mapping[tuple[str, str], MultisetEstimate] = field(default_factory=dict)
    floor: MultisetEstimate | None = None

    def __post_init__(self) -> None:
        if self.max_level < 1:
            raise ValueError("max_level must be >= 1")
        normalized = {}
        for (a, b), v in self.ordinal.items():
            v = int(v)
            if not (0 <= v <= self.max_level):
                raise ValueError(f"compatibility of ({a}, {b}) outside 0..{self.max_level}")
            key = _pair_key(a, b)
            if normalized.get(key, v) != v:
                raise ValueError(f"conflicting compatibility for pair {key}")
            normalized[key] = v
        object.__setattr__(self, "ordinal", normalized)
        normalized_m = {}
        for (a, b), e in self.multiset.items():
            key = _pair_key(a, b)
            if normalized_m.get(key, e) != e:
                raise ValueError(f"conflicting compatibility for pair {key}")
            normalized_m[key] = e
        object.__setattr__(self, "multiset", normalized_m)

    def grade(self, a: str, b: str) -> int:
        return self.ordinal.get(_pair_key(a, b), 0)

    def estimate(self, a: str, b: str) -> MultisetEstimate | None:
        return self.multiset.get(_pair_key(a, b))


@dataclass(frozen=True)
class CompositeSolution:
    """One option picked per part, in part order."""

    selection: tuple[str, ...]
    index: int = 0

    def label(self) -> str:
        return "*".join(self.selection)


@dataclass(frozen=True)
class QualityPoint:
    """Quality of a composite: chain compatibility w and estimate e.

    ``w`` is None under variant 3, where compatibility acts as a floor
    constraint instead of an objective; ``e`` is None when it was not
    computed (infeasible variant-3 composites).
    """

    w: int | None
    e: MultisetEstimate | None


def enumerate_composites(morphology: Morphology) -> list[CompositeSolution]:
    """All composites in part order, options cycling fastest on the right."""
    option_names = [[o.name for o in part.options] for part in morphology.parts]
    return [
        CompositeSolution(tuple(sel), index=i)
        for i, sel in enumerate(product(*option_names))
    ]


def _active_pairs(
    morphology: Morphology, composite: CompositeSolution
) -> list[tuple[str, str]]:
    active = [
        name
        for name in composite.selection
        if morphology.option(name).contributes_compatibility
    ]
    return [(a, b) for a, b in combinations(active, 2)]


def chain_compatibility(
    morphology: Morphology, composite: CompositeSolution, compat: CompatibilitySpec
) -> int:
    """Minimum pairwise compatibility across the selected options.

    Pairs involving a compatibility-transparent option do not count.
    With fewer than two participating options the chain is vacuously
    intact at the top grade.
    """
    pairs = _active_pairs(morphology, composite)
    if not pairs:
        return compat.max_level
    return min(compat.grade(a, b) for a, b in pairs)


def _counted_options(morphology: Morphology, composite: CompositeSolution) -> list[DesignOption]:
    return [
        morphology.option(name)
        for name in composite.selection
        if morphology.option(name).contributes_estimate
    ]


def ordinal_quality(morphology: Morphology, composite: CompositeSolution) -> MultisetEstimate:
    """Variant 1 estimate: counts of selected options per priority grade."""
    counts = [0] * morphology.scale.levels
    for opt in _counted_options(morphology, composite):
        if opt.priority is None:
            raise ValueError(f"option {opt.name}: no ordinal priority")
        counts[opt.priority - 1] += 1
    if sum(counts) == 0:
        raise ValueError("composite selects no graded options")
    return MultisetEstimate(tuple(counts))


def median_quality(
    morphology: Morphology,
    composite: CompositeSolution,
    compat: CompatibilitySpec | None = None,
    pull_compatibility: bool = False,
    universe: MedianUniverse = MedianUniverse.INTERVAL,
) -> MultisetEstimate:
    """Variant 2/3 estimate: generalized median of the options' estimates.

    With ``pull_compatibility`` (variant 3) the median objective also
    sums distances to the pairwise compatibility estimates of the
    composite, so poorly matched options drag the aggregate down.
    """
    estimates = []
    for opt in _counted_options(morphology, composite):
        if opt.estimate is None:
            raise ValueError(f"option {opt.name}: no multiset estimate")
        estimates.append(opt.estimate)
    if not estimates:
        raise ValueError("composite selects no estimated options")

    extra = None
    if pull_compatibility:
        if compat is None:
            raise ValueError("variant 3 needs a compatibility spec")
        pair_estimates = []
        for a, b in _active_pairs(morphology, composite):
            e = compat.estimate(a, b)
            if e is not None:
                pair_estimates.append(e)

        def extra(m: MultisetEstimate) -> int:
            return sum(proximity(m, e).total for e in pair_estimates)

    return generalized_median(estimates, universe, extra_cost=extra)


def _cumulative(e: MultisetEstimate) -> tuple[int, ...]:
    return e.cumulative()


def _e_at_least(e1: MultisetEstimate | None, e2: MultisetEstimate | None) -> bool:
    # Cardinalities may differ under variant 1, so compare full cumulative
    # mass instead of delegating to the same-scale comparator.
    if e1 is None or e2 is None:
        return e1 is None and e2 is None
    if e1.levels != e2.levels:
        return False
    return all(x >= y for x, y in zip(_cumulative(e1), _cumulative(e2)))


def _w_at_least(w1: int | None, w2: int | None) -> bool:
    if w1 is None or w2 is None:
        return w1 is None and w2 is None
    return w1 >= w2


def dominates(p1: QualityPoint, p2: QualityPoint) -> bool:
    """True when p1 is at least as good in both coordinates and better
    in at least one; equal points never dominate each other."""
    if not (_w_at_least(p1.w, p2.w) and _e_at_least(p1.e, p2.e)):
        return False
    return not (_w_at_least(p2.w, p1.w) and _e_at_least(p2.e, p1.e))


def pareto_filter(points: Sequence[QualityPoint]) -> list[int]:
    """Indices of the nondominated points, in input order.

    Maintains a running frontier: each point evicts what it dominates
    and enters unless something already present dominates it.  Points of
    equal quality all stay.
    """
    frontier: list[int] = []
    for i, p in enumerate(points):
        if any(dominates(points[j], p) for j in frontier):
            continue
        frontier = [j for j in frontier if not dominates(p, points[j])]
        frontier.append(i)
    return sorted(frontier)


@dataclass(frozen=True)
class ScoredComposite:
    solution: CompositeSolution
    quality: QualityPoint
    feasible: bool
    pareto: bool = False


@dataclass(frozen=True)
class SynthesisResult:
    variant: int
    composites: tuple[ScoredComposite, ...]

    @property
    def feasible(self) -> list[ScoredComposite]:
        return [c for c in self.composites if c.feasible]

    @property
    def pareto(self) -> list[ScoredComposite]:
        return [c for c in self.composites if c.pareto]


def synthesize(
    morphology: Morphology,
    compat: CompatibilitySpec,
    variant: int = 2,
    universe: MedianUniverse = MedianUniverse.INTERVAL,
) -> SynthesisResult:
    """Enumerate, score, and Pareto-filter all composites.

    Variants 1 and 2 require an intact compatibility chain (w >= 1) for
    feasibility and trade w off against e; variant 3 requires every
    pairwise compatibility estimate to reach the floor w0 and ranks by e
    alone.  Output keeps enumeration order.
    """
    if variant not in (1, 2, 3):
        raise ValueError(f"unknown variant {variant}")
    if variant == 3 and compat.floor is None:
        raise ValueError("variant 3 needs the compatibility floor w0")

    scored: list[ScoredComposite] = []
    for composite in enumerate_composites(morphology):
        if variant in (1, 2):
            w = chain_compatibility(morphology, composite, compat)
            feasible = w >= 1
            if variant == 1:
                e = ordinal_quality(morphology, composite)
            else:
                e = median_quality(morphology, composite, universe=universe)
            scored.append(ScoredComposite(composite, QualityPoint(w, e), feasible))
        else:
            pair_estimates = [
                compat.estimate(a, b) for a, b in _active_pairs(morphology, composite)
            ]
            feasible = all(
                e is not None and at_least(e, compat.floor) for e in pair_estimates
            )
            e = (
                median_quality(
                    morphology, composite, compat, pull_compatibility=True, universe=universe
                )
                if feasible
                else None
            )
            scored.append(ScoredComposite(composite, QualityPoint(None, e), feasible))

    feasible_idx = [i for i, c in enumerate(scored) if c.feasible]
    kept = pareto_filter([scored[i].quality for i in feasible_idx])
    winners = {feasible_idx[k] for k in kept}
    final = tuple(
        ScoredComposite(c.solution, c.quality, c.feasible, pareto=(i in winners))
        for i, c in enumerate(scored)
    )
    return SynthesisResult(variant, final)
