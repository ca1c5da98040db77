"""Technique library for the four solving stages.

Stage 1 builds a preference relation from estimates or expert verdicts,
stage 2 produces a preliminary linear order, stage 3 a preliminary
layered ranking, stage 4 aggregates several preliminary rankings into
the final one.  Every function is pure and deterministic; score ties are
always broken toward the smaller alternative id.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .model import (
    EstimateMatrix,
    FuzzyRanking,
    JudgmentSet,
    LayeredRanking,
    LinearOrder,
    PreferenceRelation,
    Rational,
    Verdict,
    _as_fraction,
    condense,
)


# ---------------------------------------------------------------------------
# relation builders


def judgment_relation(judgments: JudgmentSet) -> PreferenceRelation:
    """Relation from pairwise expert verdicts.

    ``a_better`` yields edge (a, b), ``b_better`` the reverse, ``equal``
    both directions (the pair then shares a layer after condensation) and
    ``incomparable`` none.  Unjudged pairs contribute nothing.
    """
    edges: set[tuple[int, int]] = set()
    for j in judgments.judgments:
        if j.verdict is Verdict.A_BETTER:
            edges.add((j.a, j.b))
        elif j.verdict is Verdict.B_BETTER:
            edges.add((j.b, j.a))
        elif j.verdict is Verdict.EQUAL:
            edges.add((j.a, j.b))
            edges.add((j.b, j.a))
    return PreferenceRelation(judgments.n, frozenset(edges))


def pareto_relation(matrix: EstimateMatrix) -> PreferenceRelation:
    """Dominance relation: edge (a, b) iff a is at least as good as b on
    every criterion (direction-adjusted) and their rows differ."""
    edges = set()
    ks = range(1, matrix.d + 1)
    for a in range(1, matrix.n + 1):
        for b in range(1, matrix.n + 1):
            if a == b:
                continue
            rows_differ = any(matrix.adjusted(a, k) != matrix.adjusted(b, k) for k in ks)
            if rows_differ and all(matrix.adjusted(a, k) >= matrix.adjusted(b, k) for k in ks):
                edges.add((a, b))
    return PreferenceRelation(matrix.n, frozenset(edges))


@dataclass(frozen=True)
class ElectreParams:
    """Outranking thresholds: concordance floor p and discordance cap q,
    both in [0, 1].  Criterion weights default to the matrix's own."""

    concordance: Fraction
    discordance: Fraction
    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "concordance", _as_fraction(self.concordance))
        object.__setattr__(self, "discordance", _as_fraction(self.discordance))
        if not (0 <= self.concordance <= 1):
            raise ValueError("concordance threshold must lie in [0, 1]")
        if not (0 <= self.discordance <= 1):
            raise ValueError("discordance threshold must lie in [0, 1]")
        if self.weights is not None:
            ws = tuple(_as_fraction(w) for w in self.weights)
            if any(w < 0 for w in ws):
                raise ValueError("weights must be >= 0")
            object.__setattr__(self, "weights", ws)


def electre_relation(matrix: EstimateMatrix, params: ElectreParams) -> PreferenceRelation:
    """Outranking relation from concordance/discordance voting.

    Concordance C(a, b) is the weight share of criteria where a is at
    least as good as b; discordance D(a, b) is the worst opposing margin
    normalized by the largest criterion scale span.  Edge (a, b) iff
    C >= p and D <= q.
    """
    ws = params.weights
    if ws is None:
        ws = tuple(k.weight for k in matrix.criteria)
    if len(ws) != matrix.d:
        raise ValueError("one weight per criterion required")
    total = sum(ws, Fraction(0))
    if total == 0:
        raise ValueError("at least one positive weight required")
    span = max(k.scale_max - k.scale_min for k in matrix.criteria)

    edges = set()
    ks = range(1, matrix.d + 1)
    for a in range(1, matrix.n + 1):
        for b in range(1, matrix.n + 1):
            if a == b:
                continue
            concord = sum(
                (w for k, w in zip(ks, ws) if matrix.adjusted(a, k) >= matrix.adjusted(b, k)),
                Fraction(0),
            )
            discord = max(
                max(Fraction(0), matrix.adjusted(b, k) - matrix.adjusted(a, k)) for k in ks
            )
            if concord / total >= params.concordance and discord / span <= params.discordance:
                edges.add((a, b))
    return PreferenceRelation(matrix.n, frozenset(edges))


# ---------------------------------------------------------------------------
# linear ordering


def row_sum_order(relation: PreferenceRelation) -> LinearOrder:
    """Order by descending out-degree of the preference relation."""
    ids = sorted(range(1, relation.n + 1), key=lambda a: (-relation.out_degree(a), a))
    return LinearOrder(tuple(ids))


def additive_utility_order(
    matrix: EstimateMatrix, weights: Sequence[Rational] | None = None
) -> LinearOrder:
    """Order by descending weighted sum of direction-adjusted estimates."""
    if weights is None:
        ws = [k.weight for k in matrix.criteria]
    else:
        ws = [_as_fraction(w) for w in weights]
        if len(ws) != matrix.d:
            raise ValueError("one weight per criterion required")
    utility = {
        a: sum((w * matrix.adjusted(a, k) for k, w in enumerate(ws, start=1)), Fraction(0))
        for a in range(1, matrix.n + 1)
    }
    ids = sorted(utility, key=lambda a: (-utility[a], a))
    return LinearOrder(tuple(ids))


# ---------------------------------------------------------------------------
# layering


def maximal_element_layers(relation: PreferenceRelation) -> LayeredRanking:
    """Peel off maximal elements layer by layer.

    Works on the condensation, so members of a preference cycle always
    land in the same layer instead of blocking the peel.
    """
    cond = condense(relation)
    remaining = set(range(1, cond.relation.n + 1))
    incoming = {v: set() for v in remaining}
    for a, b in cond.relation.edges:
        incoming[b].add(a)

    layers: list[frozenset[int]] = []
    while remaining:
        top = {v for v in remaining if not (incoming[v] & remaining)}
        members: set[int] = set()
        for v in top:
            members |= cond.members[v - 1]
        layers.append(frozenset(members))
        remaining -= top
    return LayeredRanking(tuple(layers))


def pareto_layers(matrix: EstimateMatrix) -> LayeredRanking:
    """Peel off the Pareto frontier repeatedly until nothing remains."""
    ks = range(1, matrix.d + 1)

    def dominates(a: int, b: int) -> bool:
        return any(matrix.adjusted(a, k) != matrix.adjusted(b, k) for k in ks) and all(
            matrix.adjusted(a, k) >= matrix.adjusted(b, k) for k in ks
        )

    remaining = set(range(1, matrix.n + 1))
    layers: list[frozenset[int]] = []
    while remaining:
        frontier = {a for a in remaining if not any(dominates(b, a) for b in remaining)}
        layers.append(frozenset(frontier))
        remaining -= frontier
    return LayeredRanking(tuple(layers))


def divide_linear_order(order: LinearOrder, sizes: Sequence[int]) -> LayeredRanking:
    """Cut a linear order into consecutive layers of the given sizes."""
    sizes = [int(s) for s in sizes]
    if any(s < 1 for s in sizes):
        raise ValueError("every layer size must be >= 1")
    if sum(sizes) != order.n:
        raise ValueError(f"sizes sum to {sum(sizes)}, expected {order.n}")
    layers = []
    at = 0
    for s in sizes:
        layers.append(frozenset(order.sequence[at : at + s]))
        at += s
    return LayeredRanking(tuple(layers))


def expert_layers(assignment: Mapping[int, int], layer_count: int) -> LayeredRanking:
    """Direct expert placement of each alternative into a layer.

    The assignment must cover alternatives 1..n; unused layers are
    compressed away.
    """
    ids = sorted(assignment)
    if ids != list(range(1, len(ids) + 1)):
        raise ValueError("assignment must cover alternatives 1..n")
    return LayeredRanking.from_assignment(dict(assignment), layer_count, compress=True)


@dataclass(frozen=True)
class Rule:
    """Conjunction of per-criterion floors sending a match to ``layer``."""

    conditions: tuple[tuple[int, Fraction], ...]  # (criterion id, minimum score)
    layer: int

    def __post_init__(self) -> None:
        conds = tuple((int(k), _as_fraction(c)) for k, c in self.conditions)
        object.__setattr__(self, "conditions", conds)
        if self.layer < 1:
            raise ValueError("rule layer must be >= 1")


@dataclass(frozen=True)
class RuleSet:
    """First-match rule table with a default layer guaranteeing totality."""

    rules: tuple[Rule, ...]
    default_layer: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.default_layer < 1:
            raise ValueError("default layer must be >= 1")

    @property
    def layer_count(self) -> int:
        return max([self.default_layer] + [r.layer for r in self.rules])

    def classify(self, matrix: EstimateMatrix, a: int) -> int:
        for rule in self.rules:
            if all(matrix.score(a, k) >= c for k, c in rule.conditions):
                return rule.layer
        return self.default_layer


def logical_rule_layers(matrix: EstimateMatrix, rules: RuleSet) -> LayeredRanking:
    """Place each alternative by the first rule it satisfies."""
    for rule in rules.rules:
        for k, _ in rule.conditions:
            if not 1 <= k <= matrix.d:
                raise ValueError(f"rule references unknown criterion {k}")
    assignment = {a: rules.classify(matrix, a) for a in range(1, matrix.n + 1)}
    return LayeredRanking.from_assignment(assignment, rules.layer_count, compress=True)


# ---------------------------------------------------------------------------
# aggregation


def _shared_n(rankings: Sequence[LayeredRanking]) -> int:
    if not rankings:
        raise ValueError("nothing to aggregate")
    n = rankings[0].n
    if any(r.n != n for r in rankings):
        raise ValueError("rankings must share the alternative set")
    return n


def election_aggregate(rankings: Sequence[LayeredRanking]) -> LayeredRanking:
    """Vote each alternative into its most frequent layer index.

    A vote tie goes to the larger (worse) index; unused layer indices are
    compressed afterwards.
    """
    n = _shared_n(rankings)
    assignment: dict[int, int] = {}
    for a in range(1, n + 1):
        votes: dict[int, int] = {}
        for r in rankings:
            k = r.layer_of(a)
            votes[k] = votes.get(k, 0) + 1
        top = max(votes.values())
        assignment[a] = max(k for k, v in votes.items() if v == top)
    return LayeredRanking.from_assignment(assignment, max(assignment.values()), compress=True)


@dataclass(frozen=True)
class LayerCapacities:
    """Per-layer size limits for the assignment-based aggregator."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.sizes)
        if not sizes:
            raise ValueError("at least one layer required")
        if any(s < 0 for s in sizes):
            raise ValueError("capacities must be >= 0")
        object.__setattr__(self, "sizes", sizes)


def capacity_aggregate(
    rankings: Sequence[LayeredRanking], capacities: LayerCapacities
) -> LayeredRanking:
    """Assign alternatives to capacity-limited layers at minimal total cost.

    Moving alternative a into layer k costs the summed distance
    |k - position of a| over all input rankings.  The optimum is exact;
    among optima the one placing smaller ids into better layers wins.
    """
    n = _shared_n(rankings)
    m = len(capacities.sizes)
    if sum(capacities.sizes) < n:
        raise ValueError(f"capacities admit {sum(capacities.sizes)} alternatives, need {n}")

    cost = [
        [sum(abs(k - r.layer_of(a)) for r in rankings) for k in range(1, m + 1)]
        for a in range(1, n + 1)
    ]

    @lru_cache(maxsize=None)
    def best(i: int, remaining: tuple[int, ...]) -> int | None:
        """Cheapest completion for alternatives i.. given remaining slots."""
        if i == n:
            return 0
        options = []
        for k in range(m):
            if remaining[k] == 0:
                continue
            tail = best(i + 1, remaining[:k] + (remaining[k] - 1,) + remaining[k + 1 :])
            if tail is not None:
                options.append(cost[i][k] + tail)
        return min(options) if options else None

    remaining = capacities.sizes
    total = best(0, remaining)
    if total is None:
        raise ValueError("capacities admit no complete assignment")

    # Walking ids in ascending order and taking the best (lowest) feasible
    # layer at each step yields the lexicographically smallest optimal
    # layer vector, i.e. ties send smaller ids to better layers.
    assignment: dict[int, int] = {}
    for i in range(n):
        for k in range(m):
            if remaining[k] == 0:
                continue
            tail = best(i + 1, remaining[:k] + (remaining[k] - 1,) + remaining[k + 1 :])
            if tail is not None and cost[i][k] + tail == total:
                assignment[i + 1] = k + 1
                remaining = remaining[:k] + (remaining[k] - 1,) + remaining[k + 1 :]
                total -= cost[i][k]
                break
    best.cache_clear()
    return LayeredRanking.from_assignment(assignment, m, compress=True)


def fuzzify(rankings: Sequence[LayeredRanking]) -> FuzzyRanking:
    """Interval membership per alternative across several rankings.

    All inputs must have the same layer count; an alternative placed at
    layer 1 by one ranking and layer 2 by another gets the interval
    [1, 2].
    """
    n = _shared_n(rankings)
    m = rankings[0].m
    if any(r.m != m for r in rankings):
        raise ValueError("rankings must share the layer count")
    intervals = []
    for a in range(1, n + 1):
        positions = [r.layer_of(a) for r in rankings]
        intervals.append((a, min(positions), max(positions)))
    return FuzzyRanking(tuple(intervals), m)
