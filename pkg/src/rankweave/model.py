"""Core decision model: alternatives, criteria, estimates, relations, rankings.

All values are immutable after construction and all operations are pure
functions, so the same inputs always reproduce the same outputs.  Scores are
exact rationals (`fractions.Fraction`); no floating-point value ever enters
an ordering decision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rational = Union[int, Fraction]


def _as_fraction(value: Rational) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("boolean is not a score")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Alternative:
    """One item under evaluation, identified by a positive ordinal id."""

    id: int
    name: str = ""

    def __post_init__(self) -> None:
        if self.id < 1:
            raise ValueError("alternative id must be >= 1")
        if not self.name:
            object.__setattr__(self, "name", f"A{self.id}")


@dataclass(frozen=True)
class Criterion:
    """An evaluation axis with an ordinal scale and a nonnegative weight.

    ``higher_is_better`` fixes the preference direction; a criterion where
    smaller scores are preferred sets it to False and every consumer works
    on direction-adjusted values.
    """

    id: int
    name: str = ""
    weight: Fraction = Fraction(1)
    scale_min: Fraction = Fraction(0)
    scale_max: Fraction = Fraction(1)
    higher_is_better: bool = True

    def __post_init__(self) -> None:
        if self.id < 1:
            raise ValueError("criterion id must be >= 1")
        if not self.name:
            object.__setattr__(self, "name", f"K{self.id}")
        object.__setattr__(self, "weight", _as_fraction(self.weight))
        object.__setattr__(self, "scale_min", _as_fraction(self.scale_min))
        object.__setattr__(self, "scale_max", _as_fraction(self.scale_max))
        if self.weight < 0:
            raise ValueError(f"criterion {self.name}: weight must be >= 0")
        if not self.scale_min < self.scale_max:
            raise ValueError(f"criterion {self.name}: scale_min must be < scale_max")


@dataclass(frozen=True)
class ValidationIssue:
    message: str
    cell: tuple[int, int] | None = None  # (alternative id, criterion id)

    def __str__(self) -> str:
        if self.cell is None:
            return self.message
        a, k = self.cell
        return f"(A{a}, K{k}): {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues


@dataclass(frozen=True)
class EstimateMatrix:
    """Estimates z(i, j) of every alternative on every criterion.

    Construction enforces shape consistency (one row per alternative, one
    entry per criterion, contiguous ids starting at 1).  Range violations
    are deliberately representable; `validate_matrix` reports them.
    """

    alternatives: tuple[Alternative, ...]
    criteria: tuple[Criterion, ...]
    z: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        object.__setattr__(self, "criteria", tuple(self.criteria))
        ids = [a.id for a in self.alternatives]
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError("alternative ids must be contiguous starting at 1")
        kids = [k.id for k in self.criteria]
        if kids != list(range(1, len(kids) + 1)):
            raise ValueError("criterion ids must be contiguous starting at 1")
        if not self.alternatives or not self.criteria:
            raise ValueError("matrix needs at least one alternative and one criterion")
        rows = tuple(tuple(_as_fraction(v) for v in row) for row in self.z)
        if len(rows) != len(self.alternatives):
            raise ValueError("one estimate row per alternative required")
        for row in rows:
            if len(row) != len(self.criteria):
                raise ValueError("one estimate per criterion required in each row")
        object.__setattr__(self, "z", rows)

    @classmethod
    def build(
        cls,
        scores: Sequence[Sequence[Rational]],
        names: Sequence[str] | None = None,
        criteria: Sequence[Criterion] | None = None,
    ) -> "EstimateMatrix":
        """Convenience constructor from a plain score table."""
        n = len(scores)
        d = len(scores[0]) if n else 0
        alts = tuple(
            Alternative(i + 1, names[i] if names else "") for i in range(n)
        )
        if criteria is None:
            criteria = tuple(Criterion(j + 1) for j in range(d))
        return cls(alts, tuple(criteria), tuple(tuple(r) for r in scores))

    @property
    def n(self) -> int:
        return len(self.alternatives)

    @property
    def d(self) -> int:
        return len(self.criteria)

    def score(self, a: int, k: int) -> Fraction:
        """Raw estimate of alternative a on criterion k (both 1-based)."""
        return self.z[a - 1][k - 1]

    def adjusted(self, a: int, k: int) -> Fraction:
        """Direction-adjusted estimate: larger always means preferred."""
        v = self.z[a - 1][k - 1]
        return v if self.criteria[k - 1].higher_is_better else -v


def validate_matrix(matrix: EstimateMatrix) -> ValidationReport:
    """Check every estimate against its criterion scale.

    Returns an empty report iff all estimates lie within
    [scale_min, scale_max]; otherwise one issue per offending cell, with
    its (alternative, criterion) coordinates.
    """
    issues: list[ValidationIssue] = []
    for a in matrix.alternatives:
        for k in matrix.criteria:
            v = matrix.score(a.id, k.id)
            if not (k.scale_min <= v <= k.scale_max):
                issues.append(
                    ValidationIssue(
                        f"estimate {v} outside scale [{k.scale_min}, {k.scale_max}]",
                        cell=(a.id, k.id),
                    )
                )
    return ValidationReport(tuple(issues))


@dataclass(frozen=True)
class PreferenceRelation:
    """Directed preference edges over alternatives 1..n.

    An edge (a, b) reads "a is preferred to b".  Self-loops are rejected;
    cycles are representable on purpose, contradiction handling lives in
    `detect_contradiction` and `condense`.
    """

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("relation needs n >= 1")
        edges = frozenset((int(a), int(b)) for a, b in self.edges)
        for a, b in edges:
            if a == b:
                raise ValueError(f"self-loop ({a}, {a}) not allowed")
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"edge ({a}, {b}) outside 1..{self.n}")
        object.__setattr__(self, "edges", edges)

    def successors(self, a: int) -> frozenset[int]:
        return frozenset(b for (x, b) in self.edges if x == a)

    def out_degree(self, a: int) -> int:
        return sum(1 for (x, _) in self.edges if x == a)

    def in_degree(self, a: int) -> int:
        return sum(1 for (_, y) in self.edges if y == a)


@dataclass(frozen=True)
class LinearOrder:
    """A total order over alternatives 1..n, best first."""

    sequence: tuple[int, ...]

    def __post_init__(self) -> None:
        seq = tuple(int(a) for a in self.sequence)
        if sorted(seq) != list(range(1, len(seq) + 1)):
            raise ValueError("sequence must be a permutation of 1..n")
        object.__setattr__(self, "sequence", seq)

    @property
    def n(self) -> int:
        return len(self.sequence)

    def position(self, a: int) -> int:
        """1-based position of alternative a (1 = best)."""
        return self.sequence.index(a) + 1


@dataclass(frozen=True)
class LayeredRanking:
    """An ordered partition of alternatives; layer 1 is best.

    Every alternative appears in exactly one layer and no layer is empty
    (the partition property).
    """

    layers: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        layers = tuple(frozenset(int(a) for a in layer) for layer in self.layers)
        if not layers:
            raise ValueError("ranking needs at least one layer")
        seen: set[int] = set()
        for layer in layers:
            if not layer:
                raise ValueError("empty layer not allowed")
            if layer & seen:
                raise ValueError("alternative in more than one layer")
            seen |= layer
        if seen != set(range(1, len(seen) + 1)):
            raise ValueError("layers must partition 1..n")
        object.__setattr__(self, "layers", layers)

    @classmethod
    def from_assignment(
        cls, assignment: Mapping[int, int], layer_count: int | None = None, compress: bool = True
    ) -> "LayeredRanking":
        """Build from a map alternative -> layer index (1-based).

        With ``compress`` (the default) empty layers are dropped and the
        remaining ones renumbered; otherwise an empty layer is an error.
        """
        m = layer_count if layer_count is not None else max(assignment.values())
        buckets: list[set[int]] = [set() for _ in range(m)]
        for a, k in assignment.items():
            if not (1 <= k <= m):
                raise ValueError(f"layer {k} outside 1..{m}")
            buckets[k - 1].add(a)
        if compress:
            buckets = [b for b in buckets if b]
        return cls(tuple(frozenset(b) for b in buckets))

    @property
    def n(self) -> int:
        return sum(len(layer) for layer in self.layers)

    @property
    def m(self) -> int:
        return len(self.layers)

    def layer_of(self, a: int) -> int:
        """1-based index of the layer holding alternative a."""
        for i, layer in enumerate(self.layers, start=1):
            if a in layer:
                return i
        raise KeyError(a)

    def as_lists(self) -> list[list[int]]:
        return [sorted(layer) for layer in self.layers]


@dataclass(frozen=True)
class FuzzyRanking:
    """Interval layer membership: alternative -> [lowest, highest] layer."""

    intervals: tuple[tuple[int, int, int], ...]  # (alternative, low, high)
    m: int

    def __post_init__(self) -> None:
        entries = tuple((int(a), int(lo), int(hi)) for a, lo, hi in self.intervals)
        ids = sorted(a for a, _, _ in entries)
        if ids != list(range(1, len(ids) + 1)):
            raise ValueError("intervals must cover alternatives 1..n exactly once")
        for a, lo, hi in entries:
            if not (1 <= lo <= hi <= self.m):
                raise ValueError(f"interval [{lo}, {hi}] of A{a} outside 1..{self.m}")
        object.__setattr__(self, "intervals", tuple(sorted(entries)))

    @property
    def n(self) -> int:
        return len(self.intervals)

    def interval(self, a: int) -> tuple[int, int]:
        for x, lo, hi in self.intervals:
            if x == a:
                return (lo, hi)
        raise KeyError(a)


class Verdict(Enum):
    """Outcome of one pairwise comparison."""

    A_BETTER = "a_better"
    B_BETTER = "b_better"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Judgment:
    a: int
    b: int
    verdict: Verdict

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError("judgment needs two distinct alternatives")
        if isinstance(self.verdict, str):
            object.__setattr__(self, "verdict", Verdict(self.verdict))

    @property
    def pair(self) -> tuple[int, int]:
        return (self.a, self.b) if self.a < self.b else (self.b, self.a)


@dataclass(frozen=True)
class JudgmentSet:
    """Expert verdicts, at most one per unordered pair of alternatives.

    Constructing with two verdicts on the same pair is an error;
    interactive correction goes through `record`, which replaces.
    """

    n: int
    judgments: tuple[Judgment, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("judgment set needs n >= 1")
        items = tuple(self.judgments)
        seen: set[tuple[int, int]] = set()
        for j in items:
            if not (1 <= j.a <= self.n and 1 <= j.b <= self.n):
                raise ValueError(f"judgment ({j.a}, {j.b}) outside 1..{self.n}")
            if j.pair in seen:
                raise ValueError(f"duplicate verdict for pair {j.pair}")
            seen.add(j.pair)
        object.__setattr__(self, "judgments", items)

    def record(self, judgment: Judgment) -> "JudgmentSet":
        """Return a new set with the verdict; an existing one for the same
        unordered pair is replaced, which is how corrections work."""
        kept = tuple(j for j in self.judgments if j.pair != judgment.pair)
        return JudgmentSet(self.n, kept + (judgment,))

    def verdict_for(self, a: int, b: int) -> Judgment | None:
        pair = (a, b) if a < b else (b, a)
        for j in self.judgments:
            if j.pair == pair:
                return j
        return None

    def judged_pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(j.pair for j in self.judgments)

    def missing_pairs(self) -> list[tuple[int, int]]:
        """Unjudged pairs in ascending lexicographic order."""
        done = self.judged_pairs()
        return [
            (a, b)
            for a in range(1, self.n + 1)
            for b in range(a + 1, self.n + 1)
            if (a, b) not in done
        ]


@dataclass(frozen=True)
class ContradictionReport:
    """Strongly-connected components of size >= 2 found in a relation."""

    components: tuple[frozenset[int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.components


@dataclass(frozen=True)
class Condensation:
    """A relation collapsed to its strongly-connected components.

    ``component_of`` maps each original alternative to its node in the
    condensed relation; ``members`` lists the original alternatives of
    each node.  Components are numbered by their smallest member, so an
    acyclic relation condenses to itself with the identity map.
    """

    relation: PreferenceRelation
    component_of: Mapping[int, int]
    members: tuple[frozenset[int], ...]


def _strong_components(n: int, edges: Iterable[tuple[int, int]]) -> list[frozenset[int]]:
    # Iterative Tarjan; recursion depth is unbounded on long chains otherwise.
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for a, b in edges:
        adj[a].append(b)
    for v in adj:
        adj[v].sort()

    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = 0
    result: list[frozenset[int]] = []

    for root in range(1, n + 1):
        if root in index:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            for j in range(i, len(adj[v])):
                w = adj[v][j]
                if w not in index:
                    work.append((v, j + 1))
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            if low[v] == index[v]:
                component: set[int] = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.add(w)
                    if w == v:
                        break
                result.append(frozenset(component))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return result


def detect_contradiction(relation: PreferenceRelation) -> ContradictionReport:
    """Report every preference cycle as a strongly-connected component.

    Components are listed by their smallest member; an empty report means
    the relation is acyclic.
    """
    comps = [c for c in _strong_components(relation.n, relation.edges) if len(c) >= 2]
    comps.sort(key=min)
    return ContradictionReport(tuple(comps))


def condense(relation: PreferenceRelation) -> Condensation:
    """Collapse each strongly-connected component to one node.

    The result is acyclic, so condensing twice is the same as condensing
    once; with no contradictions the condensation has exactly n nodes.
    """
    comps = sorted(_strong_components(relation.n, relation.edges), key=min)
    component_of = {v: i + 1 for i, comp in enumerate(comps) for v in comp}
    edges = set()
    for a, b in relation.edges:
        ca, cb = component_of[a], component_of[b]
        if ca != cb:
            edges.add((ca, cb))
    condensed = PreferenceRelation(len(comps), frozenset(edges))
    return Condensation(condensed, component_of, tuple(comps))
