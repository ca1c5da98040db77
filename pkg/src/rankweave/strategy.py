"""Composable solving strategies over the technique library.

A strategy wires techniques into up to four stages: building a
preference relation (codes H*), linear ordering (T*), layering (U*) and
aggregation of several branch results (X*).  Index 0 at any stage means
the stage is absent and is skipped during execution.  A strategy may run
several branches in parallel and join them with an aggregator, or fuzzify
the branch results into interval layer memberships.

Interactive techniques (H1 pairwise comparison, U4 direct expert
placement) either receive their full script in the stage parameters or
pull answers from an `InteractiveStore`.  When the store lacks an
answer, execution raises `SuspensionNeeded` carrying a typed request;
re-running with the answer recorded continues deterministically, so a
resumed interactive run reproduces the equivalent batch run exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Sequence, Union

from .model import (
    ContradictionReport,
    EstimateMatrix,
    FuzzyRanking,
    JudgmentSet,
    LayeredRanking,
    LinearOrder,
    PreferenceRelation,
    ValidationIssue,
    ValidationReport,
    detect_contradiction,
)
from .stages import (
    ElectreParams,
    LayerCapacities,
    RuleSet,
    additive_utility_order,
    capacity_aggregate,
    divide_linear_order,
    election_aggregate,
    electre_relation,
    expert_layers,
    fuzzify,
    judgment_relation,
    logical_rule_layers,
    maximal_element_layers,
    pareto_layers,
    pareto_relation,
    row_sum_order,
)

RELATION_CODES = ("H0", "H1", "H2", "H3")
ORDERING_CODES = ("T0", "T1", "T2")
LAYERING_CODES = ("U0", "U1", "U2", "U3", "U4", "U5")
AGGREGATOR_CODES = ("X0", "X1", "X2")


class Target(Enum):
    """Kind of final result a strategy produces."""

    LINEAR = "linear"
    LAYERED = "layered"
    FUZZY = "fuzzy"


class StrategyError(Exception):
    """Raised when execution hits a problem validation cannot see."""


class StrategyValidationError(Exception):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(i) for i in report.issues))


@dataclass(frozen=True)
class ComparisonRequest:
    """Ask the expert which of two alternatives is better."""

    branch: int
    a: int
    b: int
    kind: str = field(default="comparison", init=False)


@dataclass(frozen=True)
class AssignmentRequest:
    """Ask the expert to place an alternative into one of m layers."""

    branch: int
    alternative: int
    layer_count: int
    kind: str = field(default="assignment", init=False)


Request = Union[ComparisonRequest, AssignmentRequest]


class SuspensionNeeded(Exception):
    """Execution paused awaiting an expert answer."""

    def __init__(self, request: Request):
        self.request = request
        super().__init__(f"awaiting {request.kind} answer")


@dataclass(frozen=True)
class StageChoice:
    """One technique picked for a stage, with its parameters."""

    technique: str
    params: Mapping[str, Any] = field(default_factory=dict)

    @property
    def absent(self) -> bool:
        return self.technique.endswith("0")


@dataclass(frozen=True)
class Branch:
    """One solving chain: relation, ordering and layering choices."""

    relation: StageChoice = StageChoice("H0")
    ordering: StageChoice = StageChoice("T0")
    layering: StageChoice = StageChoice("U0")


@dataclass(frozen=True)
class StrategySpec:
    """A full strategy: parallel branches, an aggregator and a target."""

    branches: tuple[Branch, ...]
    aggregator: StageChoice = StageChoice("X0")
    target: Target = Target.LAYERED

    def __post_init__(self) -> None:
        object.__setattr__(self, "branches", tuple(self.branches))
        if not self.branches:
            raise ValueError("strategy needs at least one branch")
        if isinstance(self.target, str):
            object.__setattr__(self, "target", Target(self.target))


def validate_strategy(spec: StrategySpec) -> ValidationReport:
    """Static typing check: every consumer has a producer, the branch
    shape fits the target, and multi-branch strategies have a join."""
    issues: list[ValidationIssue] = []

    def issue(msg: str) -> None:
        issues.append(ValidationIssue(msg))

    for i, branch in enumerate(spec.branches):
        where = f"branch {i}"
        h, t, u = branch.relation.technique, branch.ordering.technique, branch.layering.technique
        if h not in RELATION_CODES:
            issue(f"{where}: unknown relation technique {h}")
            continue
        if t not in ORDERING_CODES:
            issue(f"{where}: unknown ordering technique {t}")
            continue
        if u not in LAYERING_CODES:
            issue(f"{where}: unknown layering technique {u}")
            continue
        if t == "T1" and h == "H0":
            issue(f"{where}: T1 sums preference rows and needs a relation stage")
        if u == "U1" and h == "H0":
            issue(f"{where}: U1 peels maximal elements and needs a relation stage")
        if u == "U3" and t == "T0":
            issue(f"{where}: U3 divides a linear order and needs an ordering stage")
        if u == "U0" and t == "T0":
            issue(f"{where}: produces no ranking (ordering and layering both absent)")

    x = spec.aggregator.technique
    if x not in AGGREGATOR_CODES:
        issue(f"unknown aggregator technique {x}")
        x = "X0"

    layered_outputs = all(not b.layering.absent for b in spec.branches)
    if spec.target is Target.LINEAR:
        if len(spec.branches) != 1:
            issue("linear target allows exactly one branch")
        else:
            b = spec.branches[0]
            if b.ordering.absent:
                issue("linear target needs an ordering stage")
            if not b.layering.absent:
                issue("linear target must leave the layering stage absent")
        if x != "X0":
            issue("linear target does not aggregate")
    elif spec.target is Target.LAYERED:
        if not layered_outputs:
            issue("layered target needs a layering stage in every branch")
        if len(spec.branches) > 1 and x == "X0":
            issue("several branches need an aggregator to join them")
    elif spec.target is Target.FUZZY:
        if len(spec.branches) < 2:
            issue("fuzzy target needs at least two branches to span intervals")
        if not layered_outputs:
            issue("fuzzy target needs a layering stage in every branch")
        if x != "X0":
            issue("fuzzy target joins branches by fuzzification, not an aggregator")

    return ValidationReport(tuple(issues))


@dataclass(frozen=True)
class InteractiveStore:
    """Accumulated expert answers, keyed by branch index."""

    judgments: Mapping[int, JudgmentSet] = field(default_factory=dict)
    assignments: Mapping[int, Mapping[int, int]] = field(default_factory=dict)


@dataclass(frozen=True)
class BranchTrace:
    """Intermediate artifacts of one branch; absent stages leave None."""

    relation: PreferenceRelation | None = None
    contradictions: ContradictionReport | None = None
    linear: LinearOrder | None = None
    preliminary: LayeredRanking | None = None


@dataclass(frozen=True)
class ExecutionTrace:
    """Everything a run produced, branch by branch plus the final result."""

    spec: StrategySpec
    branches: tuple[BranchTrace, ...]
    result: Union[LinearOrder, LayeredRanking, FuzzyRanking]

    @property
    def final_layers(self) -> LayeredRanking | None:
        return self.result if isinstance(self.result, LayeredRanking) else None

    @property
    def final_linear(self) -> LinearOrder | None:
        return self.result if isinstance(self.result, LinearOrder) else None

    @property
    def final_fuzzy(self) -> FuzzyRanking | None:
        return self.result if isinstance(self.result, FuzzyRanking) else None


def _need(params: Mapping[str, Any], key: str, code: str) -> Any:
    if key not in params:
        raise StrategyError(f"{code} needs the {key!r} parameter")
    return params[key]


def _run_relation(
    choice: StageChoice, matrix: EstimateMatrix, store: InteractiveStore, branch_idx: int
) -> PreferenceRelation:
    code = choice.technique
    if code == "H1":
        scripted = choice.params.get("judgments")
        if scripted is not None:
            if not isinstance(scripted, JudgmentSet):
                raise StrategyError("H1 scripted judgments must be a JudgmentSet")
            return judgment_relation(scripted)
        collected = store.judgments.get(branch_idx, JudgmentSet(matrix.n))
        missing = collected.missing_pairs()
        if missing:
            a, b = missing[0]
            raise SuspensionNeeded(ComparisonRequest(branch_idx, a, b))
        return judgment_relation(collected)
    if code == "H2":
        return pareto_relation(matrix)
    if code == "H3":
        params = ElectreParams(
            concordance=_need(choice.params, "concordance", "H3"),
            discordance=_need(choice.params, "discordance", "H3"),
            weights=choice.params.get("weights"),
        )
        return electre_relation(matrix, params)
    raise StrategyError(f"unknown relation technique {code}")


def _run_layering(
    choice: StageChoice,
    matrix: EstimateMatrix,
    relation: PreferenceRelation | None,
    linear: LinearOrder | None,
    store: InteractiveStore,
    branch_idx: int,
) -> LayeredRanking:
    code = choice.technique
    if code == "U1":
        if relation is None:
            raise StrategyError("U1 needs a relation stage")
        return maximal_element_layers(relation)
    if code == "U2":
        return pareto_layers(matrix)
    if code == "U3":
        if linear is None:
            raise StrategyError("U3 needs an ordering stage")
        return divide_linear_order(linear, _need(choice.params, "sizes", "U3"))
    if code == "U4":
        layer_count = int(_need(choice.params, "layers", "U4"))
        scripted = choice.params.get("assignment")
        if scripted is not None:
            return expert_layers({int(k): int(v) for k, v in scripted.items()}, layer_count)
        collected = dict(store.assignments.get(branch_idx, {}))
        missing = [a for a in range(1, matrix.n + 1) if a not in collected]
        if missing:
            raise SuspensionNeeded(AssignmentRequest(branch_idx, missing[0], layer_count))
        return expert_layers(collected, layer_count)
    if code == "U5":
        rules = _need(choice.params, "rules", "U5")
        if not isinstance(rules, RuleSet):
            raise StrategyError("U5 rules must be a RuleSet")
        return logical_rule_layers(matrix, rules)
    raise StrategyError(f"unknown layering technique {code}")


def execute(
    spec: StrategySpec,
    matrix: EstimateMatrix,
    store: InteractiveStore | None = None,
) -> ExecutionTrace:
    """Run a strategy over an estimate matrix.

    Validates first (`StrategyValidationError` on a bad spec), then runs
    every branch stage by stage, skipping absent stages.  A preference
    cycle is not fatal: it is recorded in the branch trace and layering
    proceeds on the condensation, so cycle members share a layer.
    """
    report = validate_strategy(spec)
    if not report.ok:
        raise StrategyValidationError(report)
    store = store or InteractiveStore()

    traces: list[BranchTrace] = []
    outputs: list[LayeredRanking] = []
    final_linear: LinearOrder | None = None
    for i, branch in enumerate(spec.branches):
        relation = None
        contradictions = None
        if not branch.relation.absent:
            relation = _run_relation(branch.relation, matrix, store, i)
            contradictions = detect_contradiction(relation)

        linear = None
        t = branch.ordering.technique
        if t == "T1":
            assert relation is not None  # validation guarantees a producer
            linear = row_sum_order(relation)
        elif t == "T2":
            linear = additive_utility_order(matrix, branch.ordering.params.get("weights"))

        preliminary = None
        if not branch.layering.absent:
            preliminary = _run_layering(branch.layering, matrix, relation, linear, store, i)
        elif linear is not None:
            final_linear = linear

        traces.append(BranchTrace(relation, contradictions, linear, preliminary))
        if preliminary is not None:
            outputs.append(preliminary)

    result: Union[LinearOrder, LayeredRanking, FuzzyRanking]
    if spec.target is Target.LINEAR:
        assert final_linear is not None
        result = final_linear
    elif spec.target is Target.FUZZY:
        result = fuzzify(outputs)
    else:
        x = spec.aggregator.technique
        if x == "X1":
            result = election_aggregate(outputs)
        elif x == "X2":
            caps = LayerCapacities(tuple(_need(spec.aggregator.params, "capacities", "X2")))
            result = capacity_aggregate(outputs, caps)
        else:
            result = outputs[0]
    return ExecutionTrace(spec, tuple(traces), result)


@dataclass(frozen=True)
class StrategyTemplate:
    """A strategy shape with some stages fixed and the rest open.

    Parameters bind late: `instantiate` receives fully parameterized
    branches and checks them against the template's constraints.
    """

    name: str
    flow: str
    fixed: Mapping[str, str]  # stage letter -> forced technique code
    required: frozenset[str] = frozenset()  # stages that must be non-absent

    def instantiate(
        self,
        branches: Sequence[Branch],
        aggregator: StageChoice = StageChoice("X0"),
        target: Target = Target.LAYERED,
    ) -> StrategySpec:
        for i, branch in enumerate(branches):
            picks = {
                "H": branch.relation.technique,
                "T": branch.ordering.technique,
                "U": branch.layering.technique,
            }
            for stage, code in picks.items():
                forced = self.fixed.get(stage)
                if forced is not None and code != forced:
                    raise ValueError(
                        f"{self.name} fixes stage {stage} to {forced}, branch {i} picked {code}"
                    )
                if stage in self.required and code.endswith("0"):
                    raise ValueError(f"{self.name} requires stage {stage} in branch {i}")
        forced_x = self.fixed.get("X")
        if forced_x is not None and aggregator.technique != forced_x:
            raise ValueError(f"{self.name} fixes the aggregator to {forced_x}")
        return StrategySpec(tuple(branches), aggregator, target)


_PRESETS: dict[str, StrategyTemplate] = {
    "E": StrategyTemplate(
        "E",
        "estimates > relation > linear order > layers > final",
        fixed={},
    ),
    "W1": StrategyTemplate(
        "W1",
        "estimates > layers > final",
        fixed={"H": "H0", "T": "T0"},
        required=frozenset("U"),
    ),
    "W2": StrategyTemplate(
        "W2",
        "estimates > relation > layers > final",
        fixed={"T": "T0"},
        required=frozenset(("H", "U")),
    ),
    "W3": StrategyTemplate(
        "W3",
        "estimates > relation > linear order > divided layers",
        fixed={"U": "U3", "X": "X0"},
        required=frozenset(("H", "T")),
    ),
    "W4": StrategyTemplate(
        "W4",
        "estimates > linear order > layers > final",
        fixed={"H": "H0"},
        required=frozenset(("T", "U")),
    ),
    "W5": StrategyTemplate(
        "W5",
        "estimates > linear order > layers > final",
        fixed={"H": "H0"},
        required=frozenset(("T", "U")),
    ),
    "D1": StrategyTemplate(
        "D1",
        "direct expert placement",
        fixed={"H": "H0", "T": "T0", "U": "U4", "X": "X0"},
    ),
    "D2": StrategyTemplate(
        "D2",
        "direct rule-based placement",
        fixed={"H": "H0", "T": "T0", "U": "U5", "X": "X0"},
    ),
}


def preset(name: str) -> StrategyTemplate:
    """Look up a framework template by name (E, W1..W5, D1, D2)."""
    try:
        return _PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; have {sorted(_PRESETS)}") from None


def preset_names() -> list[str]:
    return list(_PRESETS)
