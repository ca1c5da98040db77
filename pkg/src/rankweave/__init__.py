"""Multicriteria ranking with composable solving strategies.

The package splits into a decision model (`model`), interval multiset
estimates (`estimates`), the technique library for the four solving
stages (`stages`), the strategy engine wiring techniques together
(`strategy`), morphological synthesis of technique combinations
(`synthesis`), JSON document formats (`documents`), and the command line
plus HTTP session service (`cli`, `service`).
"""

from .documents import (
    DocumentError,
    dump_counts,
    dump_decision,
    dump_fuzzy,
    dump_judgments,
    dump_layers,
    dump_linear,
    dump_morphology,
    dump_strategy,
    dump_synthesis,
    dump_trace,
    encode_rational,
    parse_counts_doc,
    parse_decision,
    parse_judgments,
    parse_layers,
    parse_morphology,
    parse_rational,
    parse_strategy,
)
from .estimates import (
    Dominance,
    MedianUniverse,
    MultisetEstimate,
    Proximity,
    ScaleSpec,
    compare,
    enumerate_all,
    enumerate_scale,
    generalized_median,
    integrate,
    is_interval,
    multiset_number,
    proximity,
    set_median,
)
from .model import (
    Alternative,
    Condensation,
    ContradictionReport,
    Criterion,
    EstimateMatrix,
    FuzzyRanking,
    Judgment,
    JudgmentSet,
    LayeredRanking,
    LinearOrder,
    PreferenceRelation,
    ValidationIssue,
    ValidationReport,
    Verdict,
    condense,
    detect_contradiction,
    validate_matrix,
)
from .stages import (
    ElectreParams,
    LayerCapacities,
    Rule,
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
from .strategy import (
    AssignmentRequest,
    Branch,
    ComparisonRequest,
    ExecutionTrace,
    InteractiveStore,
    StageChoice,
    StrategySpec,
    StrategyError,
    StrategyTemplate,
    StrategyValidationError,
    SuspensionNeeded,
    Target,
    execute,
    preset,
    preset_names,
    validate_strategy,
)
from .synthesis import (
    CompatibilitySpec,
    CompositeSolution,
    DesignOption,
    Morphology,
    Part,
    QualityPoint,
    SynthesisResult,
    chain_compatibility,
    enumerate_composites,
    median_quality,
    ordinal_quality,
    pareto_filter,
    synthesize,
)

__version__ = "0.1.0"
