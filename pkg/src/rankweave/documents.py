"""JSON document formats for data, strategies, morphologies and results.

Documents are plain JSON-compatible trees.  Scores are exact: integers
stay integers, other rationals travel as "p/q" strings.  Decimal input
(e.g. 0.5 from a form) is accepted and converted exactly via its decimal
literal.  Dump and parse are inverse on every document kind.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping, Sequence

from .estimates import MultisetEstimate, ScaleSpec
from .model import (
    Alternative,
    Criterion,
    EstimateMatrix,
    FuzzyRanking,
    Judgment,
    JudgmentSet,
    LayeredRanking,
    LinearOrder,
    PreferenceRelation,
    Verdict,
)
from .stages import Rule, RuleSet
from .strategy import (
    Branch,
    ExecutionTrace,
    StageChoice,
    StrategySpec,
    Target,
)
from .synthesis import (
    CompatibilitySpec,
    DesignOption,
    Morphology,
    Part,
    SynthesisResult,
)


class DocumentError(ValueError):
    """Malformed or inconsistent document."""


def encode_rational(value: Fraction) -> int | str:
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(f"not a number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # Decimal-faithful: 0.5 means 1/2, not the nearest binary float.
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"not a rational: {value!r}") from exc
    raise DocumentError(f"not a rational: {value!r}")


# ---------------------------------------------------------------------------
# decision data


def dump_decision(matrix: EstimateMatrix) -> dict:
    return {
        "alternatives": [{"id": a.id, "name": a.name} for a in matrix.alternatives],
        "criteria": [
            {
                "id": k.id,
                "name": k.name,
                "weight": encode_rational(k.weight),
                "scale": [encode_rational(k.scale_min), encode_rational(k.scale_max)],
                "higher_is_better": k.higher_is_better,
            }
            for k in matrix.criteria
        ],
        "estimates": [[encode_rational(v) for v in row] for row in matrix.z],
    }


def parse_decision(doc: Mapping[str, Any]) -> EstimateMatrix:
    try:
        alternatives = tuple(
            Alternative(int(a["id"]), str(a.get("name", ""))) for a in doc["alternatives"]
        )
        criteria = tuple(
            Criterion(
                int(k["id"]),
                str(k.get("name", "")),
                weight=parse_rational(k.get("weight", 1)),
                scale_min=parse_rational(k["scale"][0]),
                scale_max=parse_rational(k["scale"][1]),
                higher_is_better=bool(k.get("higher_is_better", True)),
            )
            for k in doc["criteria"]
        )
        z = tuple(tuple(parse_rational(v) for v in row) for row in doc["estimates"])
    except (KeyError, TypeError, IndexError) as exc:
        raise DocumentError(f"malformed decision document: {exc}") from exc
    try:
        return EstimateMatrix(alternatives, criteria, z)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


# ---------------------------------------------------------------------------
# judgments


def dump_judgments(judgments: JudgmentSet) -> list:
    return [[j.a, j.b, j.verdict.value] for j in judgments.judgments]


def parse_judgments(doc: Sequence[Any], n: int) -> JudgmentSet:
    try:
        items = tuple(Judgment(int(a), int(b), Verdict(str(v))) for a, b, v in doc)
        return JudgmentSet(n, items)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"malformed judgments: {exc}") from exc


# ---------------------------------------------------------------------------
# strategies


def _dump_params(code: str, params: Mapping[str, Any]) -> dict:
    out: dict[str, Any] = {}
    for key, value in params.items():
        if key == "judgments" and isinstance(value, JudgmentSet):
            out[key] = dump_judgments(value)
        elif key == "rules" and isinstance(value, RuleSet):
            out[key] = {
                "rules": [
                    {
                        "conditions": [[k, encode_rational(c)] for k, c in r.conditions],
                        "layer": r.layer,
                    }
                    for r in value.rules
                ],
                "default_layer": value.default_layer,
            }
        elif key in ("concordance", "discordance") and isinstance(value, Fraction):
            out[key] = encode_rational(value)
        elif key == "weights" and value is not None:
            out[key] = [encode_rational(Fraction(w)) for w in value]
        elif key == "assignment" and isinstance(value, Mapping):
            out[key] = {str(k): int(v) for k, v in value.items()}
        else:
            out[key] = value
    return out


def _parse_params(code: str, raw: Mapping[str, Any], n: int | None) -> dict:
    params: dict[str, Any] = {}
    for key, value in raw.items():
        if key == "judgments":
            if n is None:
                params[key] = value  # reparsed once the data document fixes n
            else:
                params[key] = parse_judgments(value, n)
        elif key == "rules":
            try:
                rules = tuple(
                    Rule(
                        tuple((int(k), parse_rational(c)) for k, c in r["conditions"]),
                        int(r["layer"]),
                    )
                    for r in value["rules"]
                )
                params[key] = RuleSet(rules, int(value["default_layer"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise DocumentError(f"malformed rule set: {exc}") from exc
        elif key in ("concordance", "discordance"):
            params[key] = parse_rational(value)
        elif key == "weights" and value is not None:
            params[key] = [parse_rational(w) for w in value]
        elif key == "sizes":
            params[key] = [int(s) for s in value]
        elif key == "capacities":
            params[key] = [int(s) for s in value]
        elif key == "assignment":
            params[key] = {int(k): int(v) for k, v in value.items()}
        elif key == "layers":
            params[key] = int(value)
        else:
            params[key] = value
    return params


def _dump_choice(choice: StageChoice) -> dict:
    out: dict[str, Any] = {"technique": choice.technique}
    if choice.params:
        out["params"] = _dump_params(choice.technique, choice.params)
    return out


def _parse_choice(raw: Any, n: int | None) -> StageChoice:
    if isinstance(raw, str):
        return StageChoice(raw)
    if not isinstance(raw, Mapping) or "technique" not in raw:
        raise DocumentError(f"stage choice needs a technique: {raw!r}")
    code = str(raw["technique"])
    return StageChoice(code, _parse_params(code, raw.get("params", {}), n))


def dump_strategy(spec: StrategySpec) -> dict:
    return {
        "target": spec.target.value,
        "branches": [
            {
                "relation": _dump_choice(b.relation),
                "ordering": _dump_choice(b.ordering),
                "layering": _dump_choice(b.layering),
            }
            for b in spec.branches
        ],
        "aggregator": _dump_choice(spec.aggregator),
    }


def parse_strategy(doc: Mapping[str, Any], n: int | None = None) -> StrategySpec:
    """Parse a strategy document.

    ``n`` (the alternative count) is needed to type scripted judgments;
    without it they stay raw, so reparse with n before executing.
    """
    try:
        target = Target(str(doc.get("target", "layered")))
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    raw_branches = doc.get("branches")
    if not isinstance(raw_branches, Sequence) or not raw_branches:
        raise DocumentError("strategy needs a nonempty branches list")
    branches = []
    for raw in raw_branches:
        if not isinstance(raw, Mapping):
            raise DocumentError(f"malformed branch: {raw!r}")
        branches.append(
            Branch(
                relation=_parse_choice(raw.get("relation", "H0"), n),
                ordering=_parse_choice(raw.get("ordering", "T0"), n),
                layering=_parse_choice(raw.get("layering", "U0"), n),
            )
        )
    aggregator = _parse_choice(doc.get("aggregator", "X0"), n)
    return StrategySpec(tuple(branches), aggregator, target)


# ---------------------------------------------------------------------------
# rankings and traces


def dump_linear(order: LinearOrder) -> list[int]:
    return list(order.sequence)


def dump_layers(ranking: LayeredRanking) -> list[list[int]]:
    return ranking.as_lists()


def parse_layers(doc: Sequence[Sequence[int]]) -> LayeredRanking:
    try:
        return LayeredRanking(tuple(frozenset(int(a) for a in layer) for layer in doc))
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"malformed ranking: {exc}") from exc


def dump_fuzzy(ranking: FuzzyRanking) -> dict:
    return {"m": ranking.m, "intervals": [list(t) for t in ranking.intervals]}


def _dump_relation(relation: PreferenceRelation) -> dict:
    return {"n": relation.n, "edges": sorted([a, b] for a, b in relation.edges)}


def dump_trace(trace: ExecutionTrace) -> dict:
    branches = []
    for b in trace.branches:
        entry: dict[str, Any] = {}
        if b.relation is not None:
            entry["relation"] = _dump_relation(b.relation)
        if b.contradictions is not None and not b.contradictions.ok:
            entry["contradictions"] = [sorted(c) for c in b.contradictions.components]
        if b.linear is not None:
            entry["linear"] = dump_linear(b.linear)
        if b.preliminary is not None:
            entry["preliminary"] = dump_layers(b.preliminary)
        branches.append(entry)

    result = trace.result
    if isinstance(result, LinearOrder):
        final: dict[str, Any] = {"kind": "linear", "sequence": dump_linear(result)}
    elif isinstance(result, LayeredRanking):
        final = {"kind": "layered", "layers": dump_layers(result)}
    else:
        final = {"kind": "fuzzy", **dump_fuzzy(result)}
    return {"target": trace.spec.target.value, "result": final, "branches": branches}


# ---------------------------------------------------------------------------
# morphologies and synthesis results


def dump_counts(estimate: MultisetEstimate) -> list[int]:
    return list(estimate.counts)


def parse_counts_doc(doc: Any) -> MultisetEstimate:
    try:
        return MultisetEstimate(tuple(int(c) for c in doc))
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"malformed counts vector: {doc!r}") from exc


def dump_morphology(morphology: Morphology, compat: CompatibilitySpec) -> dict:
    parts = []
    for part in morphology.parts:
        options = []
        for o in part.options:
            entry: dict[str, Any] = {"name": o.name}
            if o.priority is not None:
                entry["priority"] = o.priority
            if o.estimate is not None:
                entry["estimate"] = dump_counts(o.estimate)
            if not o.contributes_estimate:
                entry["contributes_estimate"] = False
            if not o.contributes_compatibility:
                entry["contributes_compatibility"] = False
            options.append(entry)
        parts.append({"name": part.name, "options": options})
    out: dict[str, Any] = {
        "scale": {
            "levels": morphology.scale.levels,
            "cardinality": morphology.scale.cardinality,
        },
        "parts": parts,
        "compatibility": {"max_level": compat.max_level},
    }
    if compat.ordinal:
        out["compatibility"]["pairs"] = [
            [a, b, v] for (a, b), v in sorted(compat.ordinal.items())
        ]
    if compat.multiset:
        out["compatibility"]["estimate_pairs"] = [
            [a, b, dump_counts(e)] for (a, b), e in sorted(compat.multiset.items())
        ]
    if compat.floor is not None:
        out["compatibility"]["floor"] = dump_counts(compat.floor)
    return out


def parse_morphology(doc: Mapping[str, Any]) -> tuple[Morphology, CompatibilitySpec]:
    try:
        scale = ScaleSpec(int(doc["scale"]["levels"]), int(doc["scale"]["cardinality"]))
        parts = []
        for p in doc["parts"]:
            options = []
            for o in p["options"]:
                estimate = o.get("estimate")
                options.append(
                    DesignOption(
                        name=str(o["name"]),
                        priority=int(o["priority"]) if "priority" in o else None,
                        estimate=parse_counts_doc(estimate) if estimate is not None else None,
                        contributes_estimate=bool(o.get("contributes_estimate", True)),
                        contributes_compatibility=bool(
                            o.get("contributes_compatibility", True)
                        ),
                    )
                )
            parts.append(Part(str(p["name"]), tuple(options)))
        morphology = Morphology(scale, tuple(parts))

        raw = doc.get("compatibility", {})
        ordinal = {
            (str(a), str(b)): int(v) for a, b, v in raw.get("pairs", [])
        }
        multiset = {
            (str(a), str(b)): parse_counts_doc(e) for a, b, e in raw.get("estimate_pairs", [])
        }
        floor = raw.get("floor")
        compat = CompatibilitySpec(
            max_level=int(raw.get("max_level", 1)),
            ordinal=ordinal,
            multiset=multiset,
            floor=parse_counts_doc(floor) if floor is not None else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DocumentError):
            raise
        raise DocumentError(f"malformed morphology document: {exc}") from exc

    known = {o.name for part in morphology.parts for o in part.options}
    for a, b in list(compat.ordinal) + list(compat.multiset):
        if a not in known or b not in known:
            raise DocumentError(f"compatibility pair ({a}, {b}) references unknown options")
        if morphology.part_of(a) == morphology.part_of(b):
            raise DocumentError(f"compatibility pair ({a}, {b}) must span two parts")
    return morphology, compat


def dump_synthesis(result: SynthesisResult) -> dict:
    rows = []
    for item in result.composites:
        row: dict[str, Any] = {
            "selection": list(item.solution.selection),
            "label": item.solution.label(),
            "feasible": item.feasible,
            "pareto": item.pareto,
        }
        if item.quality.w is not None:
            row["w"] = item.quality.w
        if item.quality.e is not None:
            row["e"] = dump_counts(item.quality.e)
        rows.append(row)
    return {
        "variant": result.variant,
        "composites": rows,
        "pareto": [c.solution.label() for c in result.pareto],
    }
