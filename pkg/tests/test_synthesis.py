"""Morphological synthesis: quality scoring and Pareto filtering."""

import random

import pytest

import oracles
from rankweave import (
    CompatibilitySpec,
    CompositeSolution,
    DesignOption,
    Morphology,
    MultisetEstimate,
    Part,
    QualityPoint,
    ScaleSpec,
    chain_compatibility,
    enumerate_composites,
    median_quality,
    ordinal_quality,
    pareto_filter,
    synthesize,
)


def E(*counts: int) -> MultisetEstimate:
    return MultisetEstimate(counts)


def test_morphology_invariants():
    with pytest.raises(ValueError):
        Morphology(ScaleSpec(3, 4), ())
    with pytest.raises(ValueError):
        Part("p", ())
    with pytest.raises(ValueError):  # duplicate option name across parts
        Morphology(
            ScaleSpec(3, 4),
            (
                Part("a", (DesignOption("x", priority=1),)),
                Part("b", (DesignOption("x", priority=1),)),
            ),
        )
    with pytest.raises(ValueError):  # estimate off scale
        Morphology(
            ScaleSpec(3, 4),
            (Part("a", (DesignOption("x", estimate=E(1, 1)),)),),
        )
    with pytest.raises(ValueError):  # priority outside 1..levels
        Morphology(ScaleSpec(3, 4), (Part("a", (DesignOption("x", priority=4),)),))
    with pytest.raises(ValueError):  # transparent option with a grade
        DesignOption("x", priority=1, contributes_estimate=False)
    with pytest.raises(ValueError):  # contributing option without a grade
        DesignOption("x")


def test_compatibility_spec_is_symmetric():
    spec = CompatibilitySpec(max_level=3, ordinal={("b", "a"): 2})
    assert spec.grade("a", "b") == 2
    assert spec.grade("b", "a") == 2
    assert spec.grade("a", "c") == 0  # unknown pairs block
    with pytest.raises(ValueError):
        CompatibilitySpec(max_level=3, ordinal={("a", "b"): 4})
    with pytest.raises(ValueError):
        CompatibilitySpec(max_level=3, ordinal={("a", "b"): 1, ("b", "a"): 2})


def test_enumeration_order_and_count(technique_morphology):
    morphology, _ = technique_morphology
    composites = enumerate_composites(morphology)
    assert len(composites) == 4 * 3 * 5 * 1
    assert composites[0].selection == ("H0", "T0", "U1", "X0")
    assert composites[-1].selection == ("H3", "T2", "U5", "X0")
    assert [c.index for c in composites] == list(range(60))


def test_chain_compatibility_minimum_and_vacuous(technique_morphology):
    morphology, compat = technique_morphology
    assert chain_compatibility(morphology, CompositeSolution(("H2", "T0", "U2", "X0")), compat) == 3
    assert chain_compatibility(morphology, CompositeSolution(("H1", "T0", "U1", "X0")), compat) == 2
    # T1 drags the chain down to its weakest link even though H1-T1 holds
    assert chain_compatibility(morphology, CompositeSolution(("H1", "T1", "U1", "X0")), compat) == 0
    assert chain_compatibility(morphology, CompositeSolution(("H0", "T0", "U1", "X0")), compat) == 0

    single = Morphology(ScaleSpec(3, 4), (Part("only", (DesignOption("z", estimate=E(4, 0, 0)),)),))
    assert chain_compatibility(single, CompositeSolution(("z",)), CompatibilitySpec(max_level=3)) == 3


def test_ordinal_quality_counts_priorities():
    morphology = Morphology(
        ScaleSpec(3, 4),
        (
            Part("a", (DesignOption("a1", priority=1), DesignOption("a2", priority=2))),
            Part("b", (DesignOption("b1", priority=1), DesignOption("skip", contributes_estimate=False))),
        ),
    )
    assert ordinal_quality(morphology, CompositeSolution(("a1", "b1"))).counts == (2, 0, 0)
    assert ordinal_quality(morphology, CompositeSolution(("a2", "skip"))).counts == (0, 1, 0)


def test_median_quality_known_values(technique_morphology):
    morphology, _ = technique_morphology
    assert median_quality(morphology, CompositeSolution(("H1", "T0", "U2", "X0"))).counts == (4, 0, 0)
    assert median_quality(morphology, CompositeSolution(("H2", "T0", "U2", "X0"))).counts == (3, 1, 0)
    assert median_quality(morphology, CompositeSolution(("H0", "T0", "U5", "X0"))).counts == (3, 1, 0)


def test_median_quality_variant3_pull():
    # The two option grades sit at opposite ends, leaving every candidate
    # at the same summed distance; the compatibility estimate then tips
    # the constrained median to the bottom level.
    morphology = Morphology(
        ScaleSpec(3, 4),
        (
            Part("a", (DesignOption("a1", estimate=E(4, 0, 0)),)),
            Part("b", (DesignOption("b1", estimate=E(0, 0, 4)),)),
        ),
    )
    compat = CompatibilitySpec(
        max_level=3,
        multiset={("a1", "b1"): E(0, 0, 4)},
        floor=E(0, 0, 4),
    )
    plain = median_quality(morphology, CompositeSolution(("a1", "b1")))
    pulled = median_quality(
        morphology, CompositeSolution(("a1", "b1")), compat, pull_compatibility=True
    )
    assert plain.counts == (4, 0, 0)  # cost tie resolved toward dominance
    assert pulled.counts == (0, 0, 4)


def test_pareto_filter_keeps_equal_points():
    p = QualityPoint(3, E(3, 1, 0))
    q = QualityPoint(3, E(3, 1, 0))
    r = QualityPoint(2, E(3, 1, 0))
    assert pareto_filter([p, q, r]) == [0, 1]


def test_pareto_filter_incomparable_points_survive():
    points = [QualityPoint(2, E(4, 0, 0)), QualityPoint(3, E(3, 1, 0))]
    assert pareto_filter(points) == [0, 1]


def test_synthesize_variant2_full_run(technique_morphology):
    morphology, compat = technique_morphology
    result = synthesize(morphology, compat, variant=2)
    assert len(result.composites) == 60
    assert {c.solution.label() for c in result.feasible} == {
        "H0*T0*U4*X0",
        "H0*T0*U5*X0",
        "H1*T0*U1*X0",
        "H1*T0*U2*X0",
        "H2*T0*U1*X0",
        "H2*T0*U2*X0",
        "H3*T0*U1*X0",
        "H3*T0*U2*X0",
    }
    by_label = {c.solution.label(): c for c in result.pareto}
    assert set(by_label) == {"H1*T0*U2*X0", "H2*T0*U2*X0", "H3*T0*U2*X0", "H0*T0*U5*X0"}
    assert (by_label["H1*T0*U2*X0"].quality.w, by_label["H1*T0*U2*X0"].quality.e.counts) == (2, (4, 0, 0))
    assert (by_label["H2*T0*U2*X0"].quality.w, by_label["H2*T0*U2*X0"].quality.e.counts) == (3, (3, 1, 0))
    assert (by_label["H0*T0*U5*X0"].quality.w, by_label["H0*T0*U5*X0"].quality.e.counts) == (3, (3, 1, 0))


def test_synthesize_variant1_with_priorities():
    morphology = Morphology(
        ScaleSpec(3, 4),
        (
            Part("a", (DesignOption("a1", priority=1), DesignOption("a2", priority=3))),
            Part("b", (DesignOption("b1", priority=2), DesignOption("b2", priority=1))),
        ),
    )
    compat = CompatibilitySpec(
        max_level=2,
        ordinal={("a1", "b1"): 2, ("a1", "b2"): 1, ("a2", "b1"): 1, ("a2", "b2"): 0},
    )
    result = synthesize(morphology, compat, variant=1)
    assert [c.feasible for c in result.composites] == [True, True, True, False]
    best = {c.solution.label() for c in result.pareto}
    # a1*b2 has the best counts but grade 1; a1*b1 trades counts for grade 2.
    assert best == {"a1*b1", "a1*b2"}


def _random_instance(seed: int):
    rng = random.Random(seed)
    scale = ScaleSpec(3, 4)
    parts = []
    names = []
    for p in range(rng.randint(2, 4)):
        options = []
        for o in range(rng.randint(1, 5)):
            name = f"p{p}o{o}"
            counts = [0, 0, 0]
            for _ in range(4):
                counts[rng.randrange(3)] += 1
            options.append(DesignOption(name, estimate=MultisetEstimate(tuple(counts))))
            names.append(name)
        parts.append(Part(f"p{p}", tuple(options)))
    morphology = Morphology(scale, tuple(parts))
    ordinal = {}
    for i, a in enumerate(names):
        for b in names[i + 1 :]:
            if morphology.part_of(a) != morphology.part_of(b):
                ordinal[(a, b)] = rng.randint(0, 3)
    return morphology, CompatibilitySpec(max_level=3, ordinal=ordinal)


def test_pareto_filter_matches_double_loop_on_random_instances():
    for seed in range(30):
        morphology, compat = _random_instance(seed)
        result = synthesize(morphology, compat, variant=2)
        feasible = result.feasible
        points = [(c.quality.w, c.quality.e.counts) for c in feasible]
        expected = oracles.pareto_front_double_loop(points)
        got = [i for i, c in enumerate(feasible) if c.pareto]
        assert got == expected, f"seed {seed}"


def test_variant3_feasibility_shrinks_with_rising_floor():
    floors = [E(0, 0, 4), E(0, 2, 2), E(0, 4, 0), E(2, 2, 0), E(4, 0, 0)]
    for seed in range(10):
        morphology, base = _random_instance(seed)
        rng = random.Random(1000 + seed)
        multiset = {}
        for key in base.ordinal:
            counts = [0, 0, 0]
            for _ in range(4):
                counts[rng.randrange(3)] += 1
            multiset[key] = MultisetEstimate(tuple(counts))
        previous = None
        for floor in floors:
            compat = CompatibilitySpec(max_level=3, multiset=multiset, floor=floor)
            feasible = {
                c.solution.selection
                for c in synthesize(morphology, compat, variant=3).feasible
            }
            if previous is not None:
                assert feasible <= previous, f"seed {seed}, floor {floor}"
            previous = feasible


def test_variant3_requires_floor(technique_morphology):
    morphology, compat = technique_morphology
    with pytest.raises(ValueError):
        synthesize(morphology, compat, variant=3)
    with pytest.raises(ValueError):
        synthesize(morphology, compat, variant=9)
