"""Shared fixtures: the worked 9x2 decision data set and the technique
morphology with its compatibility table."""

from __future__ import annotations

import pytest

from rankweave import Criterion, EstimateMatrix, MultisetEstimate, ScaleSpec
from rankweave.synthesis import CompatibilitySpec, DesignOption, Morphology, Part

REFERENCE_SCORES = [
    (2, 3),
    (2, 4),
    (1, 3),
    (4, 4),
    (1, 1),
    (4, 3),
    (2, 2),
    (0, 2),
    (2, 1),
]


def build_reference_matrix() -> EstimateMatrix:
    criteria = [Criterion(j, scale_min=0, scale_max=4) for j in (1, 2)]
    return EstimateMatrix.build(REFERENCE_SCORES, criteria=criteria)


@pytest.fixture
def reference_matrix() -> EstimateMatrix:
    return build_reference_matrix()


def _graded(name: str, counts: tuple[int, int, int]) -> DesignOption:
    return DesignOption(name, estimate=MultisetEstimate(counts))


def build_technique_morphology() -> tuple[Morphology, CompatibilitySpec]:
    """Morphology of the four solving stages, graded on P(l=3, eta=4).

    Absent-stage options are special: skipping the relation stage (H0)
    still sits in compatibility chains but carries no estimate, skipping
    the ordering stage (T0) is fully transparent, and the single
    pass-through aggregator (X0) is estimate-graded but compatible with
    anything.
    """
    morphology = Morphology(
        ScaleSpec(3, 4),
        (
            Part(
                "relation",
                (
                    DesignOption("H0", contributes_estimate=False),
                    _graded("H1", (4, 0, 0)),
                    _graded("H2", (3, 1, 0)),
                    _graded("H3", (3, 1, 0)),
                ),
            ),
            Part(
                "ordering",
                (
                    DesignOption(
                        "T0", contributes_estimate=False, contributes_compatibility=False
                    ),
                    _graded("T1", (1, 2, 1)),
                    _graded("T2", (2, 2, 0)),
                ),
            ),
            Part(
                "layering",
                (
                    _graded("U1", (2, 2, 0)),
                    _graded("U2", (4, 0, 0)),
                    _graded("U3", (0, 1, 3)),
                    _graded("U4", (2, 2, 0)),
                    _graded("U5", (3, 1, 0)),
                ),
            ),
            Part(
                "aggregation",
                (
                    DesignOption(
                        "X0",
                        estimate=MultisetEstimate((0, 4, 0)),
                        contributes_compatibility=False,
                    ),
                ),
            ),
        ),
    )

    pairs: dict[tuple[str, str], int] = {}
    for t, v in (("T0", 3), ("T1", 3), ("T2", 3)):
        pairs[("H0", t)] = v
    for u, v in (("U1", 0), ("U2", 0), ("U3", 0), ("U4", 3), ("U5", 3)):
        pairs[("H0", u)] = v
    pairs[("H0", "X0")] = 0
    for h in ("H1", "H2", "H3"):
        pairs[(h, "T0")] = 0
        pairs[(h, "T1")] = 1
        pairs[(h, "T2")] = 0
        pairs[(h, "X0")] = 3
    for u, v in (("U1", 2), ("U2", 2), ("U3", 0), ("U4", 0), ("U5", 0)):
        pairs[("H1", u)] = v
    for h in ("H2", "H3"):
        for u, v in (("U1", 3), ("U2", 3), ("U3", 0), ("U4", 0), ("U5", 0)):
            pairs[(h, u)] = v
    for u, v in (("U1", 0), ("U2", 0), ("U3", 0), ("U4", 3), ("U5", 3)):
        pairs[("T0", u)] = v
    for t in ("T1", "T2"):
        for u, v in (("U1", 0), ("U2", 0), ("U3", 2), ("U4", 0), ("U5", 0)):
            pairs[(t, u)] = v
        pairs[(t, "X0")] = 3
    for u in ("U1", "U2", "U3", "U4", "U5"):
        pairs[(u, "X0")] = 3

    compat = CompatibilitySpec(max_level=3, ordinal=pairs)
    return morphology, compat


@pytest.fixture
def technique_morphology() -> tuple[Morphology, CompatibilitySpec]:
    return build_technique_morphology()
