"""Independent slow-path checkers used by the test suite.

Everything here deliberately avoids the library's closed-form or
incremental implementations: proximity and dominance are recomputed by
breadth-first search over one-step element moves, medians by exhaustive
scan, Pareto fronts by double loops, and the capacity aggregator by
trying every assignment.
"""

from __future__ import annotations

from collections import deque
from itertools import product


def element_moves(counts: tuple[int, ...]):
    """One-step neighbours of a counts vector with the move kind."""
    l = len(counts)
    for i in range(l):
        if counts[i] == 0:
            continue
        if i > 0:
            up = list(counts)
            up[i] -= 1
            up[i - 1] += 1
            yield tuple(up), "improve"
        if i < l - 1:
            down = list(counts)
            down[i] -= 1
            down[i + 1] += 1
            yield tuple(down), "degrade"


def move_split(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, int]:
    """(improvements, degradations) along a shortest move path a -> b.

    Any shortest path has the same split, because each move changes one
    cumulative boundary by exactly one.
    """
    start, goal = tuple(a), tuple(b)
    parent: dict[tuple[int, ...], tuple | None] = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == goal:
            break
        for neighbour, kind in element_moves(state):
            if neighbour not in parent:
                parent[neighbour] = (state, kind)
                queue.append(neighbour)
    if goal not in parent:
        raise AssertionError(f"no move path {a} -> {b}")
    improvements = degradations = 0
    state = goal
    while parent[state] is not None:
        state, kind = parent[state]
        if kind == "improve":
            improvements += 1
        else:
            degradations += 1
    return improvements, degradations


def degradation_reachable(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """True when b is reachable from a using degradations only, i.e. a is
    at least as good as b."""
    start, goal = tuple(a), tuple(b)
    seen = {start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state == goal:
            return True
        for neighbour, kind in element_moves(state):
            if kind == "degrade" and neighbour not in seen:
                seen.add(neighbour)
                queue.append(neighbour)
    return False


def all_counts(levels: int, cardinality: int) -> list[tuple[int, ...]]:
    """Every counts vector, no particular order guarantees."""
    if levels == 1:
        return [(cardinality,)]
    out = []
    for first in range(cardinality + 1):
        for rest in all_counts(levels - 1, cardinality - first):
            out.append((first,) + rest)
    return out


def contiguous(counts: tuple[int, ...]) -> bool:
    support = [i for i, c in enumerate(counts) if c > 0]
    return support[-1] - support[0] + 1 == len(support)


def median_scan(
    inputs: list[tuple[int, ...]],
    candidates: list[tuple[int, ...]],
    extra=None,
) -> tuple[int, ...]:
    """Exhaustive median with the library's tie policy, recomputed from
    BFS primitives: keep cost minimizers, drop dominated ones, take the
    lexicographically greatest survivor."""
    best_cost = None
    minimizers: list[tuple[int, ...]] = []
    for m in candidates:
        cost = sum(sum(move_split(m, e)) for e in inputs)
        if extra is not None:
            cost += extra(m)
        if best_cost is None or cost < best_cost:
            best_cost, minimizers = cost, [m]
        elif cost == best_cost:
            minimizers.append(m)
    maximal = [
        m
        for m in minimizers
        if not any(o != m and degradation_reachable(o, m) for o in minimizers)
    ]
    return max(maximal)


def scc_by_reachability(n: int, edges: set[tuple[int, int]]) -> list[frozenset[int]]:
    """Strongly-connected components via mutual reachability."""

    def reach(start: int) -> set[int]:
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for a, b in edges:
                if a == v and b not in seen:
                    seen.add(b)
                    queue.append(b)
        return seen

    reachable = {v: reach(v) for v in range(1, n + 1)}
    components: list[frozenset[int]] = []
    assigned: set[int] = set()
    for v in range(1, n + 1):
        if v in assigned:
            continue
        comp = frozenset(
            w for w in range(1, n + 1) if w in reachable[v] and v in reachable[w]
        )
        components.append(comp)
        assigned |= comp
    return components


def peel_frontiers(rows: list[tuple], maximize: list[bool]) -> list[list[int]]:
    """Layering by repeated frontier removal, straight from raw scores."""

    def better_or_equal(x, y, j):
        return x >= y if maximize[j] else x <= y

    def dominates(a: int, b: int) -> bool:
        ra, rb = rows[a - 1], rows[b - 1]
        if ra == rb:
            return False
        return all(better_or_equal(ra[j], rb[j], j) for j in range(len(ra)))

    remaining = set(range(1, len(rows) + 1))
    layers = []
    while remaining:
        frontier = sorted(
            a for a in remaining if not any(dominates(b, a) for b in remaining)
        )
        layers.append(frontier)
        remaining -= set(frontier)
    return layers


def pareto_front_double_loop(points: list[tuple]) -> list[int]:
    """Indices of nondominated (w, counts) points, checked pairwise.

    ``w`` may be None, meaning the coordinate does not discriminate.
    """

    def cum(counts):
        total, out = 0, []
        for c in counts:
            total += c
            out.append(total)
        return out

    def at_least(p, q) -> bool:
        w1, e1 = p
        w2, e2 = q
        if (w1 is None) != (w2 is None):
            return False
        if w1 is not None and w1 < w2:
            return False
        if len(e1) != len(e2):
            return False
        return all(x >= y for x, y in zip(cum(e1), cum(e2)))

    def dominates(p, q) -> bool:
        return at_least(p, q) and not at_least(q, p)

    return [
        i
        for i, p in enumerate(points)
        if not any(dominates(q, p) for j, q in enumerate(points) if j != i)
    ]


def capacity_assignment_oracle(
    positions: list[list[int]], capacities: list[int]
) -> list[list[int]]:
    """Best capacity-respecting layer partition by full enumeration.

    Minimizes total |layer - input position|; among optima the
    lexicographically smallest per-id layer vector wins, which is the
    same as sending smaller ids to better layers.  Returns the compressed
    partition as sorted lists.
    """
    n, m = len(positions), len(capacities)
    best: tuple | None = None
    for assign in product(range(1, m + 1), repeat=n):
        used = [0] * m
        for k in assign:
            used[k - 1] += 1
        if any(used[k] > capacities[k] for k in range(m)):
            continue
        cost = sum(
            sum(abs(k - p) for p in positions[i]) for i, k in enumerate(assign)
        )
        key = (cost, assign)
        if best is None or key < best:
            best = key
    if best is None:
        raise AssertionError("no feasible assignment")
    _, assign = best
    layers = [sorted(i + 1 for i, k in enumerate(assign) if k == target) for target in range(1, m + 1)]
    return [layer for layer in layers if layer]
