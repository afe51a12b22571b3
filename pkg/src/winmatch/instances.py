"""Stream generators: the lookahead hard instance, random streams, stress cases.

The hard instance is a stream in three labelled parts A, B, C on which the
matching-weight smoothness test is blind: the matcher's output weight is
identical on B and AB, yet the matching it reports on BC is roughly a factor
3.5 below the true optimum of the whole stream as epsilon -> 0.  The
reduced-weight totals, however, do differ between B and AB, which is exactly
what the window engine's smoothness value picks up.

The instance is specified by its measured behaviour, not by a frozen edge
list: construction re-runs the matcher and the exact oracle and aborts with a
diagnostic if any expected aggregate fails to hold.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import EdgeEvent, StreamSlice, concat, make_slice
from .local_ratio import MatcherParams, Matcher, degree_cap, run, run_monotonic
from .oracle import exact_mwm


@dataclass(frozen=True)
class ConstraintCheck:
    """One verified aggregate: expected versus measured."""

    name: str
    expected: str
    measured: str
    passed: bool


class HardInstanceError(RuntimeError):
    """The constructed instance failed one of its defining constraints."""

    def __init__(self, failures: list[ConstraintCheck]):
        lines = ", ".join(
            f"{c.name} (expected {c.expected}, measured {c.measured})"
            for c in failures
        )
        super().__init__(f"hard instance constraint failure: {lines}")
        self.failures = failures


@dataclass(frozen=True)
class HardInstanceTargets:
    """Closed-form aggregates the instance must reproduce exactly."""

    epsilon: Fraction

    @property
    def monotonic_ab(self) -> Fraction:
        return 2 + 2 * self.epsilon

    @property
    def monotonic_b(self) -> Fraction:
        return 2 + 2 * self.epsilon

    @property
    def reduced_ab(self) -> Fraction:
        return 2 + 2 * self.epsilon

    @property
    def reduced_b(self) -> Fraction:
        return 1 + 2 * self.epsilon

    @property
    def matched_bc(self) -> Fraction:
        return 2 + 4 * self.epsilon

    @property
    def mwm_full(self) -> Fraction:
        return 7 + 3 * self.epsilon

    @property
    def ratio(self) -> Fraction:
        """Gap between the whole-stream optimum and the BC report."""
        return self.mwm_full / self.matched_bc


@dataclass(frozen=True)
class HardInstance:
    epsilon: Fraction
    slice_a: StreamSlice
    slice_b: StreamSlice
    slice_c: StreamSlice

    @property
    def targets(self) -> HardInstanceTargets:
        return HardInstanceTargets(self.epsilon)

    def full(self) -> StreamSlice:
        """The concatenated stream ABC with per-event labels preserved."""
        return concat([self.slice_a, self.slice_b, self.slice_c])


# Vertex layout: two disjoint paths 0-1-2-3 and 4-5-6-7 (interior vertices
# 1, 2 and 5, 6), the B-path interior/end vertices 8 and 9, the booster
# endpoint 10, and pendant vertices 11, 12, 13.
_HARD_N = 14


def build_hard_slices(
    epsilon: Fraction,
) -> tuple[StreamSlice, StreamSlice, StreamSlice]:
    one = Fraction(1)
    thick = 1 + epsilon
    closer = 1 + 3 * epsilon
    slice_a = make_slice(
        _HARD_N,
        [
            # middle edges of the two paths arrive first,
            (1, 2, thick),
            (5, 6, thick),
            # then the four unit end edges
            (0, 1, one),
            (2, 3, one),
            (4, 5, one),
            (6, 7, one),
        ],
        label="A",
        event_label="A",
    )
    # B is a 3-edge path 9-1-8-2 threaded through the interior vertices of
    # the first A-path; its middle unit edge arrives first so that, run
    # alone, the two outer edges are retained with tiny reduced weights.
    slice_b = make_slice(
        _HARD_N,
        [
            (1, 8, one),
            (9, 1, thick),
            (8, 2, thick),
        ],
        label="B",
        event_label="B",
    )
    # C: a booster edge raising the potentials of 9 and 10, two pendant unit
    # edges that the boosted potentials suppress, and a heavy closer on 8.
    slice_c = make_slice(
        _HARD_N,
        [
            (9, 10, thick),
            (9, 11, one),
            (10, 12, one),
            (8, 13, closer),
        ],
        label="C",
        event_label="C",
    )
    return slice_a, slice_b, slice_c


def _is_two_disjoint_paths(slice_a: StreamSlice) -> bool:
    """Two vertex-disjoint 3-edge paths, middle edges arriving first."""
    edges = list(slice_a.events)
    if len(edges) != 6:
        return False
    degree: dict[int, int] = {}
    for e in edges:
        degree[e.u] = degree.get(e.u, 0) + 1
        degree[e.v] = degree.get(e.v, 0) + 1
    if len(degree) != 8 or any(d > 2 for d in degree.values()):
        return False
    if sum(1 for d in degree.values() if d == 1) != 4:
        return False
    # Count connected components by union-find.
    parent = {v: v for v in degree}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in edges:
        parent[find(e.u)] = find(e.v)
    if len({find(v) for v in degree}) != 2:
        return False
    # The first two arrivals must be the middle edges (both endpoints
    # interior, i.e. degree 2).
    return all(
        degree[e.u] == 2 and degree[e.v] == 2 for e in edges[:2]
    )


def verify_hard_slices(
    slice_a: StreamSlice,
    slice_b: StreamSlice,
    slice_c: StreamSlice,
    epsilon: Fraction,
) -> list[ConstraintCheck]:
    """Measure every defining aggregate of a candidate hard instance.

    Returns one check per constraint; callers decide whether to abort.
    """
    targets = HardInstanceTargets(epsilon)
    n = max(slice_a.n, slice_b.n, slice_c.n)
    params = MatcherParams(epsilon, max(n, 1))
    ab = concat([slice_a, slice_b])
    bc = concat([slice_b, slice_c])
    full = concat([slice_a, slice_b, slice_c])

    checks: list[ConstraintCheck] = []

    def check(name: str, expected, measured) -> None:
        checks.append(
            ConstraintCheck(
                name=name,
                expected=str(expected),
                measured=str(measured),
                passed=expected == measured,
            )
        )

    _, best_ab = run_monotonic(params, ab)
    _, best_b = run_monotonic(params, slice_b)
    check("a.monotonic_ab", targets.monotonic_ab, best_ab.total)
    check("a.monotonic_b", targets.monotonic_b, best_b.total)

    check("b.reduced_ab", targets.reduced_ab, run(params, ab).reduced_total)
    check("b.reduced_b", targets.reduced_b, run(params, slice_b).reduced_total)

    matcher_bc = Matcher(params)
    pushed_bc: list[EdgeEvent] = []
    for event in bc:
        if matcher_bc.process(event).pushed:
            pushed_bc.append(event)
    matched_bc = matcher_bc.extract_matching().total
    check("c.matched_bc", targets.matched_bc, matched_bc)
    check(
        "c.matched_bc_is_best_pushed",
        targets.matched_bc,
        exact_mwm(pushed_bc).total,
    )

    check("d.mwm_full", targets.mwm_full, exact_mwm(full.events).total)

    matcher_ab = Matcher(params)
    pushed_b_in_ab = 0
    for event in ab:
        if matcher_ab.process(event).pushed and event.label == "B":
            pushed_b_in_ab += 1
    check("e.no_b_edge_pushed_in_ab", 0, pushed_b_in_ab)

    check("f.a_is_two_disjoint_paths", True, _is_two_disjoint_paths(slice_a))
    return checks


def hard_instance(epsilon: Fraction) -> HardInstance:
    """Build the hard instance for a given epsilon and self-verify it.

    Raises HardInstanceError naming every failed constraint if the
    construction does not reproduce the expected aggregates exactly.
    """
    if not (0 < epsilon <= Fraction(1, 10)):
        raise ValueError(f"epsilon must be in (0, 1/10], got {epsilon}")
    slice_a, slice_b, slice_c = build_hard_slices(epsilon)
    checks = verify_hard_slices(slice_a, slice_b, slice_c, epsilon)
    failures = [c for c in checks if not c.passed]
    if failures:
        raise HardInstanceError(failures)
    return HardInstance(epsilon, slice_a, slice_b, slice_c)


@dataclass(frozen=True)
class RandomStreamSpec:
    """Seeded random stream description; fully reproducible from its fields."""

    n: int
    m: int
    seed: int
    weight_min: int = 1
    weight_max: int = 100
    denominator: int = 1
    duplicate_rate: float = 0.0
    distribution: str = "uniform"  # "uniform" | "powerlaw"
    powerlaw_buckets: int = 10

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("need at least two vertices")
        if self.m < 0:
            raise ValueError("negative stream length")
        if not (1 <= self.weight_min <= self.weight_max):
            raise ValueError("need 1 <= weight_min <= weight_max")
        if self.denominator < 1:
            raise ValueError("denominator must be >= 1")
        if not (0.0 <= self.duplicate_rate <= 1.0):
            raise ValueError("duplicate rate must be in [0, 1]")
        if self.distribution not in ("uniform", "powerlaw"):
            raise ValueError(f"unknown distribution {self.distribution!r}")


def random_stream(spec: RandomStreamSpec) -> StreamSlice:
    """Deterministic stream of `m` weighted edges on `n` vertices."""
    rng = random.Random(spec.seed)
    pairs: list[tuple[int, int]] = []
    edges = []
    for _ in range(spec.m):
        if pairs and rng.random() < spec.duplicate_rate:
            u, v = rng.choice(pairs)
        else:
            u = rng.randrange(spec.n)
            v = rng.randrange(spec.n - 1)
            if v >= u:
                v += 1
            pairs.append((u, v))
        if spec.distribution == "powerlaw":
            weight = Fraction(2 ** rng.randrange(spec.powerlaw_buckets + 1))
        else:
            weight = Fraction(
                rng.randint(
                    spec.weight_min * spec.denominator,
                    spec.weight_max * spec.denominator,
                ),
                spec.denominator,
            )
        edges.append((u, v, weight))
    return make_slice(spec.n, edges)


def adversarial_suite(
    epsilon: Fraction = Fraction(1, 10), oracle_safe: bool = False
) -> dict[str, StreamSlice]:
    """Fixed named stress streams, deterministic given epsilon.

    With `oracle_safe=True` every stream fits the exact oracle's default
    limits (for ratio measurements); the full-size variants exist to stress
    the stack cap and bucket pruning where no oracle is needed.
    """
    cap = degree_cap(epsilon)
    star_edges = 19 if oracle_safe else 5 * cap
    path_edges = 19 if oracle_safe else 60
    phase = 6 if oracle_safe else 20
    repeats = 12 if oracle_safe else 40

    # Escalating star: every edge beats the centre potential, so every edge
    # is pushed and the centre's stacked degree pins at the cap.
    star = make_slice(
        star_edges + 1,
        [(0, i + 1, Fraction(3**i)) for i in range(star_edges)],
    )

    # Geometric path: weight (1+eps)^(k+1) at depth k keeps every arrival at
    # or above its push threshold, exercising the tie-pushes branch.
    path = make_slice(
        path_edges + 1,
        [(k, k + 1, (1 + epsilon) ** (k + 1)) for k in range(path_edges)],
    )

    # Heavy prefix then unit-weight duplicates of the same pairs: old buckets
    # keep large smoothness values while fresh suffix runs stay tiny.
    heavy_light = make_slice(
        2 * phase,
        [(2 * i, 2 * i + 1, Fraction(1000 + i)) for i in range(phase)]
        + [(2 * i, 2 * i + 1, Fraction(1)) for i in range(phase)],
    )

    # One edge repeated verbatim: all suffix runs agree, so the engine's
    # bucket list collapses to a handful regardless of stream length.
    repeat = make_slice(2, [(0, 1, Fraction(5)) for _ in range(repeats)])

    return {
        "empty": StreamSlice(n=2),
        "star-cap": star,
        "geometric-path": path,
        "heavy-light": heavy_light,
        "parallel-repeat": repeat,
    }
