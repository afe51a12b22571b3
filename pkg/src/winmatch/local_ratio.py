"""Streaming local-ratio weighted matching.

The matcher keeps a potential per vertex and a stack of retained edges.  An
arriving edge is discarded when its weight is below (1 + eps) times the sum of
its endpoint potentials; otherwise its reduced weight (weight minus endpoint
potentials) is credited to both potentials and the edge is pushed.  A
per-vertex cap on stacked degree evicts the oldest incident edge, keeping the
stack small.  The output matching is a greedy unwind of the stack, newest
first.

Two summary quantities drive everything downstream:

* `reduced_total` -- the running sum of all reduced weights ever assigned,
  including those of evicted edges.  It never decreases, equals half the sum
  of all potentials, and lower-bounds the maximum matching weight.
* the greedy-unwind matching weight, which is within a constant factor of the
  maximum matching weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from .core import ZERO, EdgeEvent, Matching, StreamSlice, format_weight

EPSILON_MAX = Fraction(1, 10)


def degree_cap(epsilon: Fraction) -> int:
    """Per-vertex stacked-degree bound: floor(3 * log2(1/eps) / eps) + 1."""
    inv = Fraction(1) / epsilon
    value = 3.0 * float(inv) * (math.log2(inv.numerator) - math.log2(inv.denominator))
    return math.floor(value) + 1


@dataclass(frozen=True)
class MatcherParams:
    """Parameters of one matcher run: accuracy knob and vertex universe size.

    `epsilon` must lie in (0, 1/10]; the window-engine guarantees are stated
    for that range and the cap formula below assumes it.
    """

    epsilon: Fraction
    n: int

    def __post_init__(self) -> None:
        if not (0 < self.epsilon <= EPSILON_MAX):
            raise ValueError(
                f"epsilon must be in (0, {EPSILON_MAX}], got {self.epsilon}"
            )
        if self.n < 1:
            raise ValueError("vertex universe size must be >= 1")

    @property
    def degree_cap(self) -> int:
        return degree_cap(self.epsilon)


class StackedEdge(NamedTuple):
    event: EdgeEvent
    reduced: Fraction


class StepResult(NamedTuple):
    """Outcome of processing one event."""

    pushed: bool
    reduced: Fraction
    evicted: tuple[EdgeEvent, ...]


class Matcher:
    """Mutable run state of the streaming local-ratio matcher.

    A matcher instance has a single logical writer; distinct instances are
    fully independent and may be advanced concurrently (the window engine
    relies on this).
    """

    def __init__(self, params: MatcherParams):
        self.params = params
        self._potential: dict[int, Fraction] = {}
        self._stack: list[StackedEdge] = []
        self._stacked_degree: dict[int, int] = {}
        self._reduced_total: Fraction = ZERO
        self.seen = 0

    @property
    def reduced_total(self) -> Fraction:
        """Sum of all reduced weights ever assigned (evictions keep theirs)."""
        return self._reduced_total

    @property
    def stack(self) -> tuple[StackedEdge, ...]:
        return tuple(self._stack)

    @property
    def stack_size(self) -> int:
        return len(self._stack)

    def potential(self, vertex: int) -> Fraction:
        return self._potential.get(vertex, ZERO)

    def potential_sum(self) -> Fraction:
        return sum(self._potential.values(), ZERO)

    def stacked_degree(self, vertex: int) -> int:
        return self._stacked_degree.get(vertex, 0)

    def process(self, event: EdgeEvent) -> StepResult:
        """Feed one edge; returns whether it was pushed and what was evicted.

        Ties push: an edge whose weight equals (1 + eps) times the potential
        sum is retained, because only strictly smaller weights are discarded.
        """
        u, v = event.u, event.v
        if u >= self.params.n or v >= self.params.n:
            raise ValueError(
                f"edge ({u}, {v}) outside vertex universe of size {self.params.n}"
            )
        self.seen += 1
        base = self.potential(u) + self.potential(v)
        if event.weight < (1 + self.params.epsilon) * base:
            return StepResult(pushed=False, reduced=ZERO, evicted=())
        reduced = event.weight - base
        self._potential[u] = self.potential(u) + reduced
        self._potential[v] = self.potential(v) + reduced
        self._reduced_total += reduced
        self._stack.append(StackedEdge(event, reduced))
        self._stacked_degree[u] = self.stacked_degree(u) + 1
        self._stacked_degree[v] = self.stacked_degree(v) + 1
        evicted = []
        for x in (u, v):
            if self.stacked_degree(x) > self.params.degree_cap:
                evicted.append(self._evict_oldest(x))
        return StepResult(pushed=True, reduced=reduced, evicted=tuple(evicted))

    def _evict_oldest(self, vertex: int) -> EdgeEvent:
        # Stack order is push order, so the first incident entry is the oldest.
        # Its reduced weight stays counted in potentials and reduced_total.
        for pos, entry in enumerate(self._stack):
            if entry.event.touches(vertex):
                del self._stack[pos]
                self._stacked_degree[entry.event.u] -= 1
                self._stacked_degree[entry.event.v] -= 1
                return entry.event
        raise AssertionError(f"no stacked edge at vertex {vertex}")

    def extract_matching(self) -> Matching:
        """Greedy unwind: pop newest first, keep whatever stays disjoint.

        Non-destructive; the stack is unchanged, so the same matcher can be
        queried after every event.
        """
        used: set[int] = set()
        chosen: list[EdgeEvent] = []
        for entry in reversed(self._stack):
            e = entry.event
            if e.u not in used and e.v not in used:
                used.add(e.u)
                used.add(e.v)
                chosen.append(e)
        return Matching.from_edges(chosen)

    def trace_row(self, event: EdgeEvent, step: StepResult) -> str:
        """One text record per processed event, for golden-file tests."""
        status = "pushed" if step.pushed else "discarded"
        return ", ".join(
            [
                str(event.index),
                str(event.u),
                str(event.v),
                format_weight(event.weight),
                status,
                format_weight(step.reduced),
                format_weight(self.potential(event.u)),
                format_weight(self.potential(event.v)),
                str(self.stack_size),
                format_weight(self.reduced_total),
            ]
        )


def run(
    params: MatcherParams,
    events: StreamSlice | Iterable[EdgeEvent],
    trace: Callable[[str], None] | None = None,
) -> Matcher:
    """Fold a fresh matcher over a stream and return the final state."""
    matcher = Matcher(params)
    for event in events:
        step = matcher.process(event)
        if trace is not None:
            trace(matcher.trace_row(event, step))
    return matcher


def run_monotonic(
    params: MatcherParams, events: StreamSlice | Iterable[EdgeEvent]
) -> tuple[Matcher, Matching]:
    """Fold while re-extracting after every push; keep the heaviest matching.

    The state evolution is identical to `run`; only the reported matching
    differs.  Re-extraction happens after the event is fully processed
    (including any evictions the push triggered); discarded events cannot
    change the stack, so they trigger no re-extraction.  The running best is
    replaced only on strict improvement, which keeps the output deterministic.
    """
    matcher = Matcher(params)
    best = Matching()
    for event in events:
        step = matcher.process(event)
        if step.pushed:
            candidate = matcher.extract_matching()
            if candidate.total > best.total:
                best = candidate
    return matcher, best


def lookahead_condition(
    output_b: Fraction, output_ab: Fraction, beta: Fraction
) -> bool:
    """Smoothness test between a run on B and a run on AB: B >= (1-beta)*AB."""
    if not (0 < beta < 1):
        raise ValueError(f"beta must be in (0, 1), got {beta}")
    return output_b >= (1 - beta) * output_ab
