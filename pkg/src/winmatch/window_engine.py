"""Smooth-histogram sliding-window engine over the streaming matcher.

The engine maintains matcher runs on a pruned family of suffixes of the
stream ("buckets").  Each arriving edge opens a fresh bucket and is fed to
every live bucket.  Buckets are then pruned so that non-adjacent buckets have
clearly separated smoothness values, while adjacent ones may be close; the
smoothness value of a bucket is its matcher's `reduced_total`, and the
reported solution is the greedy-unwind matching of the oldest bucket that
fits the window.

Reported weight is always within a (3 + 20*eps) factor of the true maximum
matching weight of the window, for eps <= 1/10 and beta <= eps/9.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import EdgeEvent, Matching, StreamSlice
from .local_ratio import Matcher, MatcherParams, lookahead_condition, run
from .oracle import DEFAULT_LIMITS, OracleLimits, exact_mwm


@dataclass(frozen=True)
class WindowParams:
    """Window length, accuracy knobs, and reporting mode.

    `beta` defaults to epsilon/9, the largest value for which the engine's
    approximation bound is guaranteed.  `strict_report` switches the report
    rule during warm-up: by default the engine reports the oldest bucket
    whenever it coincides with the window exactly (which is always the case
    while fewer than `window_len` events have arrived), so every emitted
    report carries the approximation guarantee; with `strict_report=True` the
    engine follows the two-bucket histogram rule verbatim and reports the
    second bucket whenever the oldest one is not exactly the window, even
    during warm-up when that second bucket covers only part of the window.
    """

    window_len: int
    epsilon: Fraction
    n: int
    beta: Fraction | None = None
    strict_report: bool = False

    def __post_init__(self) -> None:
        if self.window_len < 1:
            raise ValueError("window length must be >= 1")
        if self.beta is None:
            object.__setattr__(self, "beta", self.epsilon / 9)
        assert self.beta is not None
        if not (0 < self.beta <= self.epsilon / 9):
            raise ValueError(
                f"beta must be in (0, epsilon/9], got beta={self.beta} "
                f"for epsilon={self.epsilon}"
            )
        # Validates the epsilon range as a side effect.
        MatcherParams(self.epsilon, self.n)

    @property
    def matcher_params(self) -> MatcherParams:
        return MatcherParams(self.epsilon, self.n)

    @property
    def smoothness_ratio(self) -> Fraction:
        """Factor between `reduced_total` and the true optimum: 2 + 2*eps."""
        return 2 + 2 * self.epsilon

    @property
    def report_ratio(self) -> Fraction:
        """Guaranteed window approximation factor: 3 + 20*eps."""
        return 3 + 20 * self.epsilon


@dataclass
class Bucket:
    """One suffix run: a matcher fed with every event since `start`."""

    start: int
    matcher: Matcher
    count: int = 0

    def feed(self, event: EdgeEvent) -> None:
        self.matcher.process(event)
        self.count += 1

    @property
    def smoothness(self) -> Fraction:
        return self.matcher.reduced_total


@dataclass(frozen=True)
class WindowReport:
    """Per-event output: the matching reported for the current window."""

    index: int
    window_start: int
    window_len: int
    matching: Matching
    source_bucket: int
    bucket_count: int

    @property
    def weight(self) -> Fraction:
        return self.matching.total


class WindowEngine:
    """Single-writer sliding-window engine; calls to `process` must not overlap."""

    def __init__(self, params: WindowParams):
        self.params = params
        self.buckets: list[Bucket] = []
        self.processed = 0

    @property
    def bucket_count(self) -> int:
        return len(self.buckets)

    def smoothness_values(self) -> list[Fraction]:
        return [b.smoothness for b in self.buckets]

    @property
    def window_start(self) -> int:
        return max(self.processed - self.params.window_len, 0)

    @property
    def current_window_len(self) -> int:
        return min(self.processed, self.params.window_len)

    def process(self, event: EdgeEvent) -> WindowReport:
        """One full engine step: open, feed, prune, drop, report."""
        L = self.params.window_len
        beta = self.params.beta
        assert beta is not None

        self.buckets.append(
            Bucket(start=self.processed, matcher=Matcher(self.params.matcher_params))
        )
        for bucket in self.buckets:
            bucket.feed(event)
        self.processed += 1

        # Prune: walk from the oldest bucket; keep only the newest bucket
        # whose smoothness is still within a (1 - beta) factor, delete the
        # ones in between, and continue from the kept one.
        total = len(self.buckets)
        alive = [True] * total
        i = 0
        while i < total - 2:
            threshold = (1 - beta) * self.buckets[i].smoothness
            j = None
            for cand in range(total - 1, i, -1):
                if self.buckets[cand].smoothness >= threshold:
                    j = cand
                    break
            if j is None:
                j = i + 1
            for r in range(i + 1, j):
                alive[r] = False
            i = j
        self.buckets = [b for b, keep in zip(self.buckets, alive) if keep]

        # Drop the oldest bucket once its successor already covers the window.
        if len(self.buckets) >= 2 and self.buckets[1].count >= L:
            del self.buckets[0]

        return self._report()

    def _report(self) -> WindowReport:
        oldest = self.buckets[0]
        if oldest.count == self.params.window_len:
            source = 1
        elif self.params.strict_report:
            source = 2 if len(self.buckets) >= 2 else 1
        elif oldest.count < self.params.window_len:
            # Warm-up: the oldest bucket is exactly the window.
            source = 1
        else:
            source = 2
        bucket = self.buckets[source - 1]
        return WindowReport(
            index=self.processed - 1,
            window_start=self.window_start,
            window_len=self.current_window_len,
            matching=bucket.matcher.extract_matching(),
            source_bucket=source,
            bucket_count=len(self.buckets),
        )

    def bucket_bound_ok(self) -> bool:
        """Check the bucket-count certificate after an event.

        For the largest odd k' <= k, the chain of pairwise separations forces
        (1 + beta)^((k'-1)/2) * smoothness(bucket k') < smoothness(bucket 1).
        The chain is empty for k' = 1, so the check is vacuous there.
        """
        beta = self.params.beta
        assert beta is not None
        k = len(self.buckets)
        k_odd = k if k % 2 == 1 else k - 1
        if k_odd < 3:
            return True
        lhs = (1 + beta) ** ((k_odd - 1) // 2) * self.buckets[k_odd - 1].smoothness
        return lhs < self.buckets[0].smoothness

    def separation_ok(self) -> bool:
        """Non-adjacent buckets must have clearly separated smoothness."""
        beta = self.params.beta
        assert beta is not None
        values = self.smoothness_values()
        return all(
            values[i + 2] < (1 - beta) * values[i] for i in range(len(values) - 2)
        )

    def sandwich_ok(self) -> bool:
        """The window must lie between the two oldest buckets (as event sets)."""
        start = self.window_start
        if self.buckets[0].start > start:
            return False
        if len(self.buckets) >= 2 and self.buckets[1].start < start:
            return False
        return True


def replay(
    params: WindowParams, stream: StreamSlice | Iterable[EdgeEvent]
) -> list[WindowReport]:
    """Feed a whole stream through a fresh engine; one report per event."""
    engine = WindowEngine(params)
    return [engine.process(event) for event in stream]


@dataclass(frozen=True)
class SplitAudit:
    """Audit record of one three-way split A | B | C of a stream."""

    cut_a: int
    cut_b: int
    reduced_b: Fraction
    reduced_ab: Fraction
    smooth: bool
    matched_bc: Fraction
    mwm_full: Fraction
    reduced_bc: Fraction
    mwm_bc: Fraction
    gate_ok: bool
    bound_ok: bool

    @property
    def ok(self) -> bool:
        return self.gate_ok and self.bound_ok


@dataclass(frozen=True)
class AuditReport:
    rows: tuple[SplitAudit, ...]
    epsilon: Fraction
    beta: Fraction

    @property
    def violations(self) -> tuple[SplitAudit, ...]:
        return tuple(row for row in self.rows if not row.ok)

    @property
    def ok(self) -> bool:
        return not self.violations


def all_splits(m: int) -> list[tuple[int, int]]:
    """Every (a, b) with 0 <= a <= b <= m: A = [0,a), B = [a,b), C = [b,m)."""
    return [(a, b) for a in range(m + 1) for b in range(a, m + 1)]


def lookahead_audit(
    stream: StreamSlice,
    splits: Sequence[tuple[int, int]],
    params: WindowParams,
    limits: OracleLimits = DEFAULT_LIMITS,
) -> AuditReport:
    """Audit the two-output lookahead contract on explicit three-way splits.

    For each split A | B | C the matcher is run on B, AB and BC.  Two checks
    are recorded per split:

    * gate: whenever the smoothness outputs satisfy
      reduced(B) >= (1 - beta) * reduced(AB), the matching reported on BC
      must satisfy  matched(BC) <= MWM(ABC) <= (3 + 20*eps) * matched(BC).
    * bound: unconditionally, reduced(BC) <= MWM(BC) <= (2+2*eps)*reduced(BC).
    """
    beta = params.beta
    assert beta is not None
    mp = params.matcher_params
    events = stream.events
    mwm_full = exact_mwm(events, limits).total
    rows = []
    for a, b in splits:
        part_b = events[a:b]
        part_ab = events[:b]
        part_bc = events[a:]
        reduced_b = run(mp, part_b).reduced_total
        reduced_ab = run(mp, part_ab).reduced_total
        bc = run(mp, part_bc)
        matched_bc = bc.extract_matching().total
        reduced_bc = bc.reduced_total
        mwm_bc = exact_mwm(part_bc, limits).total

        smooth = lookahead_condition(reduced_b, reduced_ab, beta)
        gate_ok = (not smooth) or (
            matched_bc <= mwm_full <= params.report_ratio * matched_bc
        )
        bound_ok = reduced_bc <= mwm_bc <= params.smoothness_ratio * reduced_bc
        rows.append(
            SplitAudit(
                cut_a=a,
                cut_b=b,
                reduced_b=reduced_b,
                reduced_ab=reduced_ab,
                smooth=smooth,
                matched_bc=matched_bc,
                mwm_full=mwm_full,
                reduced_bc=reduced_bc,
                mwm_bc=mwm_bc,
                gate_ok=gate_ok,
                bound_ok=bound_ok,
            )
        )
    return AuditReport(rows=tuple(rows), epsilon=params.epsilon, beta=beta)
