"""Shared domain types and exact weight arithmetic.

Everything downstream (the streaming matcher, the window engine, the oracle,
the generators) works on the types defined here.  Weights are exact rationals
(`fractions.Fraction`) by default so that knife-edge inequality checks never
depend on float rounding; a float-based throughput mode exists only at the
stream-parsing boundary for benchmarks.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Weight = Fraction

ZERO = Fraction(0)

LABELS = ("A", "B", "C")


def parse_weight(text: str) -> Fraction:
    """Parse an exact rational from `p/q`, integer, or decimal notation.

    Decimal strings convert exactly (`"1.5"` -> 3/2); no binary rounding is
    introduced anywhere.
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational {text!r}: {exc}") from None


def format_weight(value: Fraction | float, decimal_digits: int | None = None) -> str:
    """Render a weight, exactly as `p/q` or rounded to `decimal_digits` places."""
    if decimal_digits is None:
        return str(value)
    frac = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = decimal_digits + len(str(abs(frac.numerator))) + 10
        dec = Decimal(frac.numerator) / Decimal(frac.denominator)
        return f"{dec:.{decimal_digits}f}"


@dataclass(frozen=True)
class EdgeEvent:
    """One stream item: an undirected weighted edge with its arrival index."""

    u: int
    v: int
    weight: Fraction
    index: int = 0
    label: str | None = None

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise ValueError(f"self-loop at vertex {self.u}")
        if self.u < 0 or self.v < 0:
            raise ValueError(f"negative vertex id in ({self.u}, {self.v})")
        if not self.weight > 0:
            raise ValueError(f"edge weight must be positive, got {self.weight}")
        if self.label is not None and self.label not in LABELS:
            raise ValueError(f"unknown label {self.label!r}")

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)

    def touches(self, vertex: int) -> bool:
        return vertex == self.u or vertex == self.v


@dataclass(frozen=True)
class StreamSlice:
    """An ordered run of edge events over a fixed vertex universe of size `n`."""

    n: int
    events: tuple[EdgeEvent, ...] = ()
    label: str = "plain"

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex universe size must be non-negative")
        prev = -1
        for e in self.events:
            if e.u >= self.n or e.v >= self.n:
                raise ValueError(
                    f"edge ({e.u}, {e.v}) outside vertex universe of size {self.n}"
                )
            if e.index <= prev:
                raise ValueError("event arrival indices must strictly increase")
            prev = e.index

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[EdgeEvent]:
        return iter(self.events)

    def restrict(self, label: str) -> StreamSlice:
        """Extract the substream carrying `label`, renumbered from 0."""
        picked = [e for e in self.events if e.label == label]
        events = tuple(replace(e, index=i) for i, e in enumerate(picked))
        return StreamSlice(n=self.n, events=events, label=label)

    def total_weight(self) -> Fraction:
        return sum((e.weight for e in self.events), ZERO)


def make_slice(
    n: int,
    edges: Iterable[tuple[int, int, Fraction | int | str]],
    label: str = "plain",
    event_label: str | None = None,
) -> StreamSlice:
    """Build a slice from `(u, v, w)` triples, assigning arrival indices 0.."""
    events = []
    for i, (u, v, w) in enumerate(edges):
        weight = w if isinstance(w, Fraction) else parse_weight(str(w))
        events.append(EdgeEvent(u, v, weight, index=i, label=event_label))
    return StreamSlice(n=n, events=tuple(events), label=label)


def concat(parts: Sequence[StreamSlice]) -> StreamSlice:
    """Concatenate slices into one stream, reassigning arrival indices 0..m-1.

    Per-event labels are preserved so the parts can be recovered later with
    `StreamSlice.restrict`.
    """
    n = max((p.n for p in parts), default=0)
    events = []
    t = 0
    for part in parts:
        for e in part.events:
            events.append(replace(e, index=t))
            t += 1
    return StreamSlice(n=n, events=tuple(events), label="plain")


def window(stream: StreamSlice, i: int, window_len: int) -> StreamSlice:
    """The last `min(window_len, i + 1)` events ending at position `i`.

    Positions are 0-based: the window at `i` spans stream positions
    `max(i - window_len + 1, 0) .. i`.
    """
    if window_len < 1:
        raise ValueError("window length must be >= 1")
    if i < 0 or i >= len(stream.events):
        raise IndexError(f"position {i} out of range for stream of {len(stream)}")
    lo = max(i - window_len + 1, 0)
    return StreamSlice(n=stream.n, events=stream.events[lo : i + 1], label=stream.label)


@dataclass(frozen=True)
class Matching:
    """A vertex-disjoint edge set together with its exact total weight."""

    edges: tuple[EdgeEvent, ...] = ()
    total: Fraction = ZERO

    @staticmethod
    def from_edges(edges: Iterable[EdgeEvent]) -> Matching:
        """Validate disjointness and compute the total; edges sorted by arrival."""
        picked = sorted(edges, key=lambda e: e.index)
        used: set[int] = set()
        for e in picked:
            if e.u in used or e.v in used:
                raise ValueError(f"edges share endpoint at ({e.u}, {e.v})")
            used.add(e.u)
            used.add(e.v)
        total = sum((e.weight for e in picked), ZERO)
        return Matching(edges=tuple(picked), total=total)

    def __len__(self) -> int:
        return len(self.edges)


def is_valid_matching(edges: Iterable[EdgeEvent]) -> bool:
    """O(|edges|) endpoint-disjointness check."""
    used: set[int] = set()
    for e in edges:
        if e.u in used or e.v in used:
            return False
        used.add(e.u)
        used.add(e.v)
    return True
