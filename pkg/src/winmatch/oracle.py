"""Exact ground truth: brute-force maximum-weight matching.

Two independent routes are kept deliberately: a branch-and-bound search used
everywhere, and a dumb full enumeration that cross-validates it on tiny
inputs.  Exactness is the point; weights stay rational throughout and sizes
are capped before any exponential search starts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import ZERO, EdgeEvent, Matching, StreamSlice, window


@dataclass(frozen=True)
class OracleLimits:
    max_edges: int = 24
    max_vertices: int = 20


DEFAULT_LIMITS = OracleLimits()

ENUMERATION_MAX_EDGES = 16


class OracleLimitError(ValueError):
    """Instance too large for exhaustive search."""


def _check_limits(edges: Sequence[EdgeEvent], limits: OracleLimits) -> None:
    if len(edges) > limits.max_edges:
        raise OracleLimitError(
            f"{len(edges)} edges exceed oracle limit of {limits.max_edges}"
        )
    vertices = {x for e in edges for x in e.endpoints}
    if len(vertices) > limits.max_vertices:
        raise OracleLimitError(
            f"{len(vertices)} vertices exceed oracle limit of {limits.max_vertices}"
        )


def exact_mwm(
    edges: Sequence[EdgeEvent], limits: OracleLimits = DEFAULT_LIMITS
) -> Matching:
    """Maximum-weight matching by branch and bound.

    Edges are examined heaviest first (arrival order breaking weight ties)
    with include-before-exclude branching; a branch is cut when its remaining
    weight cannot strictly beat the incumbent.  The result is therefore
    deterministic: among maximum-weight matchings it returns the one found
    first in that fixed search order.
    """
    _check_limits(edges, limits)
    order = sorted(edges, key=lambda e: (-e.weight, e.index))
    m = len(order)
    suffix = [ZERO] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix[i] = suffix[i + 1] + order[i].weight

    best_weight = ZERO
    best: list[EdgeEvent] = []
    chosen: list[EdgeEvent] = []
    used: set[int] = set()

    def search(pos: int, weight: Fraction) -> None:
        nonlocal best_weight, best
        if weight > best_weight:
            best_weight = weight
            best = list(chosen)
        if pos == m or weight + suffix[pos] <= best_weight:
            return
        e = order[pos]
        if e.u not in used and e.v not in used:
            used.add(e.u)
            used.add(e.v)
            chosen.append(e)
            search(pos + 1, weight + e.weight)
            chosen.pop()
            used.discard(e.u)
            used.discard(e.v)
        search(pos + 1, weight)

    search(0, ZERO)
    return Matching.from_edges(best)


def enumerate_matchings(edges: Sequence[EdgeEvent]) -> tuple[int, Fraction]:
    """Exhaustively enumerate every matching (the empty one included).

    Returns (count, max weight).  Independent of `exact_mwm` by design; only
    shares the input representation.
    """
    if len(edges) > ENUMERATION_MAX_EDGES:
        raise OracleLimitError(
            f"{len(edges)} edges exceed enumeration limit of {ENUMERATION_MAX_EDGES}"
        )
    count = 0
    best = ZERO
    m = len(edges)
    for mask in range(1 << m):
        used: set[int] = set()
        weight = ZERO
        ok = True
        for i in range(m):
            if mask >> i & 1:
                e = edges[i]
                if e.u in used or e.v in used:
                    ok = False
                    break
                used.add(e.u)
                used.add(e.v)
                weight += e.weight
        if ok:
            count += 1
            if weight > best:
                best = weight
    return count, best


def exact_window_weights(
    stream: StreamSlice, window_len: int, limits: OracleLimits = DEFAULT_LIMITS
) -> list[Fraction]:
    """Exact maximum matching weight of every window position of the stream."""
    return [
        exact_mwm(window(stream, i, window_len).events, limits).total
        for i in range(len(stream))
    ]
