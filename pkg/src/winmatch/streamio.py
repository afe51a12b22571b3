"""Stream file format: plain text, one edge per line.

    # comment
    n <vertex-count>
    <u> <v> <w> [<label>]

`w` is a decimal or a rational `p/q`; the optional label is one of A, B, C.
`#` starts a comment (full-line or trailing).  The first non-comment line
must declare the vertex-universe size.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .core import LABELS, EdgeEvent, StreamSlice, parse_weight


class StreamParseError(ValueError):
    """Malformed stream file; carries the 1-based offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_stream(text: str, exact: bool = True) -> StreamSlice:
    """Parse the text format into a StreamSlice.

    With `exact=False` (throughput mode) weights are converted to floats after
    exact parsing; verification and acceptance paths always use `exact=True`.
    """
    n: int | None = None
    events: list[EdgeEvent] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "n":
                raise StreamParseError("expected header `n <vertex-count>`", lineno)
            try:
                n = int(fields[1])
            except ValueError:
                raise StreamParseError(f"invalid vertex count {fields[1]!r}", lineno)
            if n < 0:
                raise StreamParseError("vertex count must be non-negative", lineno)
            continue
        if len(fields) not in (3, 4):
            raise StreamParseError("expected `<u> <v> <w> [<label>]`", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise StreamParseError(f"invalid vertex id in {line!r}", lineno)
        try:
            weight = parse_weight(fields[2])
        except ValueError as exc:
            raise StreamParseError(str(exc), lineno)
        label = None
        if len(fields) == 4:
            label = fields[3]
            if label not in LABELS:
                raise StreamParseError(f"unknown label {label!r}", lineno)
        if not exact:
            weight = float(weight)  # type: ignore[assignment]
        try:
            events.append(EdgeEvent(u, v, weight, index=len(events), label=label))
        except ValueError as exc:
            raise StreamParseError(str(exc), lineno)
    if n is None:
        raise StreamParseError("missing `n <vertex-count>` header", 1)
    try:
        return StreamSlice(n=n, events=tuple(events))
    except ValueError as exc:
        raise StreamParseError(str(exc), 1)


def format_stream(stream: StreamSlice) -> str:
    """Render a slice in the text format (exact `p/q` weights)."""
    lines = [f"n {stream.n}"]
    for e in stream.events:
        entry = f"{e.u} {e.v} {Fraction(e.weight)}"
        if e.label is not None:
            entry += f" {e.label}"
        lines.append(entry)
    return "\n".join(lines) + "\n"


def read_stream_file(path: str | os.PathLike, exact: bool = True) -> StreamSlice:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_stream(fh.read(), exact=exact)


def write_stream_file(path: str | os.PathLike, stream: StreamSlice) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_stream(stream))
