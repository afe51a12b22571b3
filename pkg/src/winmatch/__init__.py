"""Sliding-window maximum-weight matching.

Core pieces: exact rational stream types (`core`), the streaming local-ratio
matcher (`local_ratio`), the smooth-histogram window engine (`window`), a
brute-force exact oracle (`oracle`), stream generators (`instances`), plus an
HTTP service (`service`) and a thin-client CLI (`cli`).
"""

__version__ = "0.1.0"

from .core import (
    EdgeEvent,
    Matching,
    StreamSlice,
    Weight,
    concat,
    format_weight,
    is_valid_matching,
    make_slice,
    parse_weight,
    window,
)
from .local_ratio import (
    Matcher,
    MatcherParams,
    StepResult,
    degree_cap,
    lookahead_condition,
    run,
    run_monotonic,
)
from .oracle import (
    OracleLimitError,
    OracleLimits,
    enumerate_matchings,
    exact_mwm,
    exact_window_weights,
)
from .window_engine import (
    Bucket,
    WindowEngine,
    WindowParams,
    WindowReport,
    all_splits,
    lookahead_audit,
    replay,
)
from .instances import (
    HardInstance,
    HardInstanceError,
    RandomStreamSpec,
    adversarial_suite,
    hard_instance,
    random_stream,
    verify_hard_slices,
)
from .streamio import (
    StreamParseError,
    format_stream,
    parse_stream,
    read_stream_file,
    write_stream_file,
)

__all__ = [
    "__version__",
    "EdgeEvent",
    "Matching",
    "StreamSlice",
    "Weight",
    "concat",
    "format_weight",
    "is_valid_matching",
    "make_slice",
    "parse_weight",
    "window",
    "Matcher",
    "MatcherParams",
    "StepResult",
    "degree_cap",
    "lookahead_condition",
    "run",
    "run_monotonic",
    "OracleLimitError",
    "OracleLimits",
    "enumerate_matchings",
    "exact_mwm",
    "exact_window_weights",
    "Bucket",
    "WindowEngine",
    "WindowParams",
    "WindowReport",
    "all_splits",
    "lookahead_audit",
    "replay",
    "HardInstance",
    "HardInstanceError",
    "RandomStreamSpec",
    "adversarial_suite",
    "hard_instance",
    "random_stream",
    "verify_hard_slices",
    "StreamParseError",
    "format_stream",
    "parse_stream",
    "read_stream_file",
    "write_stream_file",
]
