"""FastAPI application exposing the winmatch core.

Stateless endpoints (generate, replay, evaluate, audit, verify-hard, oracle)
compute everything per request.  Sessions hold a live WindowEngine so clients
can feed a stream one edge at a time and receive a report per event; each
session is guarded by a lock because engine steps must not overlap.

Errors carry a machine-readable `error_code` in the detail payload:
`parse` (bad rational or malformed stream), `invalid_params` (out-of-range
epsilon/beta/window), `oracle_limit` (instance too large for exact search).
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass
from fractions import Fraction

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..core import EdgeEvent, Matching, StreamSlice, concat, parse_weight, window
from ..instances import (
    RandomStreamSpec,
    adversarial_suite,
    build_hard_slices,
    hard_instance,
    random_stream,
    verify_hard_slices,
)
from ..local_ratio import MatcherParams, lookahead_condition, run, run_monotonic
from ..oracle import OracleLimitError, exact_mwm
from ..streamio import format_stream
from ..window_engine import (
    WindowEngine,
    WindowParams,
    WindowReport,
    all_splits,
    lookahead_audit,
)
from . import schemas as s


def _error(status: int, code: str, message: str) -> HTTPException:
    return HTTPException(status, {"error_code": code, "message": message})


def _parse_rational(text: str, name: str) -> Fraction:
    try:
        return parse_weight(text)
    except ValueError as exc:
        raise _error(400, "parse", f"{name}: {exc}")


def _to_slice(stream: s.StreamIn, exact: bool = True) -> StreamSlice:
    events = []
    for i, e in enumerate(stream.events):
        weight = _parse_rational(e.w, f"event {i} weight")
        if not exact:
            weight = float(weight)  # type: ignore[assignment]
        try:
            events.append(EdgeEvent(e.u, e.v, weight, index=i, label=e.label))
        except ValueError as exc:
            raise _error(400, "invalid_params", f"event {i}: {exc}")
    try:
        return StreamSlice(n=stream.n, events=tuple(events))
    except ValueError as exc:
        raise _error(400, "invalid_params", str(exc))


def _edge_out(e: EdgeEvent) -> s.EdgeOut:
    return s.EdgeOut(t=e.index, u=e.u, v=e.v, w=str(e.weight), label=e.label)


def _stream_out(name: str, stream: StreamSlice) -> s.StreamOut:
    return s.StreamOut(
        name=name,
        n=stream.n,
        events=[_edge_out(e) for e in stream.events],
        text=format_stream(stream),
    )


def _matching_out(m: Matching) -> s.MatchingOut:
    return s.MatchingOut(total=str(m.total), edges=[_edge_out(e) for e in m.edges])


def _report_out(r: WindowReport) -> s.ReportOut:
    return s.ReportOut(
        t=r.index,
        window_start=r.window_start,
        window_len=r.window_len,
        reported_weight=str(r.weight),
        source_bucket=r.source_bucket,
        bucket_count=r.bucket_count,
        matching=_matching_out(r.matching),
    )


def _window_params(
    window_len: int, epsilon: str, beta: str | None, strict_report: bool, n: int
) -> WindowParams:
    eps = _parse_rational(epsilon, "epsilon")
    b = _parse_rational(beta, "beta") if beta is not None else None
    try:
        return WindowParams(
            window_len=window_len,
            epsilon=eps,
            n=max(n, 1),
            beta=b,
            strict_report=strict_report,
        )
    except ValueError as exc:
        raise _error(400, "invalid_params", str(exc))


@dataclass
class _Session:
    engine: WindowEngine
    lock: threading.Lock


def create_app() -> FastAPI:
    app = FastAPI(
        title="winmatch",
        version=__version__,
        description="Sliding-window maximum-weight matching service",
    )
    sessions: dict[str, _Session] = {}
    registry_lock = threading.Lock()

    @app.get("/v1/health", response_model=s.HealthOut)
    def health() -> s.HealthOut:
        return s.HealthOut(status="ok", version=__version__)

    @app.post("/v1/generate", response_model=s.GenerateResponse)
    def generate(req: s.GenerateRequest) -> s.GenerateResponse:
        if req.kind == "hard":
            if req.epsilon is None:
                raise _error(400, "invalid_params", "hard generator needs epsilon")
            eps = _parse_rational(req.epsilon, "epsilon")
            try:
                inst = hard_instance(eps)
            except ValueError as exc:
                raise _error(400, "invalid_params", str(exc))
            name = f"hard-{eps.numerator}-{eps.denominator}"
            return s.GenerateResponse(streams=[_stream_out(name, inst.full())])
        if req.kind == "random":
            if req.n is None or req.m is None or req.seed is None:
                raise _error(400, "invalid_params", "random generator needs n, m, seed")
            try:
                spec = RandomStreamSpec(
                    n=req.n,
                    m=req.m,
                    seed=req.seed,
                    weight_min=req.weight_min,
                    weight_max=req.weight_max,
                    denominator=req.denominator,
                    duplicate_rate=req.duplicate_rate,
                    distribution=req.distribution,
                )
            except ValueError as exc:
                raise _error(400, "invalid_params", str(exc))
            name = f"random-n{req.n}-m{req.m}-seed{req.seed}"
            return s.GenerateResponse(streams=[_stream_out(name, random_stream(spec))])
        eps = (
            _parse_rational(req.epsilon, "epsilon")
            if req.epsilon is not None
            else Fraction(1, 10)
        )
        try:
            suite = adversarial_suite(eps, oracle_safe=req.oracle_safe)
        except ValueError as exc:
            raise _error(400, "invalid_params", str(exc))
        return s.GenerateResponse(
            streams=[_stream_out(name, stream) for name, stream in suite.items()]
        )

    @app.post("/v1/replay", response_model=s.ReplayResponse)
    def replay(req: s.ReplayRequest) -> s.ReplayResponse:
        stream = _to_slice(req.stream, exact=req.exact)
        params = _window_params(
            req.window_len, req.epsilon, req.beta, req.strict_report, stream.n
        )
        engine = WindowEngine(params)
        reports = [_report_out(engine.process(e)) for e in stream]
        assert params.beta is not None
        return s.ReplayResponse(
            degree_cap=params.matcher_params.degree_cap,
            beta=str(params.beta),
            reports=reports,
        )

    @app.post("/v1/evaluate", response_model=s.EvalResponse)
    def evaluate(req: s.EvalRequest) -> s.EvalResponse:
        stream = _to_slice(req.stream)
        params = _window_params(
            req.window_len, req.epsilon, req.beta, req.strict_report, stream.n
        )
        engine = WindowEngine(params)
        rows: list[s.EvalRowOut] = []
        max_ratio: Fraction | None = None
        max_ratio_at: int | None = None
        max_buckets = 0
        all_bucket_bounds = True
        for i, event in enumerate(stream):
            report = engine.process(event)
            try:
                oracle_weight = exact_mwm(
                    window(stream, i, params.window_len).events
                ).total
            except OracleLimitError as exc:
                raise _error(400, "oracle_limit", str(exc))
            ratio = oracle_weight / report.weight
            bucket_ok = engine.bucket_bound_ok()
            all_bucket_bounds = all_bucket_bounds and bucket_ok
            max_buckets = max(max_buckets, report.bucket_count)
            if max_ratio is None or ratio > max_ratio:
                max_ratio = ratio
                max_ratio_at = i
            base = _report_out(report)
            rows.append(
                s.EvalRowOut(
                    **base.model_dump(),
                    oracle_weight=str(oracle_weight),
                    ratio=str(ratio),
                    bucket_bound_ok=bucket_ok,
                )
            )
        bound = params.report_ratio
        summary = s.EvalSummaryOut(
            events=len(rows),
            max_ratio=str(max_ratio) if max_ratio is not None else None,
            max_ratio_at=max_ratio_at,
            max_bucket_count=max_buckets,
            ratio_bound=str(bound),
            ratio_bound_ok=(max_ratio is None or max_ratio <= bound),
            bucket_bound_ok=all_bucket_bounds,
        )
        assert params.beta is not None
        return s.EvalResponse(
            degree_cap=params.matcher_params.degree_cap,
            beta=str(params.beta),
            rows=rows,
            summary=summary,
        )

    @app.post("/v1/audit", response_model=s.AuditResponse)
    def audit(req: s.AuditRequest) -> s.AuditResponse:
        stream = _to_slice(req.stream)
        params = _window_params(1, req.epsilon, req.beta, False, stream.n)
        try:
            report = lookahead_audit(stream, all_splits(len(stream)), params)
        except OracleLimitError as exc:
            raise _error(400, "oracle_limit", str(exc))
        rows = [
            s.AuditRowOut(
                cut_a=row.cut_a,
                cut_b=row.cut_b,
                reduced_b=str(row.reduced_b),
                reduced_ab=str(row.reduced_ab),
                smooth=row.smooth,
                matched_bc=str(row.matched_bc),
                mwm_full=str(row.mwm_full),
                reduced_bc=str(row.reduced_bc),
                mwm_bc=str(row.mwm_bc),
                gate_ok=row.gate_ok,
                bound_ok=row.bound_ok,
            )
            for row in report.rows
        ]
        return s.AuditResponse(
            epsilon=str(report.epsilon),
            beta=str(report.beta),
            ok=report.ok,
            violations=len(report.violations),
            rows=rows,
        )

    @app.post("/v1/verify-hard", response_model=s.VerifyHardResponse)
    def verify_hard(req: s.VerifyHardRequest) -> s.VerifyHardResponse:
        eps = _parse_rational(req.epsilon, "epsilon")
        if not (0 < eps <= Fraction(1, 10)):
            raise _error(400, "invalid_params", f"epsilon out of range: {eps}")
        if req.stream is not None:
            full = _to_slice(req.stream)
            parts = [full.restrict(label) for label in ("A", "B", "C")]
            if any(len(p) == 0 for p in parts):
                raise _error(
                    400, "invalid_params", "stream must carry A, B and C labels"
                )
            slice_a, slice_b, slice_c = parts
        else:
            slice_a, slice_b, slice_c = build_hard_slices(eps)
        try:
            checks = verify_hard_slices(slice_a, slice_b, slice_c, eps)
        except OracleLimitError as exc:
            raise _error(400, "oracle_limit", str(exc))

        params = MatcherParams(eps, max(slice_a.n, slice_b.n, slice_c.n, 1))
        ab = concat([slice_a, slice_b])
        _, mon_ab = run_monotonic(params, ab)
        _, mon_b = run_monotonic(params, slice_b)
        red_ab = run(params, ab).reduced_total
        red_b = run(params, slice_b).reduced_total
        beta = eps / 9
        matched_bc = next(c for c in checks if c.name == "c.matched_bc").measured
        mwm_full = next(c for c in checks if c.name == "d.mwm_full").measured
        ratio = Fraction(mwm_full) / Fraction(matched_bc)
        return s.VerifyHardResponse(
            passed=all(c.passed for c in checks),
            epsilon=str(eps),
            ratio=str(ratio),
            checks=[
                s.CheckOut(
                    name=c.name,
                    expected=c.expected,
                    measured=c.measured,
                    passed=c.passed,
                )
                for c in checks
            ],
            monotonic_b=str(mon_b.total),
            monotonic_ab=str(mon_ab.total),
            reduced_b=str(red_b),
            reduced_ab=str(red_ab),
            matched_smoothness_holds=lookahead_condition(
                mon_b.total, mon_ab.total, beta
            ),
            reduced_smoothness_holds=lookahead_condition(red_b, red_ab, beta),
        )

    @app.post("/v1/oracle/mwm", response_model=s.OracleResponse)
    def oracle_mwm(req: s.OracleRequest) -> s.OracleResponse:
        stream = _to_slice(req.stream)
        try:
            matching = exact_mwm(stream.events)
        except OracleLimitError as exc:
            raise _error(400, "oracle_limit", str(exc))
        return s.OracleResponse(matching=_matching_out(matching))

    def _session_info(sid: str, sess: _Session) -> s.SessionInfoOut:
        params = sess.engine.params
        assert params.beta is not None
        return s.SessionInfoOut(
            session_id=sid,
            n=params.n,
            window_len=params.window_len,
            epsilon=str(params.epsilon),
            beta=str(params.beta),
            degree_cap=params.matcher_params.degree_cap,
            strict_report=params.strict_report,
            processed=sess.engine.processed,
            bucket_count=sess.engine.bucket_count,
        )

    @app.post("/v1/sessions", response_model=s.SessionInfoOut, status_code=201)
    def create_session(req: s.SessionCreateRequest) -> s.SessionInfoOut:
        params = _window_params(
            req.window_len, req.epsilon, req.beta, req.strict_report, req.n
        )
        sid = uuid.uuid4().hex
        with registry_lock:
            sessions[sid] = _Session(
                engine=WindowEngine(params), lock=threading.Lock()
            )
        return _session_info(sid, sessions[sid])

    def _get_session(sid: str) -> _Session:
        with registry_lock:
            sess = sessions.get(sid)
        if sess is None:
            raise _error(404, "not_found", f"no session {sid}")
        return sess

    @app.get("/v1/sessions/{sid}", response_model=s.SessionInfoOut)
    def session_info(sid: str) -> s.SessionInfoOut:
        return _session_info(sid, _get_session(sid))

    @app.post("/v1/sessions/{sid}/events", response_model=s.ReportOut)
    def feed_event(sid: str, event: s.EdgeIn) -> s.ReportOut:
        sess = _get_session(sid)
        weight = _parse_rational(event.w, "weight")
        with sess.lock:
            index = sess.engine.processed
            try:
                edge = EdgeEvent(
                    event.u, event.v, weight, index=index, label=event.label
                )
                report = sess.engine.process(edge)
            except ValueError as exc:
                raise _error(400, "invalid_params", str(exc))
        return _report_out(report)

    @app.delete("/v1/sessions/{sid}", status_code=204)
    def delete_session(sid: str) -> None:
        with registry_lock:
            if sid not in sessions:
                raise _error(404, "not_found", f"no session {sid}")
            del sessions[sid]

    return app


app = create_app()
