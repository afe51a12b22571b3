"""Command-line front end: a thin client over the winmatch service.

All computation happens behind the service API; the CLI reads/writes stream
files, forwards them, and renders CSV.  By default the service is mounted
in-process; `--server URL` targets a running instance instead.

Exit codes: 0 success, 2 constraint/ratio violation, 3 parse or input error,
4 oracle size limit exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .client import ServiceClient, ServiceError
from .core import format_weight
from .streamio import StreamParseError, read_stream_file

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_PARSE = 3
EXIT_ORACLE = 4

_ERROR_EXITS = {
    "parse": EXIT_PARSE,
    "invalid_params": EXIT_PARSE,
    "oracle_limit": EXIT_ORACLE,
    "constraint": EXIT_VIOLATION,
}

RUN_COLUMNS = [
    "t",
    "window_start",
    "window_len",
    "reported_weight",
    "source_bucket",
    "bucket_count",
]
EVAL_COLUMNS = RUN_COLUMNS + ["oracle_weight", "ratio", "bucket_bound_ok"]
AUDIT_COLUMNS = [
    "cut_a",
    "cut_b",
    "reduced_b",
    "reduced_ab",
    "smooth",
    "matched_bc",
    "mwm_full",
    "reduced_bc",
    "mwm_bc",
    "gate_ok",
    "bound_ok",
]

WEIGHT_COLUMNS = {
    "reported_weight",
    "oracle_weight",
    "ratio",
    "reduced_b",
    "reduced_ab",
    "matched_bc",
    "mwm_full",
    "reduced_bc",
    "mwm_bc",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="winmatch",
        description="Sliding-window maximum-weight matching toolkit",
    )
    parser.add_argument(
        "--server",
        metavar="URL",
        default=None,
        help="service base URL (default: run the service in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate stream files")
    kind = gen.add_mutually_exclusive_group(required=True)
    kind.add_argument("--hard", action="store_true", help="labelled hard instance")
    kind.add_argument("--random", action="store_true", help="seeded random stream")
    kind.add_argument(
        "--suite",
        choices=["adversarial"],
        help="named stress streams, one file each",
    )
    gen.add_argument("--epsilon", help="rational, e.g. 1/10")
    gen.add_argument("--n", type=int, help="vertex count (random)")
    gen.add_argument("--m", type=int, help="event count (random)")
    gen.add_argument("--seed", type=int, help="RNG seed (random)")
    gen.add_argument("--weight-min", type=int, default=1)
    gen.add_argument("--weight-max", type=int, default=100)
    gen.add_argument("--denominator", type=int, default=1)
    gen.add_argument("--duplicate-rate", type=float, default=0.0)
    gen.add_argument(
        "--distribution", choices=["uniform", "powerlaw"], default="uniform"
    )
    gen.add_argument(
        "--oracle-safe",
        action="store_true",
        help="size suite streams for the exact oracle",
    )
    gen.add_argument("--output", help="output stream file (hard/random)")
    gen.add_argument("--output-dir", help="output directory (suite)")

    for name, help_text in (
        ("run", "replay a stream through the window engine, CSV per event"),
        ("eval", "replay with exact oracle columns and a summary"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--input", required=True, help="stream file")
        cmd.add_argument("--window-len", "-L", type=int, required=True)
        cmd.add_argument("--epsilon", required=True, help="rational, e.g. 1/10")
        cmd.add_argument("--beta", help="rational; defaults to epsilon/9")
        cmd.add_argument("--strict-report", action="store_true")
        cmd.add_argument("--output", help="CSV file (default: stdout)")
        cmd.add_argument(
            "--decimal",
            type=int,
            metavar="K",
            help="render weights with K decimal digits instead of p/q",
        )
        if name == "run":
            cmd.add_argument(
                "--throughput",
                action="store_true",
                help="float weights (benchmarks only; exactness is lost)",
            )

    audit = sub.add_parser(
        "audit", help="check the lookahead contract over all three-way splits"
    )
    audit.add_argument("--input", required=True)
    audit.add_argument("--epsilon", required=True)
    audit.add_argument("--beta")
    audit.add_argument("--output", help="CSV file (default: stdout)")

    verify = sub.add_parser(
        "verify-hard", help="verify the hard-instance aggregates"
    )
    verify.add_argument("--epsilon", required=True)
    verify.add_argument(
        "--input", help="labelled A/B/C stream file (default: regenerate)"
    )
    verify.add_argument("--decimal", type=int, metavar="K")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _stream_payload(path: str) -> dict:
    stream = read_stream_file(path)
    return {
        "n": stream.n,
        "events": [
            {"u": e.u, "v": e.v, "w": str(e.weight), "label": e.label}
            for e in stream.events
        ],
    }


def _render(value: object, column: str, decimal: int | None) -> str:
    if decimal is not None and column in WEIGHT_COLUMNS:
        try:
            return format_weight(Fraction(str(value)), decimal)
        except ValueError:
            return str(value)
    return str(value)


def _write_csv(
    rows: Iterable[dict],
    columns: Sequence[str],
    output: str | None,
    decimal: int | None = None,
) -> None:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(
            ",".join(_render(row[col], col, decimal) for col in columns)
        )
    text = "\n".join(lines) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _cmd_gen(client: ServiceClient, args: argparse.Namespace) -> int:
    if args.hard:
        if args.epsilon is None:
            print("gen --hard requires --epsilon", file=sys.stderr)
            return EXIT_PARSE
        response = client.generate(kind="hard", epsilon=args.epsilon)
        return _write_streams(response["streams"], args.output, None)
    if args.random:
        if args.n is None or args.m is None or args.seed is None:
            print("gen --random requires --n, --m, --seed", file=sys.stderr)
            return EXIT_PARSE
        response = client.generate(
            kind="random",
            n=args.n,
            m=args.m,
            seed=args.seed,
            weight_min=args.weight_min,
            weight_max=args.weight_max,
            denominator=args.denominator,
            duplicate_rate=args.duplicate_rate,
            distribution=args.distribution,
        )
        return _write_streams(response["streams"], args.output, None)
    response = client.generate(
        kind="suite",
        epsilon=args.epsilon,
        oracle_safe=args.oracle_safe,
    )
    if args.output_dir is None:
        print("gen --suite requires --output-dir", file=sys.stderr)
        return EXIT_PARSE
    return _write_streams(response["streams"], None, args.output_dir)


def _write_streams(
    streams: list[dict], output: str | None, output_dir: str | None
) -> int:
    if output_dir is not None:
        directory = Path(output_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for stream in streams:
            path = directory / f"{stream['name']}.stream"
            path.write_text(stream["text"], encoding="utf-8")
            print(path)
        return EXIT_OK
    text = streams[0]["text"]
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")
        print(output)
    return EXIT_OK


def _cmd_run(client: ServiceClient, args: argparse.Namespace) -> int:
    payload = dict(
        stream=_stream_payload(args.input),
        window_len=args.window_len,
        epsilon=args.epsilon,
        beta=args.beta,
        strict_report=args.strict_report,
    )
    if getattr(args, "throughput", False):
        payload["exact"] = False
    response = client.replay(**payload)
    _write_csv(response["reports"], RUN_COLUMNS, args.output, args.decimal)
    return EXIT_OK


def _cmd_eval(client: ServiceClient, args: argparse.Namespace) -> int:
    response = client.evaluate(
        stream=_stream_payload(args.input),
        window_len=args.window_len,
        epsilon=args.epsilon,
        beta=args.beta,
        strict_report=args.strict_report,
    )
    _write_csv(response["rows"], EVAL_COLUMNS, args.output, args.decimal)
    summary = response["summary"]
    report = (
        f"events={summary['events']}"
        f" max_ratio={summary['max_ratio']}"
        f" at={summary['max_ratio_at']}"
        f" ratio_bound={summary['ratio_bound']}"
        f" ratio_bound_ok={summary['ratio_bound_ok']}"
        f" max_buckets={summary['max_bucket_count']}"
        f" bucket_bound_ok={summary['bucket_bound_ok']}"
    )
    print(report, file=sys.stdout if args.output else sys.stderr)
    if not (summary["ratio_bound_ok"] and summary["bucket_bound_ok"]):
        return EXIT_VIOLATION
    return EXIT_OK


def _cmd_audit(client: ServiceClient, args: argparse.Namespace) -> int:
    response = client.audit(
        stream=_stream_payload(args.input),
        epsilon=args.epsilon,
        beta=args.beta,
    )
    _write_csv(response["rows"], AUDIT_COLUMNS, args.output)
    report = (
        f"splits={len(response['rows'])}"
        f" violations={response['violations']}"
        f" ok={response['ok']}"
    )
    print(report, file=sys.stdout if args.output else sys.stderr)
    return EXIT_OK if response["ok"] else EXIT_VIOLATION


def _cmd_verify_hard(client: ServiceClient, args: argparse.Namespace) -> int:
    payload: dict = {"epsilon": args.epsilon}
    if args.input is not None:
        payload["stream"] = _stream_payload(args.input)
    response = client.verify_hard(**payload)
    for check in response["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(
            f"{check['name']}: expected {check['expected']},"
            f" measured {check['measured']} .. {status}"
        )
    ratio = Fraction(response["ratio"])
    digits = args.decimal if args.decimal is not None else 4
    print(f"ratio = {ratio} ({format_weight(ratio, digits)})")
    print(
        "smoothness on matching weights at beta=epsilon/9:"
        f" {'holds' if response['matched_smoothness_holds'] else 'fails'}"
        f" (B={response['monotonic_b']}, AB={response['monotonic_ab']})"
    )
    print(
        "smoothness on reduced totals at beta=epsilon/9:"
        f" {'holds' if response['reduced_smoothness_holds'] else 'fails'}"
        f" (B={response['reduced_b']}, AB={response['reduced_ab']})"
    )
    print(f"RESULT: {'PASS' if response['passed'] else 'FAIL'}")
    return EXIT_OK if response["passed"] else EXIT_VIOLATION


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return _cmd_serve(args)
    handlers = {
        "gen": _cmd_gen,
        "run": _cmd_run,
        "eval": _cmd_eval,
        "audit": _cmd_audit,
        "verify-hard": _cmd_verify_hard,
    }
    try:
        with ServiceClient(args.server) as client:
            return handlers[args.command](client, args)
    except StreamParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ServiceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _ERROR_EXITS.get(exc.code, 1)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
