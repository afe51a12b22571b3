"""Acceptance suite: every contract the artifact promises, at full scale.

Each criterion prints one PASS/FAIL line (run `pytest tests/test_acceptance.py
-v -s` to see them) and asserts zero violations with exact arithmetic; no
tolerances are involved anywhere because every quantity is a rational.

Shared corpora are built once per module:
* 1000 seeded random streams (n <= 10, m <= 24) of varied weight shapes,
* the adversarial stress suite (oracle-safe and full-size variants),
* the hard instance on its epsilon grid.
"""

from fractions import Fraction as F

import pytest

from winmatch import (
    Matcher,
    MatcherParams,
    WindowEngine,
    WindowParams,
    all_splits,
    degree_cap,
    enumerate_matchings,
    exact_mwm,
    lookahead_audit,
    lookahead_condition,
    run,
    run_monotonic,
    window,
)
from winmatch.cli import main as cli_main
from winmatch.instances import (
    HardInstanceTargets,
    RandomStreamSpec,
    adversarial_suite,
    hard_instance,
    random_stream,
)

EPS = F(1, 10)


def report(number: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {detail}")


def random_corpus(count: int, base_seed: int = 0):
    """Seeded random streams covering sizes, weights, and duplicate rates."""
    streams = []
    for k in range(count):
        seed = base_seed + k
        streams.append(
            random_stream(
                RandomStreamSpec(
                    n=4 + k % 7,
                    m=1 + k % 24,
                    seed=seed,
                    weight_min=1,
                    weight_max=(10, 100, 1000)[k % 3],
                    denominator=(1, 1, 7)[k % 3],
                    duplicate_rate=(0.0, 0.2, 0.5)[k % 3],
                    distribution=("uniform", "powerlaw")[k % 2],
                )
            )
        )
    return streams


@pytest.fixture(scope="module")
def corpus():
    return random_corpus(1000)


@pytest.fixture(scope="module")
def streaming_results(corpus):
    """One matcher fold per test stream, collecting every violation kind.

    Covers criteria 1-4: the sandwich inequalities against the exact oracle,
    the per-event potential identity, the end-of-run weight bound, and the
    per-event stacked-degree cap.
    """
    suite_safe = adversarial_suite(EPS, oracle_safe=True)
    suite_full = adversarial_suite(EPS)
    with_oracle = [("random", s) for s in corpus] + list(suite_safe.items())
    cap_only = [("star-cap-full", suite_full["star-cap"])]

    cap = degree_cap(EPS)
    upper = 2 * (1 + 4 * EPS) * (1 + EPS)
    sandwich_violations = []
    identity_violations = []
    weight_violations = []
    cap_violations = []

    def fold(name, stream, with_mwm):
        params = MatcherParams(EPS, max(stream.n, 1))
        matcher = Matcher(params)
        for event in stream:
            matcher.process(event)
            if 2 * matcher.reduced_total != matcher.potential_sum():
                identity_violations.append((name, event.index))
            for x in (event.u, event.v):
                if matcher.stacked_degree(x) > cap:
                    cap_violations.append((name, event.index, x))
        for event in stream:
            bound = (1 + EPS) * (
                matcher.potential(event.u) + matcher.potential(event.v)
            )
            if event.weight > bound:
                weight_violations.append((name, event.index))
        if with_mwm:
            reduced = matcher.reduced_total
            matched = matcher.extract_matching().total
            optimum = exact_mwm(stream.events).total
            if not (reduced <= optimum <= upper * matched):
                sandwich_violations.append((name, "outer"))
            if not matched * (1 + 4 * EPS) >= reduced:
                sandwich_violations.append((name, "inner"))

    for name, stream in with_oracle:
        fold(name, stream, with_mwm=True)
    for name, stream in cap_only:
        fold(name, stream, with_mwm=False)

    return {
        "streams": len(with_oracle) + len(cap_only),
        "sandwich": sandwich_violations,
        "identity": identity_violations,
        "weight": weight_violations,
        "cap": cap_violations,
    }


def test_criterion_1_streaming_approximation(streaming_results):
    violations = streaming_results["sandwich"]
    ok = not violations
    report(
        1,
        ok,
        f"sandwich inequalities exact on {streaming_results['streams']} streams "
        f"(violations={len(violations)})",
    )
    assert ok, violations[:5]


def test_criterion_2_potential_identity(streaming_results):
    violations = streaming_results["identity"]
    ok = not violations
    report(2, ok, f"2*W' == sum(potentials) after every event (violations={len(violations)})")
    assert ok, violations[:5]


def test_criterion_3_weight_bound(streaming_results):
    violations = streaming_results["weight"]
    ok = not violations
    report(
        3,
        ok,
        f"w(e) <= (1+eps)*(potential sums) for every stream edge "
        f"(violations={len(violations)})",
    )
    assert ok, violations[:5]


def test_criterion_4_stack_bounds(streaming_results):
    violations = streaming_results["cap"]
    ok = not violations
    report(
        4,
        ok,
        f"stacked degree <= {degree_cap(EPS)} at every step, including the "
        f"full star-cap stress stream (violations={len(violations)})",
    )
    assert ok, violations[:5]


@pytest.fixture(scope="module")
def window_results(corpus):
    """Window-engine replays with the exact oracle on every window.

    Covers criteria 5 and 6 at beta = eps/90 over window lengths 1, 3, 6 and
    the full stream length.
    """
    beta = EPS / 90
    bound = 3 + 20 * EPS
    streams = [("random", s) for s in corpus[:40]]
    streams += list(adversarial_suite(EPS, oracle_safe=True).items())
    streams.append(("hard", hard_instance(EPS).full()))

    ratio_violations = []
    bucket_violations = []
    max_ratio = F(0)
    max_ratio_at = None
    events = 0

    for name, stream in streams:
        if len(stream) == 0:
            continue
        for L in (1, 3, 6, len(stream)):
            params = WindowParams(
                window_len=L, epsilon=EPS, n=max(stream.n, 1), beta=beta
            )
            engine = WindowEngine(params)
            for i, event in enumerate(stream):
                rep = engine.process(event)
                events += 1
                optimum = exact_mwm(window(stream, i, L).events).total
                ratio = optimum / rep.weight
                if not (rep.weight <= optimum and ratio <= bound):
                    ratio_violations.append((name, L, i))
                if ratio > max_ratio:
                    max_ratio = ratio
                    max_ratio_at = (name, L, i)
                if not engine.bucket_bound_ok():
                    bucket_violations.append((name, L, i))

    return {
        "events": events,
        "ratio_violations": ratio_violations,
        "bucket_violations": bucket_violations,
        "max_ratio": max_ratio,
        "max_ratio_at": max_ratio_at,
    }


def test_criterion_5_window_ratio(window_results):
    violations = window_results["ratio_violations"]
    ok = not violations
    report(
        5,
        ok,
        f"window ratio <= 5 on {window_results['events']} reports; observed "
        f"max {window_results['max_ratio']} "
        f"(~{float(window_results['max_ratio']):.4f}) at "
        f"{window_results['max_ratio_at']} (violations={len(violations)})",
    )
    assert ok, violations[:5]
    assert window_results["max_ratio"] <= F(5)


def test_criterion_6_bucket_bound(window_results):
    violations = window_results["bucket_violations"]
    ok = not violations
    report(
        6,
        ok,
        f"bucket-count certificate after every event (violations={len(violations)})",
    )
    assert ok, violations[:5]


def test_criterion_7_lookahead_audit():
    total_rows = 0
    violations = []
    smooth_rows = 0
    for seed in range(200):
        stream = random_stream(
            RandomStreamSpec(
                n=8,
                m=8 + seed % 5,
                seed=10_000 + seed,
                weight_max=(10, 100)[seed % 2],
                duplicate_rate=(0.0, 0.3)[seed % 2],
            )
        )
        params = WindowParams(window_len=1, epsilon=EPS, n=stream.n)
        audit = lookahead_audit(stream, all_splits(len(stream)), params)
        total_rows += len(audit.rows)
        smooth_rows += sum(1 for row in audit.rows if row.smooth)
        violations.extend(audit.violations)
    ok = not violations
    report(
        7,
        ok,
        f"lookahead contract on {total_rows} splits of 200 streams "
        f"({smooth_rows} gated) (violations={len(violations)})",
    )
    assert ok, violations[:3]
    assert smooth_rows > 0


def test_criterion_8_hard_instance(capsys):
    grid = [F(1, 10), F(1, 100), F(1, 1000)]
    ok = True
    details = []
    for eps in grid:
        inst = hard_instance(eps)  # construction self-verifies (a)-(f)
        targets = HardInstanceTargets(eps)
        mp = MatcherParams(eps, inst.full().n)
        ab = [e for e in inst.full() if e.label in ("A", "B")]
        bc = [e for e in inst.full() if e.label in ("B", "C")]
        matched_bc = run(mp, bc).extract_matching().total
        optimum = exact_mwm(inst.full().events).total
        measured_ratio = optimum / matched_bc
        ok &= measured_ratio == (7 + 3 * eps) / (2 + 4 * eps)

        _, mon_ab = run_monotonic(mp, ab)
        _, mon_b = run_monotonic(mp, inst.slice_b)
        reduced_ab = run(mp, ab).reduced_total
        reduced_b = run(mp, inst.slice_b).reduced_total
        # matching-weight smoothness holds for every beta >= 0 (equality)
        ok &= mon_b.total == mon_ab.total
        ok &= lookahead_condition(mon_b.total, mon_ab.total, eps / 9)
        # the reduced-total signal separates at beta = eps/9
        ok &= not lookahead_condition(reduced_b, reduced_ab, eps / 9)
        details.append(f"eps={eps}: ratio={measured_ratio}")

        code = cli_main(["verify-hard", "--epsilon", str(eps)])
        ok &= code == 0

    ok &= HardInstanceTargets(F(1, 10)).ratio == F(73, 24)
    ok &= HardInstanceTargets(F(1, 1000)).ratio > F(349, 100)
    capsys.readouterr()  # swallow the CLI chatter; the summary line follows
    report(8, ok, "; ".join(details))
    assert ok


def test_criterion_9_oracle_cross_validation():
    mismatches = []
    for seed in range(200):
        stream = random_stream(
            RandomStreamSpec(
                n=5 + seed % 6,
                m=10,
                seed=20_000 + seed,
                weight_max=(10, 100)[seed % 2],
            )
        )
        count, enum_best = enumerate_matchings(stream.events)
        bb = exact_mwm(stream.events).total
        if bb != enum_best or count < 1:
            mismatches.append(seed)
    ok = not mismatches
    report(
        9,
        ok,
        f"branch-and-bound equals enumeration on 200 instances "
        f"(mismatches={len(mismatches)})",
    )
    assert ok, mismatches


def test_criterion_10_prefix_monotonicity():
    violations = []
    for seed in range(500):
        stream = random_stream(
            RandomStreamSpec(n=4 + seed % 7, m=2 + seed % 22, seed=30_000 + seed)
        )
        cut = seed % (len(stream) + 1)
        params = MatcherParams(EPS, max(stream.n, 1))
        prefix = Matcher(params)
        full = Matcher(params)
        agree = True
        for event in stream.events[:cut]:
            if prefix.process(event) != full.process(event):
                agree = False
        prefix_total = prefix.reduced_total
        for event in stream.events[cut:]:
            full.process(event)
        if not agree or prefix_total > full.reduced_total:
            violations.append(seed)
    ok = not violations
    report(
        10,
        ok,
        f"prefix reduced totals monotone and per-edge reduced weights agree "
        f"on 500 splits (violations={len(violations)})",
    )
    assert ok, violations[:5]
