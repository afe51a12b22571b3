"""Exact oracle: branch and bound cross-validated by full enumeration."""

from fractions import Fraction as F

import pytest

from winmatch import (
    enumerate_matchings,
    exact_mwm,
    exact_window_weights,
    is_valid_matching,
    make_slice,
    run,
    MatcherParams,
)
from winmatch.oracle import OracleLimitError, OracleLimits
from winmatch.instances import RandomStreamSpec, hard_instance, random_stream


def test_empty():
    assert exact_mwm([]).total == 0
    assert exact_mwm([]).edges == ()


def test_triangle():
    # the four matchings of a triangle are {}, {e1}, {e2}, {e3}
    tri = make_slice(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)])
    best = exact_mwm(tri.events)
    assert best.total == F(3)
    count, enum_best = enumerate_matchings(tri.events)
    assert (count, enum_best) == (4, F(3))


def test_two_disjoint_edges():
    s = make_slice(4, [(0, 1, 2), (2, 3, 5)])
    assert exact_mwm(s.events).total == F(7)


def test_single_edge_enumeration():
    s = make_slice(2, [(0, 1, 9)])
    assert enumerate_matchings(s.events) == (2, F(9))


def test_tie_break_is_deterministic():
    # two equal-weight edges sharing a vertex: the earlier arrival wins
    s = make_slice(3, [(0, 1, 5), (1, 2, 5)])
    best = exact_mwm(s.events)
    assert best.total == F(5)
    assert [e.index for e in best.edges] == [0]


def test_output_is_valid_and_beats_greedy():
    for seed in range(30):
        s = random_stream(RandomStreamSpec(n=8, m=16, seed=seed))
        best = exact_mwm(s.events)
        assert is_valid_matching(best.edges)
        greedy = run(MatcherParams(F(1, 10), s.n), s).extract_matching()
        assert best.total >= greedy.total


def test_cross_validation_against_enumeration():
    for seed in range(50):
        s = random_stream(RandomStreamSpec(n=7, m=10, seed=seed))
        count, enum_best = enumerate_matchings(s.events)
        assert count >= 1
        assert exact_mwm(s.events).total == enum_best


def test_limits():
    big = make_slice(30, [(i, i + 1, 1) for i in range(0, 29, 2)])
    with pytest.raises(OracleLimitError):
        exact_mwm(make_slice(26, [(i, 25, 1) for i in range(25)]).events)
    with pytest.raises(OracleLimitError):
        exact_mwm(big.events, OracleLimits(max_edges=5))
    with pytest.raises(OracleLimitError):
        enumerate_matchings(make_slice(20, [(i, 19, 1) for i in range(17)]).events)


def test_window_weights():
    s = make_slice(5, [(0, 1, 3), (2, 3, 4), (0, 2, 10), (1, 3, 2)])
    assert exact_window_weights(s, 1) == [F(3), F(4), F(10), F(2)]
    assert exact_window_weights(s, len(s))[-1] == exact_mwm(s.events).total


def test_hard_instance_optimum():
    inst = hard_instance(F(1, 10))
    assert exact_mwm(inst.full().events).total == F(73, 10)
