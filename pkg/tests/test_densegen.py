from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kscatter.densegen import (StageOrder, back_and_forth, check_star, is_met, longest_descending,
                               requests, saturate, saturate_literal, stage_filtered_descending)


def test_saturate_examples():
    assert len(saturate(StageOrder.chain(2), 1, 1)) == 5
    assert len(saturate(StageOrder(), 1, 1)) == 1
    assert len(saturate(StageOrder.chain(2), 0, 3)) == 2


def test_check_star_examples():
    assert len(check_star(StageOrder.chain(2), 1)) == 3
    c1 = StageOrder.chain(1)
    unmet = check_star(c1, 1)
    assert {(tuple(s), tuple(t)) for s, t in unmet} == {((), (0,)), ((0,), ())}
    p = saturate(StageOrder.chain(2), 1, 1)
    assert check_star(p, 1, over=[0, 1]) == []


@given(st.integers(0, 3), st.integers(0, 3), st.integers(1, 2))
def test_fast_route_matches_literal_enumeration(start, rounds, b):
    fast = saturate(StageOrder.chain(start), rounds, b)
    slow = saturate_literal(StageOrder.chain(start), rounds, b)
    assert fast.order == slow.order and fast.labels == slow.labels and fast.trace == slow.trace


@given(st.integers(0, 4), st.integers(1, 4), st.integers(1, 3), st.none() | st.integers(0, 99))
def test_growth_and_labels(start, rounds, b, seed):
    p = StageOrder.chain(start)
    for r in range(rounds):
        q = saturate(p, 1, b, seed)
        assert len(q) == 2 * len(p) + 1
        assert q.is_consistent()
        # the previous stage sits inside the next one unchanged
        assert all(q.labels[x] == p.labels[x] for x in p.order)
        assert [x for x in q.order if x in p.labels] == p.order
        p = q


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 2))
def test_previous_round_requests_all_met(start, rounds, b):
    p = saturate(StageOrder.chain(start), rounds, b)
    last = max(p.birth.values())
    assert check_star(p, b, p.born_by(last - 1)) == []


def test_unsaturated_points_leave_gaps():
    p = saturate(StageOrder.chain(2), 2, 1)
    newest = [x for x in p.order if p.birth[x] == 2]
    assert check_star(p, 1, newest[:2]) != []


def test_requests_enumeration_order_and_count():
    p = StageOrder.chain(3)
    reqs = requests(p, 1)
    # (),() then six singletons then three pairs
    assert len(reqs) == 1 + 6 + 3
    keys = [(len(s) + len(t), tuple(sorted(s)), tuple(sorted(t))) for s, t in reqs]
    assert keys == sorted(keys)
    assert is_met(p, {0}, {2}) and not is_met(p, {0}, {1})


def test_determinism():
    a = saturate(StageOrder.chain(2), 3, 2, seed=4)
    b = saturate(StageOrder.chain(2), 3, 2, seed=4)
    assert a.to_json() == b.to_json()
    c = saturate(StageOrder.chain(2), 3, 2, seed=5)
    assert c.order != a.order or c.trace != a.trace


def test_back_and_forth_between_independent_saturations():
    a = saturate(StageOrder.chain(2), 3, 2)
    b = saturate(StageOrder.chain(2), 3, 2, seed=7)
    res = back_and_forth(a, b, rounds=10)
    assert res.ok and res.rounds_done == 10
    items = sorted(res.mapping.items(), key=lambda kv: a.labels[kv[0]])
    assert all(b.less(y1, y2) for (_, y1), (_, y2) in zip(items, items[1:]))


def test_back_and_forth_identity():
    a = saturate(StageOrder.chain(2), 2, 1)
    res = back_and_forth(a, a.copy(), {x: x for x in a.order}, rounds=3)
    assert res.failure == {"reason": "exhausted", "side": "A"}
    assert res.mapping == {x: x for x in a.order}


def test_back_and_forth_certificate_names_gap():
    a = StageOrder.chain(3)
    b = StageOrder.chain(2)
    res = back_and_forth(a, b, {0: 0, 2: 1}, rounds=2)
    assert not res.ok
    assert res.failure["reason"] == "unfillable_gap"
    assert (res.failure["S"], res.failure["T"]) == ([0], [1])


def test_back_and_forth_rejects_bad_pairs():
    a, b = StageOrder.chain(2), StageOrder.chain(2)
    with pytest.raises(ValueError):
        back_and_forth(a, b, {0: 1, 1: 0})


@pytest.mark.parametrize("rounds", range(1, 6))
def test_stage_filtered_chain_grows(rounds):
    p = saturate(StageOrder.chain(2), rounds, 2)
    chain = stage_filtered_descending(p)
    assert len(chain) >= rounds
    assert all(p.less(y, x) for x, y in zip(chain, chain[1:]))
    assert len({p.birth[x] for x in chain}) == len(chain)


def test_longest_descending():
    assert len(longest_descending(StageOrder.chain(5))) == 5
    assert longest_descending(StageOrder()) == []
    assert stage_filtered_descending(StageOrder()) == []


def test_trace_records_requests():
    p = saturate(StageOrder.chain(1), 1, 2)
    assert [t["request"] for t in p.trace] == [{"S": [], "T": [0]}, {"S": [0], "T": []}]
    assert [Fraction(t["label"]) for t in p.trace] == [Fraction(-1), Fraction(1)]


def test_bound_must_be_positive():
    with pytest.raises(ValueError):
        saturate(StageOrder.chain(2), 1, 0)
