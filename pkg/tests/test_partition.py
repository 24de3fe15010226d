import pytest
from hypothesis import given, strategies as st

import naive
from locdom import CapExceeded, Status, TestCoverInstance, is_test_cover
from locdom.generators import random_tc
from locdom.partition import Partition, bell, decide_tc_partition, refine, solve_tc_partition
from test_instances import tc_instances

UNIVERSE = 6


@st.composite
def partitions(draw):
    labels = draw(st.lists(st.integers(0, UNIVERSE - 1), min_size=UNIVERSE, max_size=UNIVERSE))
    groups = {}
    for item, lab in enumerate(labels):
        groups.setdefault(lab, set()).add(item)
    return Partition(tuple(groups.values()))


items = st.frozensets(st.integers(0, UNIVERSE - 1))


def test_refine_examples():
    p = Partition.whole(3)
    assert refine(p, {0}).blocks == (frozenset({0}), frozenset({1, 2}))
    assert refine(p, set()) == p


def test_canonical_form():
    p = Partition(({3, 2}, set(), {1, 0}))
    assert p.blocks == (frozenset({0, 1}), frozenset({2, 3}))
    assert not p.is_discrete() and Partition(({0}, {1})).is_discrete()


@given(partitions(), items)
def test_refine_idempotent(p, t):
    assert refine(refine(p, t), t) == refine(p, t)


@given(partitions(), items, items)
def test_refine_order_independent(p, t1, t2):
    assert refine(refine(p, t1), t2) == refine(refine(p, t2), t1)


@given(partitions(), items)
def test_refine_never_coarsens(p, t):
    q = refine(p, t)
    assert len(q) >= len(p)
    assert all(any(b <= a for a in p.blocks) for b in q.blocks)
    assert frozenset().union(*q.blocks) == frozenset().union(*p.blocks)


def test_bell_numbers():
    # OEIS A000110
    assert [bell(n) for n in range(11)] == [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]


def test_solve_examples():
    assert solve_tc_partition(TestCoverInstance(3, ({0}, {1}))).opt == 2
    res = solve_tc_partition(TestCoverInstance(1, ({0},)))
    assert res.opt == 0 and decide_tc_partition(TestCoverInstance(1, ({0},)), 0).status is Status.YES
    assert decide_tc_partition(TestCoverInstance(2, ({0, 1},)), 5).status is Status.INFEASIBLE
    assert solve_tc_partition(TestCoverInstance(2, ({0, 1},))).opt is None


def test_cap():
    with pytest.raises(CapExceeded):
        solve_tc_partition(TestCoverInstance(11, ({0},)))
    assert solve_tc_partition(TestCoverInstance(11, tuple({i} for i in range(10))), cap=11).opt == 10


@pytest.mark.parametrize("literal", [False, True])
def test_matches_oracle(literal):
    for seed in range(150):
        inst = random_tc(seed, 8, 10)
        res = solve_tc_partition(inst, literal=literal)
        assert res.opt == naive.tc_opt(inst.universe_size, inst.tests)
        assert res.reached <= bell(inst.universe_size)
        if res.opt is not None:
            assert is_test_cover(inst, res.witness.members)


@given(tc_instances(max_items=6, max_tests=7))
def test_literal_and_forward_modes_agree(inst):
    a = solve_tc_partition(inst)
    b = solve_tc_partition(inst, literal=True)
    assert a.opt == b.opt
    if a.opt is not None:
        assert a.witness == b.witness


@given(tc_instances(max_items=6, max_tests=7), st.integers(0, 6))
def test_decision_consistent_with_optimum(inst, k):
    opt = naive.tc_opt(inst.universe_size, inst.tests)
    dec = decide_tc_partition(inst, k)
    if opt is None:
        assert dec.status is Status.INFEASIBLE
    else:
        assert (dec.status is Status.YES) == (opt <= k)
