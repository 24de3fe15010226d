import pytest
from hypothesis import given, strategies as st

import naive
from locdom import CapExceeded, CnfFormula, Graph, Status, TestCoverInstance, is_locating_dominating_set
from locdom.generators import complete, path, random_cnf, random_graph, random_tc
from locdom.oracles import (
    brute_force_lds,
    brute_force_lds_opt,
    brute_force_sat,
    brute_force_tc,
    brute_force_tc_opt,
    count_sat,
)

BACKENDS = ["numba", "numpy"]


@pytest.mark.parametrize("backend", BACKENDS)
def test_lds_p3(backend):
    sol = brute_force_lds(path(3), 2, backend=backend)
    assert sol is not None and len(sol) == 2
    assert brute_force_lds(path(3), 1, backend=backend) is None


def test_lds_empty_graph():
    sol = brute_force_lds(Graph(0), 0)
    assert sol is not None and len(sol) == 0


def test_lds_caps():
    with pytest.raises(CapExceeded):
        brute_force_lds(path(17), 5)
    assert brute_force_lds_opt(path(17), cap=17) == 7


@pytest.mark.parametrize("backend", BACKENDS)
def test_lds_opt_matches_definition(backend):
    for seed in range(80):
        g = random_graph(seed, max_n=8)
        opt = brute_force_lds_opt(g, backend=backend)
        assert opt == naive.lds_opt(*naive.graph_args(g))
        sol = brute_force_lds(g, opt, backend=backend)
        assert is_locating_dominating_set(g, sol.members)


def test_backends_return_the_same_witness():
    for seed in range(60):
        g = random_graph(seed)
        k = brute_force_lds_opt(g)
        assert brute_force_lds(g, k, backend="numba") == brute_force_lds(g, k, backend="numpy")


def test_tc_examples():
    inst = TestCoverInstance(2, ({0}, {1}, {0, 1}))
    dec = brute_force_tc(inst, 1)
    assert dec.status is Status.YES and dec.solution.members in ({0}, {1})
    assert brute_force_tc(TestCoverInstance(2, ({0, 1},)), 5).status is Status.INFEASIBLE
    assert brute_force_tc(TestCoverInstance(3, ({0}, {1}, {2})), 1).status is Status.NO


@pytest.mark.parametrize("backend", BACKENDS)
def test_tc_opt_matches_definition(backend):
    for seed in range(80):
        inst = random_tc(seed, 6, 7)
        assert brute_force_tc_opt(inst, backend=backend) == naive.tc_opt(inst.universe_size, inst.tests)


def test_tc_cap():
    with pytest.raises(CapExceeded):
        brute_force_tc(TestCoverInstance(2, tuple({0} for _ in range(21))), 1)


def test_sat_examples():
    assert brute_force_sat(CnfFormula(1, ((1,),))) == (True,)
    assert brute_force_sat(CnfFormula(1, ((1,), (-1,)))) is None
    xor = CnfFormula(2, ((1, 2), (-1, -2)))
    assert brute_force_sat(xor) is not None
    assert count_sat(xor) == 2


def test_sat_empty_clause_and_cap():
    assert brute_force_sat(CnfFormula(2, ((1,), ()))) is None
    with pytest.raises(CapExceeded):
        brute_force_sat(CnfFormula(25, ((1,),)))


@pytest.mark.parametrize("backend", BACKENDS)
def test_sat_matches_definition(backend):
    for seed in range(150):
        f = random_cnf(seed, variables=5)
        got = brute_force_sat(f, backend=backend)
        assert (got is not None) == naive.satisfiable(f.variable_count, f.clauses)
        if got is not None:
            assert f.evaluate(got)


@given(st.integers(2, 6))
def test_complete_graph_needs_all_but_one(n):
    # in K_n every outside vertex sees all of S, so at most one may stay out
    assert brute_force_lds_opt(complete(n)) == n - 1
