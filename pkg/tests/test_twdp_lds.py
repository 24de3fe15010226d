import random

import pytest
from hypothesis import given

import naive
from locdom import DecompositionError, Graph, is_locating_dominating_set
from locdom.generators import cycle, path, random_graph, random_width2, star
from locdom.instances import bits_of
from locdom.oracles import brute_force_lds, brute_force_lds_opt
from locdom.treedec import NodeKind, TreeDecomposition, heuristic_td, make_nice, nice_td
from locdom.twdp import (
    EMPTY,
    State,
    decide_lds_tw,
    dump_state_counts,
    lds_engine,
    tuple_view,
    solve_lds_tw,
)
from test_instances import graphs

B0, B1, B2 = 1, 2, 4


# -- transitions ---------------------------------------------------------------

def test_leaf_table():
    table = lds_engine(path(1)).leaf_states()
    assert table == {EMPTY: (0, 0)}
    assert len(table) <= 4
    assert all(cost == 0 for cost, _ in table.values())
    view = tuple_view(EMPTY, path(1).masks)
    assert view.Y == view.W == view.A == view.D == view.pairs == frozenset()


def test_introduce_isolated_vertex():
    g = Graph(1)
    out = dict(lds_engine(g).introduce(EMPTY, 0))
    located = State(0, 0, 0, (B0,), frozenset())
    selected = State(B0, 0, 0, (), frozenset())
    assert out == {located: 0, selected: 1}
    # not selected: signature is empty, nothing recorded in Y or D beyond it
    view = tuple_view(located, g.masks)
    assert view.D == {frozenset()} and view.pairs == frozenset()
    # selected: Y grows, A unchanged
    view = tuple_view(selected, g.masks)
    assert view.Y == {0} and view.A == frozenset()


def test_introduce_selected_splits_a_pair():
    g = Graph.from_edges(3, [(0, 1)])
    eng = lds_engine(g)
    st = State(0, 0, 0, (B0 | B2,), frozenset())
    assert tuple_view(st, g.masks).pairs == {(0, 2)}
    (sel,) = [s for s, d in eng.introduce(st, 1) if d == 1]
    assert tuple_view(sel, g.masks).pairs == frozenset()
    assert sel.classes == (B0, B2)


def test_introduce_into_matching_class_creates_pair():
    g = Graph.from_edges(3, [(0, 2), (1, 2)])
    eng = lds_engine(g)
    st = State(B2, 0, 0, (B0,), frozenset())
    (loc,) = [s for s, d in eng.introduce(st, 1) if d == 0]
    assert tuple_view(loc, g.masks).pairs == {(0, 1)}


def test_forget_plus_vertex_is_pruned():
    g = path(2)
    st = State(0, 0, B0, (B0,), frozenset())
    assert lds_engine(g).forget(st, 0) is None


def test_forget_undominated_located_vertex_is_pruned():
    st = State(0, 0, 0, (B0,), frozenset())
    assert lds_engine(path(2)).forget(st, 0) is None


def test_forget_selected_dominates_bag_neighbour():
    g = path(2)
    st = State(B0, 0, 0, (B1,), frozenset())
    out = lds_engine(g).forget(st, 0)
    assert tuple_view(out, g.masks).W == {1}
    assert out.sol == 0


def test_forget_located_records_signature_and_flags_classmates():
    g = Graph.from_edges(3, [(0, 2), (1, 2)])
    st = State(B2, 0, 0, (B0 | B1,), frozenset())
    out = lds_engine(g).forget(st, 0)
    assert out.forgotten == {B2}
    assert out.plus == B1


def test_join_rejects_shared_forgotten_signature():
    eng = lds_engine(path(2))
    st = State(B0, 0, 0, (), frozenset({B0}))
    assert eng.join(st, st) is None


def test_join_drops_one_sided_pair():
    g = Graph(2)
    eng = lds_engine(g)
    s1 = State(0, 0, 0, (B0 | B1,), frozenset())
    s2 = State(0, 0, 0, (B0, B1), frozenset())
    out = eng.join(s1, s2)
    assert tuple_view(out, g.masks).pairs == frozenset()


def test_join_double_plus_needs_domination():
    eng = lds_engine(Graph(1))
    s = State(0, 0, B0, (B0,), frozenset())
    assert eng.join(s, s._replace(forgotten=frozenset())) is None
    d = s._replace(dom=B0)
    assert eng.join(d, d._replace(plus=B0)) is not None


def test_join_of_empty_branches():
    eng = lds_engine(Graph(0))
    assert eng.join(EMPTY, EMPTY) == EMPTY


def test_join_requires_equal_y():
    eng = lds_engine(Graph(2))
    assert eng.join(State(B0, 0, 0, (), frozenset()), State(B1, 0, 0, (), frozenset())) is None


# -- whole-graph answers ---------------------------------------------------------

@pytest.mark.parametrize(
    "g, opt",
    [
        (path(1), 1),
        (path(2), 1),
        (Graph.from_edges(4, [(0, 1), (2, 3)]), 2),
        (path(3), 2),
        (star(4), 3),
        (Graph(0), 0),
    ],
)
def test_small_optima(g, opt):
    assert naive.lds_opt(*naive.graph_args(g)) == opt
    res = solve_lds_tw(g)
    assert res.opt == opt
    assert is_locating_dominating_set(g, res.witness.members)


def test_p3_any_valid_decomposition():
    g = path(3)
    tds = [
        TreeDecomposition(({0, 1, 2},)),
        TreeDecomposition(({0, 1}, {1, 2}), {(0, 1)}),
        TreeDecomposition(({1, 2}, {0, 1}), {(0, 1)}),
    ]
    for td in tds:
        assert solve_lds_tw(g, make_nice(g, td)).opt == 2


def test_matches_oracle_and_witness():
    for seed in range(200):
        g = random_graph(seed)
        res = solve_lds_tw(g)
        assert res.opt == brute_force_lds_opt(g)
        assert res.witness == brute_force_lds(g, res.opt)


@given(graphs(9))
def test_matches_definition_property(g):
    res = solve_lds_tw(g)
    assert res.opt == naive.lds_opt(*naive.graph_args(g))
    assert len(res.witness) == res.opt


def test_families_up_to_12():
    for n in range(1, 13):
        for g in (path(n), star(n)) + ((cycle(n),) if n >= 3 else ()):
            assert solve_lds_tw(g).opt == brute_force_lds_opt(g)


def test_decision_variant():
    g = cycle(6)
    opt = brute_force_lds_opt(g)
    assert decide_lds_tw(g, opt - 1) is None
    sol = decide_lds_tw(g, opt)
    assert sol is not None and is_locating_dominating_set(g, sol.members)
    assert decide_lds_tw(g, 99) == solve_lds_tw(g).witness
    assert decide_lds_tw(g, -1) is None


def test_invalid_decomposition_rejected():
    wrong = make_nice(path(2), TreeDecomposition(({0, 1},)))
    with pytest.raises(DecompositionError):
        solve_lds_tw(path(3), wrong)


def test_table_invariants():
    rng = random.Random(1)
    graphs_ = [random_graph(s) for s in range(40)] + [random_width2(9, rng) for _ in range(5)]
    for g in graphs_:
        ntd = nice_td(g)
        eng = lds_engine(g)

        def observe(i, table):
            bag = sum(1 << v for v in ntd.nodes[i].bag)
            for st, (cost, wit) in table.items():
                located = 0
                for c in st.classes:
                    assert c and not c & located
                    located |= c
                assert not st.sol & located
                assert (st.sol | located) & ~bag == 0
                assert st.dom & ~located == 0 and st.plus & ~located == 0
                assert all(a & ~st.sol == 0 for a in st.forgotten)
                ysize = bin(st.sol).count("1")
                assert cost >= ysize
                if st.dom:
                    assert cost >= ysize + 1
                assert bin(wit).count("1") == cost and wit & bag == st.sol

        eng.run(ntd, observe=observe)


def test_state_dump(tmp_path):
    g = path(4)
    ntd = nice_td(g)
    res = solve_lds_tw(g, ntd)
    rows = dump_state_counts(ntd, res.state_counts).splitlines()
    assert len(rows) == len(ntd.nodes)
    idx, kind, bag, count = rows[-1].split("\t")
    assert kind == NodeKind.FORGET.value and bag == "0" and int(count) == 1
    assert res.total_states == sum(int(r.split("\t")[3]) for r in rows)


def test_heuristic_choice_does_not_matter():
    for seed in range(30):
        g = random_graph(seed)
        a = solve_lds_tw(g, make_nice(g, heuristic_td(g, "min-degree"))).opt
        b = solve_lds_tw(g, make_nice(g, heuristic_td(g, "min-fill"))).opt
        assert a == b
