import pytest
from hypothesis import given

from locdom import BLUE, RED, CnfFormula, FormatError, Graph, TestCoverInstance, aux_graph
from locdom.formats import (
    format_cnf,
    format_gr,
    format_tc,
    parse_cnf,
    parse_gr,
    parse_tc,
    read_gr,
    write_gr,
)
from test_instances import graphs, tc_instances


def test_gr_parse_basic_and_comments():
    g, comments = parse_gr("c hello\np tw 3 2\n1 2\n2 3\n")
    assert g.vertex_count == 3
    assert g.edges == frozenset({(0, 1), (1, 2)})
    assert comments == ["hello"]


def test_gr_canonical_roundtrip_bytes():
    text = "c k 2\np tw 3 2\n1 2\n2 3\n"
    g, comments = parse_gr(text)
    assert format_gr(g, comments) == text


def test_gr_roles_roundtrip():
    g = aux_graph(TestCoverInstance(2, ({0}, {0, 1})))
    text = format_gr(g)
    assert "c role red: 1 2" in text and "c role blue: 3 4" in text
    g2, _ = parse_gr(text)
    assert g2 == g and g2.roles == (RED, RED, BLUE, BLUE)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("p tw 5 1\n5 5\n", 2, "self-loop"),
        ("p tw 3 2\n1 2\n2 1\n", 3, "duplicate"),
        ("p tw 3 1\n1 4\n", 2, "out of range"),
        ("p tw 3\n", 1, "header"),
        ("1 2\n", 1, "before header"),
        ("p tw 3 1\n1 x\n", 2, "vertex id"),
    ],
)
def test_gr_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(FormatError) as exc:
        parse_gr(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)
    assert str(exc.value).startswith(f"line {line}:")


def test_gr_count_mismatch_and_missing_header():
    with pytest.raises(FormatError, match="announces"):
        parse_gr("p tw 3 2\n1 2\n")
    with pytest.raises(FormatError, match="missing"):
        parse_gr("c nothing\n")


def test_gr_partial_roles_rejected():
    with pytest.raises(FormatError, match="no role"):
        parse_gr("p tw 2 1\n1 2\nc role red: 1\n")


def test_gr_file_roundtrip(tmp_path):
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    p = tmp_path / "x.gr"
    write_gr(p, g, ["note"])
    assert read_gr(p) == g


@given(graphs(9))
def test_gr_roundtrip_property(g):
    text = format_gr(g)
    g2, _ = parse_gr(text)
    assert g2 == g
    assert format_gr(g2) == text


def test_tc_parse_empty_test_line():
    inst, _ = parse_tc("p tc 2 2\nt 1 2\nt\n")
    assert inst.tests == (frozenset({0, 1}), frozenset())


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("p tc 2 1\nt 3\n", "out of range"),
        ("p tc 2 1\nt 1 1\n", "repeated"),
        ("p tc 0 0\n", "non-empty"),
        ("p tc 2 2\nt 1\n", "announces"),
        ("p tc 2 1\nx 1\n", "unexpected"),
    ],
)
def test_tc_errors(text, fragment):
    with pytest.raises(FormatError, match=fragment):
        parse_tc(text)


@given(tc_instances())
def test_tc_roundtrip_property(inst):
    text = format_tc(inst)
    inst2, _ = parse_tc(text)
    assert inst2 == inst
    assert format_tc(inst2) == text


def test_cnf_dimacs_example():
    f, _ = parse_cnf("p cnf 2 1\n1 -2 0\n")
    assert f == CnfFormula(2, ((1, -2),))


def test_cnf_clause_spanning_lines_and_percent_trailer():
    f, _ = parse_cnf("c x\np cnf 3 2\n1 2\n3 0 -1 0\n%\n0\n")
    assert f.clauses == ((1, 2, 3), (-1,))


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("p cnf 2 1\n1 3 0\n", "out of range"),
        ("p cnf 2 1\n1 2\n", "not terminated"),
        ("p cnf 2 2\n1 0\n", "announces"),
        ("1 0\n", "before header"),
    ],
)
def test_cnf_errors(text, fragment):
    with pytest.raises(FormatError, match=fragment):
        parse_cnf(text)


def test_cnf_roundtrip():
    f = CnfFormula(3, ((1, -2, 3), (-3,), ()))
    text = format_cnf(f)
    assert parse_cnf(text)[0] == f
