import subprocess
import sys
from pathlib import Path

import pytest

from locdom import cli
from locdom.formats import parse_gr, read_gr, write_gr
from locdom.generators import path
from locdom.oracles import brute_force_lds_opt
from locdom.treedec import parse_td, validate_td

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    p3 = tmp_path / "p3.gr"
    p3.write_text("p tw 3 2\n1 2\n2 3\n")
    k1 = tmp_path / "k1.gr"
    k1.write_text("p tw 1 0\n")
    twin = tmp_path / "twin.tc"
    twin.write_text("p tc 2 2\nt 1 2\nt 1 2\n")
    tc = tmp_path / "ok.tc"
    tc.write_text("p tc 3 3\nt 1\nt 2\nt 1 2\n")
    bad = tmp_path / "bad.gr"
    bad.write_text("p tw 2 1\n2 2\n")
    cnf = tmp_path / "f.cnf"
    cnf.write_text("p cnf 2 1\n1 2 0\n")
    unsat = tmp_path / "u.cnf"
    unsat.write_text("p cnf 1 2\n1 0\n-1 0\n")
    big = tmp_path / "big.cnf"
    big.write_text("p cnf 25 1\n1 25 0\n")
    occ4 = tmp_path / "occ4.cnf"
    occ4.write_text("p cnf 1 4\n1 0\n1 0\n-1 0\n-1 0\n")
    return dict(p3=p3, k1=k1, twin=twin, tc=tc, bad=bad, cnf=cnf, unsat=unsat, big=big, occ4=occ4, dir=tmp_path)


# -- solve ---------------------------------------------------------------------

def test_solve_brute_yes(capsys, files):
    code, out, _ = run(capsys, "solve", "lds", "--algo", "brute", files["p3"], "-k", 2)
    assert code == 0 and out.splitlines() == ["ANSWER YES"]


def test_solve_no_exit_1(capsys, files):
    code, out, _ = run(capsys, "solve", "lds", "--algo", "kernel", files["p3"], "-k", 1)
    assert code == 1 and "ANSWER NO" in out


def test_solve_partition_infeasible(capsys, files):
    code, out, _ = run(capsys, "solve", "tc", "--algo", "partition", files["twin"], "-k", 5)
    assert code == 1 and out.strip() == "ANSWER INFEASIBLE"


def test_solve_tw_matches_brute(capsys, files):
    code, out, _ = run(capsys, "solve", "lds", "--algo", "tw", files["p3"], "--witness")
    lines = dict(line.split(" ", 1) for line in out.splitlines())
    assert code == 0
    assert int(lines["OPT"]) == brute_force_lds_opt(path(3)) == 2
    assert lines["WITNESS"] == "1 2"
    assert int(lines["STATES"]) > 0


@pytest.mark.parametrize("algo", ["brute", "tw", "kernel", "partition", "ilp"])
def test_solve_tc_all_algorithms(capsys, files, algo):
    code, out, _ = run(capsys, "solve", "tc", "--algo", algo, files["tc"])
    assert code == 0 and "OPT 2" in out


def test_solve_partition_rejects_lds(capsys, files):
    code, _, err = run(capsys, "solve", "lds", "--algo", "partition", files["p3"])
    assert code == 2 and "tc only" in err


def test_solve_format_error(capsys, files):
    code, _, err = run(capsys, "solve", "lds", files["bad"])
    assert code == 3 and "line 2" in err


def test_solve_missing_file(capsys, files):
    code, _, _ = run(capsys, "solve", "lds", files["dir"] / "nope.gr")
    assert code == 3


def test_usage_error(capsys):
    code, _, _ = run(capsys, "solve", "lds")
    assert code == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_solve_with_td_and_dump(capsys, files):
    td = files["dir"] / "p3.td"
    assert run(capsys, "td", "heuristic", files["p3"], "-o", td)[0] == 0
    dump = files["dir"] / "states.tsv"
    code, out, _ = run(capsys, "solve", "lds", "--algo", "tw", files["p3"], "--td", td, "--dump-states", dump)
    assert code == 0 and "OPT 2" in out
    rows = dump.read_text().splitlines()
    assert rows and all(len(r.split("\t")) == 4 for r in rows)


# -- reduce --------------------------------------------------------------------

@pytest.mark.parametrize(
    "target, ext, summary",
    [
        ("lds-tw", "gr", "K 17 VERTICES 44 EDGES 89"),
        ("lds-k", "gr", "K 11 VERTICES 30 EDGES 47"),
        ("tc-tw", "tc", "K 10 ITEMS 23 TESTS 13"),
        ("tc-k", "tc", "K 4 ITEMS 7 TESTS 10"),
    ],
)
def test_reduce_golden(capsys, tmp_path, target, ext, summary):
    out_path = tmp_path / f"o.{ext}"
    code, out, _ = run(capsys, "reduce", target, GOLDEN / "pos.cnf", out_path)
    assert code == 0 and out.strip() == summary
    assert out_path.read_bytes() == (GOLDEN / f"pos.{target}.{ext}").read_bytes()


def test_reduce_to33_counts_extra_clauses(capsys, files):
    code, out, _ = run(capsys, "reduce", "to33", files["occ4"], files["dir"] / "o.cnf")
    assert code == 0 and out.strip().endswith("EXTRA 4")


def test_reduce_parse_failure(capsys, files):
    files["bad"].write_text("p cnf 1 1\n2 0\n")
    code, _, _ = run(capsys, "reduce", "tc-k", files["bad"], files["dir"] / "o.tc")
    assert code == 3


def test_reduce_output_carries_trace(capsys, files):
    out_path = files["dir"] / "o.gr"
    run(capsys, "reduce", "lds-tw", files["cnf"], out_path)
    g, comments = parse_gr(out_path.read_text())
    assert comments[0] == "k 17"
    assert sum(c.startswith("vertex ") for c in comments) == g.vertex_count


# -- verify --------------------------------------------------------------------

def test_verify_single(capsys, files):
    code, out, _ = run(capsys, "verify", "lds-k", files["cnf"])
    assert code == 0 and out.splitlines()[0] == "formula 1 sat=y inst=y agree=y"


def test_verify_contradiction(capsys, files):
    code, out, _ = run(capsys, "verify", "tc-tw", files["unsat"])
    assert code == 0 and "sat=n inst=n agree=y" in out


def test_verify_sweep(capsys):
    code, out, _ = run(capsys, "verify", "tc-k", "--sweep", "vars<=2,clauses<=2,seeds=3")
    assert code == 0
    assert out.splitlines()[-1].startswith("AGREE")


def test_verify_oversized_strict(capsys, files):
    code, out, _ = run(capsys, "verify", "lds-k", files["big"])
    assert code == 0 and "skipped" in out
    code, _, _ = run(capsys, "verify", "lds-k", files["big"], "--strict")
    assert code != 0


def test_verify_needs_one_input(capsys, files):
    assert run(capsys, "verify", "lds-k")[0] == 2
    assert run(capsys, "verify", "lds-k", files["cnf"], "--sweep", "vars<=1")[0] == 2


# -- td ------------------------------------------------------------------------

def test_td_subcommands(capsys, files):
    td = files["dir"] / "h.td"
    code, out, _ = run(capsys, "td", "heuristic", files["p3"], "-o", td, "--strategy", "min-degree")
    assert code == 0 and out.strip() == "WIDTH 1"
    assert run(capsys, "td", "check", files["p3"], td)[:2] == (0, "VALID\n")
    code, out, _ = run(capsys, "td", "width", td)
    assert code == 0 and out.strip() == "1"
    nice = files["dir"] / "n.td"
    code, out, _ = run(capsys, "td", "nicify", files["p3"], td, "-o", nice)
    assert code == 0 and out.startswith("NODES")
    assert validate_td(read_gr(files["p3"]), parse_td(nice.read_text()))


def test_td_check_invalid(capsys, files):
    td = files["dir"] / "bad.td"
    td.write_text("s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n")
    code, out, _ = run(capsys, "td", "check", files["p3"], td)
    assert code == 1 and out.startswith("INVALID edge not covered 2 3")


def test_td_exact_small(capsys, files):
    k4 = files["dir"] / "k4.gr"
    k4.write_text("p tw 4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n")
    code, out, _ = run(capsys, "td", "exact-small", k4, "--max-width", 2)
    assert code == 1 and out.strip() == "NONE"
    code, out, _ = run(capsys, "td", "exact-small", k4, "--max-width", 3)
    assert code == 0 and "WIDTH 3" in out


# -- check ---------------------------------------------------------------------

def test_check_examples(capsys, files):
    assert run(capsys, "check", "lds", files["p3"], "--solution", "1 3")[:2] == (0, "VALID\n")
    assert run(capsys, "check", "lds", files["p3"], "--solution", "2")[:2] == (1, "INVALID\n")
    assert run(capsys, "check", "lds", files["k1"], "--solution", "")[:2] == (1, "INVALID\n")
    assert run(capsys, "check", "tc", files["tc"], "--solution", "1 2")[0] == 0
    assert run(capsys, "check", "lds", files["p3"], "--solution", "9")[0] == 2


# -- bench and gen -------------------------------------------------------------------

def test_bench_paths(capsys, tmp_path):
    corpus = tmp_path / "c"
    assert run(capsys, "gen", "paths", corpus, "--count", 10)[0] == 0
    code, out, _ = run(capsys, "bench", corpus, "--algos", "brute,tw,kernel")
    rows = out.splitlines()
    assert code == 0
    assert rows[0].split("\t") == ["instance", "algo", "answer", "opt", "millis", "states"]
    assert len(rows) == 1 + 10 * 3
    assert "CONFLICT" not in out


def test_bench_timeout(capsys, tmp_path, monkeypatch):
    import time

    write_gr(tmp_path / "a.gr", path(3))
    real = cli.solve_instance

    def slow(problem, algo, *a, **kw):
        if algo == "tw":
            time.sleep(5)
        return real(problem, algo, *a, **kw)

    monkeypatch.setattr(cli, "solve_instance", slow)
    code, out, _ = run(capsys, "bench", tmp_path, "--algos", "brute,tw", "--timeout", 0.5)
    assert "\ttw\tTIMEOUT\t" in out
    assert code == 0


def test_bench_conflict(capsys, tmp_path, monkeypatch):
    write_gr(tmp_path / "a.gr", path(3))
    real = cli.solve_instance

    def wrong(problem, algo, *a, **kw):
        res = real(problem, algo, *a, **kw)
        if algo == "kernel":
            res["opt"] += 1
        return res

    monkeypatch.setattr(cli, "solve_instance", wrong)
    code, out, _ = run(capsys, "bench", tmp_path, "--algos", "brute,kernel")
    assert code == 1 and "a.gr\tCONFLICT" in out


def test_bench_unknown_algo(capsys, tmp_path):
    assert run(capsys, "bench", tmp_path, "--algos", "magic")[0] == 2


@pytest.mark.parametrize("family", ["trees", "graphs", "tc", "cnf"])
def test_gen_is_deterministic(capsys, tmp_path, family):
    run(capsys, "--seed", 3, "gen", family, tmp_path / "a", "--count", 3)
    run(capsys, "--seed", 3, "gen", family, tmp_path / "b", "--count", 3)
    for f in sorted((tmp_path / "a").iterdir()):
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_console_entry_point(files):
    res = subprocess.run(
        [sys.executable, "-m", "locdom.cli", "solve", "lds", "--algo", "brute", str(files["p3"])],
        capture_output=True, text=True,
    )
    assert res.returncode == 0 and res.stdout.strip() == "OPT 2"
