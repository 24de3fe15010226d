"""Command-line front end: ``locdom <command> ...``.

Machine-readable results go to stdout as upper-case keyed lines;
diagnostics go to stderr.  Exit codes: 0 yes/solved, 1 no or infeasible,
2 usage error, 3 unreadable input file.
"""
from __future__ import annotations

import argparse
import multiprocessing as mp
import sys
import time
from pathlib import Path

from . import formats, generators, oracles
from .errors import FormatError, InputError
from .exact import ilp_lds, ilp_tc
from .instances import Status, TestCoverInstance, aux_graph, is_locating_dominating_set, is_test_cover
from .kernel import lds_solve_by_enumeration, tc_opt_by_enumeration, tc_solve_by_enumeration
from .partition import decide_tc_partition, solve_tc_partition
from .reductions import REDUCTIONS, eliminate_pure_literals, reduce, sweep_formulas, to_33sat, verify_reduction
from .reductions.constructions import lds_tw_reduction, tc_tw_reduction
from .treedec import (
    exact_td_small,
    format_td,
    heuristic_td,
    make_nice,
    read_td,
    validate_td,
    width,
)
from .twdp import decide_lds_tw, decide_tc_tw, dump_state_counts, solve_lds_tw, solve_tc_tw

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_FORMAT = 0, 1, 2, 3
ALGOS = ("brute", "tw", "kernel", "partition", "ilp")


class UsageError(Exception):
    pass


def _ids(members):
    return " ".join(str(v + 1) for v in sorted(members))


def load_instance(problem, path):
    return formats.read_gr(path) if problem == "lds" else formats.read_tc(path)


def solve_instance(problem, algo, inst, k=None, td_path=None):
    """Run one solver; returns a dict with answer, opt, witness and states."""
    if problem == "lds" and algo == "partition":
        raise UsageError("the partition algorithm solves tc only")
    out = {"answer": None, "opt": None, "witness": None, "states": None}
    ntd = None
    if algo == "tw" and td_path is not None:
        g = inst if problem == "lds" else aux_graph(inst)
        ntd = make_nice(g, read_td(td_path))
    if problem == "lds":
        if k is None:
            if algo == "brute":
                wit = oracles.brute_force_lds(inst, inst.vertex_count)
            elif algo == "tw":
                res = solve_lds_tw(inst, ntd)
                wit, out["states"] = res.witness, res.total_states
            elif algo == "kernel":
                wit = next(s for s in (lds_solve_by_enumeration(inst, j) for j in range(inst.vertex_count + 1)) if s)
            else:
                wit = ilp_lds(inst)
            out.update(answer=Status.YES, opt=len(wit), witness=wit.members)
            return out
        if algo == "brute":
            wit = oracles.brute_force_lds(inst, k)
        elif algo == "tw":
            wit = decide_lds_tw(inst, k, ntd)
        elif algo == "kernel":
            wit = lds_solve_by_enumeration(inst, k)
        else:
            sol = ilp_lds(inst)
            wit = sol if len(sol) <= k else None
        out["answer"] = Status.YES if wit is not None else Status.NO
        out["witness"] = None if wit is None else wit.members
        return out
    if not inst.is_separable():
        out["answer"] = Status.INFEASIBLE
        return out
    if k is None:
        if algo == "brute":
            k_opt = oracles.brute_force_tc_opt(inst)
            wit = oracles.brute_force_tc(inst, k_opt).solution
        elif algo == "tw":
            res = solve_tc_tw(inst, ntd)
            wit, out["states"] = res.witness, res.total_states
        elif algo == "kernel":
            k_opt = tc_opt_by_enumeration(inst)
            wit = tc_solve_by_enumeration(inst, k_opt).solution
        elif algo == "partition":
            wit = solve_tc_partition(inst).witness
        else:
            wit = ilp_tc(inst)
        out.update(answer=Status.YES, opt=len(wit), witness=wit.members)
        return out
    if algo == "brute":
        dec = oracles.brute_force_tc(inst, k)
    elif algo == "tw":
        dec = decide_tc_tw(inst, k, ntd)
    elif algo == "kernel":
        dec = tc_solve_by_enumeration(inst, k)
    elif algo == "partition":
        dec = decide_tc_partition(inst, k)
    else:
        sol = ilp_tc(inst)
        dec = (Status.YES, sol) if len(sol) <= k else (Status.NO, None)
    out["answer"] = dec[0]
    out["witness"] = None if dec[1] is None else dec[1].members
    return out


def cmd_solve(args):
    inst = load_instance(args.problem, args.input)
    res = solve_instance(args.problem, args.algo, inst, args.k, args.td)
    if args.k is not None or res["answer"] is Status.INFEASIBLE:
        print(f"ANSWER {res['answer'].value}")
    if res["opt"] is not None:
        print(f"OPT {res['opt']}")
    if args.witness and res["witness"] is not None:
        print(f"WITNESS {_ids(res['witness'])}".rstrip())
    if res["states"] is not None:
        print(f"STATES {res['states']}")
    if args.dump_states:
        if args.algo != "tw":
            raise UsageError("--dump-states needs --algo tw")
        _dump_states(args, inst)
    return EXIT_OK if res["answer"] is Status.YES else EXIT_NO


def _dump_states(args, inst):
    from .treedec import nice_td

    g = inst if args.problem == "lds" else aux_graph(inst)
    ntd = make_nice(g, read_td(args.td)) if args.td else nice_td(g)
    res = solve_lds_tw(g, ntd) if args.problem == "lds" else solve_tc_tw(inst, ntd)
    Path(args.dump_states).write_text(dump_state_counts(ntd, res.state_counts))


def cmd_reduce(args):
    f = formats.read_cnf(args.input)
    if args.target == "to33":
        out = to_33sat(f)
        formats.write_cnf(args.output, out)
        kept = eliminate_pure_literals(list(f.normalized().clauses))
        extra = 0 if any(not c for c in kept) else out.clause_count - len(kept)
        print(f"VARIABLES {out.variable_count} CLAUSES {out.clause_count} EXTRA {extra}")
        return EXIT_OK
    if args.target == "lds-tw":
        red = lds_tw_reduction(f, strict=False)
    elif args.target == "tc-tw":
        red = tc_tw_reduction(f, strict=False)
    else:
        red = reduce(f, args.target)
    if args.target.startswith("lds"):
        g = red.payload
        formats.write_gr(args.output, g, red.comments())
        print(f"K {red.k} VERTICES {g.vertex_count} EDGES {len(g.edges)}")
    else:
        inst = red.payload
        formats.write_tc(args.output, inst, red.comments())
        print(f"K {red.k} ITEMS {inst.universe_size} TESTS {inst.test_count}")
    return EXIT_OK


def _yn(flag):
    return "y" if flag else "n"


def cmd_verify(args):
    if (args.input is None) == (args.sweep is None):
        raise UsageError("give exactly one of a CNF file or --sweep")
    formulas = [formats.read_cnf(args.input)] if args.input else list(sweep_formulas(args.sweep))
    targets = REDUCTIONS if args.target == "all" else (args.target,)
    agree = total = skipped = 0
    for fid, f in enumerate(formulas, start=1):
        for target in targets:
            rep = verify_reduction(f, target)
            suffix = f" target={target}" if len(targets) > 1 else ""
            total += 1
            if rep.skipped:
                skipped += 1
                print(f"formula {fid} skipped{suffix} ({rep.skipped})")
                continue
            agree += rep.agree
            print(f"formula {fid} sat={_yn(rep.sat)} inst={_yn(rep.instance)} agree={_yn(rep.agree)}{suffix}")
    print(f"AGREE {agree} SKIPPED {skipped} TOTAL {total}")
    ok = agree == total - skipped and not (args.strict and skipped)
    return EXIT_OK if ok else EXIT_NO


def cmd_td(args):
    g = formats.read_gr(args.graph) if args.graph else None
    if args.sub == "width":
        print(width(read_td(args.td)))
        return EXIT_OK
    if g is None:
        raise UsageError(f"td {args.sub} needs a graph")
    if args.sub == "check":
        verdict = validate_td(g, read_td(args.td))
        if verdict:
            print("VALID")
            return EXIT_OK
        print(f"INVALID {verdict.condition} {' '.join(str(x + 1) for x in verdict.witness)}")
        return EXIT_NO
    if args.sub == "nicify":
        ntd = make_nice(g, read_td(args.td))
        _emit_td(args, ntd.to_td(), g.vertex_count)
        print(f"NODES {len(ntd.nodes)} WIDTH {ntd.width()}")
        return EXIT_OK
    if args.sub == "heuristic":
        td = heuristic_td(g, args.strategy)
        _emit_td(args, td, g.vertex_count)
        print(f"WIDTH {width(td)}")
        return EXIT_OK
    td = exact_td_small(g, args.max_width)
    if td is None:
        print("NONE")
        return EXIT_NO
    _emit_td(args, td, g.vertex_count)
    print(f"WIDTH {width(td)}")
    return EXIT_OK


def _emit_td(args, td, n):
    text = format_td(td, n)
    if args.output:
        Path(args.output).write_text(text)


def cmd_check(args):
    inst = load_instance(args.problem, args.input)
    try:
        ids = [int(t) - 1 for t in args.solution.replace(",", " ").split()]
    except ValueError:
        raise UsageError("--solution takes whitespace-separated ids") from None
    ok = is_locating_dominating_set(inst, ids) if args.problem == "lds" else is_test_cover(inst, ids)
    print("VALID" if ok else "INVALID")
    return EXIT_OK if ok else EXIT_NO


def _bench_job(queue, problem, algo, path, k):
    try:
        inst = load_instance(problem, path)
        t0 = time.perf_counter()
        res = solve_instance(problem, algo, inst, k)
        ms = (time.perf_counter() - t0) * 1000
        queue.put(("ok", res["answer"].value, res["opt"], ms, res["states"]))
    except Exception as exc:  # reported as an ERROR row
        queue.put(("error", type(exc).__name__, None, 0.0, None))


def _run_with_timeout(problem, algo, path, k, timeout):
    ctx = mp.get_context("fork")
    queue = ctx.Queue()
    proc = ctx.Process(target=_bench_job, args=(queue, problem, algo, path, k))
    proc.start()
    proc.join(timeout)
    if proc.is_alive():
        proc.terminate()
        proc.join()
        return ("timeout", "TIMEOUT", None, timeout * 1000, None)
    return queue.get() if not queue.empty() else ("error", "CRASH", None, 0.0, None)


def cmd_bench(args):
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGOS:
            raise UsageError(f"unknown algorithm {a!r}")
    files = sorted(p for p in Path(args.corpus).iterdir() if p.suffix in (".gr", ".tc"))
    # compile the enumeration kernels once so forked workers inherit them
    oracles.brute_force_lds(generators.path(2), 1)
    oracles.brute_force_tc(TestCoverInstance(2, ((0,),)), 1)
    conflicts = 0
    print("instance\talgo\tanswer\topt\tmillis\tstates")
    for path in files:
        problem = "lds" if path.suffix == ".gr" else "tc"
        results = {}
        for algo in algos:
            if problem == "lds" and algo == "partition":
                continue
            kind, answer, opt, ms, states = _run_with_timeout(problem, algo, str(path), args.k, args.timeout)
            results[algo] = (kind, answer, opt)
            print(f"{path.name}\t{algo}\t{answer}\t{'' if opt is None else opt}\t{ms:.1f}\t{'' if states is None else states}")
        done = {(a, o) for kind, a, o in results.values() if kind == "ok"}
        if len(done) > 1:
            conflicts += 1
            print(f"{path.name}\tCONFLICT\t\t\t\t")
    return EXIT_OK if conflicts == 0 else EXIT_NO


def cmd_gen(args):
    import random

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    for i in range(args.count):
        n = args.n if args.n is not None else rng.randint(1, 10)
        name = f"{args.family}-{i:03d}"
        if args.family == "paths":
            formats.write_gr(out / f"{name}.gr", generators.path(n if args.n else i + 1))
        elif args.family == "trees":
            formats.write_gr(out / f"{name}.gr", generators.random_tree(n, rng))
        elif args.family == "graphs":
            formats.write_gr(out / f"{name}.gr", generators.gnp(n, generators.EDGE_PROBS[i % 3], rng))
        elif args.family == "tc":
            formats.write_tc(out / f"{name}.tc", generators.random_tc(rng.randrange(1 << 30), 7, 8))
        else:
            formats.write_cnf(out / f"{name}.cnf", generators.random_cnf(rng.randrange(1 << 30)))
    print(f"WROTE {args.count}")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="locdom", description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0, help="seed for any randomised step (default 0)")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve an LDS (.gr) or test-cover (.tc) instance")
    s.add_argument("problem", choices=("lds", "tc"))
    s.add_argument("input")
    s.add_argument("--algo", choices=ALGOS, default="tw")
    s.add_argument("-k", type=int, default=None, help="decision budget; omit to optimise")
    s.add_argument("--td", help="PACE .td decomposition (of the auxiliary graph for tc)")
    s.add_argument("--witness", action="store_true")
    s.add_argument("--dump-states", metavar="PATH", help="write per-node state counts (tw only)")
    s.set_defaults(func=cmd_solve)

    r = sub.add_parser("reduce", help="build a reduced instance from a DIMACS formula")
    r.add_argument("target", choices=("to33",) + REDUCTIONS)
    r.add_argument("input")
    r.add_argument("output")
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="compare SAT with the reduced instance at budget k")
    v.add_argument("target", choices=REDUCTIONS + ("all",))
    v.add_argument("input", nargs="?")
    v.add_argument("--sweep", help="e.g. 'vars<=3,clauses<=3,seeds=100'")
    v.add_argument("--strict", action="store_true", help="fail when any formula is skipped")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("td", help="tree-decomposition utilities")
    t.add_argument("sub", choices=("check", "width", "nicify", "heuristic", "exact-small"))
    t.add_argument("graph", nargs="?", help=".gr file (not needed for width)")
    t.add_argument("td", nargs="?", help=".td file")
    t.add_argument("-o", "--output")
    t.add_argument("--strategy", choices=("min-degree", "min-fill"), default="min-fill")
    t.add_argument("--max-width", type=int, default=3)
    t.set_defaults(func=cmd_td)

    c = sub.add_parser("check", help="validate a proposed solution")
    c.add_argument("problem", choices=("lds", "tc"))
    c.add_argument("input")
    c.add_argument("--solution", required=True, help="1-based ids, e.g. '1 3'")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bench", help="run an algorithm matrix over a corpus directory")
    b.add_argument("corpus")
    b.add_argument("--algos", default="brute,tw,kernel")
    b.add_argument("--timeout", type=float, default=30.0)
    b.add_argument("-k", type=int, default=None)
    b.set_defaults(func=cmd_bench)

    gnr = sub.add_parser("gen", help="write a generated corpus")
    gnr.add_argument("family", choices=("paths", "trees", "graphs", "tc", "cnf"))
    gnr.add_argument("outdir")
    gnr.add_argument("--count", type=int, default=10)
    gnr.add_argument("-n", type=int, default=None)
    gnr.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "td":
        if args.sub == "width":
            args.td, args.graph = args.td or args.graph, None
        elif args.sub in ("check", "nicify") and not args.td:
            print("error: td check/nicify need a graph and a .td file", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (UsageError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
