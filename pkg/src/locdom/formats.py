"""Readers and writers for ``.gr``, ``.tc`` and DIMACS ``.cnf`` files.

Files use 1-based ids; everything in memory is 0-based.  Readers are
strict and report the offending line.  Writers emit a canonical layout
(comments first, then header, then body in sorted order) so that
``write(read(text)) == text`` for any canonical file.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Union

from .errors import FormatError, InputError
from .instances import BLUE, RED, CnfFormula, Graph, TestCoverInstance

PathLike = Union[str, Path]


def _int(tok, lineno, what="integer"):
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected {what}, got {tok!r}", lineno) from None


def _lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            yield i, line


def _comment_body(line):
    return line[1:].lstrip() if len(line) > 1 else ""


# -- .gr ---------------------------------------------------------------


def parse_gr(text: str) -> tuple[Graph, list]:
    """Parse a PACE graph; returns the graph and its free comment lines."""
    header = None
    edges, seen = [], set()
    comments = []
    roles = {}
    for lineno, line in _lines(text):
        if line.startswith("c"):
            body = _comment_body(line)
            if body.startswith("role "):
                _parse_role(body, lineno, roles, header)
            else:
                comments.append(body)
            continue
        toks = line.split()
        if toks[0] == "p":
            if header is not None:
                raise FormatError("second header line", lineno)
            if len(toks) != 4 or toks[1] != "tw":
                raise FormatError("header must read 'p tw <n> <m>'", lineno)
            n, m = _int(toks[2], lineno), _int(toks[3], lineno)
            if n < 0 or m < 0:
                raise FormatError("negative count in header", lineno)
            header = (n, m)
            continue
        if header is None:
            raise FormatError("edge before header", lineno)
        if len(toks) != 2:
            raise FormatError("edge line must hold exactly two ids", lineno)
        u, v = _int(toks[0], lineno, "vertex id"), _int(toks[1], lineno, "vertex id")
        n = header[0]
        for x in (u, v):
            if not 1 <= x <= n:
                raise FormatError(f"vertex id {x} out of range 1..{n}", lineno)
        if u == v:
            raise FormatError(f"self-loop on vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge {u} {v}", lineno)
        seen.add(key)
        edges.append((u - 1, v - 1))
    if header is None:
        raise FormatError("missing 'p tw' header")
    n, m = header
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    role_tuple = None
    if roles:
        if set(roles) != set(range(n)):
            missing = min(set(range(n)) - set(roles))
            raise FormatError(f"vertex {missing + 1} has no role")
        role_tuple = tuple(roles[v] for v in range(n))
    try:
        return Graph.from_edges(n, edges, role_tuple), comments
    except InputError as exc:
        raise FormatError(str(exc)) from None


def _parse_role(body, lineno, roles, header):
    head, sep, rest = body.partition(":")
    colour = head.split()[1] if len(head.split()) == 2 else None
    if colour not in (RED, BLUE) or not sep:
        raise FormatError("role line must read 'c role red: ...' or 'c role blue: ...'", lineno)
    if header is None:
        raise FormatError("role line before header", lineno)
    for tok in rest.split():
        v = _int(tok, lineno, "vertex id")
        if not 1 <= v <= header[0]:
            raise FormatError(f"vertex id {v} out of range 1..{header[0]}", lineno)
        if v - 1 in roles:
            raise FormatError(f"vertex {v} given two roles", lineno)
        roles[v - 1] = colour


def format_gr(g: Graph, comments: Iterable[str] = ()) -> str:
    out = [f"c {c}" if c else "c" for c in comments]
    out.append(f"p tw {g.vertex_count} {len(g.edges)}")
    out.extend(f"{u + 1} {v + 1}" for u, v in sorted(g.edges))
    if g.roles is not None:
        for colour in (RED, BLUE):
            ids = " ".join(str(v + 1) for v in g.vertices_with_role(colour))
            out.append(f"c role {colour}: {ids}".rstrip())
    return "\n".join(out) + "\n"


def read_gr(path: PathLike) -> Graph:
    return parse_gr(Path(path).read_text())[0]


def write_gr(path: PathLike, g: Graph, comments: Iterable[str] = ()):
    Path(path).write_text(format_gr(g, comments))


# -- .tc ---------------------------------------------------------------


def parse_tc(text: str) -> tuple[TestCoverInstance, list]:
    header = None
    tests, comments = [], []
    for lineno, line in _lines(text):
        if line.startswith("c"):
            comments.append(_comment_body(line))
            continue
        toks = line.split()
        if toks[0] == "p":
            if header is not None:
                raise FormatError("second header line", lineno)
            if len(toks) != 4 or toks[1] != "tc":
                raise FormatError("header must read 'p tc <items> <tests>'", lineno)
            u, f = _int(toks[2], lineno), _int(toks[3], lineno)
            if u < 1 or f < 0:
                raise FormatError("universe must be non-empty and test count non-negative", lineno)
            header = (u, f)
            continue
        if header is None:
            raise FormatError("test before header", lineno)
        if toks[0] != "t":
            raise FormatError(f"unexpected line start {toks[0]!r}", lineno)
        items = set()
        for tok in toks[1:]:
            x = _int(tok, lineno, "item id")
            if not 1 <= x <= header[0]:
                raise FormatError(f"item id {x} out of range 1..{header[0]}", lineno)
            if x - 1 in items:
                raise FormatError(f"item {x} repeated in test", lineno)
            items.add(x - 1)
        tests.append(frozenset(items))
    if header is None:
        raise FormatError("missing 'p tc' header")
    if len(tests) != header[1]:
        raise FormatError(f"header announces {header[1]} tests, found {len(tests)}")
    return TestCoverInstance(header[0], tuple(tests)), comments


def format_tc(inst: TestCoverInstance, comments: Iterable[str] = ()) -> str:
    out = [f"c {c}" if c else "c" for c in comments]
    out.append(f"p tc {inst.universe_size} {inst.test_count}")
    for t in inst.tests:
        out.append(" ".join(["t"] + [str(x + 1) for x in sorted(t)]))
    return "\n".join(out) + "\n"


def read_tc(path: PathLike) -> TestCoverInstance:
    return parse_tc(Path(path).read_text())[0]


def write_tc(path: PathLike, inst: TestCoverInstance, comments: Iterable[str] = ()):
    Path(path).write_text(format_tc(inst, comments))


# -- .cnf --------------------------------------------------------------


def parse_cnf(text: str) -> tuple[CnfFormula, list]:
    """DIMACS CNF.  Clauses end with ``0`` and may span lines."""
    header = None
    clauses, current, comments = [], [], []
    last_line = 0
    for lineno, line in _lines(text):
        last_line = lineno
        if line.startswith("c"):
            comments.append(_comment_body(line))
            continue
        if line.startswith("%"):
            break
        toks = line.split()
        if toks[0] == "p":
            if header is not None:
                raise FormatError("second header line", lineno)
            if len(toks) != 4 or toks[1] != "cnf":
                raise FormatError("header must read 'p cnf <vars> <clauses>'", lineno)
            nv, nc = _int(toks[2], lineno), _int(toks[3], lineno)
            if nv < 0 or nc < 0:
                raise FormatError("negative count in header", lineno)
            header = (nv, nc)
            continue
        if header is None:
            raise FormatError("clause before header", lineno)
        for tok in toks:
            lit = _int(tok, lineno, "literal")
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > header[0]:
                raise FormatError(f"literal {lit} out of range for {header[0]} variables", lineno)
            else:
                current.append(lit)
    if header is None:
        raise FormatError("missing 'p cnf' header")
    if current:
        raise FormatError("last clause not terminated by 0", last_line)
    if len(clauses) != header[1]:
        raise FormatError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses)), comments


def format_cnf(f: CnfFormula, comments: Iterable[str] = ()) -> str:
    out = [f"c {c}" if c else "c" for c in comments]
    out.append(f"p cnf {f.variable_count} {f.clause_count}")
    out.extend(" ".join([str(l) for l in c] + ["0"]) for c in f.clauses)
    return "\n".join(out) + "\n"


def read_cnf(path: PathLike) -> CnfFormula:
    return parse_cnf(Path(path).read_text())[0]


def write_cnf(path: PathLike, f: CnfFormula, comments: Iterable[str] = ()):
    Path(path).write_text(format_cnf(f, comments))
