"""Deterministic instance generators for tests, sweeps and benchmarks."""
from __future__ import annotations

import itertools
import random

from .instances import CnfFormula, Graph, TestCoverInstance

EDGE_PROBS = (0.2, 0.5, 0.8)


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_graph(seed: int, max_n: int = 10) -> Graph:
    """Graph number ``seed`` of the standard sweep: n in 1..max_n, p cycling through EDGE_PROBS."""
    rng = random.Random(seed)
    return gnp(rng.randint(1, max_n), EDGE_PROBS[seed % len(EDGE_PROBS)], rng)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        return path(n)
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    """Star on n vertices, centre 0."""
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))


def random_tree(n: int, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(rng.randrange(i), i) for i in range(1, n)])


def random_width2(n: int, rng: random.Random) -> Graph:
    """Random partial 2-tree: grow a 2-tree, then keep each edge with probability 0.7."""
    if n <= 2:
        return path(n)
    edges = {(0, 1)}
    for v in range(2, n):
        a, b = sorted(rng.choice(sorted(edges)))
        edges |= {(a, v), (b, v)}
    kept = [e for e in sorted(edges) if rng.random() < 0.7]
    return Graph.from_edges(n, kept)


def random_tc(seed: int, max_items: int, max_tests: int, density: float = 0.5) -> TestCoverInstance:
    rng = random.Random(seed)
    u = rng.randint(1, max_items)
    f = rng.randint(0, max_tests)
    tests = tuple(frozenset(x for x in range(u) if rng.random() < density) for _ in range(f))
    return TestCoverInstance(u, tests)


def random_cnf(seed: int, variables: int = 4, min_clauses: int = 2, max_clauses: int = 6, max_width: int = 3) -> CnfFormula:
    rng = random.Random(seed)
    clauses = []
    for _ in range(rng.randint(min_clauses, max_clauses)):
        width = rng.randint(1, min(max_width, variables))
        vs = rng.sample(range(1, variables + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(variables, tuple(clauses))


def all_clauses(variables: int, max_width: int = 3) -> list:
    """Every tautology-free clause, literals sorted by variable."""
    out = []
    for w in range(1, min(max_width, variables) + 1):
        for vs in itertools.combinations(range(1, variables + 1), w):
            for signs in itertools.product((1, -1), repeat=w):
                out.append(tuple(s * v for s, v in zip(signs, vs)))
    return out


def exhaustive_cnfs(variables: int = 3, max_clauses: int = 3):
    """Every set of at most ``max_clauses`` distinct normalized clauses."""
    clauses = all_clauses(variables)
    for m in range(max_clauses + 1):
        for combo in itertools.combinations(clauses, m):
            yield CnfFormula(variables, combo)


def cnf_corpus(random_count: int = 100):
    """The reduction-equivalence corpus: exhaustive small formulas plus seeded 4-variable ones."""
    yield from exhaustive_cnfs(3, 3)
    for seed in range(random_count):
        yield random_cnf(seed)
