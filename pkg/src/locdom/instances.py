"""Core data model: graphs, test-cover instances, CNF formulas, solution checkers.

Ids are 0-based everywhere in memory.  File formats (see :mod:`locdom.formats`)
shift to 1-based on the way in and out.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import InputError

RED = "red"
BLUE = "blue"


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..vertex_count-1``.

    ``roles`` is either None or a tuple giving ``"red"``/``"blue"`` for every
    vertex, in which case the graph is the bipartite auxiliary graph of a
    test-cover instance and every edge must join a red and a blue vertex.
    """

    vertex_count: int
    edges: frozenset = frozenset()
    roles: Optional[tuple] = None

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise InputError("vertex_count must be non-negative")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InputError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {u}-{v} out of range for {n} vertices")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.roles is not None:
            roles = tuple(self.roles)
            if len(roles) != n or any(r not in (RED, BLUE) for r in roles):
                raise InputError("roles must tag every vertex red or blue")
            for u, v in norm:
                if roles[u] == roles[v]:
                    raise InputError(f"edge {u}-{v} joins two {roles[u]} vertices")
            object.__setattr__(self, "roles", roles)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, roles=None) -> "Graph":
        edges = list(edges)
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"duplicate edge {u}-{v}")
            seen.add(key)
        return cls(n, frozenset(edges), None if roles is None else tuple(roles))

    @cached_property
    def adjacency(self) -> tuple:
        nbrs = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def masks(self) -> tuple:
        """Neighbourhood of every vertex as an int bitmask."""
        out = [0] * self.vertex_count
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def vertices_with_role(self, role: str) -> list:
        if self.roles is None:
            return []
        return [v for v, r in enumerate(self.roles) if r == role]

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list]:
        """Induced subgraph on ``keep``; returns the subgraph and the old ids."""
        old = sorted(set(keep))
        new_id = {v: i for i, v in enumerate(old)}
        edges = [(new_id[u], new_id[v]) for u, v in self.edges if u in new_id and v in new_id]
        roles = None if self.roles is None else [self.roles[v] for v in old]
        return Graph.from_edges(len(old), edges, roles), old

    def components(self) -> list:
        seen = set()
        comps = []
        for s in range(self.vertex_count):
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adjacency[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps


@dataclass(frozen=True)
class TestCoverInstance:
    """Items ``0..universe_size-1`` and an ordered family of tests."""

    __test__ = False  # keep pytest from collecting this class

    universe_size: int
    tests: tuple = ()

    def __post_init__(self):
        if self.universe_size < 1:
            raise InputError("universe_size must be positive")
        tests = tuple(frozenset(t) for t in self.tests)
        for i, t in enumerate(tests):
            bad = [x for x in t if not 0 <= x < self.universe_size]
            if bad:
                raise InputError(f"test {i} contains out-of-range item {bad[0]}")
        object.__setattr__(self, "tests", tests)

    @property
    def test_count(self) -> int:
        return len(self.tests)

    @cached_property
    def item_masks(self) -> tuple:
        """For every item, the bitmask of tests containing it."""
        out = [0] * self.universe_size
        for j, t in enumerate(self.tests):
            for x in t:
                out[x] |= 1 << j
        return tuple(out)

    def is_separable(self) -> bool:
        """True iff the whole family separates every pair (no twin items)."""
        return len(set(self.item_masks)) == self.universe_size


@dataclass(frozen=True)
class CnfFormula:
    """CNF over variables ``1..variable_count``; literals are signed ints."""

    variable_count: int
    clauses: tuple = ()

    def __post_init__(self):
        if self.variable_count < 0:
            raise InputError("variable_count must be non-negative")
        clauses = tuple(tuple(c) for c in self.clauses)
        for i, c in enumerate(clauses):
            for lit in c:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise InputError(f"clause {i}: literal {lit} out of range")
        object.__setattr__(self, "clauses", clauses)

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def normalized(self) -> "CnfFormula":
        """Drop repeated literals and tautological clauses."""
        out = []
        for c in self.clauses:
            lits = tuple(dict.fromkeys(c))
            if any(-lit in lits for lit in lits):
                continue
            out.append(lits)
        return CnfFormula(self.variable_count, tuple(out))

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable ``i + 1``."""
        return all(any((assignment[abs(l) - 1]) == (l > 0) for l in c) for c in self.clauses)

    def occurrences(self) -> dict:
        """variable -> list of (clause index, position, sign)."""
        occ = {v: [] for v in range(1, self.variable_count + 1)}
        for j, c in enumerate(self.clauses):
            for r, lit in enumerate(c):
                occ[abs(lit)].append((j, r, 1 if lit > 0 else -1))
        return occ


class SolutionKind(str, enum.Enum):
    LDS = "lds-vertex-set"
    TC = "tc-test-index-set"


@dataclass(frozen=True)
class SolutionSet:
    kind: SolutionKind
    members: frozenset = field(default_factory=frozenset)

    def __len__(self):
        return len(self.members)

    def sorted(self) -> list:
        return sorted(self.members)

    @classmethod
    def lds(cls, members):
        return cls(SolutionKind.LDS, frozenset(members))

    @classmethod
    def tc(cls, members):
        return cls(SolutionKind.TC, frozenset(members))


class Status(str, enum.Enum):
    YES = "YES"
    NO = "NO"
    INFEASIBLE = "INFEASIBLE"


class Decision(NamedTuple):
    """Outcome of a budgeted test-cover query."""

    status: Status
    solution: Optional[SolutionSet] = None


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def bits_of(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def is_locating_dominating_set(g: Graph, s: Iterable[int]) -> bool:
    s = set(s)
    for v in s:
        if not 0 <= v < g.vertex_count:
            raise InputError(f"vertex {v} out of range")
    sm = mask_of(s)
    seen = set()
    for v in range(g.vertex_count):
        if v in s:
            continue
        sig = g.masks[v] & sm
        if sig == 0 or sig in seen:
            return False
        seen.add(sig)
    return True


def is_test_cover(inst: TestCoverInstance, chosen: Iterable[int]) -> bool:
    chosen = set(chosen)
    for j in chosen:
        if not 0 <= j < inst.test_count:
            raise InputError(f"test index {j} out of range")
    cm = mask_of(chosen)
    sigs = {m & cm for m in inst.item_masks}
    return len(sigs) == inst.universe_size


def aux_graph(inst: TestCoverInstance) -> Graph:
    """Red vertex ``j`` per test, blue vertex ``F + x`` per item ``x``."""
    f = inst.test_count
    edges = [(j, f + x) for j, t in enumerate(inst.tests) for x in t]
    roles = [RED] * f + [BLUE] * inst.universe_size
    return Graph.from_edges(f + inst.universe_size, edges, roles)


def tc_from_aux(g: Graph) -> TestCoverInstance:
    """Inverse of :func:`aux_graph`: reds become tests, blues items, both in id order."""
    if g.roles is None:
        raise InputError("graph carries no red/blue roles")
    reds = g.vertices_with_role(RED)
    blues = g.vertices_with_role(BLUE)
    item_of = {b: i for i, b in enumerate(blues)}
    tests = [frozenset(item_of[b] for b in g.adjacency[r]) for r in reds]
    return TestCoverInstance(len(blues), tuple(tests))


def pendant_forced_vertices(g: Graph) -> frozenset:
    """Vertices adjacent to a degree-1 vertex.

    A K2 component contributes only its lower endpoint: forcing both ends
    would overshoot the optimum of 1 for that component.
    """
    forced = set()
    for u in range(g.vertex_count):
        if g.degree(u) != 1:
            continue
        (v,) = g.adjacency[u]
        if g.degree(v) == 1:
            forced.add(min(u, v))
        else:
            forced.add(v)
    return frozenset(forced)
