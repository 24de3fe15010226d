"""Reusable pieces of the reductions: Sperner set representation,
bit-representation codes and a labelled graph builder."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import NamedTuple

from ..instances import BLUE, RED, Graph, TestCoverInstance, tc_from_aux

# literal occurrences per variable, in assignment order
OCCURRENCE_SLOTS = ((1, 1), (-1, 1), (1, 2), (-1, 2))


def sperner_p(n: int) -> int:
    """Smallest positive p with 4n <= C(2p, p)."""
    p = 1
    while comb(2 * p, p) < 4 * n:
        p += 1
    return p


def colex_subsets(ground: int, size: int):
    """``size``-subsets of 1..ground in colexicographic order."""
    return sorted(itertools.combinations(range(1, ground + 1), size), key=lambda c: c[::-1])


@dataclass(frozen=True)
class SpernerAssignment:
    """``mapping[(var, sign, ell)]`` is the portal index set of that occurrence."""

    p: int
    mapping: dict

    def set_of(self, var: int, sign: int, ell: int) -> frozenset:
        return self.mapping[(var, sign, ell)]


def sperner_family(n: int) -> SpernerAssignment:
    """Assign distinct p-subsets of [2p] to x^1, -x^1, x^2, -x^2 of every variable, colex order."""
    p = sperner_p(n)
    sets = iter(colex_subsets(2 * p, p))
    mapping = {}
    for var in range(1, n + 1):
        for sign, ell in OCCURRENCE_SLOTS:
            mapping[(var, sign, ell)] = frozenset(next(sets))
    return SpernerAssignment(p, mapping)


def ceil_log2(x: int) -> int:
    return (x - 1).bit_length() if x > 0 else 0


class BitRep(NamedTuple):
    """``q`` code bits; ``codes[t]`` and ``bits[t]`` (1-based bit positions, LSB = 1) per target."""

    q: int
    codes: dict
    bits: dict


def bitrep_gadget(targets, start_index: int = 1) -> BitRep:
    """Binary codes for ``targets`` in order, starting at ``start_index``.

    ``q = ceil(log2 |targets|) + 1`` bits suffice for every code.  The
    caller materialises the pairs ``(y_i1, y_i2)`` for ``i`` in 0..q.
    """
    targets = list(targets)
    if not targets:
        raise ValueError("bit-representation needs at least one target")
    q = ceil_log2(len(targets)) + 1
    codes, bits = {}, {}
    for pos, t in enumerate(targets):
        code = start_index + pos
        codes[t] = code
        bits[t] = tuple(b + 1 for b in range(code.bit_length()) if code >> b & 1)
    assert max(codes.values()).bit_length() <= q
    return BitRep(q, codes, bits)


class Builder:
    """Accumulates labelled (optionally coloured) vertices and edges."""

    def __init__(self):
        self.labels = []
        self.roles = []
        self.edges = set()
        self.ids = {}

    def add(self, label: str, role=None) -> int:
        if label in self.ids:
            raise ValueError(f"duplicate label {label}")
        self.ids[label] = len(self.labels)
        self.labels.append(label)
        self.roles.append(role)
        return self.ids[label]

    def __getitem__(self, label) -> int:
        return self.ids[label]

    def edge(self, a, b):
        u = self.ids[a] if isinstance(a, str) else a
        v = self.ids[b] if isinstance(b, str) else b
        self.edges.add((min(u, v), max(u, v)))

    def graph(self) -> Graph:
        return Graph.from_edges(len(self.labels), sorted(self.edges))

    def test_cover(self) -> tuple:
        """Reds become tests and blues items, each in creation order.

        Returns the instance plus the test labels and item labels.
        """
        reds = [v for v, r in enumerate(self.roles) if r == RED]
        blues = [v for v, r in enumerate(self.roles) if r == BLUE]
        assert len(reds) + len(blues) == len(self.labels)
        order = reds + blues
        pos = {v: i for i, v in enumerate(order)}
        g = Graph.from_edges(
            len(order),
            [(pos[u], pos[v]) for u, v in sorted(self.edges)],
            [self.roles[v] for v in order],
        )
        inst: TestCoverInstance = tc_from_aux(g)
        return inst, [self.labels[v] for v in reds], [self.labels[v] for v in blues]
