"""Test Cover by dynamic programming over item partitions.

A chosen family of tests induces a partition of the items (two items
share a block iff no chosen test separates them); the family is a test
cover exactly when that partition is discrete.  Scanning the tests in
input order and keeping, per reached partition, the cheapest way to
reach it gives an O*(Bell(|U|)) algorithm.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional

from .errors import CapExceeded
from .instances import Decision, SolutionSet, Status, TestCoverInstance, bits_of

PARTITION_CAP = 10


@dataclass(frozen=True)
class Partition:
    """Blocks as frozensets, kept sorted by minimum element, none empty."""

    blocks: tuple

    def __post_init__(self):
        blocks = [frozenset(b) for b in self.blocks if b]
        blocks.sort(key=min)
        object.__setattr__(self, "blocks", tuple(blocks))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls((frozenset(range(n)),))

    def __len__(self):
        return len(self.blocks)

    def is_discrete(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)


def refine(p: Partition, test) -> Partition:
    """Split every block into its part inside and outside ``test``."""
    test = frozenset(test)
    out = []
    for b in p.blocks:
        out.append(b & test)
        out.append(b - test)
    return Partition(tuple(out))


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    """Number of set partitions of an n-set (Bell triangle)."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


class PartitionResult(NamedTuple):
    opt: Optional[int]
    witness: Optional[SolutionSet]
    reached: int


# Internally a partition is a sorted tuple of item bitmasks; a test is a mask.


def _split(blocks, t):
    out = []
    for b in blocks:
        inside = b & t
        if inside and inside != b:
            out.append(inside)
            out.append(b & ~t)
        else:
            out.append(b)
    return tuple(sorted(out))


def _better(c1, w1, c2, w2):
    if c1 != c2:
        return c1 < c2
    d = w1 ^ w2
    return bool(d & -d & w1)


def _scan(start, test_masks, first, budget, seen):
    """Take/skip over tests ``first..`` from the table ``start``."""
    table = dict(start)
    seen.update(table)
    for j in range(first, len(test_masks)):
        t, bit = test_masks[j], 1 << j
        nxt = dict(table)
        for blocks, (cost, wit) in table.items():
            if budget is not None and cost + 1 > budget:
                continue
            nb = _split(blocks, t)
            cur = nxt.get(nb)
            if cur is None or _better(cost + 1, wit | bit, cur[0], cur[1]):
                nxt[nb] = (cost + 1, wit | bit)
        table = nxt
        seen.update(table)
    return table


def solve_tc_partition(
    inst: TestCoverInstance, k: Optional[int] = None, literal: bool = False, cap: int = PARTITION_CAP
) -> PartitionResult:
    """Minimum test cover (at most ``k`` if given) by partition refinement.

    The default forward mode seeds the scan with the one-block partition at
    cost 0.  ``literal=True`` instead loops over the lowest-indexed chosen
    test ``r1``, seeding with ``{U} refined by test r1`` at cost 1 and
    scanning only later tests; zero-test covers are handled separately.
    ``reached`` counts the distinct partitions ever stored.
    """
    n = inst.universe_size
    if n > cap:
        raise CapExceeded(f"{n} items exceeds the partition DP cap of {cap}")
    masks = [sum(1 << x for x in t) for t in inst.tests]
    whole = ((1 << n) - 1,)
    discrete = tuple(1 << x for x in range(n))
    seen = set()
    if not literal:
        final = _scan({whole: (0, 0)}, masks, 0, k, seen).get(discrete)
    else:
        final = None
        seen.add(whole)
        if n <= 1:
            final = (0, 0)
        elif k is None or k >= 1:
            for r1 in range(len(masks)):
                seed = {_split(whole, masks[r1]): (1, 1 << r1)}
                got = _scan(seed, masks, r1 + 1, k, seen).get(discrete)
                if got is not None and (final is None or _better(got[0], got[1], final[0], final[1])):
                    final = got
    assert len(seen) <= bell(n), "reached more partitions than exist"
    if final is None:
        return PartitionResult(None, None, len(seen))
    return PartitionResult(final[0], SolutionSet.tc(bits_of(final[1])), len(seen))


def decide_tc_partition(inst: TestCoverInstance, k: int, literal: bool = False, cap: int = PARTITION_CAP) -> Decision:
    if inst.universe_size > cap:
        raise CapExceeded(f"{inst.universe_size} items exceeds the partition DP cap of {cap}")
    if not inst.is_separable():
        return Decision(Status.INFEASIBLE)
    if k < 0:
        return Decision(Status.NO)
    res = solve_tc_partition(inst, k, literal, cap)
    return Decision(Status.NO) if res.opt is None else Decision(Status.YES, res.witness)
