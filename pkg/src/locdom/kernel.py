"""Solution-size algorithms: the LDS vertex bound and TC preprocessing."""
from __future__ import annotations

import enum
from typing import NamedTuple, Optional

from . import kernels
from .instances import (
    Decision,
    Graph,
    SolutionSet,
    Status,
    TestCoverInstance,
    bits_of,
    mask_of,
    pendant_forced_vertices,
)


class Verdict(str, enum.Enum):
    REJECT = "reject"
    PROCEED = "proceed"
    YES = "yes"
    INFEASIBLE = "infeasible"


def lds_vertex_bound(k: int) -> int:
    """Most vertices a graph with a locating-dominating set of size k can have."""
    return (1 << k) + k - 1


def lds_kernel_check(g, k: int) -> Verdict:
    """Reject when the vertex count exceeds ``2^k + k - 1``.

    ``g`` may be a Graph or a bare vertex count.
    """
    n = g.vertex_count if isinstance(g, Graph) else int(g)
    if k < 0:
        return Verdict.REJECT
    if k > n.bit_length():
        return Verdict.PROCEED  # 2^k alone exceeds n; avoids building huge powers
    return Verdict.REJECT if n > lds_vertex_bound(k) else Verdict.PROCEED


def lds_solve_by_enumeration(g: Graph, k: int, backend=None) -> Optional[SolutionSet]:
    """A minimum LDS of size at most ``k``, or None.

    Vertices next to pendants are forced into the solution and only the
    remaining budget is enumerated, smallest sizes first.
    """
    if lds_kernel_check(g, k) is Verdict.REJECT:
        return None
    forced = pendant_forced_vertices(g)
    if len(forced) > k:
        return None
    n = g.vertex_count
    cand = [v for v in range(n) if v not in forced]
    base = mask_of(forced)
    for extra in range(0, min(k, n) - len(forced) + 1):
        hit = kernels.first_locating_subset(g.masks, range(n), True, base, cand, extra, backend=backend)
        if hit >= 0:
            return SolutionSet.lds(bits_of(hit))
    return None


class Preprocessed(NamedTuple):
    verdict: Verdict
    instance: TestCoverInstance
    kept: tuple
    solution: Optional[SolutionSet] = None


def greedy_cover(inst: TestCoverInstance) -> list:
    """Tests taken in order whenever they split some block.

    On a separable instance every kept test adds a block, so at most
    ``|U| - 1`` tests are returned.
    """
    blocks = {(1 << inst.universe_size) - 1}
    chosen = []
    for j, t in enumerate(inst.tests):
        tm = mask_of(t)
        split = {part for b in blocks for part in (b & tm, b & ~tm) if part}
        if len(split) > len(blocks):
            chosen.append(j)
            blocks = split
    return chosen


def tc_preprocess(inst: TestCoverInstance, k: int) -> Preprocessed:
    """Drop duplicate tests, then apply the item-count and |U|-1 bounds.

    ``kept[i]`` is the original index of reduced test ``i``.
    """
    first = {}
    for j, t in enumerate(inst.tests):
        first.setdefault(t, j)
    kept = tuple(sorted(first.values()))
    reduced = TestCoverInstance(inst.universe_size, tuple(inst.tests[j] for j in kept))
    if not reduced.is_separable():
        return Preprocessed(Verdict.INFEASIBLE, reduced, kept)
    n = inst.universe_size
    if k < 0 or (k < n.bit_length() and n > (1 << k)):
        return Preprocessed(Verdict.REJECT, reduced, kept)
    if k >= n - 1:
        sol = SolutionSet.tc(kept[j] for j in greedy_cover(reduced))
        return Preprocessed(Verdict.YES, reduced, kept, sol)
    return Preprocessed(Verdict.PROCEED, reduced, kept)


def tc_solve_by_enumeration(inst: TestCoverInstance, k: int, backend=None) -> Decision:
    """Budgeted test cover: preprocessing, then size-then-lex enumeration."""
    pre = tc_preprocess(inst, k)
    if pre.verdict is Verdict.INFEASIBLE:
        return Decision(Status.INFEASIBLE)
    if pre.verdict is Verdict.REJECT:
        return Decision(Status.NO)
    if pre.verdict is Verdict.YES:
        return Decision(Status.YES, pre.solution)
    red = pre.instance
    ents = [-1] * red.universe_size
    for size in range(min(k, red.test_count) + 1):
        hit = kernels.first_locating_subset(red.item_masks, ents, False, 0, range(red.test_count), size, backend=backend)
        if hit >= 0:
            return Decision(Status.YES, SolutionSet.tc(pre.kept[j] for j in bits_of(hit)))
    return Decision(Status.NO)


def tc_opt_by_enumeration(inst: TestCoverInstance, backend=None) -> Optional[int]:
    """Smallest k accepted by :func:`tc_solve_by_enumeration`, or None if infeasible."""
    if not inst.is_separable():
        return None
    for k in range(inst.universe_size):
        if tc_solve_by_enumeration(inst, k, backend).status is Status.YES:
            return k
    raise AssertionError("a separable instance always has a cover of size |U|-1")
