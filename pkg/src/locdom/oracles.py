"""Exhaustive reference solvers.

These are deliberately naive: they enumerate subsets in size-then-lex
order and stop at the first hit, so the witness is the lexicographically
smallest optimum.  Every other solver in the package is checked against
them.
"""
from __future__ import annotations

from typing import Optional

from . import kernels
from .errors import CapExceeded
from .instances import (
    CnfFormula,
    Decision,
    Graph,
    SolutionSet,
    Status,
    TestCoverInstance,
    bits_of,
    mask_of,
    pendant_forced_vertices,
)

LDS_CAP = 16
TC_CAP = 20
SAT_CAP = 24


def _lds_search(g: Graph, k: Optional[int], pendant_rule: bool, backend=None) -> Optional[int]:
    n = g.vertex_count
    forced = pendant_forced_vertices(g) if pendant_rule else frozenset()
    base = mask_of(forced)
    cand = [v for v in range(n) if v not in forced]
    top = n if k is None else min(k, n)
    for size in range(len(forced), top + 1):
        hit = kernels.first_locating_subset(
            g.masks, range(n), True, base, cand, size - len(forced), backend=backend
        )
        if hit >= 0:
            return hit
    return None


def brute_force_lds(
    g: Graph, k: int, cap: int = LDS_CAP, pendant_rule: bool = False, backend=None
) -> Optional[SolutionSet]:
    """A minimum locating-dominating set if its size is at most ``k``."""
    if g.vertex_count > cap:
        raise CapExceeded(f"{g.vertex_count} vertices exceeds the oracle cap of {cap}")
    if k < 0:
        return None
    hit = _lds_search(g, k, pendant_rule, backend)
    return None if hit is None else SolutionSet.lds(bits_of(hit))


def brute_force_lds_opt(g: Graph, cap: int = LDS_CAP, pendant_rule: bool = False, backend=None) -> int:
    if g.vertex_count > cap:
        raise CapExceeded(f"{g.vertex_count} vertices exceeds the oracle cap of {cap}")
    hit = _lds_search(g, None, pendant_rule, backend)
    assert hit is not None, "the whole vertex set is always locating-dominating"
    return bin(hit).count("1")


def _tc_search(inst: TestCoverInstance, k: Optional[int], backend=None) -> Optional[int]:
    f = inst.test_count
    top = f if k is None else min(k, f)
    self_bits = [-1] * inst.universe_size
    for size in range(top + 1):
        hit = kernels.first_locating_subset(
            inst.item_masks, self_bits, False, 0, range(f), size, backend=backend
        )
        if hit >= 0:
            return hit
    return None


def brute_force_tc(inst: TestCoverInstance, k: int, cap: int = TC_CAP, backend=None) -> Decision:
    """Decide whether a test cover of size at most ``k`` exists.

    Twin items make the instance infeasible regardless of ``k``; that is
    reported as ``Status.INFEASIBLE`` rather than ``NO``.
    """
    if inst.test_count > cap:
        raise CapExceeded(f"{inst.test_count} tests exceeds the oracle cap of {cap}")
    if not inst.is_separable():
        return Decision(Status.INFEASIBLE)
    hit = _tc_search(inst, k, backend) if k >= 0 else None
    if hit is None:
        return Decision(Status.NO)
    return Decision(Status.YES, SolutionSet.tc(bits_of(hit)))


def brute_force_tc_opt(inst: TestCoverInstance, cap: int = TC_CAP, backend=None) -> Optional[int]:
    """Minimum test-cover size, or None when the instance is infeasible."""
    if inst.test_count > cap:
        raise CapExceeded(f"{inst.test_count} tests exceeds the oracle cap of {cap}")
    if not inst.is_separable():
        return None
    return bin(_tc_search(inst, None, backend)).count("1")


def clause_masks(f: CnfFormula) -> tuple:
    pos, neg = [], []
    for c in f.clauses:
        pos.append(mask_of(l - 1 for l in c if l > 0))
        neg.append(mask_of(-l - 1 for l in c if l < 0))
    return pos, neg


def brute_force_sat(f: CnfFormula, cap: int = SAT_CAP, backend=None) -> Optional[tuple]:
    """Smallest satisfying assignment in binary order, as a tuple of bools."""
    if f.variable_count > cap:
        raise CapExceeded(f"{f.variable_count} variables exceeds the oracle cap of {cap}")
    if any(len(c) == 0 for c in f.clauses):
        return None
    pos, neg = clause_masks(f)
    a = kernels.first_satisfying(pos, neg, f.variable_count, backend=backend)
    if a < 0:
        return None
    return tuple(bool(a >> i & 1) for i in range(f.variable_count))


def count_sat(f: CnfFormula, cap: int = SAT_CAP, backend=None) -> int:
    if f.variable_count > cap:
        raise CapExceeded(f"{f.variable_count} variables exceeds the oracle cap of {cap}")
    if any(len(c) == 0 for c in f.clauses):
        return 0
    pos, neg = clause_masks(f)
    return kernels.count_satisfying(pos, neg, f.variable_count, backend=backend)

