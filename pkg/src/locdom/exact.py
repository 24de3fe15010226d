"""Integer-programming solvers used to check reductions beyond brute-force reach.

The models are the textbook covering formulations; scipy's HiGHS backend
does the search.  Every witness is re-verified with the combinatorial
checker before it is returned.
"""
from __future__ import annotations

from typing import Optional

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import lil_matrix

from .instances import (
    Graph,
    SolutionSet,
    TestCoverInstance,
    is_locating_dominating_set,
    is_test_cover,
    pendant_forced_vertices,
)


def _solve(nvars, rows, fixed=()):
    if nvars == 0:
        return []
    a = lil_matrix((max(len(rows), 1), nvars))
    for i, row in enumerate(rows):
        for j in row:
            a[i, j] = 1
    lb = np.zeros(nvars)
    for j in fixed:
        lb[j] = 1
    cons = [LinearConstraint(a.tocsr(), lb=np.ones(a.shape[0]) if rows else -np.inf, ub=np.inf)]
    res = milp(
        c=np.ones(nvars),
        constraints=cons,
        integrality=np.ones(nvars),
        bounds=Bounds(lb, np.ones(nvars)),
    )
    if res.status != 0:
        return None
    return [j for j in range(nvars) if res.x[j] > 0.5]


def ilp_lds(g: Graph, pendant_rule: bool = True) -> SolutionSet:
    """Minimum locating-dominating set.

    Domination rows say ``v`` or a neighbour is chosen.  Two vertices with
    disjoint neighbourhoods are told apart by domination alone, so
    separation rows are only needed for pairs with a common neighbour:
    one of the pair, or a vertex in the symmetric difference, is chosen.
    """
    n = g.vertex_count
    adj = g.adjacency
    rows = [sorted(adj[v] | {v}) for v in range(n)]
    pairs = set()
    for w in range(n):
        nb = sorted(adj[w])
        pairs.update((a, b) for i, a in enumerate(nb) for b in nb[i + 1:])
    for u, v in sorted(pairs):
        rows.append(sorted((adj[u] ^ adj[v]) | {u, v}))
    fixed = pendant_forced_vertices(g) if pendant_rule else ()
    chosen = _solve(n, rows, fixed)
    assert chosen is not None and is_locating_dominating_set(g, chosen)
    return SolutionSet.lds(chosen)


def ilp_tc(inst: TestCoverInstance) -> Optional[SolutionSet]:
    """Minimum test cover, or None when two items are twins."""
    if not inst.is_separable():
        return None
    masks = inst.item_masks
    rows = []
    for x in range(inst.universe_size):
        for y in range(x + 1, inst.universe_size):
            d = masks[x] ^ masks[y]
            rows.append([j for j in range(inst.test_count) if d >> j & 1])
    chosen = _solve(inst.test_count, rows)
    assert chosen is not None and is_test_cover(inst, chosen)
    return SolutionSet.tc(chosen)
