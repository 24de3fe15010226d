"""Empirical equivalence check: SAT(f) versus the reduced instance at budget k."""
from __future__ import annotations

import re
from typing import NamedTuple, Optional

from .. import generators
from ..errors import CapExceeded, InputError
from ..exact import ilp_lds, ilp_tc
from ..instances import CnfFormula, Status, is_locating_dominating_set, is_test_cover
from ..kernel import lds_solve_by_enumeration
from ..oracles import TC_CAP, brute_force_sat, brute_force_tc
from .constructions import LDS_K, LDS_TW, REDUCTIONS, TC_K, TC_TW, ReducedInstance, reduce
from .sat33 import to_33sat


class VerifyReport(NamedTuple):
    which: str
    sat: Optional[bool]
    instance: Optional[bool]
    agree: Optional[bool]
    k: Optional[int]
    sizes: dict
    solver: str
    skipped: Optional[str] = None


def _decide(red: ReducedInstance, which: str) -> tuple:
    """(answer, solver name) for the reduced instance at its budget."""
    if which == LDS_TW:
        sol = ilp_lds(red.payload)
        return len(sol) <= red.k, "ilp"
    if which == LDS_K:
        sol = lds_solve_by_enumeration(red.payload, red.k)
        if sol is not None:
            assert is_locating_dominating_set(red.payload, sol.members)
        return sol is not None, "kernel"
    if which == TC_K and red.payload.test_count <= TC_CAP:
        dec = brute_force_tc(red.payload, red.k)
        return dec.status is Status.YES, "brute"
    sol = ilp_tc(red.payload)
    if sol is not None:
        assert is_test_cover(red.payload, sol.members)
    return sol is not None and len(sol) <= red.k, "ilp"


def build_for(f: CnfFormula, which: str) -> ReducedInstance:
    """The treewidth reductions get the (3,3) normal form; the others the formula itself."""
    if which in (LDS_TW, TC_TW):
        return reduce(to_33sat(f), which)
    return reduce(f, which)


def verify_reduction(f: CnfFormula, which: str) -> VerifyReport:
    if which not in REDUCTIONS:
        raise ValueError(f"unknown reduction {which!r}")
    try:
        sat = brute_force_sat(f) is not None
    except CapExceeded as exc:
        return VerifyReport(which, None, None, None, None, {}, "-", str(exc))
    red = build_for(f, which)
    p = red.payload
    if which in (LDS_TW, LDS_K):
        sizes = {"vertices": p.vertex_count, "edges": len(p.edges)}
    else:
        sizes = {"items": p.universe_size, "tests": p.test_count}
    answer, solver = _decide(red, which)
    return VerifyReport(which, sat, answer, sat == answer, red.k, sizes, solver)


_SPEC_KEY = re.compile(r"^\s*(vars|clauses|seeds|rvars)\s*(<=|≤|=)\s*(\d+)\s*$")


def parse_sweep(spec: str) -> dict:
    """Parse ``vars<=a,clauses<=b,seeds=s[,rvars=v]``.

    The sweep holds every formula over ``a`` variables with at most ``b``
    distinct clauses, followed by ``s`` seeded random formulas over ``v``
    variables (default 4).
    """
    out = {"vars": 3, "clauses": 3, "seeds": 0, "rvars": 4}
    for part in spec.split(","):
        if not part.strip():
            continue
        m = _SPEC_KEY.match(part)
        if not m:
            raise InputError(f"bad sweep term {part!r}")
        out[m.group(1)] = int(m.group(3))
    return out


def sweep_formulas(spec: str):
    cfg = parse_sweep(spec)
    yield from generators.exhaustive_cnfs(cfg["vars"], cfg["clauses"])
    for seed in range(cfg["seeds"]):
        yield generators.random_cnf(seed, variables=cfg["rvars"])
