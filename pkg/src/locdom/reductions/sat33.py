"""Normalisation of 3-CNF formulas into (3,3)-SAT form."""
from __future__ import annotations

from collections import Counter

from ..errors import InputError
from ..instances import CnfFormula

# stands in for any formula containing an empty clause
CONTRADICTION = CnfFormula(1, ((1,), (-1,)))


def eliminate_pure_literals(clauses: list) -> list:
    """Repeatedly drop every clause containing a single-polarity variable."""
    while True:
        signs = {}
        for c in clauses:
            for lit in c:
                signs.setdefault(abs(lit), set()).add(lit > 0)
        pure = {v for v, s in signs.items() if len(s) == 1}
        if not pure:
            return clauses
        clauses = [c for c in clauses if not any(abs(l) in pure for l in c)]


def to_33sat(f: CnfFormula) -> CnfFormula:
    """Equisatisfiable formula with clauses of size <= 3 in which every
    variable occurs at most three times and in both polarities.

    After tautologies, repeated literals and pure literals are removed, a
    variable with ``k > 3`` occurrences is split into ``k`` copies, the
    j-th occurrence using copy j, tied together by the cycle
    ``(-x^j | x^(j+1))``.  Surviving variables are renumbered from 1 in
    ascending order of the original id (copies of one variable are
    consecutive); the implication clauses follow the original ones.
    """
    for i, c in enumerate(f.clauses):
        if len(set(c)) > 3:
            raise InputError(f"clause {i} has more than three literals")
    clauses = list(f.normalized().clauses)
    if any(len(c) == 0 for c in clauses):
        return CONTRADICTION
    clauses = eliminate_pure_literals(clauses)
    occ = Counter(abs(l) for c in clauses for l in c)
    new_ids = {}
    nxt = 1
    for v in sorted(occ):
        count = occ[v] if occ[v] > 3 else 1
        new_ids[v] = list(range(nxt, nxt + count))
        nxt += count
    seen = Counter()
    out = []
    for c in clauses:
        lits = []
        for lit in c:
            v = abs(lit)
            ids = new_ids[v]
            copy = ids[seen[v]] if len(ids) > 1 else ids[0]
            seen[v] += 1
            lits.append(copy if lit > 0 else -copy)
        out.append(tuple(lits))
    for v in sorted(occ):
        ids = new_ids[v]
        if len(ids) > 1:
            for j in range(len(ids)):
                out.append((-ids[j], ids[(j + 1) % len(ids)]))
    return CnfFormula(nxt - 1, tuple(out))


def check_33sat(f: CnfFormula) -> None:
    """Raise InputError unless ``f`` is a (3,3) formula in which every
    variable appears, at most three times, in both polarities."""
    occ = Counter()
    signs = {}
    for i, c in enumerate(f.clauses):
        if not 1 <= len(c) <= 3:
            raise InputError(f"clause {i} has {len(c)} literals")
        if len({abs(l) for l in c}) != len(c):
            raise InputError(f"clause {i} repeats a variable")
        for lit in c:
            occ[abs(lit)] += 1
            signs.setdefault(abs(lit), set()).add(lit > 0)
    for v in range(1, f.variable_count + 1):
        if occ[v] == 0:
            raise InputError(f"variable {v} does not occur")
        if occ[v] > 3:
            raise InputError(f"variable {v} occurs {occ[v]} times")
        if len(signs[v]) != 2:
            raise InputError(f"variable {v} occurs in only one polarity")


def is_33sat(f: CnfFormula) -> bool:
    try:
        check_33sat(f)
    except InputError:
        return False
    return True


def check_gadget_capacity(f: CnfFormula) -> None:
    """Weaker precondition of the treewidth gadgets: clauses of 1..3
    distinct variables and at most two occurrences per polarity."""
    count = Counter()
    for i, c in enumerate(f.clauses):
        if not 1 <= len(c) <= 3:
            raise InputError(f"clause {i} has {len(c)} literals")
        if len({abs(l) for l in c}) != len(c):
            raise InputError(f"clause {i} repeats a variable")
        for lit in c:
            count[lit] += 1
            if count[lit] > 2:
                raise InputError(f"literal {lit} occurs more than twice")
