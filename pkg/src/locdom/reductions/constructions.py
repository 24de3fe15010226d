"""The four CNF-to-instance reductions.

Each builder returns a :class:`ReducedInstance` whose ``trace`` labels
every vertex (graph targets) or every test and item (test-cover targets)
with its gadget role, and whose ``params`` record the quantities the
budget ``k`` is computed from.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Union

from ..instances import BLUE, RED, CnfFormula, Graph, TestCoverInstance
from .gadgets import Builder, bitrep_gadget, ceil_log2, sperner_family
from .sat33 import check_33sat, check_gadget_capacity

LDS_TW, LDS_K, TC_TW, TC_K = "lds-tw", "lds-k", "tc-tw", "tc-k"
REDUCTIONS = (LDS_TW, LDS_K, TC_TW, TC_K)


@dataclass(frozen=True)
class ReducedInstance:
    payload: Union[Graph, TestCoverInstance]
    k: int
    trace: dict
    params: dict = field(default_factory=dict)

    def comments(self) -> list:
        """Trace as comment lines for the written instance file."""
        out = [f"k {self.k}"]
        out.append("params " + " ".join(f"{a}={b}" for a, b in sorted(self.params.items())))
        for kind, labels in self.trace.items():
            out.extend(f"{kind} {i + 1} {name}" for i, name in enumerate(labels))
        return out


def occurrence_slots(f: CnfFormula) -> dict:
    """(clause, position) -> (var, sign, ell), with ell counting same-sign
    occurrences of the variable in clause order, then position order."""
    count = {}
    slots = {}
    for j, c in enumerate(f.clauses):
        for r, lit in enumerate(c):
            key = (abs(lit), 1 if lit > 0 else -1)
            count[key] = count.get(key, 0) + 1
            slots[(j, r)] = (key[0], key[1], count[key])
    return slots


def _lit_name(var, sign, ell):
    return f"{'' if sign > 0 else '~'}x{var}^{ell}"


# -- treewidth reductions (input must be (3,3)-SAT) ----------------------


def lds_tw_reduction(f33: CnfFormula, strict: bool = True) -> ReducedInstance:
    """Locating-dominating set instance with a portal of 2p vertices.

    Variable gadget of x_i: claws centred at a0 and b0; a1 sees x^1 and
    -x^1, a2 sees x^2 and -x^2, b1 sees -x^1 and x^2, b2 sees -x^2 and x^1.
    Clause gadget of C_j: star g0 with leaves g1..g4, where g4 stays a
    pendant and g_r (r = 1..3) sees the two clause vertices other than c^r.  The portal is a clique v_1..v_2p
    with a pendant u_q at each v_q; every literal occurrence and its
    clause vertex are joined to the portal vertices of the occurrence's
    Sperner set.  An empty clause slot gets no portal edges.

    ``strict=False`` accepts any formula whose literals occur at most twice
    each, e.g. one that still has pure literals.
    """
    (check_33sat if strict else check_gadget_capacity)(f33)
    n, m = f33.variable_count, f33.clause_count
    sp = sperner_family(n)
    p = sp.p
    b = Builder()
    for i in range(1, n + 1):
        for side in "ab":
            for t in range(4):
                b.add(f"{side}{t}[{i}]")
            for t in (1, 2, 3):
                b.edge(f"{side}0[{i}]", f"{side}{t}[{i}]")
        for sign, ell in ((1, 1), (-1, 1), (1, 2), (-1, 2)):
            b.add(_lit_name(i, sign, ell))
        b.edge(f"a1[{i}]", _lit_name(i, 1, 1))
        b.edge(f"a1[{i}]", _lit_name(i, -1, 1))
        b.edge(f"a2[{i}]", _lit_name(i, 1, 2))
        b.edge(f"a2[{i}]", _lit_name(i, -1, 2))
        b.edge(f"b1[{i}]", _lit_name(i, -1, 1))
        b.edge(f"b1[{i}]", _lit_name(i, 1, 2))
        b.edge(f"b2[{i}]", _lit_name(i, -1, 2))
        b.edge(f"b2[{i}]", _lit_name(i, 1, 1))
    for j in range(1, m + 1):
        for t in range(5):
            b.add(f"g{t}[{j}]")
        for r in (1, 2, 3):
            b.add(f"c{r}[{j}]")
        for t in (1, 2, 3, 4):
            b.edge(f"g0[{j}]", f"g{t}[{j}]")
        for r in (1, 2, 3):
            for s in (1, 2, 3):
                if s != r:
                    b.edge(f"g{r}[{j}]", f"c{s}[{j}]")
    for q in range(1, 2 * p + 1):
        b.add(f"v{q}")
    for q in range(1, 2 * p + 1):
        b.add(f"u{q}")
        b.edge(f"v{q}", f"u{q}")
        for q2 in range(q + 1, 2 * p + 1):
            b.edge(f"v{q}", f"v{q2}")
    for (var, sign, ell), qs in sp.mapping.items():
        for q in qs:
            b.edge(_lit_name(var, sign, ell), f"v{q}")
    for (j, r), occ in occurrence_slots(f33).items():
        for q in sp.mapping[occ]:
            b.edge(f"c{r + 1}[{j + 1}]", f"v{q}")
    k = 4 * n + 3 * m + 2 * p
    return ReducedInstance(b.graph(), k, {"vertex": tuple(b.labels)}, {"n": n, "m": m, "p": p})


def tc_tw_reduction(f33: CnfFormula, strict: bool = True) -> ReducedInstance:
    """Test-cover instance (given by its auxiliary graph) with a portal of 2p tests.

    Variable gadget: blue beta sees red a1 and a2; a1 sees blue x^1, x^2;
    a2 sees blue -x^1, -x^2.  Clause gadget: blue g1 sees red d1, d2,
    g2 sees d2, d3, g3 sees d1, d3, and blue c^r sees d_r.  The portal is
    an independent set of red v_q, each with a blue pendant u_q, and there
    is one isolated blue item x0.  An empty clause slot copies the portal
    set of the clause's last literal.  ``strict`` as for
    :func:`lds_tw_reduction`.
    """
    (check_33sat if strict else check_gadget_capacity)(f33)
    n, m = f33.variable_count, f33.clause_count
    sp = sperner_family(n)
    p = sp.p
    b = Builder()
    for i in range(1, n + 1):
        b.add(f"beta[{i}]", BLUE)
        b.add(f"a1[{i}]", RED)
        b.add(f"a2[{i}]", RED)
        for sign, ell in ((1, 1), (-1, 1), (1, 2), (-1, 2)):
            b.add(_lit_name(i, sign, ell), BLUE)
        b.edge(f"beta[{i}]", f"a1[{i}]")
        b.edge(f"beta[{i}]", f"a2[{i}]")
        for ell in (1, 2):
            b.edge(f"a1[{i}]", _lit_name(i, 1, ell))
            b.edge(f"a2[{i}]", _lit_name(i, -1, ell))
    for j in range(1, m + 1):
        for t in (1, 2, 3):
            b.add(f"g{t}[{j}]", BLUE)
        for t in (1, 2, 3):
            b.add(f"d{t}[{j}]", RED)
        for r in (1, 2, 3):
            b.add(f"c{r}[{j}]", BLUE)
            b.edge(f"c{r}[{j}]", f"d{r}[{j}]")
        for g, (d1, d2) in zip((1, 2, 3), ((1, 2), (2, 3), (1, 3))):
            b.edge(f"g{g}[{j}]", f"d{d1}[{j}]")
            b.edge(f"g{g}[{j}]", f"d{d2}[{j}]")
    for q in range(1, 2 * p + 1):
        b.add(f"v{q}", RED)
        b.add(f"u{q}", BLUE)
        b.edge(f"v{q}", f"u{q}")
    b.add("x0", BLUE)
    for (var, sign, ell), qs in sp.mapping.items():
        for q in qs:
            b.edge(_lit_name(var, sign, ell), f"v{q}")
    slots = occurrence_slots(f33)
    for j, clause in enumerate(f33.clauses):
        for r in range(3):
            occ = slots[(j, min(r, len(clause) - 1))]
            for q in sp.mapping[occ]:
                b.edge(f"c{r + 1}[{j + 1}]", f"v{q}")
    inst, tests, items = b.test_cover()
    k = n + 2 * m + 2 * p
    return ReducedInstance(inst, k, {"test": tuple(tests), "item": tuple(items)}, {"n": n, "m": m, "p": p})


# -- solution-size reductions (plain 3-CNF) ------------------------------


def _satisfies(clause, bucket_vars, assignment_bits) -> bool:
    """Does the partial assignment on ``bucket_vars`` make some literal true?"""
    for lit in clause:
        v = abs(lit)
        if v in bucket_vars:
            val = bool(assignment_bits >> bucket_vars[v] & 1)
            if val == (lit > 0):
                return True
    return False


def lds_padded_root(n: int) -> int:
    """Smallest even t >= 2 with t^2 >= n."""
    t = isqrt(n)
    if t * t < n:
        t += 1
    t += t % 2
    return max(t, 2)


def lds_solsize_reduction(f: CnfFormula) -> ReducedInstance:
    """Locating-dominating set instance with budget O(sqrt n).

    Variables are padded with unused dummies to t^2 (t = sqrt n even) and
    split into t buckets of t consecutive variables.  Bucket i gets the
    assignment vertices a[i,l] (bit j-1 of l-1 is the value of its j-th
    variable), a path bo - b' - b* with bo seeing all of A_i, and each
    clause a pair co, c* where co sees the assignment vertices satisfying
    it.  A gets a bit-representation gadget with a[i,l] coded
    i + (l-1) t, and y0_1 seeing all of A; the clauses get one with both
    vertices of pair j coded j and z0_1 seeing all clause vertices.
    """
    t = lds_padded_root(f.variable_count)
    n = t * t
    m = f.clause_count
    b = Builder()
    bucket_vars = []
    for i in range(1, t + 1):
        bucket_vars.append({(i - 1) * t + j: j - 1 for j in range(1, t + 1)})
        for ell in range(1, 2 ** t + 1):
            b.add(f"a[{i},{ell}]")
        for name in ("bo", "b'", "b*"):
            b.add(f"{name}[{i}]")
        b.edge(f"bo[{i}]", f"b'[{i}]")
        b.edge(f"b'[{i}]", f"b*[{i}]")
        for ell in range(1, 2 ** t + 1):
            b.edge(f"bo[{i}]", f"a[{i},{ell}]")
    for j in range(1, m + 1):
        b.add(f"co[{j}]")
        b.add(f"c*[{j}]")
        for i in range(1, t + 1):
            for ell in range(1, 2 ** t + 1):
                if _satisfies(f.clauses[j - 1], bucket_vars[i - 1], ell - 1):
                    b.edge(f"a[{i},{ell}]", f"co[{j}]")
    a_targets = [f"a[{i},{ell}]" for ell in range(1, 2 ** t + 1) for i in range(1, t + 1)]
    rep_a = bitrep_gadget(a_targets)
    q = rep_a.q
    for i in range(0, q + 1):
        b.add(f"y{i}_1")
        b.add(f"y{i}_2")
        b.edge(f"y{i}_1", f"y{i}_2")
    for target in a_targets:
        b.edge(target, "y0_1")
        for bit in rep_a.bits[target]:
            b.edge(target, f"y{bit}_1")
    if m:
        rep_c = bitrep_gadget(range(1, m + 1))
        pc = rep_c.q
    else:
        rep_c, pc = None, 0
    for i in range(0, pc + 1):
        b.add(f"z{i}_1")
        b.add(f"z{i}_2")
        b.edge(f"z{i}_1", f"z{i}_2")
    for j in range(1, m + 1):
        for name in ("co", "c*"):
            b.edge(f"{name}[{j}]", "z0_1")
            for bit in rep_c.bits[j]:
                b.edge(f"{name}[{j}]", f"z{bit}_1")
    k = t + (q + 1) + (pc + 1) + t
    params = {"n": n, "m": m, "sqrt_n": t, "A": t * 2 ** t, "B": 3 * t, "C": 2 * m, "q": q, "p": pc}
    return ReducedInstance(b.graph(), k, {"vertex": tuple(b.labels)}, params)


def tc_padded_n(n: int) -> int:
    """Smallest 2^(2q) >= n with q a power of two (4, 16, 256, ...)."""
    q = 1
    while 2 ** (2 * q) < n:
        q *= 2
    return 2 ** (2 * q)


def tc_solsize_reduction(f: CnfFormula) -> ReducedInstance:
    """Test-cover instance with budget r + p + 1.

    Variables are padded to n = 2^(2q) and split into r = log2 n buckets
    of s = n / r.  Bucket i gets red assignment tests a[i,l] and a blue
    item b_i in all of them; clause j gets blue co, c* with co in the
    assignment tests satisfying it.  A bit-representation gadget of red
    z_i1 with blue pendants z_i2 codes both vertices of pair j by j, red
    z0_1 contains every clause item, and b0 is an isolated item.
    """
    n = tc_padded_n(f.variable_count)
    r = (n.bit_length() - 1)
    s = n // r
    m = f.clause_count
    b = Builder()
    bucket_vars = []
    for i in range(1, r + 1):
        bucket_vars.append({(i - 1) * s + j: j - 1 for j in range(1, s + 1)})
        b.add(f"b[{i}]", BLUE)
        for ell in range(1, 2 ** s + 1):
            b.add(f"a[{i},{ell}]", RED)
            b.edge(f"b[{i}]", f"a[{i},{ell}]")
    for j in range(1, m + 1):
        b.add(f"co[{j}]", BLUE)
        b.add(f"c*[{j}]", BLUE)
        for i in range(1, r + 1):
            for ell in range(1, 2 ** s + 1):
                if _satisfies(f.clauses[j - 1], bucket_vars[i - 1], ell - 1):
                    b.edge(f"a[{i},{ell}]", f"co[{j}]")
    if m:
        rep = bitrep_gadget(range(1, m + 1))
        p = rep.q
    else:
        rep, p = None, 0
    for i in range(0, p + 1):
        b.add(f"z{i}_1", RED)
        b.add(f"z{i}_2", BLUE)
        b.edge(f"z{i}_1", f"z{i}_2")
    for j in range(1, m + 1):
        for name in ("co", "c*"):
            b.edge(f"{name}[{j}]", "z0_1")
            for bit in rep.bits[j]:
                b.edge(f"{name}[{j}]", f"z{bit}_1")
    b.add("b0", BLUE)
    inst, tests, items = b.test_cover()
    k = r + p + 1
    params = {"n": n, "m": m, "r": r, "s": s, "p": p}
    return ReducedInstance(inst, k, {"test": tuple(tests), "item": tuple(items)}, params)


def reduce(f: CnfFormula, which: str) -> ReducedInstance:
    """Dispatch by reduction id; the treewidth reductions expect (3,3) input."""
    builders = {
        LDS_TW: lds_tw_reduction,
        LDS_K: lds_solsize_reduction,
        TC_TW: tc_tw_reduction,
        TC_K: tc_solsize_reduction,
    }
    if which not in builders:
        raise ValueError(f"unknown reduction {which!r}")
    return builders[which](f)
