"""Dynamic programs over nice tree decompositions for LDS and Test Cover.

Both problems share one engine.  A vertex that is introduced is either
*selected* (joins the solution), *located* (must end with a signature
distinct from every other located vertex) or *skipped* (an unselected
test vertex, which imposes nothing).  LDS additionally demands that
every located vertex is dominated.

The table at node ``t`` maps a :class:`State` to ``(cost, witness)``,
where the witness is the selected vertex set of one partial solution of
that cost (lexicographically smallest among ties).  Tables are built
forward from the children, so only reachable states are ever stored.

State fields, all vertex bitmasks unless stated otherwise:

``sol``       selected bag vertices.
``dom``       located bag vertices adjacent to a forgotten selected vertex.
``plus``      located bag vertices whose current signature equals the final
              signature of a forgotten located vertex; each must still gain
              a selected neighbour.
``classes``   partition of the located bag vertices by current signature,
              as a sorted tuple of masks.
``forgotten`` frozenset of signatures (subsets of ``sol``) of forgotten
              located vertices; signatures meeting forgotten selected
              vertices can never recur and are dropped.
"""
from __future__ import annotations

from typing import NamedTuple, Optional

from .errors import DecompositionError
from .instances import (
    BLUE,
    RED,
    Decision,
    Graph,
    SolutionSet,
    Status,
    TestCoverInstance,
    aux_graph,
    bits_of,
    mask_of,
)
from .treedec import NiceTreeDecomposition, NodeKind, check_nice, nice_td, validate_td


class State(NamedTuple):
    sol: int
    dom: int
    plus: int
    classes: tuple
    forgotten: frozenset


class TupleView(NamedTuple):
    """The (Y, W, A, D, B) reading of a state, with B split into pairs and plus-flags."""

    Y: frozenset
    W: frozenset
    A: frozenset
    D: frozenset
    pairs: frozenset
    plus: frozenset


class TwResult(NamedTuple):
    opt: Optional[int]
    witness: Optional[SolutionSet]
    state_counts: tuple

    @property
    def total_states(self) -> int:
        return sum(self.state_counts)

    @property
    def max_states(self) -> int:
        return max(self.state_counts, default=0)


EMPTY = State(0, 0, 0, (), frozenset())


def _better(c1, w1, c2, w2):
    """True if (c1, w1) beats (c2, w2): lower cost, then lexicographically smaller set."""
    if c1 != c2:
        return c1 < c2
    d = w1 ^ w2
    return bool(d & -d & w1)


def _offer(table, state, cost, wit):
    cur = table.get(state)
    if cur is None or _better(cost, wit, cur[0], cur[1]):
        table[state] = (cost, wit)


class LocatingEngine:
    """Transition algebra shared by the LDS and TC programs.

    ``selectable`` and ``locatable`` are vertex masks; ``dominate`` asks
    for a non-empty signature on every located vertex.
    """

    def __init__(self, g: Graph, selectable: int, locatable: int, dominate: bool):
        self.g = g
        self.adj = g.masks
        self.selectable = selectable
        self.locatable = locatable
        self.dominate = dominate

    def leaf_states(self) -> dict:
        return {EMPTY: (0, 0)}

    def introduce(self, st: State, v: int) -> list:
        """Parent states for introducing ``v`` as ``(state, cost_delta)`` pairs."""
        bit = 1 << v
        av = self.adj[v]
        out = []
        if self.selectable & bit:
            classes = []
            for c in st.classes:
                inside, outside = c & av, c & ~av
                if inside:
                    classes.append(inside)
                if outside:
                    classes.append(outside)
            out.append((State(st.sol | bit, st.dom, st.plus & ~av, tuple(sorted(classes)), st.forgotten), 1))
        if self.locatable & bit:
            sig = av & st.sol
            plus = st.plus | (bit if sig in st.forgotten else 0)
            classes = list(st.classes)
            for i, c in enumerate(classes):
                low = c & -c
                if not low & st.dom and self.adj[low.bit_length() - 1] & st.sol == sig:
                    classes[i] = c | bit
                    break
            else:
                classes.append(bit)
            out.append((State(st.sol, st.dom, plus, tuple(sorted(classes)), st.forgotten), 0))
        else:
            out.append((st, 0))
        return out

    def forget(self, st: State, u: int) -> Optional[State]:
        bit = 1 << u
        if st.sol & bit:
            located = 0
            for c in st.classes:
                located |= c
            forgotten = frozenset(a for a in st.forgotten if not a & bit)
            return State(st.sol & ~bit, st.dom | (self.adj[u] & located), st.plus, st.classes, forgotten)
        home = next((c for c in st.classes if c & bit), None)
        if home is None:
            return st
        if st.plus & bit:
            return None
        in_dom = st.dom & bit
        sig = self.adj[u] & st.sol
        if self.dominate and not in_dom and not sig:
            return None
        rest = home & ~bit
        classes = tuple(sorted(c if c != home else rest for c in st.classes if c != home or rest))
        forgotten = st.forgotten if in_dom else st.forgotten | {sig}
        return State(st.sol, st.dom & ~bit, (st.plus | rest) & ~bit, classes, forgotten)

    def join(self, s1: State, s2: State) -> Optional[State]:
        if s1.sol != s2.sol or s1.forgotten & s2.forgotten:
            return None
        w = s1.dom | s2.dom
        if s1.plus & s2.plus & ~w:
            return None
        plus = (s1.plus & ~s2.dom) | (s2.plus & ~s1.dom)
        classes = []
        for a in s1.classes:
            for b in s2.classes:
                c = a & b
                if c:
                    classes.append(c)
        return State(s1.sol, w, plus, tuple(sorted(classes)), s1.forgotten | s2.forgotten)

    def root_answer(self, table: dict) -> Optional[tuple]:
        """Best (cost, witness) over the root table, or None if it is empty."""
        best = None
        for cost, wit in table.values():
            if best is None or _better(cost, wit, best[0], best[1]):
                best = (cost, wit)
        return best

    def run(self, ntd: NiceTreeDecomposition, budget: Optional[int] = None, observe=None) -> tuple:
        """Fill all tables bottom-up; returns (root best or None, per-node state counts).

        ``observe(node_index, table)`` is called once per finished table.
        """
        nodes = ntd.nodes
        pending = {}
        counts = []
        for i, nd in enumerate(nodes):
            if nd.kind is NodeKind.LEAF:
                table = self.leaf_states()
            elif nd.kind is NodeKind.INTRODUCE:
                table = {}
                child = pending.pop(nd.children[0])
                for st, (cost, wit) in child.items():
                    for nst, delta in self.introduce(st, nd.vertex):
                        c = cost + delta
                        if budget is None or c <= budget:
                            _offer(table, nst, c, wit | ((1 << nd.vertex) if delta else 0))
            elif nd.kind is NodeKind.FORGET:
                table = {}
                for st, (cost, wit) in pending.pop(nd.children[0]).items():
                    nst = self.forget(st, nd.vertex)
                    if nst is not None:
                        _offer(table, nst, cost, wit)
            else:
                left = pending.pop(nd.children[0])
                right = pending.pop(nd.children[1])
                by_sol = {}
                for st, val in right.items():
                    by_sol.setdefault(st.sol, []).append((st, val))
                table = {}
                for s1, (c1, w1) in left.items():
                    ysize = bin(s1.sol).count("1")
                    for s2, (c2, w2) in by_sol.get(s1.sol, ()):
                        c = c1 + c2 - ysize
                        if budget is not None and c > budget:
                            continue
                        nst = self.join(s1, s2)
                        if nst is not None:
                            _offer(table, nst, c, w1 | w2)
            counts.append(len(table))
            if observe is not None:
                observe(i, table)
            pending[i] = table
        return self.root_answer(pending[len(nodes) - 1]), tuple(counts)


def tuple_view(st: State, adj) -> TupleView:
    """Project an engine state onto the (Y, W, A, D, B) tuple.

    ``D`` collects the signatures of located bag vertices whose selected
    neighbours all lie in the bag; ``pairs`` are the located bag pairs with
    equal current signature.
    """
    located = 0
    for c in st.classes:
        located |= c
    d = frozenset(adj[v] & st.sol for v in bits_of(located & ~st.dom))
    pairs = set()
    for c in st.classes:
        members = bits_of(c)
        pairs.update((a, b) for i, a in enumerate(members) for b in members[i + 1:])
    return TupleView(
        frozenset(bits_of(st.sol)),
        frozenset(bits_of(st.dom)),
        frozenset(frozenset(bits_of(a)) for a in st.forgotten),
        frozenset(frozenset(bits_of(x)) for x in d),
        frozenset(pairs),
        frozenset(bits_of(st.plus)),
    )


def _checked(g: Graph, ntd: Optional[NiceTreeDecomposition]) -> NiceTreeDecomposition:
    if ntd is None:
        return nice_td(g)
    defect = check_nice(ntd)
    if defect:
        raise DecompositionError(f"not a nice decomposition: {defect}")
    verdict = validate_td(g, ntd.to_td())
    if not verdict:
        raise DecompositionError(f"decomposition invalid for graph: {verdict.condition} {verdict.witness}")
    return ntd


def lds_engine(g: Graph) -> LocatingEngine:
    full = (1 << g.vertex_count) - 1
    return LocatingEngine(g, full, full, dominate=True)


def solve_lds_tw(g: Graph, ntd: Optional[NiceTreeDecomposition] = None) -> TwResult:
    """Minimum locating-dominating set by the treewidth DP."""
    ntd = _checked(g, ntd)
    best, counts = lds_engine(g).run(ntd)
    assert best is not None, "the whole vertex set is always a solution"
    return TwResult(best[0], SolutionSet.lds(bits_of(best[1])), counts)


def decide_lds_tw(g: Graph, k: int, ntd: Optional[NiceTreeDecomposition] = None) -> Optional[SolutionSet]:
    """A minimum locating-dominating set if one of size at most ``k`` exists."""
    ntd = _checked(g, ntd)
    if k < 0:
        return None
    best, _ = lds_engine(g).run(ntd, budget=k)
    return None if best is None else SolutionSet.lds(bits_of(best[1]))


def tc_engine(g: Graph) -> LocatingEngine:
    red = mask_of(g.vertices_with_role(RED))
    blue = mask_of(g.vertices_with_role(BLUE))
    return LocatingEngine(g, red, blue, dominate=False)


def _tc_run(inst, ntd, budget):
    g = aux_graph(inst)
    ntd = _checked(g, ntd)
    best, counts = tc_engine(g).run(ntd, budget)
    # red vertex j of the auxiliary graph is test j
    wit = None if best is None else SolutionSet.tc(bits_of(best[1]))
    return best, wit, counts


def solve_tc_tw(inst: TestCoverInstance, ntd: Optional[NiceTreeDecomposition] = None) -> TwResult:
    """Minimum test cover by the treewidth DP on the auxiliary graph; opt is None if infeasible."""
    best, wit, counts = _tc_run(inst, ntd, None)
    return TwResult(None if best is None else best[0], wit, counts)


def decide_tc_tw(inst: TestCoverInstance, k: int, ntd: Optional[NiceTreeDecomposition] = None) -> Decision:
    if not inst.is_separable():
        return Decision(Status.INFEASIBLE)
    if k < 0:
        return Decision(Status.NO)
    best, wit, _ = _tc_run(inst, ntd, k)
    return Decision(Status.NO) if best is None else Decision(Status.YES, wit)


def dump_state_counts(ntd: NiceTreeDecomposition, counts) -> str:
    """Tab-separated ``node kind bag_size states`` lines."""
    rows = [f"{i}\t{nd.kind.value}\t{len(nd.bag)}\t{c}" for i, (nd, c) in enumerate(zip(ntd.nodes, counts))]
    return "\n".join(rows) + "\n"
