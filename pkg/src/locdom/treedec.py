"""Tree decompositions: validation, nice form, heuristics and PACE ``.td`` I/O."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Optional

from .errors import CapExceeded, DecompositionError, FormatError
from .instances import Graph

EXACT_CAP = 12


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed from 0; ``tree_edges`` holds (i, j) bag-id pairs."""

    bags: tuple
    tree_edges: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(
            self, "tree_edges", frozenset((min(a, b), max(a, b)) for a, b in self.tree_edges)
        )

    @property
    def bag_count(self) -> int:
        return len(self.bags)


class Violation(NamedTuple):
    ok: bool
    condition: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.ok


def width(td) -> int:
    bags = td.bags if isinstance(td, TreeDecomposition) else [n.bag for n in td.nodes]
    if not bags:
        raise DecompositionError("a decomposition needs at least one bag")
    return max(len(b) for b in bags) - 1


def _tree_adjacency(td: TreeDecomposition) -> list:
    nb = td.bag_count
    if nb == 0:
        raise DecompositionError("a decomposition needs at least one bag")
    adj = [[] for _ in range(nb)]
    for a, b in sorted(td.tree_edges):
        if not (0 <= a < nb and 0 <= b < nb) or a == b:
            raise DecompositionError(f"tree edge ({a}, {b}) is not between two distinct bags")
        adj[a].append(b)
        adj[b].append(a)
    if len(td.tree_edges) != nb - 1:
        raise DecompositionError(f"{nb} bags need {nb - 1} tree edges, got {len(td.tree_edges)}")
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != nb:
        raise DecompositionError("tree edges do not connect all bags")
    return adj


def validate_td(g: Graph, td: TreeDecomposition) -> Violation:
    """Check the three decomposition conditions in order.

    Returns a falsy :class:`Violation` naming the first broken condition
    with a witness (vertex or edge).  A malformed tree raises instead.
    """
    adj = _tree_adjacency(td)
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.vertex_count:
                raise DecompositionError(f"bag {i} holds unknown vertex {v}")
    covered = set().union(*td.bags)
    for v in range(g.vertex_count):
        if v not in covered:
            return Violation(False, "vertex not covered", (v,))
    for u, v in sorted(g.edges):
        if not any(u in b and v in b for b in td.bags):
            return Violation(False, "edge not covered", (u, v))
    for v in range(g.vertex_count):
        holders = [i for i, b in enumerate(td.bags) if v in b]
        seen = {holders[0]}
        stack = [holders[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen and v in td.bags[w]:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(holders):
            return Violation(False, "vertex occurrences disconnected", (v,))
    return Violation(True)


# -- elimination orderings ---------------------------------------------


def td_from_ordering(g: Graph, order) -> TreeDecomposition:
    """Decomposition induced by eliminating vertices in ``order``.

    Bag 0 belongs to the last eliminated vertex, so rooting at bag 0 puts
    the top of the elimination forest at the root.
    """
    n = g.vertex_count
    if n == 0:
        return TreeDecomposition((frozenset(),))
    pos = {v: i for i, v in enumerate(order)}
    if sorted(pos) != list(range(n)):
        raise ValueError("order must be a permutation of the vertices")
    nbrs = [set(a) for a in g.adjacency]
    bag_of = {}
    parent_vertex = {}
    for v in order:
        later = nbrs[v]
        bag_of[v] = frozenset(later | {v})
        if later:
            parent_vertex[v] = min(later, key=pos.__getitem__)
        for a in later:
            nbrs[a] |= later - {a}
            nbrs[a].discard(v)
    bag_id = {v: n - 1 - pos[v] for v in order}
    bags = [None] * n
    for v, i in bag_id.items():
        bags[i] = bag_of[v]
    edges = set()
    roots = []
    for v in order:
        if v in parent_vertex:
            edges.add((bag_id[v], bag_id[parent_vertex[v]]))
        else:
            roots.append(bag_id[v])
    roots.sort()
    for a, b in zip(roots, roots[1:]):
        edges.add((a, b))
    return TreeDecomposition(tuple(bags), frozenset(edges))


def greedy_ordering(g: Graph, strategy: str = "min-degree") -> list:
    if strategy not in ("min-degree", "min-fill"):
        raise ValueError(f"unknown strategy {strategy!r}")
    nbrs = [set(a) for a in g.adjacency]
    alive = set(range(g.vertex_count))
    order = []

    def fill(v):
        ns = sorted(nbrs[v])
        return sum(1 for i, a in enumerate(ns) for b in ns[i + 1:] if b not in nbrs[a])

    score = (lambda v: len(nbrs[v])) if strategy == "min-degree" else fill
    while alive:
        v = min(alive, key=lambda x: (score(x), x))
        order.append(v)
        alive.remove(v)
        for a in nbrs[v]:
            nbrs[a] |= nbrs[v] - {a}
            nbrs[a].discard(v)
        nbrs[v] = set()
    return order


def heuristic_td(g: Graph, strategy: str = "min-degree") -> TreeDecomposition:
    """Greedy elimination decomposition; ties go to the lowest vertex id."""
    return td_from_ordering(g, greedy_ordering(g, strategy))


def _q_size(masks, s, v):
    """Vertices outside ``s | {v}`` reachable from ``v`` through ``s``."""
    seen = 1 << v
    frontier = 1 << v
    reach = 0
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        u = low.bit_length() - 1
        out = masks[u] & ~seen
        seen |= out
        inside = out & s
        frontier |= inside
        reach |= out & ~s
    return bin(reach).count("1")


def treewidth_ordering(g: Graph) -> tuple[int, list]:
    """Exact treewidth and an optimal elimination ordering by subset DP."""
    n = g.vertex_count
    if n > EXACT_CAP:
        raise CapExceeded(f"{n} vertices exceeds the exact search cap of {EXACT_CAP}")
    if n == 0:
        return -1, []
    masks = g.masks
    full = (1 << n) - 1
    best = [0] * (1 << n)
    choice = [-1] * (1 << n)
    best[0] = -1
    for s in range(1, full + 1):
        cur, arg = n + 1, -1
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            prev = s ^ low
            val = max(best[prev], _q_size(masks, prev, v))
            if val < cur:
                cur, arg = val, v
        best[s], choice[s] = cur, arg
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return best[full], order


def exact_td_small(g: Graph, max_width: int) -> Optional[TreeDecomposition]:
    """A decomposition of width at most ``max_width`` if one exists (n <= 12)."""
    tw, order = treewidth_ordering(g)
    if tw > max_width:
        return None
    return td_from_ordering(g, order)


def separator_td(g: Graph, separator) -> TreeDecomposition:
    """Decomposition built around a vertex separator.

    Every component of ``g - separator`` receives an exact decomposition
    (so components are limited to the exact cap) with the separator added
    to each bag; all pieces hang off one bag holding the separator.
    """
    sep = frozenset(separator)
    rest = [v for v in range(g.vertex_count) if v not in sep]
    sub, old = g.induced(rest)
    bags = [sep]
    edges = set()
    for comp in sub.components():
        piece, ids = sub.induced(comp)
        tw, order = treewidth_ordering(piece)
        ptd = td_from_ordering(piece, order)
        offset = len(bags)
        for b in ptd.bags:
            bags.append(frozenset(old[ids[x]] for x in b) | sep)
        edges |= {(a + offset, b + offset) for a, b in ptd.tree_edges}
        edges.add((0, offset))
    return TreeDecomposition(tuple(bags), frozenset(edges))


# -- nice decompositions -----------------------------------------------


class NodeKind(str, enum.Enum):
    LEAF = "leaf"
    INTRODUCE = "introduce"
    FORGET = "forget"
    JOIN = "join"


@dataclass(frozen=True)
class NiceNode:
    kind: NodeKind
    bag: frozenset
    children: tuple = ()
    vertex: Optional[int] = None


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Nodes are stored children-first; the last node is the root."""

    nodes: tuple

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    def width(self) -> int:
        return width(self)

    def to_td(self) -> TreeDecomposition:
        edges = {(c, i) for i, nd in enumerate(self.nodes) for c in nd.children}
        return TreeDecomposition(tuple(nd.bag for nd in self.nodes), frozenset(edges))


def check_nice(ntd: NiceTreeDecomposition) -> Optional[str]:
    """Return a description of the first structural defect, or None."""
    nodes = ntd.nodes
    if not nodes:
        return "no nodes"
    if nodes[-1].bag:
        return "root bag is not empty"
    indeg = [0] * len(nodes)
    for i, nd in enumerate(nodes):
        for c in nd.children:
            if not 0 <= c < i:
                return f"node {i} has child {c} that does not precede it"
            indeg[c] += 1
        kids = [nodes[c].bag for c in nd.children]
        if nd.kind is NodeKind.LEAF:
            if nd.children or nd.bag:
                return f"leaf {i} must have an empty bag and no children"
        elif nd.kind is NodeKind.INTRODUCE:
            if len(kids) != 1 or nd.vertex in kids[0] or nd.bag != kids[0] | {nd.vertex}:
                return f"introduce node {i} does not add exactly vertex {nd.vertex}"
        elif nd.kind is NodeKind.FORGET:
            if len(kids) != 1 or nd.vertex not in kids[0] or nd.bag != kids[0] - {nd.vertex}:
                return f"forget node {i} does not drop exactly vertex {nd.vertex}"
        elif nd.kind is NodeKind.JOIN:
            if len(kids) != 2 or kids[0] != nd.bag or kids[1] != nd.bag:
                return f"join node {i} needs two children with its own bag"
    if any(d != 1 for d in indeg[:-1]) or indeg[-1] != 0:
        return "nodes do not form a single rooted tree"
    return None


def make_nice(g: Graph, td: TreeDecomposition) -> NiceTreeDecomposition:
    """Convert a valid decomposition into nice form rooted at bag 0.

    Along every tree edge the child's surplus vertices are forgotten
    (ascending id) before the parent's new vertices are introduced
    (ascending id).  Nodes with several children become left-deep chains
    of binary joins, and forgets above the root empty the root bag.
    """
    check = validate_td(g, td)
    if not check:
        raise DecompositionError(f"invalid decomposition: {check.condition} {check.witness}")
    adj = _tree_adjacency(td)
    parent = {0: None}
    order = [0]
    for t in order:
        for w in adj[t]:
            if w not in parent:
                parent[w] = t
                order.append(w)
    children = {t: [] for t in order}
    for t in order[1:]:
        children[parent[t]].append(t)

    nodes = []

    def add(kind, bag, kids=(), vertex=None):
        nodes.append(NiceNode(kind, frozenset(bag), tuple(kids), vertex))
        return len(nodes) - 1

    def walk(top, src, dst):
        bag = set(src)
        for v in sorted(src - dst):
            bag.discard(v)
            top = add(NodeKind.FORGET, bag, (top,), v)
        for v in sorted(dst - src):
            bag.add(v)
            top = add(NodeKind.INTRODUCE, bag, (top,), v)
        return top

    top_of = {}
    for t in reversed(order):
        bag = td.bags[t]
        branches = [walk(top_of.pop(c), td.bags[c], bag) for c in sorted(children[t])]
        if not branches:
            branches = [walk(add(NodeKind.LEAF, ()), frozenset(), bag)]
        cur = branches[0]
        for b in branches[1:]:
            cur = add(NodeKind.JOIN, bag, (cur, b))
        top_of[t] = cur
    walk(top_of[0], td.bags[0], frozenset())
    return NiceTreeDecomposition(tuple(nodes))


def nice_td(g: Graph, td: Optional[TreeDecomposition] = None, strategy="min-fill"):
    """Convenience: heuristic decomposition (unless given) in nice form."""
    return make_nice(g, td if td is not None else heuristic_td(g, strategy))


# -- PACE .td ------------------------------------------------------------


def parse_td(text: str) -> TreeDecomposition:
    header = None
    bags = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        if toks[0] == "s":
            if header is not None:
                raise FormatError("second header line", lineno)
            if len(toks) != 5 or toks[1] != "td":
                raise FormatError("header must read 's td <bags> <maxbag> <n>'", lineno)
            try:
                header = tuple(int(t) for t in toks[2:])
            except ValueError:
                raise FormatError("non-integer in header", lineno) from None
            if min(header) < 0:
                raise FormatError("negative count in header", lineno)
            continue
        if header is None:
            raise FormatError("content before header", lineno)
        try:
            vals = [int(t) for t in (toks[1:] if toks[0] == "b" else toks)]
        except ValueError:
            raise FormatError("non-integer token", lineno) from None
        if toks[0] == "b":
            if not vals:
                raise FormatError("bag line without id", lineno)
            bid, members = vals[0], vals[1:]
            if not 1 <= bid <= header[0]:
                raise FormatError(f"bag id {bid} out of range 1..{header[0]}", lineno)
            if bid in bags:
                raise FormatError(f"bag {bid} defined twice", lineno)
            for v in members:
                if not 1 <= v <= header[2]:
                    raise FormatError(f"vertex {v} out of range 1..{header[2]}", lineno)
            if len(set(members)) != len(members):
                raise FormatError(f"bag {bid} repeats a vertex", lineno)
            bags[bid] = frozenset(v - 1 for v in members)
        else:
            if len(vals) != 2:
                raise FormatError("tree edge line must hold two bag ids", lineno)
            for b in vals:
                if not 1 <= b <= header[0]:
                    raise FormatError(f"bag id {b} out of range 1..{header[0]}", lineno)
            edges.append((vals[0] - 1, vals[1] - 1))
    if header is None:
        raise FormatError("missing 's td' header")
    nb, maxbag, _ = header
    if len(bags) != nb:
        raise FormatError(f"header announces {nb} bags, found {len(bags)}")
    real_max = max((len(b) for b in bags.values()), default=0)
    if real_max != maxbag:
        raise FormatError(f"header announces max bag size {maxbag}, found {real_max}")
    return TreeDecomposition(tuple(bags[i] for i in range(1, nb + 1)), frozenset(edges))


def format_td(td: TreeDecomposition, vertex_count: int) -> str:
    maxbag = max((len(b) for b in td.bags), default=0)
    out = [f"s td {td.bag_count} {maxbag} {vertex_count}"]
    for i, b in enumerate(td.bags, start=1):
        out.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(b)]))
    out.extend(f"{a + 1} {b + 1}" for a, b in sorted(td.tree_edges))
    return "\n".join(out) + "\n"


def read_td(path) -> TreeDecomposition:
    return parse_td(Path(path).read_text())


def write_td(path, td: TreeDecomposition, vertex_count: int):
    Path(path).write_text(format_td(td, vertex_count))
