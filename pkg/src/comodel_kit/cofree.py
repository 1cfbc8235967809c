"""Cofree comonads on polynomial functors, cut off at a finite depth.

A polynomial functor ``F(X) = sum_s X^{E_s}`` is given by its symbols and
the edge labels of each.  Trees are nested ``FTree`` values; a tree of
depth ``d`` lists children for every node above depth ``d`` and leaves the
nodes at depth ``d`` open (``kids is None``).  Nodes are addressed by the
tuple of edge labels leading to them from the root.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any

from .costructure import DirectedContainer
from .errors import InputError, NodeNotFound, TooLarge


class PolyFunctor:
    def __init__(self, edges: dict):
        """``edges`` maps each symbol to an arity or to a list of edge labels."""
        self.edges = {}
        for sym, e in edges.items():
            self.edges[sym] = tuple(range(e)) if isinstance(e, int) else tuple(e)
            if len(set(self.edges[sym])) != len(self.edges[sym]):
                raise InputError(f"repeated edge label under {sym!r}")
        self.symbols = tuple(sorted(self.edges, key=str))

    @classmethod
    def from_signature(cls, sig):
        return cls(dict(sig.arities))

    def arity(self, sym):
        try:
            return len(self.edges[sym])
        except KeyError:
            raise InputError(f"unknown symbol {sym!r}") from None

    def __repr__(self):
        return f"PolyFunctor({self.edges})"


@dataclass(frozen=True)
class FTree:
    sym: Any
    kids: tuple | None = None
    label: Any = None

    def depth(self):
        """Length of the longest path to an open node, or of the longest
        path at all when nothing is open (then the tree is finite)."""
        if self.kids is None:
            return 0
        if not self.kids:
            return 0
        return 1 + max(k.depth() for k in self.kids)

    def unlabelled(self):
        if self.kids is None:
            return FTree(self.sym)
        return FTree(self.sym, tuple(k.unlabelled() for k in self.kids))


def check_tree(F: PolyFunctor, T: FTree, d: int):
    """Structural problems of ``T`` as a depth-``d`` truncation: every node
    above the cut carries one child per edge of its symbol, nodes at the
    cut are open and nothing lies below it."""
    problems = []

    def go(node, path, level):
        if node.sym not in F.edges:
            problems.append(("symbol", path))
            return
        if level == d:
            if node.kids is not None:
                problems.append(("below-cut", path))
            return
        if node.kids is None or len(node.kids) != F.arity(node.sym):
            problems.append(("children", path))
            return
        for e, k in zip(F.edges[node.sym], node.kids):
            go(k, path + (e,), level + 1)

    go(T, (), 0)
    return problems


def nodes(F: PolyFunctor, T: FTree):
    """All node addresses, root first, in canonical order."""
    out = []

    def go(node, path):
        out.append(path)
        if node.kids:
            for e, k in zip(F.edges[node.sym], node.kids):
                go(k, path + (e,))

    go(T, ())
    return out


def path_string(F: PolyFunctor, T: FTree, P) -> str:
    """The F-path of node ``P``: symbols and edges alternating."""
    parts = [str(T.sym)]
    node = T
    for e in P:
        node = subtree(F, node, (e,))
        parts += [str(e), str(node.sym)]
    return ".".join(parts)


def subtree(F: PolyFunctor, T: FTree, P) -> FTree:
    node = T
    for e in P:
        if not node.kids:
            raise NodeNotFound(f"no node at {tuple(P)!r}")
        try:
            node = node.kids[F.edges[node.sym].index(e)]
        except ValueError:
            raise NodeNotFound(f"no edge {e!r} under {node.sym!r}") from None
    return node


def truncate(T: FTree, d: int) -> FTree:
    """Cut at depth ``d``; every node at the cut becomes open."""
    if d == 0:
        return FTree(T.sym, None, T.label)
    if T.kids is None:
        raise InputError("tree is shallower than the requested cut")
    return FTree(T.sym, tuple(truncate(k, d - 1) for k in T.kids), T.label)


def count_ftrees(F: PolyFunctor, d: int) -> int:
    n = len(F.symbols)
    for _ in range(d):
        n = sum(n ** F.arity(s) for s in F.symbols)
    return n


def enumerate_ftrees(F: PolyFunctor, d: int, cap: int = 100_000):
    """Every depth-``d`` truncation, ordered by symbol and then by children."""
    total = count_ftrees(F, d)
    if total > cap:
        raise TooLarge(f"{total} trees at depth {d} exceeds the cap of {cap}")
    level = [FTree(s) for s in F.symbols]
    for _ in range(d):
        level = [FTree(s, kids) for s in F.symbols
                 for kids in itertools.product(level, repeat=F.arity(s))]
    return level


# ---------------------------------------------------------------- coalgebras

def unfold(coalg, s, d: int) -> FTree:
    """The depth-``d`` tree of ``s``; ``coalg(s)`` returns the symbol and the
    tuple of successor states, one per edge.  Node labels are states."""
    step = coalg.__getitem__ if isinstance(coalg, dict) else coalg
    sym, nxt = step(s)
    if d == 0:
        return FTree(sym, None, s)
    return FTree(sym, tuple(unfold(coalg, t, d - 1) for t in nxt), s)


def comult(F: PolyFunctor, T: FTree) -> FTree:
    """Relabel every node ``P`` by the labelled subtree found there."""

    def go(node):
        kids = None if node.kids is None else tuple(go(k) for k in node.kids)
        return FTree(node.sym, kids, node)

    return go(T)


def random_coalgebra(F: PolyFunctor, n: int, rng: random.Random):
    out = {}
    for s in range(n):
        sym = rng.choice(F.symbols)
        out[s] = (sym, tuple(rng.randrange(n) for _ in range(F.arity(sym))))
    return out


# ------------------------------------------------------------ the graph

@dataclass
class BehaviourGraph:
    """Nodes are depth-``d`` trees; an edge labelled ``e`` goes from ``T`` to
    every depth-``d`` tree whose cut at ``d - 1`` is the subtree of ``T``
    along ``e``.  This is the depth-``d`` picture of the map sending a tree
    to its subtree."""

    functor: PolyFunctor
    depth: int
    nodes: list
    edges: list  # (source index, edge label, target index)

    def __post_init__(self):
        self._out = {}
        for k, e, j in self.edges:
            self._out.setdefault(k, []).append((e, j))

    def out_edges(self, i):
        return self._out.get(i, [])


def behaviour_graph(F: PolyFunctor, d: int, cap: int = 100_000) -> BehaviourGraph:
    if d < 1:
        raise InputError("the behaviour graph needs depth at least 1")
    trees = enumerate_ftrees(F, d, cap)
    index = {T: i for i, T in enumerate(trees)}
    by_prefix = {}
    for T in trees:
        by_prefix.setdefault(truncate(T, d - 1), []).append(index[T])
    edges = []
    for i, T in enumerate(trees):
        for e, k in zip(F.edges[T.sym], T.kids):
            for j in by_prefix.get(k, []):
                edges.append((i, e, j))
    return BehaviourGraph(F, d, trees, edges)


def edge_paths(G: BehaviourGraph, i, k):
    """Walks of ``k`` edges out of node ``i`` as ``(labels, end node)``."""
    if k == 0:
        yield (), i
        return
    for e, j in G.out_edges(i):
        for rest, end in edge_paths(G, j, k - 1):
            yield (e,) + rest, end


def check_edge_composition(G: BehaviourGraph, k: int | None = None):
    """A walk ``T -e1-> ... -ek-> T'`` ends in a tree whose cut at ``d - k``
    is the subtree of ``T`` along ``e1 ... ek``."""
    F, d = G.functor, G.depth
    k = d if k is None else k
    problems = []
    for i, T in enumerate(G.nodes):
        for n in range(1, k + 1):
            seen = set()
            for labels, j in edge_paths(G, i, n):
                seen.add(labels)
                if truncate(G.nodes[j], d - n) != subtree(F, T, labels):
                    problems.append((i, labels, j))
            if seen != {P for P in nodes(F, T) if len(P) == n}:
                problems.append((i, "paths", n))
    return problems


def truncated_container(F: PolyFunctor, d: int, cap: int = 100_000) -> DirectedContainer:
    """Shapes are trees of depth at most ``d``; positions of a tree are its
    nodes, a node's codomain is the subtree there and positions of that
    subtree are reindexed by prefixing the node."""
    shapes = []
    for k in range(d + 1):
        shapes += enumerate_ftrees(F, k, cap)
    if len(shapes) > cap:
        raise TooLarge(f"{len(shapes)} shapes exceeds the cap of {cap}")
    positions, ids, cod, rho = {}, {}, {}, {}
    for T in shapes:
        ps = nodes(F, T)
        positions[T] = ps
        ids[T] = ()
        for P in ps:
            sub = subtree(F, T, P)
            cod[(T, P)] = sub
            rho[(T, P)] = {Q: P + Q for Q in nodes(F, sub)}
    return DirectedContainer(shapes, positions, ids, cod, rho)


def check_container_against_graph(F: PolyFunctor, d: int, B=None):
    """The category of the truncated container is free on its length-one
    arrows ``T -> T_e``: every arrow out of ``T`` is the composite of the
    single edges along its address, in exactly one way."""
    from .costructure import behaviour_category_of_comonad

    dc = truncated_container(F, d)
    B = behaviour_category_of_comonad(dc) if B is None else B
    problems = []
    for T in dc.shapes:
        for f in B.out(T):
            P = f[1]
            if not P:
                if f != B.ids[T]:
                    problems.append(("identity", T))
                continue
            g, here = B.ids[T], T
            for e in P:
                g = B.compose(_edge(B, here, e), g)
                here = B.cod(g)
            if g != f or here != subtree(F, T, P):
                problems.append(("composite", T, P))
    return problems


def _edge(B, obj, e):
    """The length-one arrow out of ``obj`` along ``e``."""
    return next(f for f in B.out(obj) if f[1] == (e,))


# ---------------------------------------------------------------- automata

class DFA:
    def __init__(self, alphabet, states, trans: dict, accept, start):
        self.alphabet = tuple(alphabet)
        self.states = tuple(states)
        self.trans = {s: dict(trans[s]) for s in self.states}
        self.accept = frozenset(accept)
        self.start = start
        if start not in self.trans:
            raise InputError(f"unknown start state {start!r}")
        for s in self.states:
            for e in self.alphabet:
                if self.trans[s].get(e) not in self.trans:
                    raise InputError(f"no transition from {s!r} on {e!r}")
        if not self.accept <= set(self.states):
            raise InputError("accepting state outside the state set")

    def step(self, s, word):
        for e in word:
            s = self.trans[s][e]
        return s

    def accepts(self, word) -> bool:
        return self.step(self.start, word) in self.accept

    def with_start(self, s) -> "DFA":
        return DFA(self.alphabet, self.states, self.trans, self.accept, s)

    def functor(self) -> PolyFunctor:
        return PolyFunctor({True: self.alphabet, False: self.alphabet})

    def coalgebra(self):
        return {s: (s in self.accept, tuple(self.trans[s][e] for e in self.alphabet))
                for s in self.states}

    def tree(self, d: int) -> FTree:
        return unfold(self.coalgebra(), self.start, d)


def dfa_derivative(M: DFA, e) -> DFA:
    """The machine for ``{w : e w in L}``: same table, start moved along ``e``."""
    if e not in M.alphabet:
        raise InputError(f"{e!r} is not a letter")
    return M.with_start(M.trans[M.start][e])


def words(alphabet, max_len: int):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def random_dfa(rng: random.Random, n_states: int, alphabet) -> DFA:
    states = [f"q{i}" for i in range(n_states)]
    trans = {s: {e: rng.choice(states) for e in alphabet} for s in states}
    accept = [s for s in states if rng.random() < 0.5]
    return DFA(alphabet, states, trans, accept, states[0])
