"""Cutting edges, two-edge connected components and the sharp exponent r(G).

The exponent is read off the forest of two-edge connected components: a
trivial tree contributes 1, every leaf of a non-trivial tree contributes 1/2.
Edge directions play no role anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .graph import DirectedMultigraph, components_of

LeafKind = Literal["trivial_leaf", "tree_leaf", "internal"]


class HalfInteger(Fraction):
    """A non-negative rational with denominator 1 or 2.

    Behaves like :class:`fractions.Fraction`; sums of half-integers stay
    half-integers.
    """

    def __new__(cls, numerator=0, denominator=None):
        self = super().__new__(cls, numerator, denominator)
        if self.denominator not in (1, 2):
            raise ValueError(f"{Fraction(self)} is not a half-integer")
        return self

    def __add__(self, other):
        result = Fraction.__add__(self, other)
        if isinstance(other, (int, HalfInteger)) and isinstance(result, Fraction):
            return HalfInteger(result)
        return result

    __radd__ = __add__

    def __repr__(self):
        return f"HalfInteger({self})"


def cutting_edges(g: DirectedMultigraph) -> set:
    """Ids of the bridges of the underlying undirected multigraph.

    Low-link DFS that remembers the id of the tree edge it arrived by, so a
    parallel partner of that edge counts as a back edge.  Loops never matter.
    """
    adj = g.undirected_adjacency()
    disc: dict = {}
    low: dict = {}
    bridges = set()
    counter = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        # frame: (vertex, id of edge used to enter it, iterator position)
        stack = [(root, None, 0)]
        while stack:
            u, via, i = stack.pop()
            if i < len(adj[u]):
                stack.append((u, via, i + 1))
                eid, w = adj[u][i]
                if eid == via:
                    continue
                if w in disc:
                    low[u] = min(low[u], disc[w])
                else:
                    disc[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, 0))
            elif stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[u])
                if low[u] > disc[parent]:
                    bridges.add(via)
    return bridges


def two_edge_components(g: DirectedMultigraph) -> list[tuple]:
    """Vertex classes connected after deleting all cutting edges."""
    return components_of(g, skip=cutting_edges(g))


@dataclass(frozen=True)
class Forest:
    """The forest F(G) of two-edge connected components.

    ``nodes[i]`` is the vertex tuple of a component, ``forest_edges`` holds
    ``(i, j, cutting edge id)`` with ``i`` the component of the edge's source,
    and ``trees`` groups node indices into connected trees.
    """

    nodes: tuple[tuple, ...]
    forest_edges: tuple[tuple[int, int, object], ...]
    trees: tuple[tuple[int, ...], ...]

    def degree(self, i: int) -> int:
        return sum((a == i) + (b == i) for a, b, _ in self.forest_edges)

    def neighbours(self, i: int) -> list[tuple[int, object]]:
        """(node, cutting edge id) pairs adjacent to node i, in edge order."""
        out = []
        for a, b, eid in self.forest_edges:
            if a == i:
                out.append((b, eid))
            elif b == i:
                out.append((a, eid))
        return out

    def node_of(self, v) -> int:
        for i, comp in enumerate(self.nodes):
            if v in comp:
                return i
        raise KeyError(v)


def forest_of(g: DirectedMultigraph) -> Forest:
    bridges = cutting_edges(g)
    nodes = components_of(g, skip=bridges)
    where = {v: i for i, comp in enumerate(nodes) for v in comp}
    fedges = tuple((where[e.source], where[e.target], e.id) for e in g.edges if e.id in bridges)
    # trees = connected components of the original graph, expressed as node indices
    trees = []
    for comp in components_of(g):
        trees.append(tuple(sorted({where[v] for v in comp})))
    return Forest(tuple(nodes), fedges, tuple(trees))


def classify_leaves(f: Forest) -> list[tuple[tuple, LeafKind]]:
    out = []
    kinds: dict[int, LeafKind] = {}
    for tree in f.trees:
        if len(tree) == 1:
            kinds[tree[0]] = "trivial_leaf"
            continue
        for i in tree:
            kinds[i] = "tree_leaf" if f.degree(i) == 1 else "internal"
    for i, comp in enumerate(f.nodes):
        out.append((comp, kinds[i]))
    return out


_WEIGHT = {"trivial_leaf": HalfInteger(1), "tree_leaf": HalfInteger(1, 2), "internal": HalfInteger(0)}


def leaf_weight(kind: LeafKind) -> HalfInteger:
    return _WEIGHT[kind]


def exponent(g: DirectedMultigraph) -> HalfInteger:
    """The sharp exponent r(G) = sum over leaves of F(G) of 1 or 1/2."""
    total = HalfInteger(0)
    for _, kind in classify_leaves(forest_of(g)):
        total = total + _WEIGHT[kind]
    return total
