"""Directed multigraphs with loops and parallel edges.

Vertex and edge ids are opaque hashables chosen by the caller.  "Least id"
everywhere in this package means first in declaration order, so the order in
which vertices and edges are listed is significant and preserved.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable

from .errors import InputError

VertexId = Hashable
EdgeId = Hashable


@dataclass(frozen=True)
class Edge:
    id: EdgeId
    source: VertexId
    target: VertexId

    @property
    def is_loop(self) -> bool:
        return self.source == self.target

    def other(self, v: VertexId) -> VertexId:
        return self.target if v == self.source else self.source


@dataclass(frozen=True)
class DirectedMultigraph:
    vertices: tuple
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            dup = next(v for i, v in enumerate(self.vertices) if v in self.vertices[:i])
            raise InputError(f"duplicate vertex id {dup!r}")
        vs = set(self.vertices)
        ids = set()
        for e in self.edges:
            if e.id in ids:
                raise InputError(f"duplicate edge id {e.id!r}")
            ids.add(e.id)
            for end in (e.source, e.target):
                if end not in vs:
                    raise InputError(f"edge {e.id!r} has undeclared endpoint {end!r}")

    @cached_property
    def vertex_order(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_order(self) -> dict:
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def _edge_by_id(self) -> dict:
        return {e.id: e for e in self.edges}

    def edge(self, eid: EdgeId) -> Edge:
        try:
            return self._edge_by_id[eid]
        except KeyError:
            raise InputError(f"unknown edge {eid!r}") from None

    def has_edge(self, eid: EdgeId) -> bool:
        return eid in self._edge_by_id

    @cached_property
    def _incidence(self) -> dict:
        inc = {v: ([], []) for v in self.vertices}
        for e in self.edges:
            inc[e.source][1].append(e)
            inc[e.target][0].append(e)
        return inc

    def in_edges(self, v: VertexId) -> list[Edge]:
        return list(self._incidence[v][0])

    def out_edges(self, v: VertexId) -> list[Edge]:
        return list(self._incidence[v][1])

    def incident_edges(self, v: VertexId) -> list[Edge]:
        """Edges touching v in edge order, each listed once (loops included)."""
        return [e for e in self.edges if v in (e.source, e.target)]

    def sort_vertices(self, vs: Iterable[VertexId]) -> list:
        return sorted(vs, key=self.vertex_order.__getitem__)

    def sort_edges(self, es: Iterable[EdgeId]) -> list:
        return sorted(es, key=self.edge_order.__getitem__)

    def undirected_adjacency(self, skip: Iterable[EdgeId] = ()) -> dict:
        """v -> [(edge id, neighbour)] over non-loop edges, in edge order."""
        skip = set(skip)
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.is_loop or e.id in skip:
                continue
            adj[e.source].append((e.id, e.target))
            adj[e.target].append((e.id, e.source))
        return adj

    def reversed(self) -> "DirectedMultigraph":
        return DirectedMultigraph(self.vertices, tuple(Edge(e.id, e.target, e.source) for e in self.edges))


def build_graph(vertices: Iterable, edges: Iterable) -> DirectedMultigraph:
    """Build a validated graph from vertex ids and ``(id, source, target)`` triples."""
    es = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
    return DirectedMultigraph(tuple(vertices), tuple(es))


def components_of(g: DirectedMultigraph, skip: Iterable[EdgeId] = ()) -> list[tuple]:
    """Undirected connected components after ignoring the edges in ``skip``."""
    adj = g.undirected_adjacency(skip)
    seen = set()
    out = []
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for _, w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append(tuple(g.sort_vertices(comp)))
    return out


def connected_components(g: DirectedMultigraph) -> list[tuple]:
    """Vertex sets of the undirected connected components, ordered by least vertex."""
    return components_of(g)
