"""Sum-preserving rewrites and the reduction of any graph of matrices to input-output form.

Two moves are allowed: reversing an edge (its matrix is transposed) and
splitting a vertex v into v and a fresh copy joined by an identity edge (two
parallel identity edges when {v} is a two-edge connected component on its
own).  Neither changes the graph sum, the forest of two-edge connected
components or the product of edge norms.

Every choice the construction leaves open is made deterministically: input
leaf = leaf holding the first vertex, paths by breadth-first search in edge
order, ambiguous ear orientation x -> y.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Literal, Mapping

import numpy as np

from .decomposition import forest_of, two_edge_components
from .errors import InputError
from .graph import DirectedMultigraph, Edge
from .matrices import GraphOfMatrices, require_valid, validate

End = tuple[Hashable, Literal["source", "target"]]


@dataclass(frozen=True)
class IOGraph:
    gom: GraphOfMatrices
    inputs: tuple
    outputs: tuple
    provenance: dict = field(default_factory=lambda: {"vertices": {}, "edges": {}})


class _Workspace:
    """Mutable copy of a graph of matrices used while rewriting."""

    def __init__(self, gom: GraphOfMatrices, provenance: Mapping | None = None):
        self.vertices = list(gom.graph.vertices)
        self.ends = {e.id: [e.source, e.target] for e in gom.graph.edges}
        self.dims = dict(gom.dims)
        self.mats = dict(gom.mats)
        prov = provenance or {}
        self.vprov = {v: prov.get("vertices", {}).get(v, v) for v in self.vertices}
        self.eprov = {e: prov.get("edges", {}).get(e, e) for e in self.ends}

    def freeze(self) -> GraphOfMatrices:
        edges = tuple(Edge(eid, s, t) for eid, (s, t) in self.ends.items())
        return GraphOfMatrices(DirectedMultigraph(tuple(self.vertices), edges), self.dims, self.mats)

    def provenance(self) -> dict:
        return {"vertices": dict(self.vprov), "edges": dict(self.eprov)}

    def _fresh(self, base: str, taken) -> str:
        k = 1
        while f"{base}{k}" in taken:
            k += 1
        return f"{base}{k}"

    def reverse(self, eid) -> None:
        s, t = self.ends[eid]
        self.ends[eid] = [t, s]
        self.mats[eid] = np.ascontiguousarray(self.mats[eid].T)

    def orient(self, eid, a, b) -> None:
        """Make edge ``eid`` run a -> b, reversing it if needed."""
        s, t = self.ends[eid]
        if (s, t) == (a, b):
            return
        if (t, s) != (a, b):
            raise AssertionError(f"edge {eid!r} does not join {a!r} and {b!r}")
        self.reverse(eid)

    def ends_at(self, v) -> list[End]:
        out = []
        for eid, (s, t) in self.ends.items():
            if s == v:
                out.append((eid, "source"))
            if t == v:
                out.append((eid, "target"))
        return out

    def split(self, v, move: Iterable[End], toward_copy: bool = True, double: bool | None = None):
        """Split v; ends in ``move`` go to the copy.  Returns (copy id, link edge ids)."""
        if double is None:
            double = (v,) in two_edge_components(self.freeze().graph)
        new = self._fresh(f"{v}_split", set(self.vertices))
        self.vertices.append(new)
        self.dims[new] = self.dims[v]
        self.vprov[new] = self.vprov[v]
        for eid, side in move:
            self.ends[eid][0 if side == "source" else 1] = new
        links = []
        n = self.dims[v]
        for _ in range(2 if double else 1):
            lid = self._fresh(f"{new}_link", set(self.ends))
            self.ends[lid] = [v, new] if toward_copy else [new, v]
            self.mats[lid] = np.eye(n)
            self.eprov[lid] = None
            links.append(lid)
        return new, links


def reverse_edge(gom: GraphOfMatrices, e) -> GraphOfMatrices:
    """Flip edge ``e`` and transpose its matrix."""
    if not gom.graph.has_edge(e):
        raise InputError(f"unknown edge {e!r}")
    ws = _Workspace(gom)
    ws.reverse(e)
    return ws.freeze()


def split_vertex(gom: GraphOfMatrices, v, assignment: Mapping[End, str],
                 toward_copy: bool = True) -> GraphOfMatrices:
    """Split ``v`` into ``v`` and a copy ``f"{v}_split{k}"`` appended as the last vertex.

    ``assignment`` maps every edge end at ``v`` -- ``(edge id, "source" |
    "target")`` -- to ``"keep"`` or ``"move"``; a loop contributes two ends.
    The copy is joined to ``v`` by an identity edge, directed v -> copy
    unless ``toward_copy`` is false, or by two such edges when {v} is a
    two-edge connected component by itself.
    """
    if v not in gom.graph.vertex_order:
        raise InputError(f"unknown vertex {v!r}")
    ws = _Workspace(gom)
    ends = ws.ends_at(v)
    missing = [x for x in ends if x not in assignment]
    if missing:
        raise InputError(f"assignment does not cover edge ends {missing} at vertex {v!r}")
    extra = [x for x in assignment if x not in ends]
    if extra:
        raise InputError(f"assignment names edge ends {extra} that are not at vertex {v!r}")
    bad = {a for a in assignment.values() if a not in ("keep", "move")}
    if bad:
        raise InputError(f"assignment values must be 'keep' or 'move', got {sorted(bad)}")
    ws.split(v, [x for x in ends if assignment[x] == "move"], toward_copy)
    return ws.freeze()


# ---------------------------------------------------------------------------
# ear construction inside one two-edge connected component


def _bfs_path(ws: _Workspace, start, goal, edges: list, avoid=()):
    """Shortest path start -> first vertex in ``goal`` over ``edges`` (undirected, loops skipped).

    Returns (list of (edge id, from, to), end vertex) or None.
    """
    adj: dict = {}
    for eid in edges:
        if eid in avoid:
            continue
        s, t = ws.ends[eid]
        if s == t:
            continue
        adj.setdefault(s, []).append((eid, t))
        adj.setdefault(t, []).append((eid, s))
    prev = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u in goal and u != start:
            path = []
            while prev[u] is not None:
                eid, p = prev[u]
                path.append((eid, p, u))
                u = p
            path.reverse()
            return path, path[-1][2]
        for eid, w in adj.get(u, ()):
            if w not in prev:
                prev[w] = (eid, u)
                queue.append(w)
    return None


def _reaches(ws: _Workspace, edges: Iterable, a, b) -> bool:
    out: dict = {}
    for eid in edges:
        s, t = ws.ends[eid]
        out.setdefault(s, []).append(t)
    seen = {a}
    stack = [a]
    while stack:
        u = stack.pop()
        if u == b:
            return True
        for w in out.get(u, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def _orient_component(ws: _Workspace, comp_edges: list, v, w, fixed: set):
    """Turn one two-edge connected component into an input-output graph from v to w.

    ``comp_edges`` are the component's edges (undirected until placed);
    ``fixed`` holds edge ids outside the component whose direction is already
    settled.  Returns the final (input, output) vertices, which differ from
    (v, w) only when a split replaced the output.
    """
    comp_edges = list(comp_edges)
    if v == w:
        raise InputError("input and output vertex of a component must differ")
    found = _bfs_path(ws, v, {w}, comp_edges)
    if found is None:
        raise InputError(f"no path from {v!r} to {w!r} inside the component")
    included: list = []
    placed: set = set()
    gk = {v}
    for eid, a, b in found[0]:
        ws.orient(eid, a, b)
        included.append(eid)
        placed.add(eid)
        gk.add(b)

    while True:
        pending = [e for e in comp_edges if e not in placed]
        if not pending:
            break
        eid = next((e for e in pending if ws.ends[e][0] in gk or ws.ends[e][1] in gk), None)
        if eid is None:
            raise InputError("component is not connected")
        s, t = ws.ends[eid]
        x, z = (s, t) if s in gk else (t, s)
        if z in gk:
            path, y = [], z
        else:
            found = _bfs_path(ws, z, gk, pending, avoid={eid})
            if found is None:
                raise InputError(f"edge {eid!r} is a cutting edge of the component")
            path, y = found
        # chain x -e-> z -path-> y as a list of (edge, a, b) hops
        chain = [(eid, x, z)] + path

        if x != y:
            if _reaches(ws, included, y, x) and not _reaches(ws, included, x, y):
                chain = [(e, b, a) for e, a, b in reversed(chain)]
            for e, a, b in chain:
                ws.orient(e, a, b)
        else:
            # the ear closes a cycle at x: x keeps incoming edges, the copy takes outgoing ones
            settled = set(included) | fixed
            last_e = chain[-1][0]
            move = []
            for e2, side in ws.ends_at(x):
                if e2 in settled and side == "source":
                    move.append((e2, side))
            if last_e == eid:
                # a loop (or a single edge whose both ends sit at x)
                move.append((eid, "target"))
            else:
                ls, lt = ws.ends[last_e]
                move.append((last_e, "target" if lt == x else "source"))
            copy, links = ws.split(x, move, toward_copy=True, double=False)
            included.extend(links)
            placed.update(links)
            comp_edges.extend(links)
            gk.add(copy)
            if x == w:
                w = copy
            hops = chain[:-1] + [(last_e, chain[-1][1], copy)]
            for e, a, b in hops:
                ws.orient(e, a, b)
        for e, a, b in chain:
            included.append(e)
            placed.add(e)
            gk.add(a)
            gk.add(b)
    return v, w


def _component_edges(ws: _Workspace, members: set, cut: set) -> list:
    return [e for e, (s, t) in ws.ends.items() if e not in cut and s in members and t in members]


def io_of_two_edge_component(gom: GraphOfMatrices, v, w) -> IOGraph:
    """Input-output modification of a two-edge connected graph with input v and output w."""
    require_valid(gom)
    g = gom.graph
    if v == w:
        raise InputError("v and w must be distinct")
    for u in (v, w):
        if u not in g.vertex_order:
            raise InputError(f"unknown vertex {u!r}")
    if len(two_edge_components(g)) != 1:
        raise InputError("graph is not two-edge connected")
    ws = _Workspace(gom)
    vin, vout = _orient_component(ws, [e.id for e in g.edges], v, w, fixed=set())
    return IOGraph(ws.freeze(), (vin,), (vout,), ws.provenance())


def to_input_output(gom: GraphOfMatrices) -> IOGraph:
    """A modification of ``gom`` that is an input-output graph.

    Per tree of the forest of two-edge connected components, the leaf that
    contains the first vertex is the input leaf and every other leaf an output
    leaf; a trivial tree gets both roles, its input and output vertex being
    made distinct by a split.
    """
    require_valid(gom)
    g = gom.graph
    forest = forest_of(g)
    cut = {eid for _, _, eid in forest.forest_edges}
    ws = _Workspace(gom)
    inputs, outputs = [], []
    jobs = []  # (members, input, output)

    def first_other(comp, avoid):
        return next((u for u in comp if u != avoid), None)

    for tree in forest.trees:
        if len(tree) == 1:
            comp = forest.nodes[tree[0]]
            vin = comp[0]
            vout = first_other(comp, vin)
            members = set(comp)
            if vout is None:
                vout, _ = ws.split(vin, [], double=True)
                members.add(vout)
            jobs.append((members, vin, vout))
            inputs.append(vin)
            outputs.append(vout)
            continue

        root = next(i for i in tree if forest.degree(i) == 1)
        parent_edge = {root: None}
        order = [root]
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j, eid in forest.neighbours(i):
                if j in parent_edge:
                    continue
                parent_edge[j] = eid
                order.append(j)
                queue.append(j)
                a = forest.nodes[i]
                s, t = ws.ends[eid]
                ws.orient(eid, s if s in a else t, t if s in a else s)

        for i in order:
            comp = forest.nodes[i]
            members = set(comp)
            inc = parent_edge[i]
            outs = [eid for j, eid in forest.neighbours(i) if parent_edge.get(j) == eid and j != i and eid != inc]
            outs = g.sort_edges(outs)
            if inc is None:
                vout = ws.ends[outs[0]][0]
                vin = first_other(comp, vout)
                if vin is None:
                    vin = vout
                    move = [(e, "source") for e in outs]
                    vout, _ = ws.split(vin, move, double=True)
                    members.add(vout)
                inputs.append(vin)
            else:
                vin = ws.ends[inc][1]
                if not outs:
                    vout = first_other(comp, vin)
                    if vout is None:
                        vout, _ = ws.split(vin, [], double=True)
                        members.add(vout)
                    outputs.append(vout)
                else:
                    vout = next((ws.ends[e][0] for e in outs if ws.ends[e][0] != vin), None)
                    if vout is None:
                        move = [(e, "source") for e in outs]
                        if len(comp) == 1:
                            vout, _ = ws.split(vin, move, double=True)
                        else:
                            # keep one component edge end at vin so the link is not a bridge
                            own = [x for x in ws.ends_at(vin) if x[0] not in cut]
                            move += own[1:]
                            vout, _ = ws.split(vin, move, double=False)
                        members.add(vout)
            jobs.append((members, vin, vout))

    for members, vin, vout in jobs:
        edges = _component_edges(ws, members, cut)
        _, new_out = _orient_component(ws, edges, vin, vout, fixed=cut)
        if new_out != vout and vout in outputs:
            outputs[outputs.index(vout)] = new_out

    return IOGraph(ws.freeze(), tuple(inputs), tuple(outputs), ws.provenance())


def check_io(io: IOGraph) -> list[str]:
    """Violations of the input-output graph conditions; empty means valid."""
    g = io.gom.graph
    problems = list(validate(io.gom))
    ins, outs = list(io.inputs), list(io.outputs)
    vs = set(g.vertices)
    if not ins:
        problems.append("no input vertices")
    if not outs:
        problems.append("no output vertices")
    for u in ins + outs:
        if u not in vs:
            problems.append(f"declared vertex {u!r} is not in the graph")
    both = set(ins) & set(outs)
    if both:
        problems.append(f"vertices {sorted(map(str, both))} are both input and output")

    indeg = {v: 0 for v in g.vertices}
    succ = {v: [] for v in g.vertices}
    pred = {v: [] for v in g.vertices}
    for e in g.edges:
        indeg[e.target] += 1
        succ[e.source].append(e.target)
        pred[e.target].append(e.source)
    queue = deque(v for v in g.vertices if indeg[v] == 0)
    done = 0
    while queue:
        u = queue.popleft()
        done += 1
        for w in succ[u]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if done < len(g.vertices):
        problems.append("directed cycle")

    for v in g.vertices:
        n_in, n_out = len(pred[v]), len(succ[v])
        if v in ins and n_in:
            problems.append(f"input vertex {v!r} has incoming edges")
        elif v in outs and n_out:
            problems.append(f"output vertex {v!r} has outgoing edges")
        elif v not in ins and v not in outs and (n_in == 0 or n_out == 0):
            problems.append(f"internal vertex {v!r} needs both incoming and outgoing edges")

    def reach(starts, nbrs):
        seen = set(s for s in starts if s in vs)
        stack = list(seen)
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    on_path = reach(ins, succ) & reach(outs, pred)
    for v in g.vertices:
        if v not in on_path:
            problems.append(f"vertex {v!r} is not on a directed input-output path")
    return problems
