"""The operator of an input-output graph, built level by level.

Vertices are layered by their longest distance from an input.  Once every
edge spans exactly one layer, the operator factors as
``L_r T_r ... L_1 T_1 L_0`` where ``T_k`` is the tensor product of the edge
matrices entering layer k and ``L_k`` the tensor product of the vertex
copy maps ``sum_i |i ... i><i ... i|`` of layer k.

Tensor factors are ordered by vertex/edge declaration order, row-major.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, InputError
from .graph import DirectedMultigraph, Edge
from .matrices import GraphOfMatrices, operator_norm
from .modification import IOGraph, check_io

DEFAULT_WIDTH_CAP = 1 << 20
DEFAULT_DENSE_CAP = 1 << 24


@dataclass(frozen=True)
class LevelDecomposition:
    depth: int
    vertex_levels: dict
    edge_levels: dict

    def layer(self, k: int, g: DirectedMultigraph) -> list:
        return [v for v in g.vertices if self.vertex_levels[v] == k]

    def edges_into(self, k: int, g: DirectedMultigraph) -> list[Edge]:
        return [e for e in g.edges if self.edge_levels[e.id] == k]


@dataclass(frozen=True)
class GraphOperator:
    """T_G as a dense matrix with rows indexed by outputs, columns by inputs."""

    matrix: np.ndarray
    inputs: tuple
    outputs: tuple


def _require_io(io: IOGraph) -> None:
    problems = check_io(io)
    if problems:
        raise InputError("not an input-output graph: " + "; ".join(problems))


def distance_levels(io: IOGraph) -> dict:
    """d(v) = length of the longest directed path from an input to v."""
    g = io.gom.graph
    indeg = {v: 0 for v in g.vertices}
    for e in g.edges:
        indeg[e.target] += 1
    order = [v for v in g.vertices if indeg[v] == 0]
    d = {v: 0 for v in g.vertices}
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for e in g.out_edges(u):
            d[e.target] = max(d[e.target], d[u] + 1)
            indeg[e.target] -= 1
            if indeg[e.target] == 0:
                order.append(e.target)
    if len(order) < len(g.vertices):
        raise InputError("graph has a directed cycle; levels are undefined")
    return d


def normalize_levels(io: IOGraph) -> tuple[IOGraph, LevelDecomposition]:
    """Insert identity-carrying vertices so every edge spans one level and all outputs sit at depth r.

    An edge s -> t of span m becomes s -> c1 -> ... -> c_{m-1} -> t; the new
    vertices have the dimension of s, all but the last segment carry the
    identity and the last segment keeps the original id and matrix.
    """
    _require_io(io)
    gom = io.gom
    g = gom.graph
    d = distance_levels(io)
    r = max(d.values(), default=0)
    level = dict(d)
    for w in io.outputs:
        level[w] = r

    vertices = list(g.vertices)
    dims = dict(gom.dims)
    mats = dict(gom.mats)
    edges: list[Edge] = []
    edge_levels = {}
    vprov = dict(io.provenance.get("vertices", {}))
    eprov = dict(io.provenance.get("edges", {}))
    taken_v = set(vertices)
    taken_e = {e.id for e in g.edges}

    def fresh(base, taken):
        k = 1
        while f"{base}{k}" in taken:
            k += 1
        taken.add(f"{base}{k}")
        return f"{base}{k}"

    for e in g.edges:
        s, t = e.source, e.target
        span = level[t] - level[s]
        prev = s
        for step in range(1, span):
            c = fresh(f"{e.id}_lvl", taken_v)
            vertices.append(c)
            dims[c] = dims[s]
            level[c] = level[s] + step
            vprov[c] = None
            seg = fresh(f"{e.id}_seg", taken_e)
            edges.append(Edge(seg, prev, c))
            mats[seg] = np.eye(dims[s])
            edge_levels[seg] = level[c]
            eprov[seg] = None
            prev = c
        edges.append(Edge(e.id, prev, t))
        edge_levels[e.id] = level[t]

    new_gom = GraphOfMatrices(DirectedMultigraph(tuple(vertices), tuple(edges)), dims, mats)
    new_io = IOGraph(new_gom, io.inputs, io.outputs, {"vertices": vprov, "edges": eprov})
    return new_io, LevelDecomposition(r, level, edge_levels)


def _is_normalized(io: IOGraph, lv: LevelDecomposition) -> bool:
    g = io.gom.graph
    if any(lv.vertex_levels[w] != lv.depth for w in io.outputs):
        return False
    return all(lv.vertex_levels[e.target] == lv.vertex_levels[e.source] + 1 for e in g.edges)


def _levels(io: IOGraph) -> tuple[IOGraph, LevelDecomposition]:
    nio, lv = normalize_levels(io)
    assert _is_normalized(nio, lv)
    return nio, lv


def vertex_isometry(n: int, n_in: int, n_out: int) -> np.ndarray:
    """L_v = sum_i |i^{(x) n_out}><i^{(x) n_in}| as an (n^n_out) x (n^n_in) matrix."""
    out = np.zeros((n**n_out, n**n_in))
    diag_out = sum(n**k for k in range(n_out))
    diag_in = sum(n**k for k in range(n_in))
    for i in range(n):
        out[i * diag_out, i * diag_in] = 1.0
    return out


def _wires(nio: IOGraph, lv: LevelDecomposition):
    """Per level k, the wire lists entering (before L_k) and leaving (after L_k)."""
    g = nio.gom.graph
    ins = set(nio.inputs)
    outs = set(nio.outputs)
    plan = []
    for k in range(lv.depth + 1):
        layer = lv.layer(k, g)
        steps = []
        for v in layer:
            w_in = [("in", v)] if v in ins else [e.id for e in g.in_edges(v)]
            w_out = [("out", v)] if v in outs else [e.id for e in g.out_edges(v)]
            steps.append((v, w_in, w_out))
        plan.append(steps)
    return plan


def level_matrices(io: IOGraph, dense_cap: int = DEFAULT_DENSE_CAP) -> tuple[list, list, IOGraph]:
    """Dense L_0..L_r and T_1..T_r for the normalized graph.

    Returns ``(Ls, Ts, normalized io)``; ``Ts[k-1]`` is T_k.
    """
    nio, lv = _levels(io)
    gom = nio.gom
    g = gom.graph
    plan = _wires(nio, lv)
    eorder = g.edge_order

    def check(rows, cols):
        if rows * cols > dense_cap:
            raise CapExceeded(f"level matrix {rows}x{cols} exceeds the dense cap {dense_cap}")

    Ls, Ts = [], []
    for k, steps in enumerate(plan):
        if k > 0:
            es = lv.edges_into(k, g)
            rows = math.prod(gom.dims[e.target] for e in es)
            cols = math.prod(gom.dims[e.source] for e in es)
            check(rows, cols)
            t = np.ones((1, 1))
            for e in es:
                t = np.kron(t, gom.mats[e.id])
            Ts.append(t)
        # kron of vertex maps, then permute wire axes into canonical order
        in_wires, out_wires, blocks = [], [], []
        for v, w_in, w_out in steps:
            in_wires += w_in
            out_wires += w_out
            blocks.append(vertex_isometry(gom.dims[v], len(w_in), len(w_out)))
        vdim = {w: gom.dims[v] for v, w_in, w_out in steps for w in w_in + w_out}
        rows = math.prod(vdim[w] for w in out_wires)
        cols = math.prod(vdim[w] for w in in_wires)
        check(rows, cols)
        m = np.ones((1, 1))
        for b in blocks:
            m = np.kron(m, b)

        def canon(ws):
            return sorted(range(len(ws)), key=lambda i: _wire_key(ws[i], eorder, g))

        po, pi = canon(out_wires), canon(in_wires)
        shape = [vdim[w] for w in out_wires] + [vdim[w] for w in in_wires]
        tensor = m.reshape(shape) if shape else m.reshape(())
        perm = po + [len(out_wires) + i for i in pi]
        m = tensor.transpose(perm).reshape(rows, cols)
        Ls.append(m)
    return Ls, Ts, nio


def _wire_key(w, eorder, g):
    if g.has_edge(w):
        return (1, eorder[w])
    kind, v = w
    return (0 if kind == "in" else 2, g.vertex_order[v])


def build_operator(io: IOGraph, dense_cap: int = DEFAULT_DENSE_CAP) -> GraphOperator:
    """T_G = L_r T_r ... L_1 T_1 L_0 as a dense matrix (outputs x inputs)."""
    Ls, Ts, nio = level_matrices(io, dense_cap)
    m = Ls[0]
    for t, l in zip(Ts, Ls[1:]):
        m = l @ (t @ m)
    g = nio.gom.graph
    return GraphOperator(m, tuple(g.sort_vertices(nio.inputs)), tuple(g.sort_vertices(nio.outputs)))


def graph_sum_via_operator(io: IOGraph, width_cap: int = DEFAULT_WIDTH_CAP) -> float:
    """<xi_out, T_G xi_in> with xi = all-ones, pushed through the levels as a vector state.

    The state is a tensor with one axis per wire; edge matrices act on their
    axis, vertex maps take the diagonal of their incoming axes and copy it to
    their outgoing axes.  Nothing larger than one level's state is stored.
    """
    nio, lv = _levels(io)
    gom = nio.gom
    g = gom.graph
    plan = _wires(nio, lv)
    state = np.ones(())
    wires: list = []
    for k, steps in enumerate(plan):
        if k > 0:
            for e in lv.edges_into(k, g):
                ax = wires.index(e.id)
                state = np.moveaxis(np.tensordot(gom.mats[e.id], state, axes=([1], [ax])), 0, ax)
        for v, w_in, w_out in steps:
            n = gom.dims[v]
            r = np.arange(n)
            if w_in[0] == ("in", v):
                diag = np.multiply.outer(state, np.ones(n))
            else:
                axes = [wires.index(w) for w in w_in]
                rest = [i for i in range(len(wires)) if i not in axes]
                moved = np.transpose(state, rest + axes)
                diag = moved[(Ellipsis,) + (r,) * len(axes)]
                wires = [wires[i] for i in rest]
            if w_out[0] == ("out", v):
                state = diag.sum(axis=-1)
                continue
            width = diag.size // n * n ** len(w_out)
            if width > width_cap:
                raise CapExceeded(f"state width {width} at level {k} exceeds the cap {width_cap}")
            new = np.zeros(diag.shape[:-1] + (n,) * len(w_out))
            new[(Ellipsis,) + (r,) * len(w_out)] = diag
            state = new
            wires = wires + list(w_out)
    return float(state)


def operator_norm_check(io: IOGraph, dense_cap: int = DEFAULT_DENSE_CAP) -> tuple[float, float]:
    """(||T_G||, prod_e ||T_e||); the first never exceeds the second."""
    op = build_operator(io, dense_cap)
    prod = 1.0
    for e in io.gom.graph.edges:
        prod *= operator_norm(io.gom.mats[e.id])
    return operator_norm(op.matrix), prod


def cauchy_schwarz_bound(io: IOGraph) -> float:
    """prod over inputs and outputs of sqrt(N_v), times prod_e ||T_e||."""
    gom = io.gom
    size = 1.0
    for v in tuple(io.inputs) + tuple(io.outputs):
        size *= math.sqrt(gom.dims[v])
    return size * gom.norm_product()
