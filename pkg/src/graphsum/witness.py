"""Norm-one matrices for which the graph sum equals N^{r(G)} exactly."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decomposition import classify_leaves, exponent, forest_of
from .errors import InputError
from .evaluation import DEFAULT_TERM_CAP, graph_sum_bruteforce
from .graph import DirectedMultigraph, Edge
from .matrices import GraphOfMatrices, operator_norm

NORM_TOL = 1e-10
SUM_TOL = 1e-12


def witness_v_matrix(n: int) -> np.ndarray:
    """N x N matrix whose first column is 1/sqrt(N) and all other entries 0."""
    if n < 1:
        raise InputError(f"N must be at least 1, got {n}")
    v = np.zeros((n, n))
    v[:, 0] = 1.0 / math.sqrt(n)
    return v


def witness_kinds(g: DirectedMultigraph) -> dict:
    """Edge id -> one of ``identity``, ``V``, ``Vt``, ``J/N``.

    Non-cutting edges get the identity.  A cutting edge with a leaf component
    on one side and an internal component on the other gets V or its
    transpose, whichever makes the entry vanish unless the internal-side index
    is 1 (V pins the source index, V^t the target index).  A cutting edge
    joining two leaves (a two-node tree) gets the all-ones matrix over N.
    """
    forest = forest_of(g)
    kinds = dict(classify_leaves(forest))
    node_kind = [kinds[comp] for comp in forest.nodes]
    out = {e.id: "identity" for e in g.edges}
    for a, b, eid in forest.forest_edges:
        ka, kb = node_kind[a], node_kind[b]
        if ka == "tree_leaf" and kb == "tree_leaf":
            out[eid] = "J/N"
        elif ka == "internal" and kb == "tree_leaf":
            out[eid] = "V"    # source side is internal
        elif ka == "tree_leaf" and kb == "internal":
            out[eid] = "Vt"   # target side is internal
    return out


def witness_matrix(kind: str, n: int) -> np.ndarray:
    if kind == "identity":
        return np.eye(n)
    if kind == "V":
        return witness_v_matrix(n)
    if kind == "Vt":
        return witness_v_matrix(n).T
    if kind == "J/N":
        return np.full((n, n), 1.0 / n)
    raise InputError(f"unknown witness kind {kind!r}")


def witness_matrices(g: DirectedMultigraph, n: int) -> GraphOfMatrices:
    """All dimensions N, matrices chosen by :func:`witness_kinds`."""
    if n < 1:
        raise InputError(f"N must be at least 1, got {n}")
    kinds = witness_kinds(g)
    return GraphOfMatrices.square(g, n, {eid: witness_matrix(k, n) for eid, k in kinds.items()})


def collapse_components(gom: GraphOfMatrices) -> GraphOfMatrices:
    """Shrink every two-edge connected component to one vertex.

    Valid only when every non-cutting edge carries an identity matrix: the
    identities force all indices of a component to agree, so the sum is
    unchanged.  Cutting edges keep their matrices.
    """
    g = gom.graph
    forest = forest_of(g)
    cut = {eid for _, _, eid in forest.forest_edges}
    for e in g.edges:
        m = gom.mats[e.id]
        if e.id not in cut and not (m.shape[0] == m.shape[1] and np.array_equal(m, np.eye(m.shape[0]))):
            raise InputError(f"edge {e.id!r} is not a cutting edge and does not carry the identity")
    rep = {v: comp[0] for comp in forest.nodes for v in comp}
    vertices = tuple(comp[0] for comp in forest.nodes)
    edges = tuple(Edge(e.id, rep[e.source], rep[e.target]) for e in g.edges if e.id in cut)
    return GraphOfMatrices(DirectedMultigraph(vertices, edges),
                           {v: gom.dims[v] for v in vertices},
                           {e.id: gom.mats[e.id] for e in edges})


@dataclass(frozen=True)
class OptimalityReport:
    S: float
    target: float
    norms_ok: bool
    collapsed: bool

    @property
    def passed(self) -> bool:
        return self.norms_ok and math.isclose(self.S, self.target, rel_tol=SUM_TOL, abs_tol=0.0)


def verify_optimality(g: DirectedMultigraph, n: int, cap: int = DEFAULT_TERM_CAP) -> OptimalityReport:
    """Build the witness matrices and check S = N^{r(G)} with every norm equal to 1.

    The sum is taken by brute force over the full graph when N^|V| fits in
    ``cap``, otherwise over the graph with components collapsed.
    """
    gom = witness_matrices(g, n)
    norms_ok = all(math.isclose(operator_norm(m), 1.0, rel_tol=NORM_TOL, abs_tol=0.0)
                   for m in gom.mats.values())
    collapsed = n ** len(g.vertices) > cap
    target_gom = collapse_components(gom) if collapsed else gom
    s = graph_sum_bruteforce(target_gom, cap=cap)
    r = exponent(g)
    target = float(n) ** float(r)
    return OptimalityReport(s, target, norms_ok, collapsed)
