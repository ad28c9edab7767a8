"""Slow, obviously-correct reference computations used only by the tests."""

import itertools
import math

import numpy as np

from graphsum.graph import DirectedMultigraph


def n_components(vertices, edge_pairs):
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in edge_pairs:
        parent[find(a)] = find(b)
    return len({find(v) for v in vertices})


def bridges_by_deletion(g: DirectedMultigraph) -> set:
    """An edge is a bridge iff deleting it raises the component count."""
    pairs = [(e.source, e.target) for e in g.edges]
    base = n_components(g.vertices, pairs)
    return {e.id for i, e in enumerate(g.edges)
            if n_components(g.vertices, pairs[:i] + pairs[i + 1:]) > base}


def norm_by_char_poly(m) -> float:
    """sqrt of the largest root of det(x I - M^T M), coefficients from principal minors (n <= 3)."""
    a = np.asarray(m, dtype=float)
    a = a.T @ a
    n = a.shape[0]
    coeffs = [1.0]
    for k in range(1, n + 1):
        with np.errstate(divide="ignore", invalid="ignore"):  # singular minors are fine, det is 0
            minors = sum(np.linalg.det(a[np.ix_(idx, idx)]) if k > 1 else a[idx[0], idx[0]]
                         for idx in itertools.combinations(range(n), k))
        coeffs.append((-1) ** k * minors)
    roots = np.roots(coeffs)
    return math.sqrt(max(0.0, max(r.real for r in roots)))


def graph_sum_loops(gom) -> float:
    """Nested-loop graph sum in pure Python."""
    g = gom.graph
    total = 0.0
    for idx in itertools.product(*(range(gom.dims[v]) for v in g.vertices)):
        assign = dict(zip(g.vertices, idx))
        term = 1.0
        for e in g.edges:
            term *= gom.mats[e.id][assign[e.target], assign[e.source]]
        total += term
    return total
