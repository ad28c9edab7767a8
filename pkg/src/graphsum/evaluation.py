"""Brute-force graph sums and the sharp upper bound."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np

from .decomposition import classify_leaves, forest_of
from .errors import CapExceeded, InputError
from .matrices import GraphOfMatrices, operator_norm, require_valid
from .partition import Partition

DEFAULT_TERM_CAP = 10**8
CHUNK = 1 << 18


def graph_sum_bruteforce(gom: GraphOfMatrices, cap: int = DEFAULT_TERM_CAP,
                         workers: int = 1, chunk: int = CHUNK) -> float:
    """S(G) summed over every index assignment i: V -> [N_v].

    Assignments are enumerated lexicographically in vertex order, in fixed
    chunks; chunk partial sums are added in chunk order, so the result does
    not depend on ``workers``.
    """
    require_valid(gom)
    g = gom.graph
    dims = [gom.dims[v] for v in g.vertices]
    total_terms = math.prod(dims)
    if total_terms > cap:
        raise CapExceeded(f"brute force needs {total_terms} terms "
                          f"(product of dims {dims}), cap is {cap}")
    if not dims:
        return 1.0
    pos = g.vertex_order
    factors = [(gom.mats[e.id], pos[e.target], pos[e.source]) for e in g.edges]

    def chunk_sum(start: int) -> float:
        flat = np.arange(start, min(start + chunk, total_terms))
        idx = np.unravel_index(flat, dims)
        term = np.ones(flat.shape[0])
        for mat, t, s in factors:
            term *= mat[idx[t], idx[s]]
        return float(term.sum())

    starts = range(0, total_terms, chunk)
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(chunk_sum, starts))
    else:
        parts = [chunk_sum(s) for s in starts]
    total = 0.0
    for p in parts:
        total += p
    return total


def partition_sum(matrices: Sequence, pi: Partition, n: int) -> float:
    """S_pi(N): sum over j in [N]^{2m} with ker j >= pi of t1[j1,j2] ... tm[j_{2m-1},j_{2m}].

    Straight enumeration of all 2m-tuples with the block constraint checked
    per tuple; meant as an oracle at tiny sizes.
    """
    mats = [np.asarray(t, dtype=np.float64) for t in matrices]
    m = len(mats)
    if pi.k != 2 * m:
        raise InputError(f"partition of {pi.k} elements needs {pi.k // 2} matrices, got {m}")
    for l, t in enumerate(mats, start=1):
        if t.shape != (n, n):
            raise InputError(f"matrix {l} has shape {t.shape}, expected {n}x{n}")
    blocks = [[p - 1 for p in b] for b in pi.blocks]
    total = 0.0
    for j in itertools.product(range(n), repeat=2 * m):
        if any(j[p] != j[b[0]] for b in blocks for p in b[1:]):
            continue
        term = 1.0
        for l, t in enumerate(mats):
            term *= t[j[2 * l], j[2 * l + 1]]
        total += term
    return total


def leaf_factors(gom: GraphOfMatrices) -> list[tuple[tuple, str, int]]:
    """(component, leaf kind, max dimension over the component) for every leaf."""
    out = []
    for comp, kind in classify_leaves(forest_of(gom.graph)):
        if kind != "internal":
            out.append((comp, kind, max(gom.dims[v] for v in comp)))
    return out


def bound(gom: GraphOfMatrices) -> float:
    """prod over leaves of (max_v N_v)^{r(leaf)} times prod_e ||T_e||.

    With all dimensions equal to N this is N^{r(G)} prod_e ||T_e||.
    """
    require_valid(gom)
    size_part = 1.0
    for _, kind, n in leaf_factors(gom):
        size_part *= n if kind == "trivial_leaf" else math.sqrt(n)
    norms = 1.0
    for e in gom.graph.edges:
        norms *= operator_norm(gom.mats[e.id])
    return size_part * norms
