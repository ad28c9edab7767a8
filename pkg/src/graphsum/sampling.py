"""Random partitions, multigraphs and matrices for property checks."""

from __future__ import annotations

import numpy as np

from .graph import DirectedMultigraph, Edge
from .matrices import GraphOfMatrices
from .partition import Partition


def random_partition(rng: np.random.Generator, k: int) -> Partition:
    """A partition of {1..k} from a random restricted growth string."""
    labels = [0]
    for _ in range(1, k):
        labels.append(int(rng.integers(0, max(labels) + 2)))
    blocks: dict[int, list[int]] = {}
    for p, lab in enumerate(labels, start=1):
        blocks.setdefault(lab, []).append(p)
    return Partition(k, tuple(tuple(b) for b in blocks.values()))


def random_multigraph(rng: np.random.Generator, max_vertices: int = 6, max_edges: int = 8,
                      connected: bool = False, min_vertices: int = 1) -> DirectedMultigraph:
    """Random directed multigraph; loops and parallel edges appear with fair probability.

    With ``connected=True`` a random spanning tree is laid down first.
    """
    n = int(rng.integers(min_vertices, max_vertices + 1))
    vertices = [f"v{i}" for i in range(n)]
    pairs = []
    if connected:
        for i in range(1, n):
            pairs.append((i, int(rng.integers(0, i))))
    m = int(rng.integers(len(pairs), max(len(pairs), max_edges) + 1))
    while len(pairs) < m:
        roll = rng.random()
        if roll < 0.15:
            a = int(rng.integers(0, n))
            pairs.append((a, a))
        elif roll < 0.35 and pairs:
            pairs.append(pairs[int(rng.integers(0, len(pairs)))])
        else:
            pairs.append((int(rng.integers(0, n)), int(rng.integers(0, n))))
    rng.shuffle(pairs)
    edges = []
    for j, (a, b) in enumerate(pairs):
        if rng.random() < 0.5:
            a, b = b, a
        edges.append(Edge(f"e{j}", vertices[a], vertices[b]))
    return DirectedMultigraph(tuple(vertices), tuple(edges))


def random_gom(rng: np.random.Generator, g: DirectedMultigraph, n: int | None = None,
               max_dim: int = 3) -> GraphOfMatrices:
    """Uniform [-1, 1] entries; all dims ``n`` or, if ``n`` is None, random in 1..max_dim."""
    dims = {v: n if n is not None else int(rng.integers(1, max_dim + 1)) for v in g.vertices}
    mats = {e.id: rng.uniform(-1.0, 1.0, size=(dims[e.target], dims[e.source])) for e in g.edges}
    return GraphOfMatrices(g, dims, mats)
