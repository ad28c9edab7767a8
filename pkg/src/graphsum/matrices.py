"""Real matrices attached to edges of a multigraph.

An edge ``e`` from ``s`` to ``t`` carries a matrix of shape
``(dims[t], dims[s])``; its entry ``[i, j]`` pairs target index ``i`` with
source index ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .graph import DirectedMultigraph

MAX_DIM = 64


def as_matrix(m) -> np.ndarray:
    """Read-only float64 copy of a 2-d array-like."""
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2:
        raise InputError(f"matrix must be 2-dimensional, got shape {a.shape}")
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GraphOfMatrices:
    graph: DirectedMultigraph
    dims: dict = field(default_factory=dict)
    mats: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dims", {v: int(self.dims[v]) for v in self.dims})
        object.__setattr__(self, "mats", {k: as_matrix(m) for k, m in self.mats.items()})

    @classmethod
    def square(cls, graph: DirectedMultigraph, n: int, mats: dict) -> "GraphOfMatrices":
        return cls(graph, {v: n for v in graph.vertices}, mats)

    def matrix(self, eid) -> np.ndarray:
        return self.mats[eid]

    def norm_product(self) -> float:
        out = 1.0
        for e in self.graph.edges:
            out *= operator_norm(self.mats[e.id])
        return out


def validate(gom: GraphOfMatrices) -> list[str]:
    """Dimension violations of ``gom``; an empty list means it is valid."""
    problems = []
    g = gom.graph
    for v in g.vertices:
        if v not in gom.dims:
            problems.append(f"vertex {v!r}: no dimension")
        elif gom.dims[v] < 1:
            problems.append(f"vertex {v!r}: dimension {gom.dims[v]} is not positive")
        elif gom.dims[v] > MAX_DIM:
            problems.append(f"vertex {v!r}: dimension {gom.dims[v]} exceeds the supported maximum {MAX_DIM}")
    for e in g.edges:
        if e.id not in gom.mats:
            problems.append(f"edge {e.id!r}: no matrix")
            continue
        expected = (gom.dims.get(e.target), gom.dims.get(e.source))
        actual = gom.mats[e.id].shape
        if None not in expected and actual != expected:
            problems.append(f"edge {e.id!r}: expected shape {expected[0]}x{expected[1]}, "
                            f"got {actual[0]}x{actual[1]}")
    return problems


def require_valid(gom: GraphOfMatrices) -> None:
    problems = validate(gom)
    if problems:
        raise InputError("invalid graph of matrices: " + "; ".join(problems))


def operator_norm(m) -> float:
    """Largest singular value."""
    a = np.asarray(m, dtype=np.float64)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def transpose(m) -> np.ndarray:
    return as_matrix(np.asarray(m).T)
