"""JSON form of graphs of matrices.

::

    {"vertices": [{"id": "i1", "dim": 4}, ...],
     "edges": [{"id": "e1", "source": "i1", "target": "i2", "matrix": <spec>}, ...]}

``<spec>`` is ``"identity"``, ``"witness_V"``, ``"witness_Vt"``,
``{"rows": [[...], ...]}`` or ``{"random": "uniform", "seed": <int>}``
(entries uniform in [-1, 1]).  ``dim`` falls back to a global N.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError
from .graph import DirectedMultigraph, Edge
from .matrices import GraphOfMatrices
from .modification import IOGraph
from .witness import witness_v_matrix

SCHEMA_VERSION = 1


def _id(value, where):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise InputError(f"{where}: id must be a string or integer, got {value!r}")
    return value


def load_graph(data: dict) -> DirectedMultigraph:
    if not isinstance(data, dict):
        raise InputError("top level must be an object with 'vertices' and 'edges'")
    verts = data.get("vertices")
    edges = data.get("edges", [])
    if not isinstance(verts, list):
        raise InputError("'vertices' must be an array")
    if not isinstance(edges, list):
        raise InputError("'edges' must be an array")
    vids = []
    for i, v in enumerate(verts):
        if isinstance(v, dict):
            if "id" not in v:
                raise InputError(f"vertices[{i}]: missing 'id'")
            vids.append(_id(v["id"], f"vertices[{i}]"))
        else:
            vids.append(_id(v, f"vertices[{i}]"))
    es = []
    for i, e in enumerate(edges):
        if not isinstance(e, dict):
            raise InputError(f"edges[{i}]: must be an object")
        for key in ("id", "source", "target"):
            if key not in e:
                raise InputError(f"edges[{i}]: missing '{key}'")
        es.append(Edge(_id(e["id"], f"edges[{i}]"), _id(e["source"], f"edges[{i}].source"),
                       _id(e["target"], f"edges[{i}].target")))
    try:
        return DirectedMultigraph(tuple(vids), tuple(es))
    except InputError as exc:
        raise InputError(f"graph: {exc}") from None


def resolve_matrix(spec, rows: int, cols: int, where: str = "matrix") -> np.ndarray:
    """Materialize a matrix spec with the shape its edge requires."""
    if spec == "identity":
        if rows != cols:
            raise InputError(f"{where}: 'identity' needs equal dimensions, edge is {rows}x{cols}")
        return np.eye(rows)
    if spec in ("witness_V", "witness_Vt"):
        if rows != cols:
            raise InputError(f"{where}: '{spec}' needs equal dimensions, edge is {rows}x{cols}")
        v = witness_v_matrix(rows)
        return v if spec == "witness_V" else v.T
    if isinstance(spec, dict) and "rows" in spec:
        try:
            m = np.array(spec["rows"], dtype=np.float64)
        except (TypeError, ValueError):
            raise InputError(f"{where}: 'rows' must be a rectangular array of numbers") from None
        if m.ndim != 2:
            raise InputError(f"{where}: 'rows' must be a 2-d array")
        if m.shape != (rows, cols):
            raise InputError(f"{where}: expected {rows}x{cols}, got {m.shape[0]}x{m.shape[1]}")
        return m
    if isinstance(spec, dict) and spec.get("random") == "uniform":
        seed = spec.get("seed")
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise InputError(f"{where}: random spec needs an integer 'seed'")
        return np.random.default_rng(seed).uniform(-1.0, 1.0, size=(rows, cols))
    raise InputError(f"{where}: unrecognized matrix spec {spec!r}")


def load_gom(data: dict, n: int | None = None) -> GraphOfMatrices:
    """Parse the JSON schema into a GraphOfMatrices; ``n`` fills in missing dims."""
    g = load_graph(data)
    dims = {}
    for i, v in enumerate(data["vertices"]):
        vid = g.vertices[i]
        dim = v.get("dim") if isinstance(v, dict) else None
        if dim is None:
            if n is None:
                raise InputError(f"vertices[{i}] ({vid!r}): no 'dim' and no global N given")
            dim = n
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise InputError(f"vertices[{i}] ({vid!r}): 'dim' must be a positive integer")
        dims[vid] = dim
    mats = {}
    for i, (e, raw) in enumerate(zip(g.edges, data.get("edges", []))):
        if "matrix" not in raw:
            raise InputError(f"edges[{i}] ({e.id!r}): missing 'matrix'")
        mats[e.id] = resolve_matrix(raw["matrix"], dims[e.target], dims[e.source], f"edges[{i}].matrix")
    return GraphOfMatrices(g, dims, mats)


def _matrix_json(m: np.ndarray):
    if m.shape[0] == m.shape[1] and np.array_equal(m, np.eye(m.shape[0])):
        return "identity"
    return {"rows": m.tolist()}


def dump_graph(g: DirectedMultigraph, dims: dict | None = None) -> dict:
    verts = [{"id": v, "dim": dims[v]} if dims else {"id": v} for v in g.vertices]
    edges = [{"id": e.id, "source": e.source, "target": e.target} for e in g.edges]
    return {"vertices": verts, "edges": edges}


def dump_gom(gom: GraphOfMatrices) -> dict:
    data = dump_graph(gom.graph, gom.dims)
    for entry, e in zip(data["edges"], gom.graph.edges):
        entry["matrix"] = _matrix_json(gom.mats[e.id])
    return data


def dump_io(io: IOGraph) -> dict:
    data = dump_gom(io.gom)
    data["inputs"] = list(io.inputs)
    data["outputs"] = list(io.outputs)
    data["provenance"] = {
        "vertices": {str(k): v for k, v in io.provenance["vertices"].items()},
        "edges": {str(k): v for k, v in io.provenance["edges"].items()},
    }
    return data


def load_io(data: dict, n: int | None = None) -> IOGraph:
    gom = load_gom(data, n)
    for key in ("inputs", "outputs"):
        if not isinstance(data.get(key), list):
            raise InputError(f"'{key}' must be an array of vertex ids")
    return IOGraph(gom, tuple(data["inputs"]), tuple(data["outputs"]),
                   data.get("provenance", {"vertices": {}, "edges": {}}))
