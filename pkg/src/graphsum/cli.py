"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 bad input or a size cap was hit.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .decomposition import classify_leaves, exponent, forest_of, leaf_weight
from .errors import CapExceeded, InputError
from .evaluation import DEFAULT_TERM_CAP, bound, graph_sum_bruteforce
from .jsonio import SCHEMA_VERSION, dump_gom, dump_graph, dump_io, load_gom, load_graph, resolve_matrix
from .matrices import GraphOfMatrices, require_valid
from .modification import check_io, to_input_output
from .operator_eval import DEFAULT_DENSE_CAP, DEFAULT_WIDTH_CAP, graph_sum_via_operator, operator_norm_check
from .partition import graph_of_partition, parse_partition
from .witness import witness_matrices, verify_optimality


@dataclass
class RunConfig:
    subcommand: str
    input: str | None = None
    partition: str | None = None
    n: int | None = None
    method: str = "brute"
    term_cap: int = DEFAULT_TERM_CAP
    width_cap: int = DEFAULT_WIDTH_CAP
    dense_cap: int = DEFAULT_DENSE_CAP
    rtol: float = 1e-9
    seed: int | None = None
    matrices: list | None = None
    check_bound: bool = False
    format: str = "text"

    def __post_init__(self):
        if self.rtol <= 0:
            raise InputError("tolerance must be positive")
        for name in ("term_cap", "width_cap", "dense_cap"):
            if getattr(self, name) <= 0:
                raise InputError(f"{name} must be positive")
        if self.n is not None and self.n < 1:
            raise InputError("N must be positive")


def fmt(x: float) -> str:
    return f"{x:.15g}"


def _read_json(source: str) -> dict:
    text = sys.stdin.read() if source == "-" else None
    if text is None:
        if source.lstrip().startswith("{"):
            text = source
        else:
            try:
                with open(source, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _graph(cfg: RunConfig):
    if cfg.partition is not None:
        return graph_of_partition(parse_partition(cfg.partition))
    if cfg.input is None:
        raise InputError("give an input file (or '-') or --partition")
    return load_graph(_read_json(cfg.input))


def _gom(cfg: RunConfig) -> GraphOfMatrices:
    if cfg.input is None:
        if cfg.partition is None:
            raise InputError("give an input file (or '-') or --partition")
        return _partition_gom(cfg)
    gom = load_gom(_read_json(cfg.input), cfg.n)
    require_valid(gom)
    return gom


def _partition_gom(cfg: RunConfig) -> GraphOfMatrices:
    if cfg.n is None:
        raise InputError("--n is required with --partition")
    g = graph_of_partition(parse_partition(cfg.partition))
    specs = _matrix_specs(cfg, len(g.edges))
    mats = {e.id: resolve_matrix(s, cfg.n, cfg.n, f"matrix {i + 1}") for i, (e, s) in enumerate(zip(g.edges, specs))}
    return GraphOfMatrices.square(g, cfg.n, mats)


def _matrix_specs(cfg: RunConfig, m: int) -> list:
    if cfg.matrices:
        specs = [json.loads(s) if s.lstrip()[:1] in "{[\"" else s for s in cfg.matrices]
        if len(specs) == 1:
            specs = specs * m
        if len(specs) != m:
            raise InputError(f"partition has {m} edges but {len(specs)} matrix specs were given")
        return specs
    if cfg.seed is not None:
        return [{"random": "uniform", "seed": cfg.seed + l} for l in range(m)]
    return ["identity"] * m


def forest_report(g) -> dict:
    f = forest_of(g)
    kinds = classify_leaves(f)
    r = exponent(g)
    trees = []
    for tree in f.trees:
        trees.append({
            "nodes": [list(f.nodes[i]) for i in tree],
            "edges": [eid for a, b, eid in f.forest_edges if a in tree],
            "leaves": sum(kinds[i][1] != "internal" for i in tree),
        })
    return {
        "components": [list(c) for c in f.nodes],
        "cutting_edges": [eid for _, _, eid in f.forest_edges],
        "trees": trees,
        "leaves": [{"component": list(c), "kind": k, "weight": str(leaf_weight(k))} for c, k in kinds],
        "r": str(r),
        "r_decimal": float(r),
    }


def _cmd_exponent(cfg):
    rep = forest_report(_graph(cfg))
    lines = [f"two-edge connected components: {len(rep['components'])}"]
    for c in rep["components"]:
        lines.append("  {" + ", ".join(map(str, c)) + "}")
    lines.append("cutting edges: " + (", ".join(map(str, rep["cutting_edges"])) or "none"))
    for i, t in enumerate(rep["trees"], 1):
        lines.append(f"tree {i}: {len(t['nodes'])} nodes, {len(t['edges'])} edges, {t['leaves']} leaves")
    for leaf in rep["leaves"]:
        lines.append(f"  {leaf['kind']:<12} {{{', '.join(map(str, leaf['component']))}}}  weight {leaf['weight']}")
    lines.append(f"r = {rep['r']} ({fmt(rep['r_decimal'])})")
    return 0, rep, lines


def _cmd_graph_of_partition(cfg):
    if cfg.partition is None:
        raise InputError("--partition is required")
    if cfg.n is None:
        g = graph_of_partition(parse_partition(cfg.partition))
        data = dump_graph(g)
        for entry, spec in zip(data["edges"], _matrix_specs(cfg, len(g.edges))):
            entry["matrix"] = spec
    else:
        data = dump_gom(_partition_gom(cfg))
    return 0, data, [json.dumps(data, indent=2)]


def _sums(cfg, gom):
    out = {}
    if cfg.method in ("brute", "both"):
        out["brute"] = graph_sum_bruteforce(gom, cap=cfg.term_cap)
    if cfg.method in ("operator", "both"):
        io = to_input_output(gom)
        out["operator"] = graph_sum_via_operator(io, width_cap=cfg.width_cap)
        try:
            norm_t, prod = operator_norm_check(io, dense_cap=cfg.dense_cap)
            out["operator_norm"] = norm_t
            out["norm_product"] = prod
        except CapExceeded:
            pass
    return out


def _cmd_sum(cfg):
    gom = _gom(cfg)
    res = _sums(cfg, gom)
    lines = []
    code = 0
    if "brute" in res:
        lines.append(f"S (brute)    = {fmt(res['brute'])}")
    if "operator" in res:
        lines.append(f"S (operator) = {fmt(res['operator'])}")
        if "operator_norm" in res:
            lines.append(f"||T_G|| = {fmt(res['operator_norm'])} <= prod ||T_e|| = {fmt(res['norm_product'])}")
    if cfg.method == "both":
        a, b = res["brute"], res["operator"]
        disc = abs(a - b) / max(abs(a), abs(b)) if max(abs(a), abs(b)) > 0 else 0.0
        res["relative_discrepancy"] = disc
        ok = math.isclose(a, b, rel_tol=cfg.rtol, abs_tol=1e-300)
        lines.append(f"relative discrepancy = {disc:.3e} ({'OK' if ok else 'MISMATCH'})")
        code = 0 if ok else 1
    return code, res, lines


def _cmd_bound(cfg):
    gom = _gom(cfg)
    r = exponent(gom.graph)
    b = bound(gom)
    dims = set(gom.dims.values())
    rep = {"bound": b, "r": str(r), "square": len(dims) <= 1}
    lines = [f"r = {r}", f"bound = {fmt(b)}"]
    return 0, rep, lines


def _cmd_modify(cfg):
    gom = _gom(cfg)
    io = to_input_output(gom)
    problems = check_io(io)
    data = dump_io(io)
    if problems:
        data["violations"] = problems
    return (1 if problems else 0), data, [json.dumps(data, indent=2)]


def _cmd_witness(cfg):
    if cfg.n is None:
        raise InputError("--n is required")
    data = dump_gom(witness_matrices(_graph(cfg), cfg.n))
    return 0, data, [json.dumps(data, indent=2)]


def _cmd_verify(cfg):
    if cfg.check_bound:
        gom = _gom(cfg)
        s = graph_sum_bruteforce(gom, cap=cfg.term_cap)
        b = bound(gom)
        ok = abs(s) <= b * (1 + cfg.rtol)
        rep = {"S": s, "bound": b, "pass": ok}
        return (0 if ok else 1), rep, [f"|S| = {fmt(abs(s))}, bound = {fmt(b)}, {'PASS' if ok else 'FAIL'}"]
    if cfg.n is None:
        raise InputError("--n is required")
    rep = verify_optimality(_graph(cfg), cfg.n, cap=cfg.term_cap)
    data = {"S": rep.S, "target": rep.target, "norms_ok": rep.norms_ok,
            "collapsed": rep.collapsed, "pass": rep.passed}
    line = f"S = {fmt(rep.S)}, target = {fmt(rep.target)}, {'PASS' if rep.passed else 'FAIL'}"
    if not rep.norms_ok:
        line += " (witness norms differ from 1)"
    return (0 if rep.passed else 1), data, [line]


COMMANDS = {
    "exponent": _cmd_exponent,
    "graph-of-partition": _cmd_graph_of_partition,
    "sum": _cmd_sum,
    "bound": _cmd_bound,
    "modify": _cmd_modify,
    "witness": _cmd_witness,
    "verify": _cmd_verify,
}


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        code, data, lines = COMMANDS[cfg.subcommand](cfg)
    except (InputError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if cfg.format == "json":
        payload = {"schema_version": SCHEMA_VERSION, "command": cfg.subcommand}
        payload.update(data if isinstance(data, dict) else {"result": data})
        print(json.dumps(payload, indent=2, default=_json_default), file=out)
    else:
        print("\n".join(lines), file=out)
    return code


def _json_default(x):
    if isinstance(x, np.generic):
        return x.item()
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphsum", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, matrices=True):
        sp.add_argument("input", nargs="?", help="graph JSON file, '-' for stdin, or inline JSON")
        sp.add_argument("--partition", help="partition such as '{1,2}{3,4}' instead of a graph file")
        sp.add_argument("--n", type=int, help="dimension for vertices without 'dim'")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if matrices:
            sp.add_argument("--matrix", action="append", dest="matrices",
                            help="matrix spec per edge of a --partition graph (repeatable)")
            sp.add_argument("--seed", type=int, help="random uniform matrices for a --partition graph")
            sp.add_argument("--term-cap", type=int, default=DEFAULT_TERM_CAP)

    common(sub.add_parser("exponent", help="forest of two-edge connected components and r(G)"), matrices=False)
    common(sub.add_parser("graph-of-partition", help="emit G_pi as JSON"))
    sp = sub.add_parser("sum", help="evaluate the graph sum")
    common(sp)
    sp.add_argument("--method", choices=("brute", "operator", "both"), default="brute")
    sp.add_argument("--width-cap", type=int, default=DEFAULT_WIDTH_CAP)
    sp.add_argument("--dense-cap", type=int, default=DEFAULT_DENSE_CAP)
    sp.add_argument("--rtol", type=float, default=1e-9)
    common(sub.add_parser("bound", help="N^r prod ||T_e|| (or the rectangular product form)"))
    common(sub.add_parser("modify", help="emit an input-output modification"))
    common(sub.add_parser("witness", help="emit the witness matrices attaining N^r"), matrices=False)
    sp = sub.add_parser("verify", help="check optimality (or, with --bound, the upper bound)")
    common(sp)
    sp.add_argument("--bound", action="store_true", dest="check_bound")
    sp.add_argument("--rtol", type=float, default=1e-9)
    return p


def main(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    try:
        cfg = RunConfig(**{k: v for k, v in args.items() if v is not None})
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
