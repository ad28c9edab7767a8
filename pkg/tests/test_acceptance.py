"""Acceptance criteria, one test each.

Every test records a single ``[PASS]`` / ``[FAIL]`` line; conftest prints
them in an "acceptance criteria" section at the end of the pytest run.
"""

import math
import sys
import time
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from graphsum import (GraphOfMatrices, bound, build_graph, classify_leaves, check_io, cutting_edges, exponent,
                      forest_of, graph_of_partition, graph_sum_bruteforce, graph_sum_via_operator,
                      operator_norm_check, parse_partition, partition_sum, to_input_output, verify_optimality)
from graphsum.errors import CapExceeded
from graphsum.operator_eval import level_matrices, normalize_levels, vertex_isometry, _wires
from graphsum.partition import cycle_partition
from graphsum.sampling import random_gom, random_multigraph, random_partition
from graphsum.witness import NORM_TOL, witness_matrices
from graphsum.matrices import operator_norm

from conftest import TAU
from oracles import bridges_by_deletion

SEED = 20240601


RESULTS: dict = {}


def report(name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    RESULTS[name] = line
    print(line)
    assert ok, line


def rel_close(a, b, rtol):
    return math.isclose(a, b, rel_tol=rtol, abs_tol=0.0) or a == b


def forest_shape(g):
    f = forest_of(g)
    kinds = dict(classify_leaves(f))
    trees = sorted((len(t), sum(kinds[f.nodes[i]] != "internal" for i in t)) for t in f.trees)
    return len(f.trees), Counter(leaves for _, leaves in trees), exponent(g)


def test_ac1_tau_exponent():
    t0 = time.perf_counter()
    g = graph_of_partition(parse_partition(TAU))
    r = exponent(g)
    f = forest_of(g)
    kinds = classify_leaves(f)
    elapsed = time.perf_counter() - t0
    leaves = sum(k != "internal" for _, k in kinds)
    ok = (r == Fraction(3, 2) and len(f.trees) == 1 and len(f.nodes) == 4 and leaves == 3 and elapsed < 1.0)
    report("AC1 tau exponent", ok,
           f"r={r}, trees={len(f.trees)}, nodes={len(f.nodes)}, leaves={leaves}, {elapsed:.3f}s (<1s)")


def test_ac2_cycle_trace():
    rng = np.random.default_rng(SEED)
    worst = 0.0
    ok = True
    for m in range(2, 7):
        g = graph_of_partition(cycle_partition(m))
        ts = [rng.uniform(-1, 1, (3, 3)) for _ in range(m)]
        gom = GraphOfMatrices.square(g, 3, {f"e{l + 1}": t for l, t in enumerate(ts)})
        s = graph_sum_bruteforce(gom)
        tr = float(np.trace(np.linalg.multi_dot(ts) if m > 2 else ts[0] @ ts[1]))
        worst = max(worst, abs(s - tr) / abs(tr))
        ok &= exponent(g) == 1 and rel_close(s, tr, 1e-12)
    report("AC2 cycle partitions", ok, f"m=2..6, r=1, max rel err vs trace {worst:.2e} (tol 1e-12)")


def test_ac3_tau_optimality():
    g = graph_of_partition(parse_partition(TAU))
    ok = True
    parts = []
    for n in (1, 4, 9):
        t0 = time.perf_counter()
        rep = verify_optimality(g, n)
        elapsed = time.perf_counter() - t0
        norms = [operator_norm(m) for m in witness_matrices(g, n).mats.values()]
        norms_ok = all(abs(x - 1.0) <= NORM_TOL for x in norms)
        target = float(n) ** 1.5
        ok &= rel_close(rep.S, target, 1e-12) and rel_close(rep.target, target, 1e-12) and norms_ok
        if n == 4:
            ok &= elapsed < 10.0
        parts.append(f"N={n}: S={rep.S:g} ({elapsed:.2f}s)")
    report("AC3 tau witness optimality", ok, ", ".join(parts) + ", norms 1+-1e-10, N=4 <10s")


def test_ac4_bound_random():
    rng = np.random.default_rng(SEED + 4)
    t0 = time.perf_counter()
    violations = 0
    worst = 0.0
    for _ in range(200):
        g = random_multigraph(rng, 6, 8)
        n = int(rng.integers(2, 5))
        gom = random_gom(rng, g, n)
        s = graph_sum_bruteforce(gom)
        b = float(n) ** float(exponent(g)) * gom.norm_product()
        worst = max(worst, abs(s) / b)
        violations += abs(s) > b * (1 + 1e-9)
    elapsed = time.perf_counter() - t0
    report("AC4 bound on random graphs", violations == 0 and elapsed < 60,
           f"200 graphs, {violations} violations, max |S|/bound {worst:.3f}, {elapsed:.1f}s (<60s)")


def test_ac5_rectangular():
    g = build_graph("ab", [("e", "a", "b")])
    gom = GraphOfMatrices(g, {"a": 2, "b": 3}, {"e": np.ones((3, 2)) / math.sqrt(6)})
    s, b = graph_sum_bruteforce(gom), bound(gom)
    ok = rel_close(s, math.sqrt(6), 1e-12) and rel_close(b, math.sqrt(6), 1e-12)
    rng = np.random.default_rng(SEED + 5)
    violations = 0
    for _ in range(50):
        gr = random_gom(rng, random_multigraph(rng, 5, 7), None, 4)
        violations += abs(graph_sum_bruteforce(gr)) > bound(gr) * (1 + 1e-9)
    report("AC5 rectangular bound", ok and violations == 0,
           f"single edge S={s:.15g}, bound={b:.15g} (sqrt6, tol 1e-12); 50 random, {violations} violations")


def test_ac6_oracle_equivalence():
    rng = np.random.default_rng(SEED + 6)
    bad_p = 0
    for _ in range(100):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(1, 4))
        pi = random_partition(rng, 2 * m)
        ts = [rng.uniform(-1, 1, (n, n)) for _ in range(m)]
        gom = GraphOfMatrices.square(graph_of_partition(pi), n, {f"e{l + 1}": t for l, t in enumerate(ts)})
        a, b = partition_sum(ts, pi, n), graph_sum_bruteforce(gom)
        bad_p += not math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-15)
    bad_o = 0
    done = 0
    while done < 30:
        io = to_input_output(random_gom(rng, random_multigraph(rng, 5, 7), None, 3))
        try:
            via = graph_sum_via_operator(io)
        except CapExceeded:
            continue
        bad_o += not math.isclose(via, graph_sum_bruteforce(io.gom), rel_tol=1e-9, abs_tol=1e-15)
        done += 1
    report("AC6 oracle equivalence", bad_p == 0 and bad_o == 0,
           f"100 partitions: {bad_p} mismatches; 30 io-graphs operator vs brute: {bad_o} mismatches (rel 1e-9)")


def test_ac7_modification_preservation():
    rng = np.random.default_rng(SEED + 7)
    failures = []
    for i in range(100):
        g = random_multigraph(rng, 6, 8, connected=True)
        gom = random_gom(rng, g, None, 3)
        io = to_input_output(gom)
        checks = {
            "check_io": check_io(io) == [],
            "sum": math.isclose(graph_sum_bruteforce(io.gom), graph_sum_bruteforce(gom), rel_tol=1e-9,
                                abs_tol=1e-15),
            "norms": math.isclose(io.gom.norm_product(), gom.norm_product(), rel_tol=1e-12),
            "forest": forest_shape(io.gom.graph) == forest_shape(g),
        }
        failures += [(i, k) for k, v in checks.items() if not v]
    report("AC7 modification preservation", not failures,
           f"100 connected graphs, sum/norm product/forest/r preserved, check_io clean; failures={failures[:5]}")


def test_ac8_operator_norm():
    rng = np.random.default_rng(SEED + 8)
    worst = 0.0
    bad_norm = bad_iso = 0
    done = 0
    while done < 50:
        io = to_input_output(random_gom(rng, random_multigraph(rng, 4, 6), None, 2))
        try:
            norm, prod = operator_norm_check(io)
            Ls, _, nio = level_matrices(io)
        except CapExceeded:
            continue
        worst = max(worst, norm / prod if prod else 0.0)
        bad_norm += norm > prod * (1 + 1e-9)
        nio, lv = normalize_levels(io)
        for steps in _wires(nio, lv):
            for v, w_in, w_out in steps:
                lvm = vertex_isometry(nio.gom.dims[v], len(w_in), len(w_out))
                bad_iso += not np.allclose(lvm @ lvm.T @ lvm, lvm, rtol=0, atol=1e-12)
        for lk in Ls:
            bad_iso += not np.allclose(lk @ lk.T @ lk, lk, rtol=0, atol=1e-12)
        done += 1
    report("AC8 operator norm inequality", bad_norm == 0 and bad_iso == 0,
           f"50 io-graphs, max ||T_G||/prod ||T_e|| = {worst:.3f}, {bad_norm} violations, "
           f"{bad_iso} partial-isometry failures (1e-12)")


def test_ac9_bridges():
    rng = np.random.default_rng(SEED + 9)
    mismatches = 0
    for _ in range(100):
        g = random_multigraph(rng, 8, 12)
        mismatches += set(cutting_edges(g)) != bridges_by_deletion(g)
    report("AC9 bridge oracle", mismatches == 0, f"100 multigraphs, {mismatches} mismatches")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
