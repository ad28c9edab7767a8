import math

import numpy as np
import pytest

from graphsum import (build_graph, exponent, graph_of_partition, graph_sum_bruteforce, operator_norm,
                      parse_partition, verify_optimality, witness_matrices, witness_v_matrix)
from graphsum.errors import InputError
from graphsum.sampling import random_multigraph
from graphsum.witness import collapse_components, witness_kinds

from oracles import norm_by_char_poly


def test_v_matrix():
    v = witness_v_matrix(4)
    assert np.array_equal(v[:, 1:], np.zeros((4, 3)))
    assert np.allclose(v[:, 0], 0.5)
    for n in (1, 2, 3):
        assert math.isclose(norm_by_char_poly(witness_v_matrix(n)), 1.0, rel_tol=1e-10)
    with pytest.raises(InputError):
        witness_v_matrix(0)


def test_tau_kinds(g_tau):
    kinds = witness_kinds(g_tau)
    assert kinds["e3"] == "Vt"
    assert kinds["e1"] == "V" and kinds["e10"] == "V"
    assert all(kinds[e.id] == "identity" for e in g_tau.edges if e.id not in ("e1", "e3", "e10"))


def test_two_leaf_tree_uses_flat_matrix():
    g = build_graph("ab", [("e", "a", "b")])
    assert witness_kinds(g) == {"e": "J/N"}
    assert graph_sum_bruteforce(witness_matrices(g, 3)) == pytest.approx(3.0, rel=1e-12)


@pytest.mark.parametrize("n, target", [(1, 1.0), (4, 8.0), (9, 27.0)])
def test_tau_optimality(g_tau, n, target):
    rep = verify_optimality(g_tau, n)
    assert rep.passed
    assert rep.S == pytest.approx(target, rel=1e-12)


def test_tau_optimality_collapsed(g_tau):
    rep = verify_optimality(g_tau, 9, cap=10**6)
    assert rep.collapsed and rep.passed
    assert rep.S == pytest.approx(27.0, rel=1e-12)


def test_collapse_keeps_sum(g_tau):
    gom = witness_matrices(g_tau, 3)
    small = collapse_components(gom)
    assert len(small.graph.vertices) == 4
    assert graph_sum_bruteforce(small) == pytest.approx(graph_sum_bruteforce(gom), rel=1e-12)


def test_collapse_rejects_non_identity(cycle3):
    gom = witness_matrices(cycle3, 2)
    bad = type(gom)(gom.graph, gom.dims, dict(gom.mats) | {"e1": np.ones((2, 2))})
    with pytest.raises(InputError, match="identity"):
        collapse_components(bad)


def test_witness_attains_random_graphs(rng):
    for _ in range(60):
        g = random_multigraph(rng, 6, 8)
        n = int(rng.integers(1, 4))
        rep = verify_optimality(g, n)
        assert rep.passed, (g, rep)
        assert rep.target == pytest.approx(n ** float(exponent(g)), rel=1e-12)


def test_witness_norms_are_one():
    g = graph_of_partition(parse_partition("{1,4}{2}{3,5}{6}"))
    for m in witness_matrices(g, 3).mats.values():
        assert math.isclose(operator_norm(m), 1.0, rel_tol=1e-10)
