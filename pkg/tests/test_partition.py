import itertools

import pytest
from hypothesis import given, strategies as st

from graphsum import Partition, dominates, graph_of_partition, kernel_of, parse_partition
from graphsum.errors import InputError
from graphsum.partition import cycle_partition


def test_parse_tau(tau):
    assert tau.k == 24
    assert len(tau) == 8
    assert tau.blocks[0] == (1,)
    assert (9, 12, 14, 16, 20) in tau.blocks


def test_parse_minimal():
    assert parse_partition("{1}{2}{3}{4}") == Partition.minimal(4)


def test_parse_with_k():
    assert parse_partition("{1,3}{2}", k=3) == Partition(3, ((1, 3), (2,)))


def test_parse_json_matches_braces():
    assert parse_partition("[[3, 1], [2]]") == parse_partition("{1,3} {2}")


def test_canonical_order():
    assert parse_partition("{5,6}{3}{2,4,1}").blocks == ((1, 2, 4), (3,), (5, 6))


@pytest.mark.parametrize("text, fragment", [
    ("{1,2}{2}", "duplicate element 2 at position 6"),
    ("{1}{3}", "missing element 2"),
    ("{1}{}", "empty block at position 3"),
    ("{1,2", "unterminated block"),
    ("{1;2}", "unexpected character ';' at position 2"),
    ("{1,}", "expected integer at position 3"),
    ("[[1],[]]", "empty block at index 1"),
    ("[[1],[1]]", "duplicate element 1 at block 1"),
    ("[[1],", "malformed JSON"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(InputError, match=fragment.replace("(", r"\(")):
        parse_partition(text)


def test_parse_rejects_element_beyond_k():
    with pytest.raises(InputError, match="exceeds k=2"):
        parse_partition("{1,3}{2}", k=2)


@pytest.mark.parametrize("indices, blocks", [
    ((1, 2, 1), ((1, 3), (2,))),
    ((5, 5, 5), ((1, 2, 3),)),
    ((7, 3, 3, 9), ((1,), (2, 3), (4,))),
])
def test_kernel_of(indices, blocks):
    assert kernel_of(indices).blocks == blocks


def test_kernel_of_empty():
    with pytest.raises(InputError):
        kernel_of(())


def test_dominates_examples():
    p = Partition(3, ((1, 2), (3,)))
    assert dominates(p, Partition.minimal(3))
    assert not dominates(Partition.minimal(3), p)
    assert dominates(p, p)
    with pytest.raises(InputError):
        dominates(p, Partition.minimal(4))


def test_graph_of_tau(g_tau):
    assert len(g_tau.vertices) == 8
    assert len(g_tau.edges) == 12
    e4 = g_tau.edge("e4")
    assert e4.is_loop and e4.source == 6
    e11, e12 = g_tau.edge("e11"), g_tau.edge("e12")
    assert (e11.source, e11.target) == (e12.source, e12.target) == (19, 21)
    # t^(1)_{i1 i2}: edge e1 runs from block {2,4,11} to block {1}
    assert (g_tau.edge("e1").source, g_tau.edge("e1").target) == (2, 1)


def test_graph_of_cycle_partition():
    g = graph_of_partition(Partition(6, ((2, 3), (4, 5), (1, 6))))
    assert [(e.source, e.target) for e in g.edges] == [(2, 1), (4, 2), (1, 4)]
    assert cycle_partition(3) == Partition(6, ((2, 3), (4, 5), (1, 6)))


def test_graph_of_minimal():
    g = graph_of_partition(Partition.minimal(4))
    assert len(g.vertices) == 4 and len(g.edges) == 2
    assert not any(e.is_loop for e in g.edges)


def test_graph_of_odd_partition():
    with pytest.raises(InputError):
        graph_of_partition(Partition.minimal(3))


# -- properties -------------------------------------------------------------

@st.composite
def partitions(draw, max_k=8):
    k = draw(st.integers(1, max_k))
    labels = [0]
    for _ in range(1, k):
        labels.append(draw(st.integers(0, max(labels) + 1)))
    return kernel_of(labels)


@given(partitions(), partitions(), partitions())
def test_dominates_partial_order(a, b, c):
    assert dominates(a, a)
    if a.k == b.k and dominates(a, b) and dominates(b, a):
        assert a == b
    if a.k == b.k == c.k and dominates(a, b) and dominates(b, c):
        assert dominates(a, c)


@given(partitions(max_k=8))
def test_graph_counts(pi):
    if pi.k % 2:
        pi = Partition(pi.k + 1, pi.blocks + ((pi.k + 1,),))
    g = graph_of_partition(pi)
    assert len(g.vertices) == len(pi)
    assert len(g.edges) == pi.k // 2


@pytest.mark.parametrize("pi", [Partition(4, ((1, 3), (2, 4))), Partition(4, ((1,), (2, 3, 4)))])
def test_kernel_filter_matches_constraint(pi):
    n = 3
    via_kernel = {j for j in itertools.product(range(1, n + 1), repeat=4) if dominates(kernel_of(j), pi)}
    direct = {j for j in itertools.product(range(1, n + 1), repeat=4)
              if all(j[p - 1] == j[b[0] - 1] for b in pi.blocks for p in b)}
    assert via_kernel == direct
