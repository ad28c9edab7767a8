"""Sharp N-exponents for sums of products of matrix entries indexed by graphs.

A graph sum attaches a matrix to every edge of a directed multigraph and sums
the product of entries over all assignments of indices to vertices.  The
package computes the optimal exponent of N bounding such sums, evaluates them
by brute force and by a level-by-level operator factorization, rewrites
graphs into input-output form and builds witness matrices attaining the bound.
"""

from .partition import Partition, parse_partition, kernel_of, dominates, graph_of_partition
from .graph import DirectedMultigraph, Edge, build_graph, connected_components
from .decomposition import (
    Forest,
    HalfInteger,
    cutting_edges,
    two_edge_components,
    forest_of,
    classify_leaves,
    exponent,
)
from .matrices import GraphOfMatrices, validate, operator_norm, transpose
from .evaluation import graph_sum_bruteforce, partition_sum, bound
from .modification import (
    IOGraph,
    reverse_edge,
    split_vertex,
    to_input_output,
    io_of_two_edge_component,
    check_io,
)
from .operator_eval import (
    LevelDecomposition,
    distance_levels,
    normalize_levels,
    build_operator,
    graph_sum_via_operator,
    operator_norm_check,
)
from .witness import witness_v_matrix, witness_matrices, verify_optimality

__version__ = "0.1.0"
