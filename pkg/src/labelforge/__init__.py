"""labelforge: adjacency labeling schemes for sparse hereditary graph families.

Graphs are compiled into per-vertex labels (interval runs under a
low-crossing vertex ordering, or forward neighbours under a degeneracy
ordering) from which adjacency is decided without the graph. The package
also ships brute-force checkers for the combinatorics behind the schemes:
shattering, forbidden bipartite patterns, norm graphs and universal graphs.
"""

from .corpus import FieldElem, FieldSpec, build_norm_graph, find_irreducible, hereditary_closure_sample, norm
from .errors import ContractError, GuardExceeded, ParseError
from .graph import (
    Graph,
    Ordering,
    count_distinct_induced,
    degeneracy_order,
    gen,
    induced_subgraph,
    parse_edge_list,
    to_edge_list,
)
from .kernels import BACKEND
from .labeling import (
    DegeneracyLabel,
    IntervalLabel,
    LabelSet,
    adjacent,
    bits_lower_bound,
    build_universal,
    encode_degeneracy,
    encode_intervals,
    verify_labeling,
    verify_universal,
)
from .lowcross import (
    SpanningTree,
    build_low_crossing_tree,
    crossing_profile,
    low_crossing_order,
    max_alternations,
    tree_to_order,
)
from .patterns import build_u, contains_kst, contains_u, shatter_bound_for_ufree
from .setsystem import (
    VectorFamily,
    alternations,
    find_robust_shattered,
    find_shattered,
    lemma21_threshold,
    primal_shatter,
    rows_of,
    sauer_threshold,
    vc_dimension,
)

__version__ = "0.1.0"
