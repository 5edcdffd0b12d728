"""Minimal bicolored graphs, their census, and Artin tree groups up to quasi-isometry."""

from .graph import (
    BicoloredGraph,
    Color,
    GraphFormatError,
    VertexMap,
    are_isomorphic,
    automorphism_count,
    canonical_form,
    collapse_multiedges,
    format_graph,
    is_connected,
    load_graph,
    parse_graph,
    to_dot,
)
from .refine import (
    Coloring,
    adjacent_colors,
    bisimilar,
    brute_force_minimal_oracle,
    is_minimal,
    is_weak_covering,
    minimize,
    minimize_faithful,
    quotient_graph,
)
from .census import CensusRow, cumulative_qi_classes, enumerate_minimal
from .unfold import UnfoldingType, unfolding, unfolding_key
from .artin import (
    ArtinTree,
    LabeledGraph,
    QiClass,
    artin_to_decomposition,
    classify_artin,
    is_3manifold_artin,
    is_big,
    is_qi_to_right_angled_tree_group,
)
from .splice import (
    SpliceDiagram,
    artin_tree_to_splice,
    splice_connected_sum,
    splice_to_decomposition,
    torus_link_splice,
)

__version__ = "0.1.0"
