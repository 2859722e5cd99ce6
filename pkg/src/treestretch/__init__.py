"""Minimum stretch spanning trees: exact solving, constructions, lower bounds.

The stretch of a spanning tree T of a connected graph G is the largest tree
distance between the endpoints of any edge of G; the minimum over all
spanning trees is written sigma(G). This package bundles:

- an exact branch-and-bound solver over all spanning trees (``sigma_exact``),
- closed-form optimal trees for classic families (``optimal_construction``),
- a builder for bipartite instances convex over a host tree (``construct_tree``),
- plane embeddings with face-level lower bounds (``face_levels``), and
- the cycle/cut correspondence between a tree and its dual cotree.
"""

from __future__ import annotations

from .constructions import (
    FormulaResult,
    SplitClassification,
    classify_split,
    double_star_tree,
    multipartite_tree,
    optimal_construction,
    petersen_tree,
    rect_grid_tree,
    sigma_formula,
    split_tree,
    star_tree,
    tri_grid_tree,
    tri_rect_grid_tree,
)
from .convex import (
    ConstructionResult,
    ConvexInstance,
    LevelStructure,
    check_laminar,
    construct_details,
    construct_tree,
    instance_from_json,
    instance_to_json,
    level_sets,
    root_candidates,
    select_root,
    validate_instance,
)
from .families import (
    Chain,
    Complete,
    CompleteBipartite,
    CompleteMultipartite,
    Cycle,
    Diamond,
    FamilyGraph,
    FamilySpec,
    GeneralizedConvex,
    Petersen,
    RectGrid,
    Split,
    TriGrid,
    TriRectGrid,
    Wheel,
    chain_instance,
    make,
    make_generalized_convex,
    make_split,
    random_convex_spec,
    random_glued_blocks,
    random_split_spec,
)
from .graphs import (
    BlockDecomposition,
    DomainError,
    Graph,
    GraphError,
    ParameterError,
    ResourceLimitError,
    SpanningTree,
    StretchCertificate,
    ValidationError,
    blocks,
    congestion,
    fundamental_cycle,
    fundamental_cycle_edges,
    girth,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
    is_connected,
    is_spanning_tree,
    make_graph,
    relabel_graph,
    spanning_tree,
    spanning_tree_from_pairs,
    stretch,
    to_dot,
    tree_distance,
    tree_path,
)
from .planar import (
    Cube,
    DualGraph,
    DualSpanningTree,
    FaceLevels,
    PlaneGraph,
    cotree_dual_tree,
    dual,
    dual_fundamental_cut,
    embed_grid,
    face_levels,
    is_dual_spanning_tree,
    lambda_max_formula,
    make_plane_graph,
    overlay_dot,
    stretch_lower_bound,
)
from .solver import (
    DEFAULT_MAX_TREES,
    ExactResult,
    count_spanning_trees_kirchhoff,
    enumerate_spanning_trees,
    lower_bound_girth,
    sigma_exact,
)

__all__ = [
    "BlockDecomposition",
    "Chain",
    "Complete",
    "CompleteBipartite",
    "CompleteMultipartite",
    "ConstructionResult",
    "ConvexInstance",
    "Cube",
    "Cycle",
    "DEFAULT_MAX_TREES",
    "Diamond",
    "DomainError",
    "DualGraph",
    "DualSpanningTree",
    "ExactResult",
    "FaceLevels",
    "FamilyGraph",
    "FamilySpec",
    "FormulaResult",
    "GeneralizedConvex",
    "Graph",
    "GraphError",
    "LevelStructure",
    "ParameterError",
    "Petersen",
    "PlaneGraph",
    "RectGrid",
    "ResourceLimitError",
    "SpanningTree",
    "Split",
    "SplitClassification",
    "StretchCertificate",
    "TriGrid",
    "TriRectGrid",
    "ValidationError",
    "Wheel",
    "blocks",
    "chain_instance",
    "check_laminar",
    "classify_split",
    "congestion",
    "construct_details",
    "construct_tree",
    "cotree_dual_tree",
    "count_spanning_trees_kirchhoff",
    "double_star_tree",
    "dual",
    "dual_fundamental_cut",
    "embed_grid",
    "enumerate_spanning_trees",
    "face_levels",
    "fundamental_cycle",
    "fundamental_cycle_edges",
    "girth",
    "graph_from_json",
    "graph_to_json",
    "induced_subgraph",
    "instance_from_json",
    "instance_to_json",
    "is_connected",
    "is_dual_spanning_tree",
    "is_spanning_tree",
    "lambda_max_formula",
    "level_sets",
    "lower_bound_girth",
    "make",
    "make_generalized_convex",
    "make_graph",
    "make_plane_graph",
    "make_split",
    "multipartite_tree",
    "optimal_construction",
    "overlay_dot",
    "petersen_tree",
    "random_convex_spec",
    "random_glued_blocks",
    "random_split_spec",
    "rect_grid_tree",
    "relabel_graph",
    "root_candidates",
    "select_root",
    "sigma_exact",
    "sigma_formula",
    "spanning_tree",
    "spanning_tree_from_pairs",
    "split_tree",
    "star_tree",
    "stretch",
    "stretch_lower_bound",
    "to_dot",
    "tree_distance",
    "tree_path",
    "tri_grid_tree",
    "tri_rect_grid_tree",
    "validate_instance",
]
