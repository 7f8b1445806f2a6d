"""Exact next-to-shortest (strictly second-shortest) simple paths on
directed graphs with positive weights."""

from .disjoint import (
    CyclicGraphError,
    DisjointPathPair,
    ForwardDag,
    SharedTerminalError,
    two_disjoint_paths,
    waypoint_disjoint_paths,
)
from .generate import layered_digraph, random_digraph
from .graph import (
    DistanceTable,
    Edge,
    EdgeClassification,
    GraphFormatError,
    InternalInvariantError,
    InvalidPathError,
    LayerAssignment,
    Path,
    PathCheck,
    SolveOutcome,
    WeightedDigraph,
    classify_edges,
    format_weight,
    is_layered,
    is_straight,
    layer_assignment,
    parse_graph,
    path_weight,
    serialize_graph,
    shortest_distances,
    validate_path,
)
from .oracle import (
    BudgetExceeded,
    exhaustive_next_to_shortest,
    exhaustive_two_disjoint_paths,
    simple_paths,
)
from .pipeline import PipelineResult, solve, solve_detailed
from .reduction import (
    BackEdgeRemoval,
    EliminationRecord,
    ReductionTrace,
    SubdivisionRecord,
    TraceError,
    VertexDeletion,
    apply_step,
    eliminate_vertex,
    layering_potential,
    layerize,
    lift_path,
    lift_through_elimination,
    straighten,
)
from .solver import (
    BackEdgeDecomposition,
    back_edge_decomposition,
    shortest_path_avoiding,
    solve_layered,
)

__all__ = [name for name in dir() if not name.startswith("_")]
