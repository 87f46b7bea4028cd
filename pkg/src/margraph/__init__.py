"""Marginal undirected graphs, marginal Gibbs-potential hypergraph models,
and Gaussian precision-matrix marginalization, verified against brute-force
enumeration."""

from .errors import (
    InvalidInputError,
    MargraphError,
    ModelFormatError,
    NotNormalizedError,
    ResourceLimitError,
)
from .gaussian import (
    GaussianModel,
    gaussian_marginal_graph,
    innovation_matrix,
    marginal_precision,
    pairwise_innovation,
    pattern_graph,
)
from .graph_marginal import eliminate_vertex, marginalize_graph
from .graphs import (
    Graph,
    Variables,
    VarSet,
    boundary,
    cliques,
    completed_edge_set,
    connectivity_components,
    is_complete,
    subgraph,
    varset,
)
from .hypergraph_marginal import (
    Innovation,
    MarginalReport,
    boundary_aggregate,
    component_potential,
    innovations,
    marginalize_hypergraph,
)
from .oracle import DensityTable, joint_table, marginal_table, normalized_potential_from_table
from .potentials import (
    NULL_TOL,
    Hypergraph,
    InteractionTable,
    Potential,
    PotentialFamily,
    boundary_hypergraph,
    energy,
    energy_grid,
    hypergraph_of,
    induced_graph,
    is_normalized,
    normalize_potential,
    precedes,
    restrict,
)

__version__ = "0.1.0"

__all__ = [
    "DensityTable",
    "GaussianModel",
    "Graph",
    "Hypergraph",
    "Innovation",
    "InteractionTable",
    "InvalidInputError",
    "MarginalReport",
    "MargraphError",
    "ModelFormatError",
    "NotNormalizedError",
    "NULL_TOL",
    "Potential",
    "PotentialFamily",
    "ResourceLimitError",
    "Variables",
    "VarSet",
    "boundary",
    "boundary_aggregate",
    "boundary_hypergraph",
    "cliques",
    "completed_edge_set",
    "component_potential",
    "connectivity_components",
    "eliminate_vertex",
    "energy",
    "energy_grid",
    "gaussian_marginal_graph",
    "hypergraph_of",
    "induced_graph",
    "innovation_matrix",
    "innovations",
    "is_complete",
    "is_normalized",
    "joint_table",
    "marginal_precision",
    "marginal_table",
    "marginalize_graph",
    "marginalize_hypergraph",
    "normalize_potential",
    "normalized_potential_from_table",
    "pairwise_innovation",
    "pattern_graph",
    "precedes",
    "restrict",
    "subgraph",
    "varset",
]
