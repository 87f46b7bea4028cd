"""Marginalization operator for undirected graphs.

Dropping the variables outside a retained set A turns each connectivity
component of the eliminated subgraph into a completed boundary: the marginal
distribution of A factorizes according to the subgraph on A plus those
fill-in edges.  The operator returns this graph exactly as constructed,
never pruned; it may keep edges a finer (hypergraph) analysis would remove.
"""

from __future__ import annotations

from .errors import InvalidInputError
from .graphs import (
    Graph,
    boundary,
    completed_edge_set,
    connectivity_components,
    subgraph,
    varset,
)


def marginalize_graph(g: Graph, a) -> Graph:
    """Marginal graph on ``a``: subgraph edges plus completed component boundaries.

    The eliminated set V \\ a is split into connectivity components; the
    boundary of each component (taken in ``g``) is completed.  The result's
    edge set always contains the subgraph edges on ``a``.
    """
    a = varset(a)
    kept = subgraph(g, a)  # validates a against g.vertices
    dropped = varset(set(g.vertices) - set(a))
    if not dropped:
        return kept
    fill = set(kept.edges)
    for comp in connectivity_components(subgraph(g, dropped)):
        fill |= completed_edge_set(boundary(g, comp))
    return Graph(a, frozenset(fill))


def eliminate_vertex(g: Graph, v: int) -> Graph:
    """Remove ``v`` after completing its neighborhood (single fill-in step).

    Folding this over all of V \\ a, in any order, reproduces
    :func:`marginalize_graph`.
    """
    if v not in set(g.vertices):
        raise InvalidInputError(f"unknown vertex id {v}")
    rest = varset(set(g.vertices) - {v})
    fill = completed_edge_set(g.neighbors(v))
    kept = frozenset(e for e in g.edges if v not in e)
    return Graph(rest, kept | fill)
