"""Marginalization of Gibbs-potential hypergraph models.

Eliminating the variables outside a retained set A changes a normalized
potential in exactly one way: each connectivity component of the eliminated
set folds into a log-sum table over its boundary, and the anchored Mobius
transform splits those boundary tables into normalized *innovations* on the
subsets of the boundaries.  The marginal potential is the restriction of
the original to A plus the innovations; reading off which scopes survive
(per family member) yields the marginal hypergraph together with the sets
that appear, disappear, or persist, and settles graphical and parametric
collapsibility.

All interaction tables here are finite-domain; component folding uses
log-sum-exp stabilization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import InvalidInputError
from .graphs import Graph, VarSet, boundary, connectivity_components, subgraph, varset
from .potentials import (
    NULL_TOL,
    Hypergraph,
    InteractionTable,
    Potential,
    PotentialFamily,
    _normalized_pieces,
    hypergraph_of,
    induced_graph,
    is_normalized,
    require_normalized,
    restrict,
)


@dataclass(frozen=True)
class Innovation:
    """A new normalized interaction created on a subset of a boundary set."""

    scope: VarSet
    table: InteractionTable


@dataclass(frozen=True)
class MarginalReport:
    """Everything marginalization does to a hypergraph model.

    ``marginal_hypergraph`` always equals (kept | added) where kept is the
    restriction of the original hypergraph to the retained set minus
    ``removed``.  ``retained`` echoes the id set the report is about.
    """

    retained: VarSet
    marginal_family: PotentialFamily
    marginal_hypergraph: Hypergraph
    added: Hypergraph
    removed: Hypergraph
    kept: Hypergraph
    graphically_collapsible: bool
    parametrically_collapsible: bool
    innovation_scopes: Hypergraph

    @property
    def marginal_potential(self) -> Potential:
        """The marginal potential of a one-member family."""
        if len(self.marginal_family) != 1:
            raise InvalidInputError(
                "marginal_potential is only defined for one-member families; "
                "use marginal_family")
        return self.marginal_family.members[0]

    def marginal_graph(self) -> Graph:
        return induced_graph(self.marginal_hypergraph, self.retained)


def _table_grid(vars, scope: VarSet, tables) -> np.ndarray:
    grid = np.zeros(vars.sizes(scope))
    axis = {v: k for k, v in enumerate(scope)}
    for t in tables:
        shape = [1] * len(scope)
        for v in t.scope:
            shape[axis[v]] = len(vars.domain(v))
        grid = grid + t.values.reshape(shape)
    return grid


def _drop_null_tables(u: Potential, null_tol: float) -> Potential:
    return Potential(u.vars, (t for t in u.tables if np.max(np.abs(t.values)) > null_tol))


def component_potential(u: Potential, tau) -> InteractionTable:
    """Fold one eliminated component into a table over its boundary.

    The entry at a boundary assignment b is
    -ln sum_t exp(-sum of the interactions touching the component at (b, t)),
    the sum running over all joint assignments t of the component.  A
    component touched by no interaction yields the constant -ln(number of
    component assignments) on the empty scope.
    """
    tau = varset(tau)
    if not tau:
        raise InvalidInputError("component must be non-empty")
    extra = set(tau) - set(u.vars.all_ids())
    if extra:
        raise InvalidInputError(f"ids {sorted(extra)} outside the registry")
    inside = set(tau)
    touching = [t for t in u.tables if set(t.scope) & inside]
    bd = varset(set().union(*(set(t.scope) for t in touching)) - inside) if touching else ()
    full = varset(set(bd) | inside)
    grid = _table_grid(u.vars, full, touching)
    tau_axes = tuple(k for k, v in enumerate(full) if v in inside)
    folded = -logsumexp(-grid, axis=tau_axes)
    return InteractionTable(bd, np.asarray(folded))


def boundary_aggregate(u: Potential, components, d) -> InteractionTable:
    """Sum of the folded component tables whose boundary is exactly ``d``."""
    d = varset(d)
    parts = []
    for tau in components:
        ct = component_potential(u, tau)
        if ct.scope == d:
            parts.append(ct.values)
    if not parts:
        raise InvalidInputError(f"{set(d) or set()} is not the boundary of any given component")
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return InteractionTable(d, total)


def _innovation_tables(u: Potential, comps, comp_boundary: dict[VarSet, VarSet],
                       null_tol: float) -> list[Innovation]:
    """Innovations of ``u`` given eliminated components and their boundary
    sets (the boundaries may be wider than what ``u`` alone induces, e.g.
    when they come from a family-level hypergraph)."""
    agg: dict[VarSet, np.ndarray] = {}
    for tau in comps:
        d = comp_boundary[tau]
        if not d:
            continue  # constant factor, absorbed by normalization
        ct = component_potential(u, tau)
        axis = {v: k for k, v in enumerate(d)}
        shape = [1] * len(d)
        for v in ct.scope:
            shape[axis[v]] = len(u.vars.domain(v))
        embedded = np.broadcast_to(ct.values.reshape(shape), u.vars.sizes(d))
        agg[d] = agg.get(d, 0.0) + embedded
    acc: dict[VarSet, np.ndarray] = {}
    for d, vals in agg.items():
        for b, tbl in _normalized_pieces(u.vars, d, vals):
            if b in acc:
                acc[b] = acc[b] + tbl
            else:
                acc[b] = tbl
    out = [Innovation(b, InteractionTable(b, v))
           for b, v in sorted(acc.items()) if np.max(np.abs(v)) > null_tol]
    assert all(is_normalized(Potential(u.vars, [i.table])) for i in out)
    return out


def innovations(u: Potential, a, null_tol: float = NULL_TOL) -> list[Innovation]:
    """All non-null innovations created by marginalizing ``u`` onto ``a``.

    Innovations exist only on non-empty subsets of the boundary sets of the
    eliminated components; each is normalized by construction.  ``u`` must
    be normalized.
    """
    require_normalized(u)
    a = varset(a)
    allv = u.vars.all_ids()
    if not set(a) <= set(allv):
        raise InvalidInputError(f"ids {sorted(set(a) - set(allv))} outside the registry")
    u = _drop_null_tables(u, null_tol)
    g = induced_graph(hypergraph_of(u, null_tol), allv)
    dropped = varset(set(allv) - set(a))
    if not dropped:
        return []
    comps = connectivity_components(subgraph(g, dropped))
    comp_boundary = {tau: boundary(g, tau) for tau in comps}
    return _innovation_tables(u, comps, comp_boundary, null_tol)


def marginalize_hypergraph(fam, a, null_tol: float = NULL_TOL) -> MarginalReport:
    """Marginalize a family of normalized potentials onto ``a``.

    Per member, the marginal potential is the restriction to ``a`` plus the
    member's innovations (tables adding up on shared scopes; results that
    are null within ``null_tol`` are dropped).  Scope bookkeeping is done
    family-wide: a scope counts as present when it is non-null for at least
    one member, and as disappearing only when the combined table is null
    for every member.

    Graphical collapsibility compares the marginal hypergraph's induced
    graph with the subgraph of the model's graph on ``a``; parametric
    collapsibility requires every innovation of every member to be null.
    """
    if isinstance(fam, Potential):
        fam = PotentialFamily([fam])
    for m in fam:
        require_normalized(m)
    vars = fam.vars
    allv = vars.all_ids()
    a = varset(a)
    if not set(a) <= set(allv):
        raise InvalidInputError(f"ids {sorted(set(a) - set(allv))} outside the registry")

    clean = [_drop_null_tables(m, null_tol) for m in fam]
    h = hypergraph_of(clean, null_tol)
    g = induced_graph(h, allv)
    dropped = varset(set(allv) - set(a))
    if dropped:
        comps = connectivity_components(subgraph(g, dropped))
    else:
        comps = []
    comp_boundary = {tau: boundary(g, tau) for tau in comps}
    h_restricted = h.restrict(a)

    marginals = []
    any_innovation_scopes: set[VarSet] = set()
    parametric = True
    # combined[scope][k] = member k's restricted table + innovation on scope
    combined: dict[VarSet, list[np.ndarray]] = {}

    def _add(scope: VarSet, k: int, values: np.ndarray) -> None:
        per_member = combined.setdefault(scope, [None] * len(clean))
        if per_member[k] is None:
            per_member[k] = np.array(values)
        else:
            per_member[k] = per_member[k] + values

    for k, m in enumerate(clean):
        for t in restrict(m, a).tables:
            _add(t.scope, k, t.values)
        member_innovations = _innovation_tables(m, comps, comp_boundary, null_tol)
        if member_innovations:
            parametric = False
        for innov in member_innovations:
            any_innovation_scopes.add(innov.scope)
            _add(innov.scope, k, innov.table.values)

    for k in range(len(clean)):
        tables = []
        for scope in sorted(combined):
            vals = combined[scope][k]
            if vals is not None and np.max(np.abs(vals)) > null_tol:
                tables.append(InteractionTable(scope, vals))
        marginals.append(Potential(vars, tables))

    def _null_for_every_member(scope: VarSet) -> bool:
        return all(vals is None or np.max(np.abs(vals)) <= null_tol
                   for vals in combined[scope])

    removed = Hypergraph(e for e in h_restricted if _null_for_every_member(e))
    kept = h_restricted.difference(removed)
    added = Hypergraph(s for s in any_innovation_scopes
                       if s not in h_restricted and not _null_for_every_member(s))
    marginal_hypergraph = kept.union(added)
    assert marginal_hypergraph == hypergraph_of(marginals, null_tol)

    graphical = induced_graph(marginal_hypergraph, a) == subgraph(g, a)
    return MarginalReport(
        retained=a,
        marginal_family=PotentialFamily(marginals),
        marginal_hypergraph=marginal_hypergraph,
        added=added,
        removed=removed,
        kept=kept,
        graphically_collapsible=graphical,
        parametrically_collapsible=parametric,
        innovation_scopes=Hypergraph(any_innovation_scopes),
    )
