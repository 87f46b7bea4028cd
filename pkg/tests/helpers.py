"""Shared generators and brute-force oracles for the test suite.

Everything here is deliberately primitive (edge scans, matrix squaring,
subset enumeration, double loops) so that agreement with the library is
meaningful evidence.
"""

from __future__ import annotations

from itertools import combinations, product

import numpy as np

from margraph import Graph, InteractionTable, Potential, Variables, varset


def random_graph(rng: np.random.Generator, n: int, p: float = 0.3) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(range(n), edges)


def binary_vars(n: int, prefix: str = "V") -> Variables:
    return Variables([f"{prefix}{k}" for k in range(1, n + 1)])


def random_normalized_potential(rng: np.random.Generator, n: int,
                                n_scopes: int | None = None,
                                max_scope: int = 3,
                                lo: float = 0.25, hi: float = 1.5) -> Potential:
    """Random binary potential, normalized by construction: entries with any
    zero coordinate are 0, the rest are uniform +-[lo, hi]."""
    variables = binary_vars(n)
    if n_scopes is None:
        n_scopes = int(rng.integers(1, max(2, 2 * n)))
    scopes = set()
    for _ in range(n_scopes):
        size = int(rng.integers(1, min(max_scope, n) + 1))
        scopes.add(varset(rng.choice(n, size=size, replace=False).tolist()))
    tables = []
    for scope in sorted(scopes):
        shape = (2,) * len(scope)
        vals = rng.uniform(lo, hi, size=shape) * rng.choice([-1.0, 1.0], size=shape)
        for ax in range(len(scope)):
            idx = [slice(None)] * len(scope)
            idx[ax] = 0
            vals[tuple(idx)] = 0.0
        if np.max(np.abs(vals)) == 0.0:
            continue
        tables.append(InteractionTable(scope, vals))
    return Potential(variables, tables)


def induced_scope_graph(u: Potential) -> Graph:
    """Graph joining every pair that shares an interaction scope."""
    edges = set()
    for t in u.tables:
        edges |= set(combinations(t.scope, 2))
    return Graph.from_edges(u.vars.all_ids(), edges)


# ---------------------------------------------------------------------------
# Brute-force oracles.
# ---------------------------------------------------------------------------

def neighbor_scan(g: Graph, v: int) -> tuple[int, ...]:
    out = set()
    for a, b in g.edges:
        if a == v:
            out.add(b)
        elif b == v:
            out.add(a)
    return varset(out)


def reachability_components(g: Graph) -> list[tuple[int, ...]]:
    """Components from the transitive closure of adjacency, by repeated
    boolean matrix squaring."""
    vs = list(g.vertices)
    pos = {v: k for k, v in enumerate(vs)}
    n = len(vs)
    reach = np.eye(n, dtype=bool)
    for a, b in g.edges:
        reach[pos[a], pos[b]] = reach[pos[b], pos[a]] = True
    while True:
        nxt = reach | (reach @ reach)
        if np.array_equal(nxt, reach):
            break
        reach = nxt
    seen: set[int] = set()
    parts = []
    for k in range(n):
        if k in seen:
            continue
        members = {vs[i] for i in range(n) if reach[k, i]}
        seen |= {pos[v] for v in members}
        parts.append(varset(members))
    return sorted(parts, key=lambda p: p[0])


def brute_force_cliques(g: Graph) -> list[tuple[int, ...]]:
    """Maximal complete sets by scanning all 2^n subsets."""
    vs = list(g.vertices)
    edges = set(g.edges)

    def complete(sub) -> bool:
        return all(tuple(sorted(p)) in edges for p in combinations(sub, 2))

    completes = [frozenset(sub)
                 for r in range(1, len(vs) + 1)
                 for sub in combinations(vs, r) if complete(sub)]
    maximal = [s for s in completes if not any(s < t for t in completes)]
    return sorted(varset(s) for s in maximal)


def energy_by_loops(u: Potential, values) -> float:
    """Term-by-term summation with explicit indexing."""
    total = 0.0
    for t in u.tables:
        idx = []
        for v in t.scope:
            dom = list(u.vars.domain(v))
            idx.append(dom.index(float(values[v])))
        total += float(t.values[tuple(idx)])
    return total


def chain_innovation_closed_forms(a12, a23, a45, a56) -> dict:
    """Hand-derived innovation tables for the base chain model with the
    retained set {V1, V3, V5}, keyed by scope."""
    v = np.array([0.0, 1.0])
    v1 = -np.log(np.exp(-a12 * v - a12) + 1) + np.log(np.exp(-a12) + 1)
    v3 = -np.log(np.exp(-a23 * v - a12) + 1) + np.log(np.exp(-a12) + 1)
    g1, g3 = np.meshgrid(v, v, indexing="ij")
    v13 = (-np.log(np.exp(-a12 * g1 - a23 * g3 - a12) + 1)
           + np.log(np.exp(-a12 * g1 - a12) + 1)
           + np.log(np.exp(-a23 * g3 - a12) + 1)
           - np.log(np.exp(-a12) + 1))
    v5 = (-np.log(np.exp(-a45 * v) + 1) + np.log(2.0)
          - np.log(np.exp(-a56 * v) + 1) + np.log(2.0))
    return {(0,): v1, (2,): v3, (0, 2): v13, (4,): v5}


def folded_component_by_loops(u: Potential, tau, bd) -> np.ndarray:
    """Double-loop evaluation of the component fold over its boundary."""
    tau = varset(tau)
    bd = varset(bd)
    touching = [t for t in u.tables if set(t.scope) & set(tau)]
    out = np.zeros(u.vars.sizes(bd))
    for b_idx in product(*(range(len(u.vars.domain(v))) for v in bd)):
        total = 0.0
        for t_idx in product(*(range(len(u.vars.domain(v))) for v in tau)):
            pos = dict(zip(bd, b_idx))
            pos.update(zip(tau, t_idx))
            e = 0.0
            for t in touching:
                e += float(t.values[tuple(pos[v] for v in t.scope)])
            total += np.exp(-e)
        out[b_idx] = -np.log(total)
    return out
