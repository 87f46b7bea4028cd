"""Gaussian instantiation: marginalization as a Schur complement of the
precision matrix, and the innovation matrix that explains which edges the
marginal keeps, gains, or can lose.

For a Gaussian model the normalized pairwise interactions are exactly the
off-diagonal precision entries, so the marginal precision splits into the
retained block (the restricted potential) minus the innovation matrix.
The eliminated block is handled through a symmetric (Cholesky)
factorization rather than an explicit inverse.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import InvalidInputError
from .graphs import Graph, VarSet, varset

SYMMETRY_TOL = 1e-12


class GaussianModel:
    """Mean vector plus symmetric positive-definite precision matrix."""

    __slots__ = ("mean", "precision")

    def __init__(self, mean, precision):
        mean = np.asarray(mean, dtype=float)
        prec = np.asarray(precision, dtype=float)
        if mean.ndim != 1:
            raise InvalidInputError("mean must be a vector")
        n = mean.shape[0]
        if prec.shape != (n, n):
            raise InvalidInputError(
                f"precision must be {n}x{n} to match the mean, got {prec.shape}")
        if not np.all(np.isfinite(mean)) or not np.all(np.isfinite(prec)):
            raise InvalidInputError("non-finite entries in the Gaussian model")
        scale = max(1.0, float(np.max(np.abs(prec))) if prec.size else 1.0)
        if float(np.max(np.abs(prec - prec.T), initial=0.0)) > SYMMETRY_TOL * scale:
            raise InvalidInputError("precision matrix is not symmetric")
        try:
            np.linalg.cholesky(prec)
        except np.linalg.LinAlgError:
            raise InvalidInputError("precision matrix is not positive definite") from None
        mean.setflags(write=False)
        prec.setflags(write=False)
        self.mean = mean
        self.precision = prec

    @property
    def n(self) -> int:
        return self.mean.shape[0]

    def __repr__(self) -> str:
        return f"GaussianModel(n={self.n})"


def _split(m: GaussianModel, a) -> tuple[VarSet, VarSet]:
    a = varset(a)
    if not a:
        raise InvalidInputError("retained set must be non-empty")
    if not set(a) <= set(range(m.n)):
        raise InvalidInputError(f"ids {sorted(set(a) - set(range(m.n)))} outside the model")
    z = varset(set(range(m.n)) - set(a))
    return a, z


def _eliminated_factor(m: GaussianModel, z: VarSet):
    try:
        return cho_factor(m.precision[np.ix_(z, z)])
    except np.linalg.LinAlgError:
        raise InvalidInputError(
            "eliminated precision block is not positive definite; corrupted input") from None


def marginal_precision(m: GaussianModel, a) -> GaussianModel:
    """Marginal model on ``a``: restricted mean, Schur-complement precision."""
    a, z = _split(m, a)
    mean = m.mean[list(a)]
    if not z:
        return GaussianModel(mean, np.array(m.precision))
    p = m.precision
    paa = p[np.ix_(a, a)]
    paz = p[np.ix_(a, z)]
    x = cho_solve(_eliminated_factor(m, z), paz.T)
    schur = paa - paz @ x
    return GaussianModel(mean, (schur + schur.T) / 2.0)


def innovation_matrix(m: GaussianModel, a) -> np.ndarray:
    """The correction the eliminated block subtracts from the retained one.

    Satisfies: marginal precision = retained block - innovation matrix.
    Rows/columns follow the sorted order of ``a``.
    """
    a, z = _split(m, a)
    if not z:
        return np.zeros((len(a), len(a)))
    paz = m.precision[np.ix_(a, z)]
    gamma = paz @ cho_solve(_eliminated_factor(m, z), paz.T)
    return (gamma + gamma.T) / 2.0


def pairwise_innovation(m: GaussianModel, a, i: int, j: int) -> float:
    """Innovation entry for the pair (i, j) by the explicit neighbor sum.

    Sums rho_rs * P[i, r] * P[s, j] over eliminated r adjacent to i and
    eliminated s adjacent to j, where rho is the inverse of the eliminated
    block, recovered column by column from the factorization.  Equals the
    (i, j) entry of :func:`innovation_matrix`, computed the long way.
    """
    a, z = _split(m, a)
    if i == j:
        raise InvalidInputError("pairwise innovation is defined for distinct variables")
    if i not in set(a) or j not in set(a):
        raise InvalidInputError(f"{i} and {j} must belong to the retained set")
    if not z:
        return 0.0
    p = m.precision
    factor = _eliminated_factor(m, z)
    total = 0.0
    for sk, s in enumerate(z):
        if p[s, j] == 0.0:
            continue
        unit = np.zeros(len(z))
        unit[sk] = 1.0
        rho_col = cho_solve(factor, unit)
        for rk, r in enumerate(z):
            if p[i, r] == 0.0:
                continue
            total += rho_col[rk] * p[i, r] * p[s, j]
    return float(total)


def _scaled_tol(matrix: np.ndarray, tol: float | None) -> float:
    if tol is not None:
        return tol
    return 1e-9 * float(np.max(np.abs(matrix), initial=0.0))


def pattern_graph(m: GaussianModel, tol: float | None = None) -> Graph:
    """Graph with an edge wherever the precision has a non-null off-diagonal."""
    t = _scaled_tol(m.precision, tol)
    edges = {(i, j) for i in range(m.n) for j in range(i + 1, m.n)
             if abs(m.precision[i, j]) > t}
    return Graph(tuple(range(m.n)), frozenset(edges))


def gaussian_marginal_graph(m: GaussianModel, a, tol: float | None = None) -> Graph:
    """Edges of the marginal model: non-null marginal precision entries.

    ``tol`` defaults to 1e-9 times the largest absolute entry of the
    marginal precision (scale-free zero test).
    """
    a, _ = _split(m, a)
    mp = marginal_precision(m, a).precision
    t = _scaled_tol(mp, tol)
    edges = set()
    for ki in range(len(a)):
        for kj in range(ki + 1, len(a)):
            if abs(mp[ki, kj]) > t:
                edges.add((a[ki], a[kj]))
    return Graph(a, frozenset(edges))
