"""Moving least-squares approximation with a monomial basis.

At a query point ``x`` the approximant is ``sum_i a_i f(x_i)`` with
``a = D^-1 E (E^t D^-1 E)^-1 c``, where ``E[i, k] = p_k(x_i)``,
``c[k] = p_k(x)`` and ``D = 2 diag(w(|x - x_i|))``.

Nodes are indexed ``0..m-1``.  ``D^-1`` is assembled directly from the
effective weights ``1/w``, so nodes outside a compact support get an entry of
exactly zero and never need ``w = 1/0``.  A node where ``w = 0`` (``W = inf``)
coincides with the query point and is handled by returning its value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb

import numpy as np
import scipy.linalg

from .errors import RankDeficiencyError, SingularNormalMatrixError
from .weights import WeightSpec

RCOND_MIN = 1e-12


@dataclass(frozen=True)
class PolynomialBasis:
    d: int
    exponents: np.ndarray

    def __post_init__(self):
        exps = np.array(self.exponents, dtype=np.int64).reshape(-1, self.d)
        if len(exps) == 0 or exps[0].any():
            raise ValueError("first basis function must be the constant 1")
        if len({tuple(e) for e in exps}) != len(exps):
            raise ValueError("duplicate monomials in basis")
        if (exps < 0).any():
            raise ValueError("negative exponent")
        exps.flags.writeable = False
        object.__setattr__(self, "exponents", exps)

    @property
    def l(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return int(self.exponents.sum(axis=1).max())

    def __call__(self, points) -> np.ndarray:
        """Evaluate every monomial at each point; shape ``(len(points), l)``."""
        pts = np.asarray(points, dtype=np.float64).reshape(-1, self.d)
        return np.prod(pts[:, None, :] ** self.exponents[None, :, :], axis=2)


def monomial_basis(d: int, degree: int) -> PolynomialBasis:
    """Monomials of total degree ``<= degree`` in ``d`` variables.

    Ordered by total degree, then lexicographically with higher powers of
    earlier coordinates first: for ``d = 2, degree = 1`` this is
    ``1, x1, x2``.
    """
    if d < 1 or degree < 0:
        raise ValueError("need d >= 1 and degree >= 0")
    exps = []
    for total in range(degree + 1):
        block = []
        for combo in combinations_with_replacement(range(d), total):
            e = [0] * d
            for axis in combo:
                e[axis] += 1
            block.append(tuple(e))
        exps.extend(sorted(set(block), reverse=True))
    assert len(exps) == comb(degree + d, d)
    return PolynomialBasis(d, np.array(exps))


@dataclass(frozen=True)
class MlsProblem:
    nodes: np.ndarray
    basis: PolynomialBasis
    weight: WeightSpec

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=np.float64)
        if nodes.ndim == 1:
            nodes = nodes[:, None]
        if nodes.shape[1] != self.basis.d:
            raise ValueError(f"nodes live in R^{nodes.shape[1]}, basis in R^{self.basis.d}")
        if len(np.unique(nodes, axis=0)) != len(nodes):
            raise ValueError("nodes must be pairwise distinct")
        if self.basis.l > len(nodes):
            raise ValueError(f"basis size l={self.basis.l} exceeds node count m={len(nodes)}")
        nodes.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)

    @property
    def m(self) -> int:
        return len(self.nodes)

    @property
    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        return self.nodes.min(axis=0), self.nodes.max(axis=0)

    def query(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64).reshape(-1)
        if x.shape[0] != self.basis.d:
            raise ValueError(f"query point must have {self.basis.d} coordinates")
        return x


@dataclass(frozen=True)
class Assembly:
    E: np.ndarray
    dinv: np.ndarray
    c: np.ndarray
    active: tuple[int, ...]
    coincident: tuple[int, ...] = ()


@dataclass(frozen=True)
class MlsSolution:
    a: np.ndarray
    normal_value: np.ndarray | None
    active: tuple[int, ...]
    coincident: tuple[int, ...] = field(default=())


@dataclass(frozen=True)
class H1Report:
    constant_in_basis: bool
    l: int
    active_count: int
    l_le_m: bool
    rank: int
    full_rank: bool

    @property
    def passed(self) -> bool:
        return self.constant_in_basis and self.l_le_m and self.full_rank


def _weights_at(problem: MlsProblem, x: np.ndarray) -> np.ndarray:
    return problem.weight.node_weights(x[None, :] - problem.nodes)


def check_H1(problem: MlsProblem, x) -> H1Report:
    x = problem.query(x)
    omega = _weights_at(problem, x)
    active = np.flatnonzero(omega > 0)
    E = problem.basis(problem.nodes)
    rank = int(np.linalg.matrix_rank(E[active])) if len(active) else 0
    l = problem.basis.l
    return H1Report(
        constant_in_basis=not problem.basis.exponents[0].any(),
        l=l,
        active_count=len(active),
        l_le_m=l <= len(active),
        rank=rank,
        full_rank=rank == l,
    )


def assemble(problem: MlsProblem, x) -> Assembly:
    """Build ``E``, the diagonal of ``D^-1`` and ``c`` at ``x``.

    Inactive nodes (zero weight) carry a ``D^-1`` entry of 0; coincident nodes
    (``w = 0``) carry ``inf``.
    """
    x = problem.query(x)
    omega = _weights_at(problem, x)
    if np.any(omega < 0) or np.any(np.isnan(omega)):
        raise SingularNormalMatrixError("weight function produced a negative or NaN value")
    E = problem.basis(problem.nodes)
    c = problem.basis(x[None, :])[0]
    active = np.flatnonzero(omega > 0)
    coincident = np.flatnonzero(np.isinf(omega))
    if len(coincident) == 0:
        rank = int(np.linalg.matrix_rank(E[active])) if len(active) else 0
        if rank < problem.basis.l:
            raise RankDeficiencyError(
                f"rank of active E is {rank} < l={problem.basis.l} "
                f"({len(active)} active nodes at x={x.tolist()})"
            )
    return Assembly(
        E=E,
        dinv=omega / 2.0,
        c=c,
        active=tuple(int(i) for i in active),
        coincident=tuple(int(i) for i in coincident),
    )


def coefficients_from_matrices(E: np.ndarray, dinv: np.ndarray, c: np.ndarray):
    """``a = D^-1 E (E^t D^-1 E)^-1 c`` for finite ``dinv``.

    Returns ``(a, normal_matrix)``.  The normal matrix is factored with
    pivoted LU; a reciprocal 1-norm condition estimate below ``RCOND_MIN``
    raises ``SingularNormalMatrixError``.
    """
    normal = E.T @ (dinv[:, None] * E)
    lu, piv, info = scipy.linalg.lapack.dgetrf(normal)
    if info != 0:
        raise SingularNormalMatrixError("E^t D^-1 E is exactly singular")
    anorm = np.abs(normal).sum(axis=0).max()
    rcond, _ = scipy.linalg.lapack.dgecon(lu, anorm, norm="1")
    if not rcond >= RCOND_MIN:
        raise SingularNormalMatrixError(f"E^t D^-1 E reciprocal condition {rcond:.3e}")
    y = scipy.linalg.lu_solve((lu, piv), c)
    return dinv * (E @ y), normal


def mls_coefficients(problem: MlsProblem, x) -> MlsSolution:
    asm = assemble(problem, x)
    if asm.coincident:
        a = np.zeros(problem.m)
        a[list(asm.coincident)] = 1.0 / len(asm.coincident)
        return MlsSolution(a, None, asm.active, asm.coincident)
    idx = list(asm.active)
    a_active, normal = coefficients_from_matrices(asm.E[idx], asm.dinv[idx], asm.c)
    a = np.zeros(problem.m)
    a[idx] = a_active
    return MlsSolution(a, normal, asm.active)


def mls_apply(problem: MlsProblem, values, x) -> float:
    """Value at ``x`` of the weighted least-squares fit to ``values``."""
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (problem.m,):
        raise ValueError(f"need {problem.m} values, got shape {values.shape}")
    sol = mls_coefficients(problem, x)
    if sol.coincident:
        return float(values[list(sol.coincident)].mean())
    idx = list(sol.active)
    return float(sol.a[idx] @ values[idx])


def mls_apply_many(problem: MlsProblem, values, xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.float64).reshape(-1, problem.basis.d)
    return np.array([mls_apply(problem, values, x) for x in xs])
