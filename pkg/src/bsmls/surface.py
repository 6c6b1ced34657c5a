"""Tensor-product B-spline surfaces and the separable 2-D weighted sum."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .bspline_core import KnotVector, make_uniform_knots
from .errors import DomainError
from .weights import WeightSpec


@dataclass(frozen=True)
class Surface:
    knots_u: KnotVector
    knots_v: KnotVector
    control: np.ndarray

    def __post_init__(self):
        if (self.knots_u.n, self.knots_u.r) != (self.knots_v.n, self.knots_v.r):
            raise ValueError("both directions must share n and r")
        control = np.array(self.control, dtype=np.float64)
        if control.ndim == 2:
            control = control[:, :, None]
        size = self.knots_u.n + 1
        if control.shape[:2] != (size, size):
            raise ValueError(f"control grid must be {size}x{size}, got {control.shape[:2]}")
        control.flags.writeable = False
        object.__setattr__(self, "control", control)

    @classmethod
    def from_grid(cls, f_grid, r: int) -> Surface:
        """Surface with control points ``p_ij = (i, j, f[i, j])``."""
        f_grid = np.asarray(f_grid, dtype=np.float64)
        n = f_grid.shape[0] - 1
        ii, jj = np.meshgrid(np.arange(n + 1.0), np.arange(n + 1.0), indexing="ij")
        kv = make_uniform_knots(n, r)
        return cls(kv, kv, np.stack([ii, jj, f_grid], axis=-1))

    @property
    def n(self) -> int:
        return self.knots_u.n

    @property
    def r(self) -> int:
        return self.knots_u.r

    @property
    def domain(self) -> tuple[float, float]:
        return self.knots_u.domain


def surface_eval_many(s: Surface, u, v) -> np.ndarray:
    """Evaluate at paired parameters ``(u[k], v[k])``; shape ``(len(u), dim)``."""
    u = np.atleast_1d(np.asarray(u, dtype=np.float64))
    v = np.atleast_1d(np.asarray(v, dtype=np.float64))
    if u.shape != v.shape:
        raise ValueError("u and v must have the same shape")
    lo, hi = s.domain
    for arr in (u, v):
        if arr.size and (arr.min() < lo or arr.max() > hi or np.isnan(arr).any()):
            raise DomainError(f"parameter outside [{lo}, {hi}]^2")
    return _kernels.surface_values(u, v, s.control, s.n, s.r)


def surface_eval(s: Surface, u: float, v: float) -> np.ndarray:
    return surface_eval_many(s, [u], [v])[0]


def mls_surface_apply(f_grid, weight: WeightSpec, x: float, y: float, block: bool = True) -> float:
    """``sum_ij f[i, j] W(x - i) W(y - j)`` over integer nodes.

    With ``block=True`` only indices inside the weight's support are summed;
    ``block=False`` sums the full grid.  No normalization is applied: for the
    cardinal weight the 1-D weights already sum to one inside the domain.
    """
    if weight.kind == "product":
        weight = weight.base
    if not weight.compact:
        raise ValueError(f"{weight.describe()} has no compact support")
    f_grid = np.asarray(f_grid, dtype=np.float64)
    nx, ny = f_grid.shape
    if block:
        rad = weight.support_radius
        i_idx = np.arange(max(0, int(np.floor(x - rad))), min(nx, int(np.ceil(x + rad)) + 1))
        j_idx = np.arange(max(0, int(np.floor(y - rad))), min(ny, int(np.ceil(y + rad)) + 1))
    else:
        i_idx = np.arange(nx)
        j_idx = np.arange(ny)
    wx = np.atleast_1d(weight.at(x - i_idx))
    wy = np.atleast_1d(weight.at(y - j_idx))
    return float(wx @ f_grid[np.ix_(i_idx, j_idx)] @ wy)
