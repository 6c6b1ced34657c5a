"""Uniform B-spline basis functions and curves.

Knots are the integers ``t_i = i`` for ``i = 0..n+r``.  Order ``r`` means
polynomial degree ``r - 1``.  Order-1 basis functions use the half-open
convention ``t_i <= t < t_{i+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np

from . import _kernels
from .errors import (
    DomainError,
    IndexOutOfRangeError,
    OrderOutOfRangeError,
    UnsupportedOrderError,
)

# Finite-difference steps per derivative order.
FD_STEPS = {0: 1e-5, 1: 1e-5, 2: 1e-4, 3: 1e-3}
FD_STEP_DEFAULT = 1e-2


@dataclass(frozen=True)
class KnotVector:
    n: int
    r: int
    knots: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise OrderOutOfRangeError(f"n must be a non-negative integer, got {self.n}")
        if int(self.r) != self.r or not 1 <= self.r <= self.n + 1:
            raise OrderOutOfRangeError(
                f"order r={self.r} outside 1 <= r <= n+1 = {self.n + 1}"
            )
        knots = np.arange(self.n + self.r + 1, dtype=np.float64)
        knots.flags.writeable = False
        object.__setattr__(self, "knots", knots)

    @property
    def domain(self) -> tuple[float, float]:
        """Curve evaluation interval ``[t_{r-1}, t_{n+1}]``."""
        return float(self.r - 1), float(self.n + 1)

    @property
    def last_knot(self) -> int:
        return self.n + self.r


def make_uniform_knots(n: int, r: int) -> KnotVector:
    return KnotVector(n, r)


def _check_index(kv: KnotVector, i: int, j: int) -> None:
    if not 1 <= j <= kv.r:
        raise IndexOutOfRangeError(f"basis order j={j} outside 1..{kv.r}")
    if not 0 <= i <= kv.last_knot - j:
        raise IndexOutOfRangeError(f"basis index i={i} outside 0..{kv.last_knot - j}")


def _cox_de_boor(i: int, j: int, t: float) -> float:
    # Direct transcription of the recursion on knots t_k = k; a zero
    # denominator (repeated knots) contributes 0.
    if j == 1:
        return 1.0 if i <= t < i + 1 else 0.0
    left_den = (i + j - 1) - i
    right_den = (i + j) - (i + 1)
    left = (t - i) / left_den * _cox_de_boor(i, j - 1, t) if left_den else 0.0
    right = (i + j - t) / right_den * _cox_de_boor(i + 1, j - 1, t) if right_den else 0.0
    return left + right


def basis_eval(kv: KnotVector, i: int, j: int, t: float) -> float:
    """Value of ``B_{i,j}(t)`` by the Cox-de Boor recursion."""
    _check_index(kv, i, j)
    return _cox_de_boor(i, j, float(t))


def basis_values(kv: KnotVector, j: int, t) -> np.ndarray:
    """All ``B_{i,j}(t)`` for ``i = 0..n+r-j`` at each ``t``.

    Bottom-up recursion over the whole knot vector; returns an array of
    shape ``(n+r-j+1, len(t))``.
    """
    if not 1 <= j <= kv.r:
        raise IndexOutOfRangeError(f"basis order j={j} outside 1..{kv.r}")
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    return _kernels.cox_de_boor_table(t, kv.last_knot, j)


def cubic_closed(i, t):
    """Vectorized closed form of ``B_{i,4}(t)`` as a sum of truncated cubes."""
    x = np.asarray(t, dtype=np.float64) - np.asarray(i, dtype=np.float64)
    a = x**3 / 6.0
    b = -2.0 / 3.0 * (x - 1.0) ** 3
    c = (x - 2.0) ** 3
    d = -2.0 / 3.0 * (x - 3.0) ** 3
    return np.select(
        [x < 0.0, x < 1.0, x < 2.0, x < 3.0, x < 4.0],
        [0.0 * x, a, b + a, c + b + a, d + c + b + a],
        default=0.0,
    )


def basis_eval_cubic_closed(i: int, t: float) -> float:
    return float(cubic_closed(i, t))


def _stencil(offsets, order: int) -> np.ndarray:
    # Weights w with sum_m w_m f(t + o_m h) / h**order ~ f^(order)(t), exact
    # for polynomials of degree < len(offsets).
    offsets = np.asarray(offsets, dtype=np.float64)
    q = len(offsets)
    vander = offsets[None, :] ** np.arange(q)[:, None]
    rhs = np.zeros(q)
    rhs[order] = factorial(order)
    return np.linalg.solve(vander, rhs)


def basis_derivative(
    kv: KnotVector,
    i: int,
    j: int,
    t: float,
    order: int,
    side: str = "central",
    h: float | None = None,
) -> float:
    """Finite-difference derivative of ``B_{i,j}`` at ``t``.

    ``side="central"`` uses the symmetric stencil on ``2p+1`` points with
    ``p = ceil(order/2)``; second-order accurate.  ``side="left"`` or
    ``"right"`` samples only ``t -/+ k h`` for ``k = 1..j``, which is exact on
    a single polynomial piece of degree ``j-1`` and therefore returns the
    one-sided derivative at a knot.

    The default step ``h`` is 1e-5 for first derivatives, 1e-4 for second,
    1e-3 for third and 1e-2 above.
    """
    _check_index(kv, i, j)
    if order < 0 or order >= j:
        raise UnsupportedOrderError(f"derivative order {order} unsupported for order-{j} basis")
    if h is None:
        h = FD_STEPS.get(order, FD_STEP_DEFAULT)
    t = float(t)
    if side == "central":
        if order == 0:
            return _cox_de_boor(i, j, t)
        p = (order + 1) // 2
        offsets = np.arange(-p, p + 1)
    elif side == "left":
        offsets = -np.arange(1, j + 1)
    elif side == "right":
        offsets = np.arange(1, j + 1)
    else:
        raise ValueError(f"side must be 'central', 'left' or 'right', got {side!r}")
    weights = _stencil(offsets, order)
    samples = np.array([_cox_de_boor(i, j, t + o * h) for o in offsets])
    return float(weights @ samples) / h**order


def central_difference(f, t: float, order: int, h: float) -> float:
    """Plain binomial central difference, used as an independent cross-check."""
    total = 0.0
    for m in range(order + 1):
        total += (-1) ** m * comb(order, m) * f(t + (order / 2 - m) * h)
    return total / h**order


@dataclass(frozen=True)
class Curve:
    knots: KnotVector
    control: np.ndarray

    def __post_init__(self):
        control = np.array(self.control, dtype=np.float64)
        if control.ndim == 1:
            control = control[:, None]
        if control.shape[0] != self.knots.n + 1:
            raise ValueError(
                f"need {self.knots.n + 1} control points, got {control.shape[0]}"
            )
        control.flags.writeable = False
        object.__setattr__(self, "control", control)

    @classmethod
    def from_values(cls, values, r: int) -> Curve:
        """Curve with control points ``p_i = (i, f(i))``."""
        values = np.asarray(values, dtype=np.float64)
        n = len(values) - 1
        control = np.column_stack([np.arange(n + 1, dtype=np.float64), values])
        return cls(make_uniform_knots(n, r), control)

    @property
    def domain(self) -> tuple[float, float]:
        return self.knots.domain


def curve_eval_many(c: Curve, t) -> np.ndarray:
    """Evaluate the curve at each parameter in ``t``; shape ``(len(t), dim)``.

    Only the ``r`` basis functions of the containing knot span are used.  The
    right end ``t = n + 1`` is taken as a left limit.
    """
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    lo, hi = c.domain
    if t.size and (t.min() < lo or t.max() > hi or np.isnan(t).any()):
        raise DomainError(f"parameter outside [{lo}, {hi}]")
    return _kernels.curve_values(t, c.control, c.knots.n, c.knots.r)


def curve_eval(c: Curve, t: float) -> np.ndarray:
    return curve_eval_many(c, [t])[0]
