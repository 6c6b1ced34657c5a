"""Weight functions for moving least squares.

Each ``WeightSpec`` describes a weight ``W`` and its reciprocal ``w``.  The
catalog kinds ``exp`` and ``shepard`` are given through ``W``; ``mclain`` and
``levin`` are given through ``w`` (``W = 1/w``).  ``cardinal`` is the centered
B-spline ``W_r(s) = B_{0,r}(|s| + r/2)`` with support ``|s| < r/2``.
``shifted`` adds a constant ``delta`` to a base weight and uses the
interpolatory reciprocal ``w(s) = 1/(W(s) + delta) - 1/(W(0) + delta)``,
which vanishes at ``s = 0``.  ``product`` applies a 1-D base weight to each
coordinate of a displacement and multiplies the results.

What the MLS solver needs is ``1/w`` at every node, called the effective
weight here.  It is ``inf`` where ``w = 0`` (interpolation) and ``0`` outside
a compact support.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import UnsupportedBaseError, ZeroWeightError

RADIAL_KINDS = ("exp", "shepard", "mclain", "levin", "cardinal")
KINDS = RADIAL_KINDS + ("shifted", "product")


@dataclass(frozen=True)
class WeightSpec:
    kind: str
    alpha: float = 1.0
    order: int = 4
    base: WeightSpec | None = None
    delta: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}; expected one of {KINDS}")
        if self.kind in ("exp", "shepard", "mclain", "levin") and not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.kind == "cardinal" and self.order < 1:
            raise ValueError("cardinal order must be >= 1")
        if self.kind == "shifted":
            if self.base is None or self.base.kind not in RADIAL_KINDS:
                raise ValueError("shifted weight needs a radial base weight")
            if not self.delta > 0:
                raise ValueError("delta must be positive")
            if not np.isfinite(self.base.at(0.0)):
                raise ValueError("shifted weight needs a base with finite W(0)")
        if self.kind == "product" and (self.base is None or self.base.kind == "product"):
            raise ValueError("product weight needs a non-product base weight")

    # -- scalar / array evaluation ------------------------------------------------

    @property
    def compact(self) -> bool:
        """True when ``W`` vanishes outside a bounded set."""
        if self.kind == "cardinal":
            return True
        if self.kind == "product":
            return self.base.compact
        return False

    @property
    def support_radius(self) -> float:
        if self.kind == "cardinal":
            return self.order / 2.0
        if self.kind == "product":
            return self.base.support_radius
        return np.inf

    def at(self, s):
        """``W(s)``; signed ``s`` is folded to ``|s|`` (all kinds are even)."""
        s = np.abs(np.asarray(s, dtype=np.float64))
        kind = self.kind
        with np.errstate(divide="ignore", over="ignore"):
            if kind == "exp":
                out = np.exp(-(self.alpha**2) * s**2)
            elif kind == "shepard":
                out = np.where(s == 0.0, np.inf, s ** (-(self.alpha**2)))
            elif kind in ("mclain", "levin"):
                w = self.reciprocal(s)
                out = np.where(w == 0.0, np.inf, 1.0 / w)
            elif kind == "cardinal":
                out = _cardinal(s, self.order)
            elif kind == "shifted":
                out = self.base.at(s) + self.delta
            else:
                raise TypeError("product weight acts on displacement vectors; use node_weights")
        return out[()] if out.ndim == 0 else out

    def reciprocal(self, s):
        """``w(s)``; raises ``ZeroWeightError`` where ``W(s) = 0``."""
        s = np.abs(np.asarray(s, dtype=np.float64))
        kind = self.kind
        a2 = self.alpha**2
        with np.errstate(divide="ignore", over="ignore"):
            if kind == "mclain":
                out = s**2 * np.exp(-a2 * s**2)
            elif kind == "levin":
                out = np.expm1(a2 * s**2)
            elif kind == "shifted":
                peak = self.base.at(0.0) + self.delta
                out = 1.0 / (self.base.at(s) + self.delta) - 1.0 / peak
                out = np.maximum(out, 0.0)
            elif kind == "product":
                raise TypeError("product weight acts on displacement vectors")
            else:
                big = self.at(s)
                if np.any(big == 0.0):
                    raise ZeroWeightError("W(s) = 0: node lies outside the weight support")
                out = np.where(np.isinf(big), 0.0, 1.0 / big)
        return out[()] if out.ndim == 0 else out

    def effective(self, s):
        """``1/w(s)`` with ``inf`` at ``w = 0`` and ``0`` where ``W`` vanishes."""
        s = np.abs(np.asarray(s, dtype=np.float64))
        if self.kind in ("exp", "shepard", "cardinal"):
            out = np.asarray(self.at(s), dtype=np.float64)
        else:
            w = np.asarray(self.reciprocal(s), dtype=np.float64)
            with np.errstate(divide="ignore"):
                out = np.where(w == 0.0, np.inf, 1.0 / w)
        return out[()] if out.ndim == 0 else out

    def node_weights(self, displacement) -> np.ndarray:
        """Effective weights for an ``(m, d)`` array of ``x - x_i``."""
        disp = np.asarray(displacement, dtype=np.float64)
        if disp.ndim == 1:
            disp = disp[:, None]
        if self.kind == "product":
            return np.prod(self.base.effective(disp), axis=1)
        return np.atleast_1d(self.effective(np.linalg.norm(disp, axis=1)))

    def describe(self) -> str:
        if self.kind == "cardinal":
            return f"cardinal(r={self.order})"
        if self.kind == "shifted":
            return f"shifted({self.base.describe()}, delta={self.delta:g})"
        if self.kind == "product":
            return f"product({self.base.describe()})"
        return f"{self.kind}(alpha={self.alpha:g})"


def _cardinal(s: np.ndarray, r: int) -> np.ndarray:
    t = np.atleast_1d(s).ravel() + r / 2.0
    vals = _kernels.cox_de_boor_table(t, r, r)[0]
    return vals.reshape(np.shape(s))


# -- constructors -------------------------------------------------------------------


def exp_weight(alpha: float = 1.0) -> WeightSpec:
    return WeightSpec("exp", alpha=alpha)


def shepard_weight(alpha: float = 1.0) -> WeightSpec:
    return WeightSpec("shepard", alpha=alpha)


def mclain_weight(alpha: float = 1.0) -> WeightSpec:
    return WeightSpec("mclain", alpha=alpha)


def levin_weight(alpha: float = 1.0) -> WeightSpec:
    return WeightSpec("levin", alpha=alpha)


def cardinal_weight(r: int = 4) -> WeightSpec:
    return WeightSpec("cardinal", order=r)


def product_weight(base: WeightSpec) -> WeightSpec:
    return WeightSpec("product", base=base)


def make_interpolatory(base: WeightSpec, delta: float) -> WeightSpec:
    """Shift ``base`` by ``delta`` so the reciprocal weight vanishes at 0.

    Only defined for a base whose maximum is ``W(0) = 2/3`` (the cubic
    cardinal weight), where the reciprocal reads
    ``1/(W + delta) - 3/(2 + 3 delta)``.
    """
    if base.kind == "shifted" or base.kind == "product":
        raise UnsupportedBaseError(f"cannot shift a {base.kind} weight")
    peak = float(base.at(0.0))
    if not np.isclose(peak, 2.0 / 3.0, rtol=0.0, atol=1e-14):
        raise UnsupportedBaseError(f"base weight has W(0) = {peak}, need 2/3")
    if not delta > 0:
        raise ValueError("delta must be positive")
    return WeightSpec("shifted", base=base, delta=float(delta))


def weight_eval(spec: WeightSpec, s: float) -> float:
    return float(spec.at(s))


def reciprocal_weight(spec: WeightSpec, s: float) -> float:
    return float(spec.reciprocal(s))


CATALOG = {
    "exp": exp_weight,
    "shepard": shepard_weight,
    "mclain": mclain_weight,
    "levin": levin_weight,
}
