"""Numerical checks that uniform B-splines coincide with MLS approximants.

A spline of order ``r`` with control points ``(i, f(i))`` and the MLS
approximant with constant basis and the centered B-spline weight ``W_r`` agree
after a parameter shift of ``r/2``: ``gamma_2(t) = L(f)(t - r/2)``.  The same
holds per coordinate for tensor-product surfaces with the product weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .bspline_core import Curve, curve_eval_many
from .errors import GridTooCoarseError
from .mls import MlsProblem, PolynomialBasis, mls_apply, monomial_basis
from .surface import Surface, surface_eval_many
from .weights import cardinal_weight, make_interpolatory, product_weight

__all__ = [
    "VerificationReport",
    "SearchGrid",
    "cardinal_weight",
    "make_interpolatory",
    "verify_curve_equivalence",
    "verify_whole_interval",
    "verify_interpolation",
    "verify_surface_equivalence",
    "brute_force_minimize",
    "make_report",
]


@dataclass(frozen=True)
class VerificationReport:
    name: str
    samples: tuple
    tolerance: float
    shift: float
    max_residual: float = field(init=False)
    passed: bool = field(init=False)
    trace: tuple = ()

    def __post_init__(self):
        if not self.samples:
            raise ValueError("a verification report needs at least one sample")
        worst = max(s[3] for s in self.samples)
        object.__setattr__(self, "max_residual", float(worst))
        object.__setattr__(self, "passed", bool(worst <= self.tolerance))

    def summary(self) -> dict:
        return {
            "check": self.name,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "shift": self.shift,
            "samples": len(self.samples),
        }


def make_report(name, points, lhs, rhs, tol, shift, trace=()):
    """Build a report from paired evaluations; residuals are absolute."""
    lhs = np.asarray(lhs, dtype=np.float64)
    rhs = np.asarray(rhs, dtype=np.float64)
    resid = np.abs(lhs - rhs)
    samples = tuple(
        (tuple(np.atleast_1d(p).tolist()), float(a), float(b), float(e))
        for p, a, b, e in zip(points, lhs, rhs, resid)
    )
    return VerificationReport(name, samples, float(tol), float(shift), trace=trace)


def _values_and_n(f_values, n):
    f = np.asarray(f_values, dtype=np.float64)
    if n is None:
        n = f.shape[0] - 1
    if f.shape[0] != n + 1:
        raise ValueError(f"expected {n + 1} values along each axis, got {f.shape[0]}")
    return f, n


def curve_problem(n: int, r: int) -> MlsProblem:
    """Nodes ``0..n``, constant basis, cardinal weight of order ``r``."""
    return MlsProblem(np.arange(n + 1.0), monomial_basis(1, 0), cardinal_weight(r))


def verify_curve_equivalence(f_values, n=None, r=4, sample_count=1000, tol=1e-10, domain=None):
    """Compare the spline ``gamma_2(t)`` with ``L(f)(t - r/2)`` on ``[r-1, n+1]``."""
    f, n = _values_and_n(f_values, n)
    curve = Curve.from_values(f, r)
    lo, hi = domain if domain is not None else curve.domain
    t = np.linspace(lo, hi, sample_count)
    lhs = curve_eval_many(curve, t)[:, 1]
    problem = curve_problem(n, r)
    rhs = [mls_apply(problem, f, ti - r / 2.0) for ti in t]
    return make_report("curve-equivalence", t, lhs, rhs, tol, r / 2.0)


def verify_whole_interval(f_values, n=None, r=4, sample_count=1000, tol=1e-12, domain=None):
    """Direct sum ``sum_i W_r(x - i) f(i)`` against the MLS value at ``x``.

    Samples ``x = t - r/2`` for ``t`` in ``[r-1, n]`` so every sample lies
    where the weights sum to one.  Points reported are the abscissae ``x``.
    """
    f, n = _values_and_n(f_values, n)
    lo, hi = domain if domain is not None else (r - 1.0, float(n))
    x = np.linspace(lo, hi, sample_count) - r / 2.0
    weight = cardinal_weight(r)
    nodes = np.arange(n + 1.0)
    lhs = np.array([weight.at(xi - nodes) @ f for xi in x])
    problem = curve_problem(n, r)
    rhs = [mls_apply(problem, f, xi) for xi in x]
    return make_report("whole-interval", x, lhs, rhs, tol, r / 2.0)


def verify_interpolation(
    f_values, n=None, delta=0.1, sample_count=None, tol=1e-8, limit_offset=1e-6
):
    """Evaluate the interpolatory MLS on ``x = l/100`` and check nodal values.

    Checked at every interior node ``1..n-1``: exactly at the node and at
    ``x_i -/+ limit_offset``.  The full grid goes into ``trace``.
    """
    f, n = _values_and_n(f_values, n)
    weight = make_interpolatory(cardinal_weight(4), delta)
    problem = MlsProblem(np.arange(n + 1.0), monomial_basis(1, 0), weight)
    count = 100 * n if sample_count is None else sample_count
    grid = np.arange(1, count + 1) * (n / count)
    trace = tuple((float(x), mls_apply(problem, f, x)) for x in grid)
    points, lhs, rhs = [], [], []
    for i in range(1, n):
        for x in (i - limit_offset, float(i), i + limit_offset):
            points.append(x)
            lhs.append(mls_apply(problem, f, x))
            rhs.append(f[i])
    return make_report("interpolation", points, lhs, rhs, tol, 0.0, trace=trace)


def surface_problem(n: int, r: int) -> MlsProblem:
    idx = np.arange(n + 1.0)
    ii, jj = np.meshgrid(idx, idx, indexing="ij")
    nodes = np.column_stack([ii.ravel(), jj.ravel()])
    return MlsProblem(nodes, monomial_basis(2, 0), product_weight(cardinal_weight(r)))


def verify_surface_equivalence(f_grid, n=None, r=4, sample_count=50, tol=1e-10, domain=None):
    """Compare ``gamma_3(u, v)`` with ``L2(f)(u - r/2, v - r/2)`` on a square grid.

    Default domain is ``[r-1, n]^2``.
    """
    f, n = _values_and_n(f_grid, n)
    surface = Surface.from_grid(f, r)
    lo, hi = domain if domain is not None else (r - 1.0, float(n))
    axis = np.linspace(lo, hi, sample_count)
    uu, vv = np.meshgrid(axis, axis, indexing="ij")
    u, v = uu.ravel(), vv.ravel()
    lhs = surface_eval_many(surface, u, v)[:, 2]
    problem = surface_problem(n, r)
    flat = f.ravel()
    rhs = [mls_apply(problem, flat, (a - r / 2.0, b - r / 2.0)) for a, b in zip(u, v)]
    return make_report("surface-equivalence", np.column_stack([u, v]), lhs, rhs, tol, r / 2.0)


# -- brute-force oracle ---------------------------------------------------------------


@dataclass(frozen=True)
class SearchGrid:
    points: int = 2001
    rounds: int = 2
    shrink: float = 100.0
    max_points_total: int = 4_000_000
    sweeps: int = 50


def _objective(beta, design, values, weights):
    resid = design @ beta - values
    return float(weights @ (resid * resid))


def brute_force_minimize(
    problem: MlsProblem, values, x, search: SearchGrid | None = None
) -> float:
    """Value at ``x`` of the polynomial minimizing ``sum W_i (p(x_i) - f_i)^2``.

    The polynomial is written in monomials centered at ``x`` so its value at
    ``x`` is the constant coefficient.  A dense scan of a coefficient box is
    refined by shrinking the box around the best point, then finished by
    line searches along each coefficient axis plus conjugate (Powell)
    directions, each line search a three-point parabola.  Only objective
    evaluations are used; no normal equations.
    """
    search = search or SearchGrid()
    x = problem.query(x)
    values = np.asarray(values, dtype=np.float64)
    omega = problem.weight.node_weights(x[None, :] - problem.nodes)
    hit = np.flatnonzero(np.isinf(omega))
    if len(hit):
        return float(values[hit].mean())
    active = np.flatnonzero(omega > 0)
    basis = problem.basis
    _require_downward_closed(basis)
    centered = problem.nodes[active] - x[None, :]
    design = basis(centered)
    f = values[active]
    w = omega[active]
    l = basis.l

    # floor the scale so nearly constant data still gets a resolvable box
    span = max(float(f.max() - f.min()), 1e-8 * (1.0 + float(np.abs(f).max())))
    if len(active) > 1:
        diffs = np.linalg.norm(centered[:, None, :] - centered[None, :, :], axis=2)
        h = float(diffs[diffs > 0].min())
    else:
        h = 1.0
    degrees = basis.exponents.sum(axis=1)
    # constant term scans [min f - span, max f + span]
    center = np.zeros(l)
    center[0] = (f.max() + f.min()) / 2.0
    half = np.array([(f.max() - f.min()) / 2.0 + span] + [2.0 * span / h**k for k in degrees[1:]])
    p = min(search.points, max(3, int(round(search.max_points_total ** (1.0 / l)))))
    if p % 2 == 0:
        p += 1

    for rnd in range(search.rounds + 1):
        axes = center[:, None] + half[:, None] * np.linspace(-1.0, 1.0, p)[None, :]
        idx, _ = _kernels.grid_scan(axes, design, f, w)
        if rnd == 0 and (np.any(idx == 0) or np.any(idx == p - 1)):
            raise GridTooCoarseError("minimum on the boundary of the coefficient box")
        center = axes[np.arange(l), idx]
        half = half / search.shrink

    beta = center.copy()
    scale = half * search.shrink**search.rounds
    directions = [np.eye(l)[k] * scale[k] for k in range(l)]
    for _ in range(search.sweeps):
        start = beta.copy()
        for d in directions:
            beta = _line_min(beta, d, design, f, w)
        move = beta - start
        if np.all(np.abs(move) <= 1e-15 * (1.0 + np.abs(beta))):
            break
        # keep probe offsets at box scale: the parabola vertex error is
        # roughly eps times the offset
        move = move / np.max(np.abs(move) / scale)
        beta = _line_min(beta, move, design, f, w)
        directions = directions[1:] + [move]
    return float(beta[0])


def _line_min(beta, d, design, values, weights):
    # Objective is quadratic along any line, so the parabola through three
    # samples has its vertex at the exact line minimum (up to rounding).
    fm = _objective(beta - d, design, values, weights)
    f0 = _objective(beta, design, values, weights)
    fp = _objective(beta + d, design, values, weights)
    curv = fp - 2.0 * f0 + fm
    if not curv > 0.0:
        return beta
    return beta - d * (fp - fm) / (2.0 * curv)


def _require_downward_closed(basis: PolynomialBasis) -> None:
    exps = {tuple(e) for e in basis.exponents}
    for e in exps:
        for k, power in enumerate(e):
            if power:
                lower = list(e)
                lower[k] -= 1
                if tuple(lower) not in exps:
                    raise ValueError("oracle needs a basis closed under lowering exponents")
