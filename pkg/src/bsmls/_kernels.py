"""Hot loops, each with a numba and a pure-numpy implementation.

The public names at the bottom pick one implementation per ``USE_NUMBA``.
Both variants are importable directly (``*_numpy`` / ``*_numba``) so tests and
the benchmark can exercise each path regardless of the flag.

All kernels assume uniform integer knots ``t_i = i``.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import USE_NUMBA, njit

# ---------------------------------------------------------------------------
# Full Cox-de Boor table: B_{i,j}(t) for every i on knots 0..last_knot.
# ---------------------------------------------------------------------------


def cox_de_boor_table_numpy(t, last_knot, order):
    t = np.asarray(t, dtype=np.float64)
    idx = np.arange(last_knot, dtype=np.float64)[:, None]
    table = ((idx <= t) & (t < idx + 1.0)).astype(np.float64)
    for j in range(2, order + 1):
        count = last_knot - j + 1
        i = idx[:count]
        # denominators t_{i+j-1} - t_i and t_{i+j} - t_{i+1} are both j - 1 > 0
        table = ((t - i) * table[:count] + (i + j - t) * table[1 : count + 1]) / (j - 1)
    return table


def _cox_de_boor_table_loop(t, last_knot, order):
    nt = t.shape[0]
    out = np.empty((last_knot - order + 1, nt))
    work = np.empty(last_knot)
    for s in range(nt):
        ts = t[s]
        for i in range(last_knot):
            work[i] = 1.0 if (i <= ts and ts < i + 1.0) else 0.0
        for j in range(2, order + 1):
            inv = 1.0 / (j - 1)
            for i in range(last_knot - j + 1):
                work[i] = ((ts - i) * work[i] + (i + j - ts) * work[i + 1]) * inv
        for i in range(last_knot - order + 1):
            out[i, s] = work[i]
    return out


cox_de_boor_table_numba = njit(_cox_de_boor_table_loop)


# ---------------------------------------------------------------------------
# Local (span) basis: the r nonzero B_{i,r}(t), i = span-r+1..span.
# Spans are clamped to [r-1, n] so t = n+1 is evaluated as a left limit.
# ---------------------------------------------------------------------------


def span_basis_numpy(t, n, r):
    t = np.asarray(t, dtype=np.float64)
    spans = np.clip(np.floor(t).astype(np.int64), r - 1, n)
    nt = t.shape[0]
    vals = np.zeros((nt, r))
    vals[:, 0] = 1.0
    left = np.zeros((nt, r))
    right = np.zeros((nt, r))
    for j in range(1, r):
        left[:, j] = t - (spans + 1 - j)
        right[:, j] = spans + j - t
        saved = np.zeros(nt)
        for q in range(j):
            temp = vals[:, q] / (right[:, q + 1] + left[:, j - q])
            vals[:, q] = saved + right[:, q + 1] * temp
            saved = left[:, j - q] * temp
        vals[:, j] = saved
    return spans, vals


def _span_basis_loop(t, n, r):
    nt = t.shape[0]
    spans = np.empty(nt, dtype=np.int64)
    vals = np.empty((nt, r))
    left = np.empty(r)
    right = np.empty(r)
    for s in range(nt):
        ts = t[s]
        k = int(math.floor(ts))
        if k < r - 1:
            k = r - 1
        elif k > n:
            k = n
        spans[s] = k
        vals[s, 0] = 1.0
        for j in range(1, r):
            left[j] = ts - (k + 1 - j)
            right[j] = k + j - ts
            saved = 0.0
            for q in range(j):
                temp = vals[s, q] / (right[q + 1] + left[j - q])
                vals[s, q] = saved + right[q + 1] * temp
                saved = left[j - q] * temp
            vals[s, j] = saved
    return spans, vals


span_basis_numba = njit(_span_basis_loop)


# ---------------------------------------------------------------------------
# Curves and surfaces through the span basis.
# ---------------------------------------------------------------------------


def curve_values_numpy(t, control, n, r):
    spans, vals = span_basis_numpy(t, n, r)
    rows = spans[:, None] - (r - 1) + np.arange(r)[None, :]
    return np.einsum("sq,sqk->sk", vals, control[rows])


def _curve_values_jit(t, control, n, r):
    spans, vals = span_basis_numba(t, n, r)
    nt = t.shape[0]
    dim = control.shape[1]
    out = np.zeros((nt, dim))
    for s in range(nt):
        base = spans[s] - (r - 1)
        for q in range(r):
            b = vals[s, q]
            for k in range(dim):
                out[s, k] += b * control[base + q, k]
    return out


curve_values_numba = njit(_curve_values_jit)


def surface_values_numpy(u, v, control, n, r):
    su, bu = span_basis_numpy(u, n, r)
    sv, bv = span_basis_numpy(v, n, r)
    offs = np.arange(r)
    rows = (su[:, None] - (r - 1) + offs)[:, :, None]
    cols = (sv[:, None] - (r - 1) + offs)[:, None, :]
    block = control[rows, cols]  # (S, r, r, k)
    return np.einsum("sp,sq,spqk->sk", bu, bv, block)


def _surface_values_jit(u, v, control, n, r):
    su, bu = span_basis_numba(u, n, r)
    sv, bv = span_basis_numba(v, n, r)
    ns = u.shape[0]
    dim = control.shape[2]
    out = np.zeros((ns, dim))
    for s in range(ns):
        i0 = su[s] - (r - 1)
        j0 = sv[s] - (r - 1)
        for p in range(r):
            for q in range(r):
                b = bu[s, p] * bv[s, q]
                for k in range(dim):
                    out[s, k] += b * control[i0 + p, j0 + q, k]
    return out


surface_values_numba = njit(_surface_values_jit)


# ---------------------------------------------------------------------------
# Coefficient-grid scan for the brute-force minimizer.
# axes: (l, P) candidate values per coefficient; design: (m, l); the scan
# covers the full tensor grid of P**l points.
# ---------------------------------------------------------------------------


def grid_scan_numpy(axes, design, values, weights, budget=1 << 21):
    l, p = axes.shape
    # every combination of the trailing axes, vectorized over the leading one
    if l > 1:
        mesh = np.meshgrid(*axes[1:], indexing="ij")
        tails = np.stack([g.ravel() for g in mesh], axis=1)
        tail_pred = tails @ design[:, 1:].T
    else:
        tail_pred = np.zeros((1, design.shape[0]))
    lead = axes[0][:, None, None] * design[None, None, :, 0] - values[None, None, :]
    chunk = max(1, budget // (p * design.shape[0]))
    best_val = np.inf
    best = (0, 0)
    for start in range(0, tail_pred.shape[0], chunk):
        resid = lead + tail_pred[None, start : start + chunk, :]
        obj = (resid * resid) @ weights
        k = np.unravel_index(int(np.argmin(obj)), obj.shape)
        if obj[k] < best_val:
            best_val = float(obj[k])
            best = (int(k[0]), start + int(k[1]))
    tail_idx = np.unravel_index(best[1], (p,) * (l - 1)) if l > 1 else ()
    idx = np.array((best[0],) + tuple(int(t) for t in tail_idx), dtype=np.int64)
    return idx, best_val


def _grid_scan_loop(axes, design, values, weights):
    l = axes.shape[0]
    p = axes.shape[1]
    m = design.shape[0]
    ntail = p ** (l - 1)
    digits = np.zeros(l, dtype=np.int64)
    best = np.zeros(l, dtype=np.int64)
    tail = np.empty(m)
    best_val = np.inf
    for flat in range(ntail):
        rem = flat
        for k in range(l - 1, 0, -1):
            digits[k] = rem % p
            rem //= p
        for i in range(m):
            acc = -values[i]
            for k in range(1, l):
                acc += axes[k, digits[k]] * design[i, k]
            tail[i] = acc
        for a in range(p):
            b0 = axes[0, a]
            obj = 0.0
            for i in range(m):
                diff = b0 * design[i, 0] + tail[i]
                obj += weights[i] * diff * diff
            if obj < best_val:
                best_val = obj
                best[0] = a
                for k in range(1, l):
                    best[k] = digits[k]
    return best, best_val


grid_scan_numba = njit(_grid_scan_loop)


if USE_NUMBA:
    cox_de_boor_table = cox_de_boor_table_numba
    span_basis = span_basis_numba
    curve_values = curve_values_numba
    surface_values = surface_values_numba
    grid_scan = grid_scan_numba
else:
    cox_de_boor_table = cox_de_boor_table_numpy
    span_basis = span_basis_numpy
    curve_values = curve_values_numpy
    surface_values = surface_values_numpy
    grid_scan = grid_scan_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"

VARIANTS = {
    "cox_de_boor_table": (cox_de_boor_table_numpy, cox_de_boor_table_numba),
    "span_basis": (span_basis_numpy, span_basis_numba),
    "curve_values": (curve_values_numpy, curve_values_numba),
    "surface_values": (surface_values_numpy, surface_values_numba),
    "grid_scan": (grid_scan_numpy, grid_scan_numba),
}
