from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bsmls.bspline_core import (
    Curve,
    basis_derivative,
    basis_eval,
    basis_eval_cubic_closed,
    basis_values,
    central_difference,
    cubic_closed,
    curve_eval,
    curve_eval_many,
    make_uniform_knots,
)
from bsmls.errors import (
    DomainError,
    IndexOutOfRangeError,
    OrderOutOfRangeError,
    UnsupportedOrderError,
)

from oracles import bspline_derivative_exact, bspline_exact


def test_knots_n10_r4():
    kv = make_uniform_knots(10, 4)
    assert kv.knots.tolist() == list(range(15))
    assert kv.domain == (3.0, 11.0)


def test_knots_minimal():
    assert make_uniform_knots(0, 1).knots.tolist() == [0.0, 1.0]


@pytest.mark.parametrize("n, r", [(2, 4), (5, 0), (3, -1), (0, 2)])
def test_knots_order_out_of_range(n, r):
    with pytest.raises(OrderOutOfRangeError):
        make_uniform_knots(n, r)


def test_knots_are_read_only():
    kv = make_uniform_knots(4, 3)
    with pytest.raises(ValueError):
        kv.knots[0] = 7.0


# Frozen from the exact rational recursion in oracles.py.
@pytest.mark.parametrize(
    "i, j, t, expected",
    [
        (0, 1, 0.5, 1.0),
        (0, 4, 2.0, 2.0 / 3.0),
        (0, 2, 1.0, 1.0),
        (3, 4, 2.0, 0.0),
        (0, 4, 1.0, 1.0 / 6.0),
        (0, 4, 2.5, 23.0 / 48.0),
        (2, 3, 3.5, 0.75),
        (1, 5, 3.0, 11.0 / 24.0),
    ],
)
def test_basis_eval_examples(i, j, t, expected):
    kv = make_uniform_knots(10, 5)
    assert float(bspline_exact(i, j, Fraction(t))) == pytest.approx(expected, abs=0)
    assert basis_eval(kv, i, j, t) == pytest.approx(expected, abs=1e-15)


def test_basis_eval_half_open_base_case():
    kv = make_uniform_knots(3, 1)
    assert basis_eval(kv, 1, 1, 1.0) == 1.0
    assert basis_eval(kv, 1, 1, 2.0) == 0.0


@pytest.mark.parametrize("i, j", [(-1, 2), (12, 3), (0, 0), (0, 5)])
def test_basis_eval_index_errors(i, j):
    kv = make_uniform_knots(10, 4)
    with pytest.raises(IndexOutOfRangeError):
        basis_eval(kv, i, j, 1.0)


@pytest.mark.parametrize(
    "i, t, expected",
    [(0, 1.0, 1.0 / 6.0), (0, 2.5, 23.0 / 48.0), (5, 9.1, 0.0), (2, 4.0, 2.0 / 3.0), (3, 2.0, 0.0)],
)
def test_cubic_closed_examples(i, t, expected):
    assert basis_eval_cubic_closed(i, t) == pytest.approx(expected, abs=1e-15)


def test_cubic_closed_matches_recursion_dense():
    kv = make_uniform_knots(10, 4)
    t = np.linspace(0.0, 14.0, 10_001)
    table = basis_values(kv, 4, t)
    closed = np.array([cubic_closed(i, t) for i in range(table.shape[0])])
    assert np.max(np.abs(closed - table)) <= 1e-13


def test_basis_values_matches_scalar_recursion(rng):
    kv = make_uniform_knots(8, 5)
    t = rng.uniform(0.0, 13.0, 200)
    for j in range(1, 6):
        table = basis_values(kv, j, t)
        for i in (0, 3, kv.last_knot - j):
            scalar = [basis_eval(kv, i, j, ti) for ti in t]
            assert np.max(np.abs(table[i] - scalar)) <= 1e-14


@pytest.mark.parametrize("r", range(1, 7))
def test_partition_of_unity(r):
    n = r + 6
    kv = make_uniform_knots(n, r)
    t = np.linspace(r - 1, n + 1, 1002)[1:-1]
    total = basis_values(kv, r, t).sum(axis=0)
    assert np.max(np.abs(total - 1.0)) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(
    j=st.integers(1, 6),
    i=st.integers(0, 5),
    t=st.floats(-2.0, 14.0, allow_nan=False),
)
def test_positivity_and_support(j, i, t):
    kv = make_uniform_knots(10, 6)
    value = basis_eval(kv, i, j, t)
    # stay clear of the support ends, where t**(j-1) can underflow
    if i + 1e-3 < t < i + j - 1e-3:
        assert value > 0.0
    elif t < i or t >= i + j or (t == i and j > 1):
        assert value == 0.0


@settings(max_examples=200, deadline=None)
@given(
    j=st.integers(1, 6),
    i=st.integers(0, 6),
    k=st.integers(0, 6),
    s=st.floats(0.0, 6.0, exclude_min=True, exclude_max=True),
)
def test_translation_invariance(j, i, k, s):
    kv = make_uniform_knots(12, 6)
    s = min(s, j - 1e-9)
    assert abs(basis_eval(kv, i, j, s + i) - basis_eval(kv, k, j, s + k)) <= 1e-13


@settings(max_examples=100, deadline=None)
@given(i=st.integers(2, 8), t=st.floats(0.0, 14.0))
def test_shift_by_two(i, t):
    kv = make_uniform_knots(10, 4)
    if t + 2 > 14.0:
        return
    assert abs(basis_eval(kv, i - 2, 4, t) - basis_eval(kv, i, 4, t + 2)) <= 1e-13


@pytest.mark.parametrize(
    "i, j, t, order, expected",
    [(0, 4, 2.0, 1, 0.0), (0, 2, 0.5, 1, 1.0), (0, 4, 1.5, 1, 0.625), (0, 4, 1.5, 2, -0.5), (0, 3, 0.25, 2, 1.0)],
)
def test_basis_derivative_examples(i, j, t, order, expected):
    kv = make_uniform_knots(10, 4)
    # expected values frozen from the exact derivative oracle
    assert float(bspline_derivative_exact(i, j, Fraction(t), order)) == expected
    assert basis_derivative(kv, i, j, t, order) == pytest.approx(expected, abs=1e-6)


def test_basis_derivative_order_zero_is_value():
    kv = make_uniform_knots(10, 4)
    assert basis_derivative(kv, 0, 4, 0.5, 0) == basis_eval(kv, 0, 4, 0.5)


def test_one_sided_derivative_at_knot():
    kv = make_uniform_knots(10, 4)
    # third derivative of B_{0,4} at t = 1: +1 on the left piece, -3 on the right
    left = basis_derivative(kv, 0, 4, 1.0, 3, side="left")
    right = basis_derivative(kv, 0, 4, 1.0, 3, side="right")
    assert left == pytest.approx(float(bspline_derivative_exact(0, 4, Fraction(1, 2), 3)), abs=1e-6)
    assert right == pytest.approx(float(bspline_derivative_exact(0, 4, Fraction(3, 2), 3)), abs=1e-6)


@pytest.mark.parametrize("order", [4, 5, -1])
def test_basis_derivative_unsupported_order(order):
    kv = make_uniform_knots(10, 4)
    with pytest.raises(UnsupportedOrderError):
        basis_derivative(kv, 0, 4, 1.5, order)


def test_basis_derivative_bad_side():
    kv = make_uniform_knots(10, 4)
    with pytest.raises(ValueError):
        basis_derivative(kv, 0, 4, 1.5, 1, side="up")


def test_central_difference_cross_check():
    kv = make_uniform_knots(10, 4)
    f = lambda t: basis_eval(kv, 0, 4, t)  # noqa: E731
    for t in (0.3, 1.7, 2.2, 3.6):
        for order, h in ((1, 1e-5), (2, 1e-4)):
            assert central_difference(f, t, order, h) == pytest.approx(
                basis_derivative(kv, 0, 4, t, order), abs=1e-5
            )


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_continuity_class(r):
    n = r + 4
    kv = make_uniform_knots(n, r)
    for i in range(kv.last_knot - r + 1):
        for knot in range(i + 1, i + r):
            for order in range(r - 1):
                # the one-sided stencil is exact on a piece, so a wide step
                # only trades truncation error (none) for less rounding
                h = None if order < 2 else 0.05
                left = basis_derivative(kv, i, r, knot, order, side="left", h=h)
                right = basis_derivative(kv, i, r, knot, order, side="right", h=h)
                assert abs(left - right) <= 1e-6


def test_curve_constant_control():
    c = Curve.from_values(np.full(11, 5.0), 4)
    pts = curve_eval_many(c, np.linspace(3.0, 11.0, 57))
    assert np.allclose(pts[:, 1], 5.0, atol=1e-14, rtol=0)


def test_curve_first_coordinate_is_shifted_parameter():
    c = Curve.from_values(np.zeros(11), 4)
    t = np.linspace(3.0, 11.0, 101)
    assert np.max(np.abs(curve_eval_many(c, t)[:, 0] - (t - 2.0))) <= 1e-13


def test_curve_local_support_xi0(xi0_curve):
    c = Curve.from_values(xi0_curve, 4)
    kv = c.knots
    local = sum(basis_eval(kv, i, 4, 5.5) * xi0_curve[i] for i in range(2, 6))
    full = sum(basis_eval(kv, i, 4, 5.5) * xi0_curve[i] for i in range(11))
    assert curve_eval(c, 5.5)[1] == pytest.approx(local, abs=1e-14)
    assert local == pytest.approx(full, abs=1e-15)


def test_curve_right_endpoint_is_left_limit(xi0_curve):
    c = Curve.from_values(xi0_curve, 4)
    end = curve_eval(c, 11.0)[1]
    near = curve_eval(c, 11.0 - 1e-9)[1]
    assert end == pytest.approx(near, abs=1e-7)
    assert end != 0.0


@pytest.mark.parametrize("t", [2.999, 11.001, np.nan])
def test_curve_domain_error(t, xi0_curve):
    c = Curve.from_values(xi0_curve, 4)
    with pytest.raises(DomainError):
        curve_eval(c, t)


def test_curve_control_count_mismatch():
    with pytest.raises(ValueError):
        Curve(make_uniform_knots(5, 3), np.zeros((4, 2)))
