import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bsmls.bspline_core import Curve, basis_eval, curve_eval, make_uniform_knots
from bsmls.equivalence import surface_problem
from bsmls.errors import DomainError
from bsmls.mls import mls_apply
from bsmls.surface import Surface, mls_surface_apply, surface_eval, surface_eval_many
from bsmls.weights import cardinal_weight, exp_weight, product_weight


def full_sum(f, r, u, v):
    kv = make_uniform_knots(f.shape[0] - 1, r)
    bu = np.array([basis_eval(kv, i, r, u) for i in range(f.shape[0])])
    bv = np.array([basis_eval(kv, j, r, v) for j in range(f.shape[0])])
    return float(bu @ f @ bv)


def test_constant_height():
    s = Surface.from_grid(np.full((8, 8), 3.0), 4)
    u = np.linspace(3, 8, 13)
    assert np.allclose(surface_eval_many(s, u, u[::-1])[:, 2], 3.0, atol=1e-14, rtol=0)


def test_first_coordinates_shifted():
    s = Surface.from_grid(np.zeros((11, 11)), 4)
    p = surface_eval(s, 6.5, 4.25)
    assert p[:2] == pytest.approx([4.5, 2.25], abs=1e-14)


def test_local_block_equals_full_sum(xi0_surface):
    s = Surface.from_grid(xi0_surface, 4)
    assert surface_eval(s, 6.5, 6.5)[2] == pytest.approx(full_sum(xi0_surface, 4, 6.5, 6.5), abs=1e-13)


@settings(max_examples=40, deadline=None)
@given(u=st.floats(3.0, 11.0), v=st.floats(3.0, 11.0))
def test_block_reduction_everywhere(u, v):
    rng = np.random.default_rng(7)
    f = rng.normal(size=(11, 11))
    s = Surface.from_grid(f, 4)
    if u == 11.0 or v == 11.0:
        return  # right end is a left limit; the full Cox-de Boor sum is 0 there
    assert abs(surface_eval(s, u, v)[2] - full_sum(f, 4, u, v)) <= 1e-13


def test_separable_grid_is_product_of_curves(rng):
    g, h = rng.normal(size=11), rng.normal(size=11)
    s = Surface.from_grid(np.outer(g, h), 4)
    cg, ch = Curve.from_values(g, 4), Curve.from_values(h, 4)
    for u, v in rng.uniform(3, 11, (20, 2)):
        assert surface_eval(s, u, v)[2] == pytest.approx(curve_eval(cg, u)[1] * curve_eval(ch, v)[1], abs=1e-12)


def test_tensor_consistency_nested_curves(rng):
    f = rng.normal(size=(9, 9))
    s = Surface.from_grid(f, 3)
    for u, v in rng.uniform(2, 9, (10, 2)):
        inner = [curve_eval(Curve.from_values(f[:, j], 3), u)[1] for j in range(9)]
        nested = curve_eval(Curve.from_values(inner, 3), v)[1]
        assert surface_eval(s, u, v)[2] == pytest.approx(nested, abs=1e-12)


def test_domain_error():
    s = Surface.from_grid(np.zeros((6, 6)), 3)
    with pytest.raises(DomainError):
        surface_eval(s, 1.0, 3.0)
    with pytest.raises(ValueError):
        surface_eval_many(s, [3.0, 4.0], [3.0])


def test_bad_control_grid():
    kv = make_uniform_knots(4, 3)
    with pytest.raises(ValueError):
        Surface(kv, kv, np.zeros((4, 5)))
    with pytest.raises(ValueError):
        Surface(kv, make_uniform_knots(4, 2), np.zeros((5, 5)))


def test_mls_surface_constant():
    assert mls_surface_apply(np.ones((11, 11)), cardinal_weight(4), 4.3, 6.1) == pytest.approx(1.0, abs=1e-15)


def test_mls_surface_block_vs_full(xi0_surface, rng):
    w = cardinal_weight(4)
    assert mls_surface_apply(xi0_surface, w, 5.5, 5.5) == pytest.approx(
        mls_surface_apply(xi0_surface, w, 5.5, 5.5, block=False), abs=1e-15
    )
    for x, y in rng.uniform(0, 10, (25, 2)):
        a = mls_surface_apply(xi0_surface, w, x, y)
        b = mls_surface_apply(xi0_surface, w, x, y, block=False)
        assert abs(a - b) <= 1e-13


def test_mls_surface_matches_engine(xi0_surface, rng):
    problem = surface_problem(10, 4)
    for x, y in rng.uniform(1, 8, (15, 2)):
        via_engine = mls_apply(problem, xi0_surface.ravel(), (x, y))
        direct = mls_surface_apply(xi0_surface, product_weight(cardinal_weight(4)), x, y)
        assert abs(via_engine - direct) <= 1e-12


def test_mls_surface_needs_compact_weight():
    with pytest.raises(ValueError):
        mls_surface_apply(np.ones((3, 3)), exp_weight(), 1.0, 1.0)
