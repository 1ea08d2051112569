import math

import numpy as np
import pytest

from susyqm.grids import (
    Bracket,
    Grid,
    GridError,
    SampledFunction,
    bisect_root,
    count_nodes,
    cumulative_integral,
    derivative,
    find_bracket,
    integrate,
    sample,
    second_derivative,
    simpson_weights,
)


def test_grid_basic_properties():
    g = Grid(0.0, 1.0, 11)
    assert g.h == pytest.approx(0.1)
    assert g.points[0] == 0.0 and g.points[-1] == 1.0
    assert g.refine().n_points == 21
    assert g.coarsen().n_points == 6


def test_grid_rejects_bad_bounds():
    with pytest.raises(GridError):
        Grid(1.0, 0.0, 11)
    with pytest.raises(GridError):
        Grid(0.0, 1.0, 1)


def test_simpson_weights_sum_to_interval():
    w = simpson_weights(11, 0.1)
    assert w.sum() == pytest.approx(1.0)


def test_integrate_polynomial_exact():
    g = Grid(0.0, 2.0, 201)
    f = sample(lambda x: 3 * x**2, g)
    assert integrate(f) == pytest.approx(8.0, abs=1e-10)


def test_integrate_gaussian():
    g = Grid(-10.0, 10.0, 2001)
    f = sample(lambda x: np.exp(-(x**2)), g)
    assert integrate(f) == pytest.approx(math.sqrt(math.pi), rel=1e-12)


def test_cumulative_integral_endpoints():
    g = Grid(0.0, 1.0, 1001)
    f = sample(lambda x: 2 * x, g)
    cum = cumulative_integral(f)
    assert cum.values[0] == pytest.approx(0.0)
    assert cum.values[-1] == pytest.approx(1.0, abs=1e-10)
    assert np.allclose(cum.values, g.points**2, atol=1e-8)


def test_derivative_fourth_order():
    g = Grid(-1.0, 1.0, 101)
    f = sample(np.sin, g)
    err = np.max(np.abs(derivative(f).values[3:-3] - np.cos(g.points[3:-3])))
    assert err < 1e-7  # interior stencil; the one-sided edge rows are lower order


def test_second_derivative():
    g = Grid(-1.0, 1.0, 401)
    f = sample(np.sin, g)
    err = np.max(np.abs(second_derivative(f).values[3:-3] + np.sin(g.points[3:-3])))
    assert err < 1e-5


def test_bisect_root_and_bracket():
    b = find_bracket(lambda x: x**2 - 2.0, 0.0, 2.0)
    root = bisect_root(lambda x: x**2 - 2.0, b)
    assert root == pytest.approx(math.sqrt(2.0), abs=1e-10)


def test_bracket_requires_sign_change():
    with pytest.raises(ValueError):
        Bracket(0.0, 1.0, 1.0, 2.0)


def test_count_nodes_ignores_noise():
    x = np.linspace(0, np.pi, 200)
    clean = np.sin(3 * x)  # two interior nodes
    assert count_nodes(clean[1:-1]) == 2
    noisy = clean + 1e-12 * np.sin(400 * x)
    assert count_nodes(noisy[1:-1]) == 2


def test_sampled_function_shape_mismatch():
    g = Grid(0.0, 1.0, 11)
    with pytest.raises(GridError):
        SampledFunction(g, np.zeros(10))
