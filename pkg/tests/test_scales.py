import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphrips.metric_graph import convexity_radius, cycle_graph
from graphrips.scales import (
    ScaleWindow,
    alpha_constant,
    gh_window,
    h_lower_coefficient,
    h_window,
    max_feasible_eps,
    plan_density,
)


def test_gh_window_cycle12():
    rho = convexity_radius(cycle_graph(3, 4.0))
    assert rho == 3.0
    w = gh_window(rho, 0.125)
    assert (w.lower, w.upper) == (0.375, 2.25)
    assert w.feasible
    assert 0.375 not in w and 2.25 not in w and 1.0 in w


def test_gh_window_perfect_sample():
    w = gh_window(2.0, 0.0)
    assert (w.lower, w.upper) == (0.0, 1.5)


def test_gh_window_infeasible():
    assert not gh_window(1.0, 1.0).feasible


@pytest.mark.parametrize("delta,eps,expected", [(2.0, 1e-3, 0.026), (1.0, 1.0, 17.0)])
def test_alpha_constant(delta, eps, expected):
    assert alpha_constant(delta, eps) == pytest.approx(expected, rel=1e-12)


def test_alpha_constant_half_pi():
    assert alpha_constant(math.pi / 2, 0.01) == pytest.approx(0.2213, abs=1e-4)


def test_h_window_feasible():
    w = h_window(1.0, 2.0, 1e-4)
    assert h_lower_coefficient(2.0) == 422.0
    assert w.lower == pytest.approx(0.0422, rel=1e-12)
    assert w.upper == pytest.approx(1 / 3, rel=1e-12)
    assert w.lower_inclusive and not w.upper_inclusive
    assert w.feasible
    assert w.lower in w


def test_h_window_infeasible():
    w = h_window(1.0, 2.0, 1e-3)
    assert w.lower == pytest.approx(0.422, rel=1e-12)
    assert not w.feasible


@given(st.floats(1.0, 10.0), st.floats(1e-6, 1.0), st.floats(1.01, 100.0))
def test_h_window_lower_is_linear_in_eps(delta, eps, scale):
    a = h_window(1.0, delta, eps).lower
    b = h_window(1.0, delta, eps * scale).lower
    assert b == pytest.approx(a * scale, rel=1e-12)


def test_max_feasible_eps():
    assert max_feasible_eps(1.0, 2.0) == pytest.approx(7.899e-4, abs=1e-7)
    assert max_feasible_eps(1.0, 1.0) == pytest.approx(1 / 210, rel=1e-12)
    assert max_feasible_eps(3.0, 1.0) == pytest.approx(3 / 210, rel=1e-12)


@given(st.floats(0.01, 10.0), st.floats(1.0, 10.0))
def test_window_closes_exactly_at_max_feasible_eps(rho, delta):
    e = max_feasible_eps(rho, delta)
    assert h_window(rho, delta, e * 0.999).feasible
    assert not h_window(rho, delta, e * 1.001).feasible


def test_plan_density_unit_square():
    plan = plan_density(1.0, 2.0, 0.9, total_length=4.0)
    assert plan.eps == pytest.approx(7.11e-4, abs=1e-6)
    assert plan.spacing == pytest.approx(3.55e-4, abs=1e-6)
    assert plan.point_count == math.ceil(4.0 / plan.spacing)
    # ~1.1e4 points: far beyond a desk-scale Rips computation
    assert plan.point_count == pytest.approx(11258, rel=1e-3)


def test_plan_density_boundary():
    e = max_feasible_eps(1.0, 2.0)
    assert plan_density(1.0, 2.0, 0.999999).eps == pytest.approx(e, rel=1e-5)
    with pytest.raises(ValueError):
        plan_density(1.0, 2.0, 1.0)


@given(st.floats(0.01, 10.0), st.floats(1.0, 10.0), st.floats(0.05, 0.99))
def test_plan_is_inside_the_hypotheses(rho, delta, safety):
    plan = plan_density(rho, delta, safety)
    assert h_window(rho, delta, plan.eps).feasible
    # sampling at spacing s gives Hausdorff distance s / 2 = eps / 4
    assert 4 * (plan.spacing / 2) <= plan.eps
    assert plan.eps < 2 * rho / delta


def test_window_position():
    w = ScaleWindow(1.0, 3.0)
    assert w.at(0.5) == 2.0
    assert w.at(0.0, 0.5) == 1.5
    assert w.at(1.0, 0.5) == 2.5
    with pytest.raises(ValueError):
        ScaleWindow(2.0, 1.0).at(0.5)


@pytest.mark.parametrize("bad", [(0.0, 1.0), (-1.0, 1.0)])
def test_gh_window_rejects_bad_rho(bad):
    with pytest.raises(ValueError):
        gh_window(*bad)


def test_delta_below_one_rejected():
    with pytest.raises(ValueError):
        h_window(1.0, 0.5, 0.1)
