import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphrips.embedded_graph import hausdorff_sample, regular_polygon
from graphrips.metric_graph import restriction_metric
from graphrips.path_metric import (
    FiniteMetric,
    alpha_circumcenter,
    diameter,
    epsilon_path_witness,
    path_metric,
)

from oracles import brute_simple_path_length, floyd_path_metric

LINE = np.array([[0.0, 0.0], [0.5, 0.0], [1.0, 0.0]])
SQUARE8 = np.array([[0, 0], [0.5, 0], [1, 0], [1, 0.5], [1, 1], [0.5, 1], [0, 1], [0, 0.5]], dtype=float)


def test_collinear_chain():
    m = path_metric(LINE, 0.6)
    assert m.d[0, 2] == pytest.approx(1.0, abs=1e-12)
    assert m.d[0, 2] > 1.0  # hops are rounded up, never down


def test_no_admissible_hop():
    assert math.isinf(path_metric(LINE, 0.4).d[0, 2])


def test_gap_equal_to_eps_is_not_a_hop():
    assert math.isinf(path_metric(LINE, 0.5).d[0, 1])


def test_square_corners_and_midpoints():
    # the midpoints next to a corner are 0.707 apart, so the route cuts corners
    expected = brute_simple_path_length(SQUARE8, 0.8, 0, 4)
    assert expected == pytest.approx(1.0 + math.sqrt(0.5), abs=1e-12)
    assert path_metric(SQUARE8, 0.8).d[0, 4] == pytest.approx(expected, abs=1e-12)


def test_witness_collinear():
    w = epsilon_path_witness(LINE, 0.6, 0, 2)
    assert w.indices == (0, 1, 2)
    assert w.length == pytest.approx(1.0, abs=1e-12)


def test_witness_adjacent_pair():
    w = epsilon_path_witness(LINE, 0.6, 0, 1)
    assert w.indices == (0, 1)


def test_witness_length_equals_metric_and_is_bounded_on_circle():
    EG = regular_polygon(64)
    S = hausdorff_sample(EG, 0.05, 0.005, seed=2)
    eps = 0.1
    m = path_metric(S, eps)
    dg = restriction_metric(EG.base, S.provenance).d
    for b in (5, 40, 77, 127):
        w = epsilon_path_witness(S, eps, 0, b)
        assert w.length == m.d[0, b]
        gaps = np.linalg.norm(np.diff(S.points[list(w.indices)], axis=0), axis=1)
        assert np.all(gaps < eps)
        assert w.length <= 2 * dg[0, b] + eps


def test_witness_unreachable():
    with pytest.raises(ValueError):
        epsilon_path_witness(LINE, 0.4, 0, 2)


def test_rejects_bad_eps():
    for eps in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(ValueError):
            path_metric(LINE, eps)


def test_alpha_circumcenter_singleton():
    m = FiniteMetric([[0.0, 3.0], [3.0, 0.0]])
    assert alpha_circumcenter(m, [1], 0.0) == 1


def test_alpha_circumcenter_equilateral():
    m = FiniteMetric(np.ones((3, 3)) - np.eye(3))
    assert alpha_circumcenter(m, [0, 1, 2], 0.5) == 0


def test_alpha_circumcenter_absent():
    m = FiniteMetric([[0.0, 1.0], [1.0, 0.0]])
    assert alpha_circumcenter(m, [0, 1], 0.1) is None


def test_diameter():
    m = FiniteMetric(np.array([[0, 1, 2], [1, 0, 3], [2, 3, 0]], dtype=float))
    assert diameter(m, [0, 1, 2]) == 3.0
    assert diameter(m, [0, 2]) == 2.0


def test_finite_metric_validation():
    with pytest.raises(ValueError):
        FiniteMetric([[0.0, 1.0], [2.0, 0.0]])
    with pytest.raises(ValueError):
        FiniteMetric([[1.0]])
    m = FiniteMetric([[0.0]])
    with pytest.raises(ValueError):
        m.d[0, 0] = 1.0


clouds = st.integers(2, 25).flatmap(
    lambda n: st.lists(st.tuples(st.floats(-1, 1), st.floats(-1, 1)), min_size=n, max_size=n)
)


@settings(max_examples=60, deadline=None)
@given(clouds, st.floats(0.05, 1.0))
def test_matches_floyd_warshall(coords, eps):
    P = np.array(coords)
    got = path_metric(P, eps).d
    ref = floyd_path_metric(P, eps)
    assert np.array_equal(np.isinf(got), np.isinf(ref))
    fin = np.isfinite(ref)
    assert np.allclose(got[fin], ref[fin], rtol=1e-9, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(clouds, st.floats(0.05, 1.0), st.floats(0.0, 0.5))
def test_metric_properties_exact(coords, eps, extra):
    P = np.array(coords)
    m = path_metric(P, eps)
    d = m.d
    assert np.array_equal(d, d.T)
    for j in range(len(d)):
        assert np.all(d <= d[:, j, None] + d[None, j, :])
    E = np.linalg.norm(P[:, None] - P[None], axis=-1)
    fin = np.isfinite(d)
    assert np.all(E[fin] <= d[fin])
    assert np.all(path_metric(P, eps + extra).d <= d)
