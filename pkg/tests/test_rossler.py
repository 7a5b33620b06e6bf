import math

import numpy as np
import pytest

from piecewise_attractor.analysis import cycle_from_max, rank_order_pattern
from piecewise_attractor.errors import DivergenceError, DomainError, InsufficientDataError
from piecewise_attractor.rossler import (
    cluster_values,
    extract_x_maxima,
    first_return_map,
    fit_return_map,
    integrate,
    maxima_cycle,
    richardson_ratio,
    rk4_step,
    rossler_derivative,
)
from piecewise_attractor.types import ReturnMap, RosslerParams, Trajectory


def _maxima_values(c: float):
    traj = integrate(RosslerParams(c=c))
    return [value for _, value in extract_x_maxima(traj, transient=200.0)]


def _settled_maxima_values(c: float):
    traj = integrate(RosslerParams(c=c, t_end=1200.0, transient=700.0))
    return [value for _, value in extract_x_maxima(traj, transient=700.0)]


def test_rossler_derivative():
    params = RosslerParams(c=5.7, a=0.2, b=0.2)
    assert rossler_derivative((1.0, 2.0, 3.0), params) == pytest.approx(
        (-5.0, 1.4, 0.2 + 3.0 - 17.1)
    )


def test_rk4_step_agrees_with_two_half_steps():
    params = RosslerParams(c=4.0)
    state = (1.0, 0.5, 0.1)
    full = np.array(rk4_step(state, 0.02, params))
    half = np.array(rk4_step(rk4_step(state, 0.01, params), 0.01, params))
    assert np.linalg.norm(full - half) < 1e-7


def test_integrate_sample_layout():
    traj = integrate(RosslerParams(c=4.0, dt=0.01, t_end=10.0, transient=0.0))
    assert len(traj) == 1001
    assert traj.t[-1] == pytest.approx(10.0)
    assert tuple(traj.coords()[0]) == (0.1, 0.1, 0.1)
    assert traj.meta["source"] == "integrated"


def test_integrate_stays_bounded_for_chaotic_c():
    traj = integrate(RosslerParams(c=5.7))
    assert np.all(np.abs(traj.x) < 15.0)
    assert np.all(np.abs(traj.y) < 15.0)
    assert np.all((traj.z >= 0.0) & (traj.z < 30.0))
    assert np.ptp(traj.x) > 15.0


def test_integrate_raises_on_divergence():
    with pytest.raises(DivergenceError) as excinfo:
        integrate(RosslerParams(c=5.7, initial_state=(-100.0, 0.0, 1.0), dt=0.1, t_end=10.0, transient=0.0))
    assert excinfo.value.t > 0


@pytest.mark.parametrize(
    "params",
    [
        RosslerParams(dt=0.0),
        RosslerParams(t_end=100.0, transient=200.0),
        RosslerParams(initial_state=(0.1, float("nan"), 0.1)),
    ],
)
def test_integrate_rejects_bad_params(params):
    with pytest.raises(DomainError):
        integrate(params)


def test_extract_x_maxima_of_a_cosine():
    """
    Tests peak detection and parabolic refinement on cos(t), whose maxima
    over [0, 20] sit at 2*pi, 4*pi and 6*pi.
    """
    t = np.arange(0.0, 20.0, 0.01)
    traj = Trajectory(t=t, x=np.cos(t), y=np.zeros_like(t), z=np.zeros_like(t))

    maxima = extract_x_maxima(traj)

    assert [tm for tm, _ in maxima] == pytest.approx([2 * math.pi, 4 * math.pi, 6 * math.pi], abs=1e-4)
    assert all(value == pytest.approx(1.0, abs=1e-8) for _, value in maxima)


def test_extract_x_maxima_skips_transient():
    t = np.arange(0.0, 20.0, 0.01)
    traj = Trajectory(t=t, x=np.cos(t), y=np.zeros_like(t), z=np.zeros_like(t))
    assert len(extract_x_maxima(traj, transient=15.0)) == 1


def test_extract_x_maxima_of_monotone_signal_is_empty():
    t = np.arange(0.0, 1.0, 0.1)
    traj = Trajectory(t=t, x=t, y=t, z=t)
    assert extract_x_maxima(traj) == []


def test_first_return_map_pairs_successive_maxima():
    rmap = first_return_map([(1.0, 3.0), (2.0, 5.0), (3.0, 4.0)])
    assert rmap.pairs == ((3.0, 5.0), (5.0, 4.0))


def test_first_return_map_needs_two_maxima():
    with pytest.raises(InsufficientDataError):
        first_return_map([(1.0, 3.0)])


def test_cluster_values_splits_on_gaps():
    clusters = cluster_values([1.0, 1.02, 3.0, 1.04, 3.01, 7.0], tol=0.05)
    assert [len(c) for c in clusters] == [3, 2, 1]


@pytest.mark.parametrize("c, expected_clusters", [(3.25, 2), (4.00, 4), (4.18, 8)])
def test_maxima_cluster_into_the_period(c, expected_clusters):
    """
    Tests the period-doubling cascade of the flow: the settled X maxima fall
    into exactly p tight groups, doubling from 2 to 4 to 8 as c grows.
    """
    values = _settled_maxima_values(c)

    clusters = cluster_values(values)

    assert len(clusters) == expected_clusters
    assert all(max(group) - min(group) < 0.05 for group in clusters)


@pytest.mark.parametrize("c", [3.25, 4.00])
def test_low_period_clusters_are_well_separated(c):
    centres = sorted(np.mean(group) for group in cluster_values(_settled_maxima_values(c)))
    assert min(np.diff(centres)) > 0.2


def test_flow_at_c_4_20_has_already_doubled_to_sixteen():
    values = _settled_maxima_values(4.20)
    cycle = maxima_cycle(values)
    assert cycle is not None
    assert len(cycle) == 16
    assert len(cluster_values(values)) > 8


def test_chaotic_flow_has_no_short_cycle():
    values = _maxima_values(5.7)
    assert len(cluster_values(values)) >= 12
    assert maxima_cycle(values, max_period=8) is None


def test_maxima_cycle_of_period_four_flow_ranks_like_the_carrier():
    cycle = maxima_cycle(_maxima_values(4.0))
    assert cycle is not None
    assert len(cycle) == 4
    assert rank_order_pattern(cycle_from_max(cycle)).perm == (3, 0, 2, 1)


def test_maxima_cycle_of_synthetic_sequence():
    values = [5.0, 7.0] * 10
    assert maxima_cycle(values) == (5.0, 7.0)
    assert maxima_cycle([1.0, 2.0, 3.0, 4.0, 5.0]) is None


def test_period_two_return_map_is_mirror_symmetric():
    traj = integrate(RosslerParams(c=3.25, t_end=500.0))
    rmap = first_return_map(extract_x_maxima(traj, transient=200.0))
    first, second = rmap.pairs[-2], rmap.pairs[-1]
    assert first[0] == pytest.approx(second[1], abs=0.05)
    assert first[1] == pytest.approx(second[0], abs=0.05)


def test_chaotic_return_map_is_close_to_a_parabola():
    traj = integrate(RosslerParams(c=5.7))
    fit = fit_return_map(first_return_map(extract_x_maxima(traj, transient=200.0)))
    assert fit.relative_rms < 0.1
    assert fit.alpha > 0


def test_fit_return_map_recovers_an_offset_parabola():
    """
    Tests that points away from the origin are fit with an offset term:
    x_next = 2 * x * (6 - x) - 7 is recovered exactly.
    """
    xs = np.linspace(3.5, 11.5, 9)
    ys = 2.0 * xs * (6.0 - xs) - 7.0
    rmap = ReturnMap(
        maxima=tuple((float(i), float(x)) for i, x in enumerate(xs)),
        pairs=tuple(zip(xs.tolist(), ys.tolist())),
    )

    fit = fit_return_map(rmap)

    assert fit.alpha == pytest.approx(2.0)
    assert fit.beta == pytest.approx(6.0)
    assert fit.offset == pytest.approx(-7.0)
    assert fit.rms == pytest.approx(0.0, abs=1e-9)


def test_fit_return_map_needs_three_pairs():
    rmap = first_return_map([(1.0, 3.0), (2.0, 5.0), (3.0, 4.0)])
    with pytest.raises(InsufficientDataError):
        fit_return_map(rmap)


def test_richardson_ratio_shows_fourth_order():
    params = RosslerParams(c=4.0, t_end=50.0, transient=0.0)
    ratios = richardson_ratio(params, [0.01, 0.005, 0.0025])
    assert len(ratios) == 1
    assert 8.0 <= ratios[0] <= 32.0


def test_richardson_ratio_needs_three_step_sizes():
    with pytest.raises(DomainError):
        richardson_ratio(RosslerParams(), [0.01, 0.005])
