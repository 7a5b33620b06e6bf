import math

import numpy as np
import pytest

from piecewise_attractor.analysis import (
    compare_patterns,
    cycle_from_max,
    min_separation,
    planar_coincidences,
    rank_order_pattern,
    to_polar,
)
from piecewise_attractor.carrier import detect_period, iterate_carrier
from piecewise_attractor.errors import DomainError, InsufficientDataError, TieError
from piecewise_attractor.piecewise import assemble_trajectory, synthesize_cycle
from piecewise_attractor.types import CarrierConfig, Equivalence, RankPattern, ShapeParams, Trajectory


def _line(points):
    coords = np.asarray(points, dtype=float)
    return Trajectory(t=np.arange(len(coords)), x=coords[:, 0], y=coords[:, 1], z=coords[:, 2])


@pytest.fixture
def worksheet_trajectory():
    radii = iterate_carrier(CarrierConfig(lam=3.5, x0=0.5, niter=64)).radii
    return assemble_trajectory(radii, ShapeParams())


@pytest.fixture
def period_four_cycle():
    return synthesize_cycle(detect_period(3.5).cycle, ShapeParams())


def test_to_polar_is_consistent_with_cartesian(worksheet_trajectory):
    """
    Tests that r*cos(theta), r*sin(theta) give back X and Y for every
    synthesized sample.
    """
    samples = to_polar(worksheet_trajectory)

    for sample, x, y, z in zip(samples, worksheet_trajectory.x, worksheet_trajectory.y, worksheet_trajectory.z):
        theta = math.radians(sample.theta)
        assert sample.r * math.cos(theta) == pytest.approx(x, abs=1e-9)
        assert sample.r * math.sin(theta) == pytest.approx(y, abs=1e-9)
        assert sample.z == z
        assert -180.0 < sample.theta <= 180.0


def test_to_polar_maps_negative_x_axis_to_plus_180():
    samples = to_polar(_line([(-2.0, 0.0, 0.0), (-2.0, -0.0, 0.0)]))
    assert [s.theta for s in samples] == [180.0, 180.0]
    assert samples[0].r == 2.0


def test_to_polar_worksheet_convention_swaps_arguments():
    traj = _line([(1.0, 0.0, 0.0)])
    assert to_polar(traj)[0].theta == 0.0
    assert to_polar(traj, convention="worksheet")[0].theta == pytest.approx(90.0)


def test_to_polar_rejects_unknown_convention():
    with pytest.raises(DomainError):
        to_polar(_line([(1.0, 0.0, 0.0)]), convention="compass")


def test_min_separation_ignores_temporal_neighbours():
    # Sample 0 and 7 are the only close non-neighbours.
    points = [(float(k), 0.0, 0.0) for k in range(7)] + [(0.0, 0.5, 0.0)] + [
        (float(k), 10.0, 0.0) for k in range(6)
    ]
    distance, pair = min_separation(_line(points), exclusion=2)
    assert distance == pytest.approx(0.5)
    assert pair == (0, 7)


def test_min_separation_excludes_wrap_around_neighbours():
    # A circle: first and last samples are adjacent and must not count.
    angles = np.linspace(0.0, 2 * np.pi, 40, endpoint=False)
    traj = _line([(np.cos(a), np.sin(a), 0.0) for a in angles])
    distance, _ = min_separation(traj, exclusion=5)
    step = 2 * math.sin(math.pi / 40)
    assert distance == pytest.approx(2 * math.sin(6 * math.pi / 40))
    assert distance > step



def test_min_separation_finds_a_duplicated_point():
    points = [(float(k), 0.0, 0.0) for k in range(30)]
    points[20] = points[5]
    distance, pair = min_separation(_line(points), exclusion=5)
    assert distance == 0.0
    assert sorted(pair) == [5, 20]


def test_min_separation_is_unchanged_by_reversal(period_four_cycle):
    coords = period_four_cycle.coords()
    n = len(coords)

    forward, _ = min_separation(period_four_cycle)
    backward, (a, b) = min_separation(_line(coords[::-1]))

    assert backward == pytest.approx(forward, rel=1e-12)
    assert np.linalg.norm(coords[n - 1 - a] - coords[n - 1 - b]) == pytest.approx(forward, rel=1e-12)


def test_min_separation_of_one_synthesized_period(period_four_cycle):
    distance, (i, j) = min_separation(period_four_cycle, exclusion=5)
    assert distance > 0.01
    assert j - i > 5


def test_min_separation_is_independent_of_worker_count(monkeypatch, period_four_cycle):
    monkeypatch.setenv("PIECEWISE_ATTRACTOR_THREADS", "1")
    serial = min_separation(period_four_cycle)
    monkeypatch.setenv("PIECEWISE_ATTRACTOR_THREADS", "3")
    assert min_separation(period_four_cycle) == serial


def test_min_separation_needs_enough_points():
    with pytest.raises(InsufficientDataError):
        min_separation(_line([(0.0, 0.0, 0.0)] * 5), exclusion=5)
    with pytest.raises(DomainError):
        min_separation(_line([(0.0, 0.0, 0.0)] * 50), exclusion=0)


def test_one_synthesized_period_has_no_planar_coincidences(period_four_cycle):
    assert planar_coincidences(period_four_cycle) == []


def test_planar_coincidences_flags_true_crossings():
    points = [(float(k), 0.0, 0.0) for k in range(8)] + [(3.0, 0.01, 0.0)] + [
        (float(k), 5.0, 1.0) for k in range(8)
    ]
    hits = planar_coincidences(_line(points), exclusion=2)
    assert [(i, j) for i, j, _ in hits] == [(3, 8)]


def test_planar_coincidences_accept_elevation_separated_crossings():
    points = [(float(k), 0.0, 0.0) for k in range(8)] + [(3.0, 0.01, 0.5)] + [
        (float(k), 5.0, 1.0) for k in range(8)
    ]
    assert planar_coincidences(_line(points), exclusion=2) == []


def test_cycle_from_max_rotates_to_largest():
    assert cycle_from_max([0.5009, 0.875, 0.3828, 0.8269]) == [0.875, 0.3828, 0.8269, 0.5009]
    assert cycle_from_max([]) == []


def test_rank_order_pattern_of_period_four_carrier():
    cycle = detect_period(3.5).cycle
    pattern = rank_order_pattern(cycle_from_max(cycle))
    assert pattern.perm == (3, 0, 2, 1)



@pytest.mark.parametrize("scale, shift", [(1.0, 0.0), (2.5, -4.0), (0.1, 100.0)])
def test_rank_order_pattern_ignores_positive_affine_maps(scale, shift):
    cycle = [8.75, 3.828, 8.269, 5.009]
    mapped = [scale * v + shift for v in cycle]
    assert rank_order_pattern(mapped) == rank_order_pattern(cycle)


def test_rank_order_pattern_rejects_ties():
    with pytest.raises(TieError):
        rank_order_pattern([1.0, 2.0, 1.0 + 1e-9])


def test_rank_order_pattern_rejects_empty_cycle():
    with pytest.raises(DomainError):
        rank_order_pattern([])


@pytest.mark.parametrize(
    "p1, p2, expected",
    [
        ((3, 0, 2, 1), (3, 0, 2, 1), Equivalence.EQUIVALENT),
        ((3, 0, 2, 1), (0, 2, 1, 3), Equivalence.EQUIVALENT),
        ((3, 0, 2, 1), (3, 1, 2, 0), Equivalence.NOT_EQUIVALENT),
        ((1, 0), (3, 0, 2, 1), Equivalence.LENGTH_MISMATCH),
    ],
)
def test_compare_patterns(p1, p2, expected):
    assert compare_patterns(RankPattern(p1), RankPattern(p2)) is expected


def test_rank_pattern_must_be_a_permutation():
    with pytest.raises(DomainError):
        RankPattern((0, 0, 1))


def test_synthesized_period_two_cycle_keeps_clear_of_itself():
    cycle = detect_period(3.3).cycle
    traj = synthesize_cycle(cycle, ShapeParams())
    distance, _ = min_separation(traj)
    assert distance > 0.01
