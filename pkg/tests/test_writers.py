import csv
import json
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from piecewise_attractor.carrier import iterate_carrier
from piecewise_attractor.errors import DomainError, InsufficientDataError
from piecewise_attractor.piecewise import assemble_trajectory
from piecewise_attractor.types import CarrierConfig, PeriodResult, RegimeKind, ShapeParams, Trajectory
from piecewise_attractor.writers import (
    format_number,
    projection_points,
    to_jsonable,
    write_json,
    write_projection_svg,
    write_trajectory_csv,
)

SVG_NS = "{http://www.w3.org/2000/svg}"


def _traj(n: int) -> Trajectory:
    t = np.arange(n, dtype=float)
    return Trajectory(t=t, x=np.cos(t), y=np.sin(t), z=t / 10.0)


@pytest.fixture
def worksheet_trajectory():
    radii = iterate_carrier(CarrierConfig(lam=3.5, x0=0.5, niter=64)).radii
    return assemble_trajectory(radii, ShapeParams())


def test_write_trajectory_csv_layout(tmp_path):
    path = tmp_path / "two.csv"
    write_trajectory_csv(_traj(2), path)

    content = path.read_bytes().decode("utf-8")
    lines = content.splitlines()
    assert lines[0] == "t,x,y,z"
    assert len(lines) == 3
    assert "\r" not in content


def test_write_trajectory_csv_of_empty_trajectory_is_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    write_trajectory_csv(Trajectory(t=[], x=[], y=[], z=[]), path)
    assert path.read_text().splitlines() == ["t,x,y,z"]


def test_write_trajectory_csv_first_row_matches_worksheet(tmp_path, worksheet_trajectory):
    path = tmp_path / "run.csv"
    write_trajectory_csv(worksheet_trajectory, path)

    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert len(rows) == 5121
    t, x, y, z = rows[1]
    assert t == "0"
    assert float(x) == pytest.approx(-5.028, abs=1e-3)
    assert y == "0"
    assert float(z) == pytest.approx(5.589e-4, abs=1e-6)


def test_write_trajectory_csv_preserves_precision(tmp_path, worksheet_trajectory):
    """
    Tests that reading the CSV back reproduces every coordinate to 1e-9
    relative.
    """
    path = tmp_path / "run.csv"
    write_trajectory_csv(worksheet_trajectory, path)

    data = np.loadtxt(path, delimiter=",", skiprows=1)
    np.testing.assert_allclose(data[:, 1:], worksheet_trajectory.coords(), rtol=1e-9, atol=1e-15)


def test_write_trajectory_csv_is_deterministic(tmp_path, worksheet_trajectory):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    write_trajectory_csv(worksheet_trajectory, first)
    write_trajectory_csv(worksheet_trajectory, second)
    assert first.read_bytes() == second.read_bytes()


def test_write_trajectory_csv_reports_unwritable_path(tmp_path):
    target = tmp_path / "missing" / "run.csv"
    with pytest.raises(OSError) as excinfo:
        write_trajectory_csv(_traj(2), target)
    assert str(target) in str(excinfo.value)


@pytest.mark.parametrize(
    "value, expected",
    [(-0.0, "0"), (0.5, "0.5"), (1.0 / 3.0, "0.333333333333"), (1e-20, "1e-20")],
)
def test_format_number(value, expected):
    assert format_number(value) == expected


def test_to_jsonable_flattens_domain_objects():
    result = PeriodResult(kind=RegimeKind.PERIODIC, period=2, cycle=(0.1, 0.2), lyapunov_estimate=-0.5)
    assert to_jsonable(result) == {
        "kind": "periodic",
        "period": 2,
        "cycle": [0.1, 0.2],
        "lyapunov_estimate": -0.5,
    }
    assert to_jsonable({"value": float("inf"), "n": np.int64(3)}) == {"value": None, "n": 3}


def test_write_json_trajectory(tmp_path):
    path = tmp_path / "traj.json"
    write_json({"trajectory": _traj(3)}, path)

    data = json.loads(path.read_text())
    assert data["trajectory"]["t"] == [0.0, 1.0, 2.0]
    assert len(data["trajectory"]["z"]) == 3


def test_write_projection_svg_has_one_polyline(tmp_path):
    path = tmp_path / "three.svg"
    write_projection_svg(_traj(3), "xy", path)

    root = ET.parse(path).getroot()
    assert root.tag == f"{SVG_NS}svg"
    assert root.get("width") == "800"
    polylines = root.findall(f"{SVG_NS}polyline")
    assert len(polylines) == 1
    assert len(polylines[0].get("points").split()) == 3


def test_projection_points_stay_inside_margins(worksheet_trajectory):
    points = projection_points(worksheet_trajectory, "xz")
    assert points.min() >= 40.0 - 1e-9
    assert points.max() <= 760.0 + 1e-9


def test_projection_of_synthesized_run_is_near_circular(worksheet_trajectory):
    points = projection_points(worksheet_trajectory, "xy")
    width, height = np.ptp(points[:, 0]), np.ptp(points[:, 1])
    assert 0.8 <= width / height <= 1.25


def test_projection_flips_the_vertical_axis():
    traj = Trajectory(t=[0.0, 1.0], x=[0.0, 1.0], y=[0.0, 1.0], z=[0.0, 0.0])
    points = projection_points(traj, "xy")
    # Larger y sits higher on screen, i.e. at a smaller pixel row.
    assert points[1, 1] < points[0, 1]
    assert math.isclose(points[0, 0], 40.0)


def test_projection_rejects_empty_trajectory_and_unknown_plane():
    with pytest.raises(InsufficientDataError):
        projection_points(Trajectory(t=[], x=[], y=[], z=[]), "xy")
    with pytest.raises(DomainError):
        projection_points(_traj(3), "xw")
