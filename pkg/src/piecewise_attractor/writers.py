"""CSV, JSON and SVG artifacts. A path of None or "-" means stdout."""
import csv
import dataclasses
import json
import math
import sys
import xml.etree.ElementTree as ET
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Iterator, Optional, Sequence, TextIO, Union

import numpy as np

from .errors import DomainError, InsufficientDataError
from .types import Trajectory

PathLike = Union[str, Path]

SVG_SIZE = 800
SVG_MARGIN = 0.05
PLANES = {"xy": ("x", "y"), "xz": ("x", "z"), "yz": ("y", "z")}


@contextmanager
def _open_text(path: Optional[PathLike]) -> Iterator[TextIO]:
    if path is None or str(path) == "-":
        yield sys.stdout
        return
    try:
        handle = open(path, "w", encoding="utf-8", newline="")
    except OSError as e:
        raise OSError(e.errno, f"Could not write artifact: {e.strerror}", str(path)) from e
    with handle:
        yield handle


def format_number(value: float) -> str:
    """12 significant digits; -0.0 prints as 0."""
    return format(float(value) + 0.0, ".12g")


def write_rows_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], path: Optional[PathLike]) -> None:
    with _open_text(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [format_number(v) if isinstance(v, (float, np.floating)) else v for v in row]
            )


def write_trajectory_csv(traj: Trajectory, path: Optional[PathLike]) -> None:
    """Header t,x,y,z and one row per sample."""
    write_rows_csv(("t", "x", "y", "z"), zip(traj.t, traj.x, traj.y, traj.z), path)


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, Trajectory):
        return {
            "meta": to_jsonable(obj.meta),
            "t": obj.t.tolist(),
            "x": obj.x.tolist(),
            "y": obj.y.tolist(),
            "z": obj.z.tolist(),
        }
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return to_jsonable(obj.item())
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def write_json(obj: Any, path: Optional[PathLike]) -> None:
    with _open_text(path) as handle:
        handle.write(json.dumps(to_jsonable(obj), indent=2))
        handle.write("\n")


def projection_points(traj: Trajectory, plane: str) -> np.ndarray:
    """(n, 2) pixel coordinates of the projection, uniformly scaled into the viewport."""
    if plane not in PLANES:
        raise DomainError(f"plane must be one of {sorted(PLANES)}, got {plane!r}.")
    if len(traj) == 0:
        raise InsufficientDataError("Cannot draw an empty trajectory.")
    h_name, v_name = PLANES[plane]
    h, v = getattr(traj, h_name), getattr(traj, v_name)

    margin = SVG_SIZE * SVG_MARGIN
    usable = SVG_SIZE - 2 * margin
    h_span, v_span = float(np.ptp(h)), float(np.ptp(v))
    scale = usable / max(h_span, v_span) if max(h_span, v_span) > 0 else 1.0
    h_offset = margin + (usable - h_span * scale) / 2
    v_offset = margin + (usable - v_span * scale) / 2

    px = h_offset + (h - h.min()) * scale
    # SVG's vertical axis points down.
    py = SVG_SIZE - (v_offset + (v - v.min()) * scale)
    return np.column_stack((px, py))


def write_projection_svg(traj: Trajectory, plane: str, path: Optional[PathLike]) -> None:
    """Standalone 800x800 SVG holding a single polyline of the projected samples."""
    points = projection_points(traj, plane)
    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "width": str(SVG_SIZE),
            "height": str(SVG_SIZE),
            "viewBox": f"0 0 {SVG_SIZE} {SVG_SIZE}",
        },
    )
    ET.SubElement(
        root,
        "polyline",
        {
            "points": " ".join(f"{x:.3f},{y:.3f}" for x, y in points),
            "fill": "none",
            "stroke": "black",
            "stroke-width": "0.6",
        },
    )
    with _open_text(path) as handle:
        handle.write('<?xml version="1.0" encoding="UTF-8"?>\n')
        handle.write(ET.tostring(root, encoding="unicode"))
        handle.write("\n")
