"""Polar decomposition, self-intersection scans and rank-order patterns."""
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from .errors import DomainError, InsufficientDataError, TieError
from .parallel import ordered_map, worker_count
from .types import Equivalence, PolarSample, RankPattern, Trajectory

RANK_REL_TOL = 1e-6
# Upper bound on the number of pair distances held in memory per block.
_BLOCK_CELLS = 2_000_000

Pair = Tuple[int, int]


def to_polar(traj: Trajectory, convention: str = "standard") -> List[PolarSample]:
    """
    theta in degrees on (-180, 180], r = hypot(x, y), z passed through.

    convention="worksheet" evaluates atan2(x, y) instead of atan2(y, x),
    the argument order of the original numerical worksheet.
    """
    if convention == "standard":
        theta = np.degrees(np.arctan2(traj.y, traj.x))
    elif convention == "worksheet":
        theta = np.degrees(np.arctan2(traj.x, traj.y))
    else:
        raise DomainError(f"Unknown polar convention {convention!r}.")
    theta = np.where(theta <= -180.0, theta + 360.0, theta)
    r = np.hypot(traj.x, traj.y)
    return [PolarSample(float(a), float(b), float(c)) for a, b, c in zip(theta, r, traj.z)]


def _blocks(n: int) -> Iterator[Tuple[int, int]]:
    rows = max(1, min(_BLOCK_CELLS // max(n, 1), -(-n // worker_count())))
    for lo in range(0, n, rows):
        yield lo, min(lo + rows, n)


def _eligible(lo: int, hi: int, n: int, exclusion: int) -> np.ndarray:
    """Mask of pairs (i, j), j > i, that are not temporal neighbours, wrap-around included."""
    i = np.arange(lo, hi)[:, None]
    j = np.arange(n)[None, :]
    gap = j - i
    return (gap > exclusion) & (gap < n - exclusion)


def _check_pair_scan(n: int, exclusion: int) -> None:
    if exclusion < 1:
        raise DomainError(f"exclusion must be >= 1, got {exclusion}.")
    if n < 2 * exclusion + 2:
        raise InsufficientDataError(
            f"{n} points leave no pair outside an exclusion window of {exclusion}."
        )


def min_separation(traj: Trajectory, exclusion: int = 5) -> Tuple[float, Pair]:
    """
    Smallest 3-D distance between samples that are more than `exclusion`
    steps apart, treating the first and last samples as neighbours too.
    """
    n = len(traj)
    _check_pair_scan(n, exclusion)
    coords = traj.coords()

    def scan(block: Tuple[int, int]) -> Tuple[float, Pair]:
        lo, hi = block
        d2 = np.zeros((hi - lo, n))
        for k in range(3):
            d2 += (coords[lo:hi, k][:, None] - coords[None, :, k]) ** 2
        d2[~_eligible(lo, hi, n, exclusion)] = np.inf
        flat = int(np.argmin(d2))
        row, col = divmod(flat, n)
        return float(d2[row, col]), (lo + row, col)

    best_d2, best_pair = min(ordered_map(scan, _blocks(n)), key=lambda item: item[0])
    return float(np.sqrt(best_d2)), best_pair


def planar_coincidences(
    traj: Trajectory, xy_tol: float = 0.05, z_tol: float = 1e-4, exclusion: int = 5
) -> List[Tuple[int, int, float]]:
    """
    Non-neighbouring sample pairs that coincide on the X, Y plane within
    xy_tol while their elevations differ by no more than z_tol, i.e. true
    crossings of the trajectory. Returns (i, j, |dz|) triples.
    """
    n = len(traj)
    _check_pair_scan(n, exclusion)

    def scan(block: Tuple[int, int]) -> List[Tuple[int, int, float]]:
        lo, hi = block
        dxy2 = (traj.x[lo:hi, None] - traj.x[None, :]) ** 2 + (traj.y[lo:hi, None] - traj.y[None, :]) ** 2
        dz = np.abs(traj.z[lo:hi, None] - traj.z[None, :])
        hits = _eligible(lo, hi, n, exclusion) & (dxy2 < xy_tol ** 2) & (dz <= z_tol)
        rows, cols = np.nonzero(hits)
        return [(int(lo + r), int(c), float(dz[r, c])) for r, c in zip(rows, cols)]

    found: List[Tuple[int, int, float]] = []
    for block_hits in ordered_map(scan, _blocks(n)):
        found.extend(block_hits)
    return found


def cycle_from_max(values: Sequence[float]) -> List[float]:
    """Rotates a cycle so that it starts at its largest value."""
    values = list(values)
    if not values:
        return []
    start = int(np.argmax(values))
    return values[start:] + values[:start]


def rank_order_pattern(values: Sequence[float], rel_tol: float = RANK_REL_TOL) -> RankPattern:
    """perm[k] is the rank (0 = smallest) of values[k]."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise DomainError("Cannot rank an empty cycle.")
    order = np.argsort(v, kind="stable")
    ordered = v[order]
    for a, b in zip(ordered, ordered[1:]):
        if abs(b - a) <= rel_tol * max(abs(a), abs(b)):
            raise TieError(f"Values {a!r} and {b!r} are equal within {rel_tol:g}; ranks are undefined.")
    perm = np.empty(v.size, dtype=int)
    perm[order] = np.arange(v.size)
    return RankPattern(tuple(int(p) for p in perm))


def compare_patterns(p1: RankPattern, p2: RankPattern) -> Equivalence:
    """Equivalent when some cyclic rotation of p2 equals p1; cycles have no canonical start."""
    if len(p1) != len(p2):
        return Equivalence.LENGTH_MISMATCH
    target = tuple(p1.perm)
    perm = tuple(p2.perm)
    for shift in range(len(perm)):
        if perm[shift:] + perm[:shift] == target:
            return Equivalence.EQUIVALENT
    return Equivalence.NOT_EQUIVALENT
