"""
Reference Rössler flow: fixed-step RK4 integration, X maxima and their
first-return map.
"""
import math
from dataclasses import asdict
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import DivergenceError, DomainError, InsufficientDataError
from .types import LogisticFit, Maximum, ReturnMap, RosslerParams, Trajectory

BLOWUP_LIMIT = 1e6
CLUSTER_TOL = 0.05

State = Tuple[float, float, float]


def rossler_derivative(state: Sequence[float], params: RosslerParams) -> State:
    x, y, z = state
    return (
        -y - z,
        x + params.a * y,
        params.b + x * z - params.c * z,
    )


def rk4_step(state: State, dt: float, params: RosslerParams) -> State:
    x, y, z = state
    k1 = rossler_derivative(state, params)
    k2 = rossler_derivative(
        (x + 0.5 * dt * k1[0], y + 0.5 * dt * k1[1], z + 0.5 * dt * k1[2]), params
    )
    k3 = rossler_derivative(
        (x + 0.5 * dt * k2[0], y + 0.5 * dt * k2[1], z + 0.5 * dt * k2[2]), params
    )
    k4 = rossler_derivative((x + dt * k3[0], y + dt * k3[1], z + dt * k3[2]), params)
    return (
        x + dt * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0,
        y + dt * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0,
        z + dt * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]) / 6.0,
    )


def check_rossler_params(params: RosslerParams) -> None:
    if not params.dt > 0:
        raise DomainError(f"dt must be > 0, got {params.dt}.")
    if not (params.t_end > params.transient >= 0):
        raise DomainError(
            f"Expected t_end > transient >= 0, got t_end={params.t_end}, transient={params.transient}."
        )
    if len(params.initial_state) != 3 or not all(math.isfinite(v) for v in params.initial_state):
        raise DomainError(f"initial_state must be three finite numbers, got {params.initial_state}.")


def integrate(params: RosslerParams) -> Trajectory:
    """
    Fixed-step classical RK4 from initial_state over [0, t_end], one sample
    per step. Raises DivergenceError once any coordinate leaves +-1e6.
    """
    check_rossler_params(params)
    steps = int(round(params.t_end / params.dt))
    dt = params.dt

    xs = np.empty(steps + 1)
    ys = np.empty(steps + 1)
    zs = np.empty(steps + 1)
    state: State = tuple(float(v) for v in params.initial_state)  # type: ignore[assignment]
    xs[0], ys[0], zs[0] = state
    for k in range(1, steps + 1):
        state = rk4_step(state, dt, params)
        if not all(abs(v) <= BLOWUP_LIMIT for v in state):
            raise DivergenceError(k * dt, state)
        xs[k], ys[k], zs[k] = state

    return Trajectory(
        t=np.arange(steps + 1) * dt,
        x=xs,
        y=ys,
        z=zs,
        meta={"source": "integrated", "params": asdict(params)},
    )


def extract_x_maxima(traj: Trajectory, transient: float = 0.0) -> List[Maximum]:
    """
    Local maxima of X after `transient`, each refined by a parabola through
    the sample and its two neighbours. Empty when the run has none.
    """
    x, t = traj.x, traj.t
    if len(traj) < 3:
        return []
    ym1, y0, yp1 = x[:-2], x[1:-1], x[2:]
    peaks = np.nonzero((ym1 < y0) & (y0 >= yp1))[0] + 1
    peaks = peaks[t[peaks] > transient]

    maxima: List[Maximum] = []
    for i in peaks:
        a, b, c = x[i - 1], x[i], x[i + 1]
        curvature = a - 2.0 * b + c
        p = 0.5 * (a - c) / curvature if curvature != 0 else 0.0
        step = 0.5 * (t[i + 1] - t[i - 1])
        maxima.append((float(t[i] + p * step), float(b - 0.25 * (a - c) * p)))
    return maxima


def first_return_map(maxima: Sequence[Maximum]) -> ReturnMap:
    if len(maxima) < 2:
        raise InsufficientDataError(
            f"A first-return map needs at least 2 maxima, got {len(maxima)}. Try a longer run."
        )
    values = [value for _, value in maxima]
    return ReturnMap(
        maxima=tuple((float(t), float(v)) for t, v in maxima),
        pairs=tuple(zip(values, values[1:])),
    )


def cluster_values(values: Sequence[float], tol: float = CLUSTER_TOL) -> List[List[float]]:
    """Groups sorted values, starting a new cluster wherever the gap exceeds tol."""
    clusters: List[List[float]] = []
    for v in sorted(values):
        if clusters and v - clusters[-1][-1] <= tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    return clusters


def maxima_cycle(
    values: Sequence[float], tol: float = CLUSTER_TOL, max_period: int = 64
) -> Optional[Tuple[float, ...]]:
    """
    The last period-long block of a maxima sequence, for the smallest
    period whose repetition holds over the final 2p comparisons.
    """
    v = np.asarray(values, dtype=float)
    for p in range(1, max_period + 1):
        if v.size < 3 * p:
            break
        tail = v[-3 * p:]
        if np.all(np.abs(tail[p:] - tail[:-p]) < tol):
            return tuple(float(x) for x in v[-p:])
    return None


def fit_return_map(return_map: ReturnMap) -> LogisticFit:
    """
    Least-squares fit of x_next = alpha * x * (beta - x) + offset to the
    map's pairs.
    """
    if len(return_map.pairs) < 3:
        raise InsufficientDataError("Fitting the return map needs at least 3 pairs.")
    pairs = np.asarray(return_map.pairs, dtype=float)
    x, y = pairs[:, 0], pairs[:, 1]
    design = np.column_stack((np.ones_like(x), x, x * x))
    coeffs, *_ = np.linalg.lstsq(design, y, rcond=None)
    offset, linear, quadratic = coeffs
    if quadratic == 0:
        raise InsufficientDataError("Return map has no curvature; cannot fit a parabola.")
    alpha = -quadratic
    residual = y - design @ coeffs
    values = np.array([value for _, value in return_map.maxima])
    return LogisticFit(
        alpha=float(alpha),
        beta=float(linear / alpha),
        offset=float(offset),
        rms=float(np.sqrt(np.mean(residual ** 2))),
        span=float(values.max() - values.min()),
    )


def richardson_ratio(params: RosslerParams, dts: Sequence[float]) -> List[float]:
    """
    Ratios of successive endpoint differences at t_end as dt is refined.
    Halving dt with a fourth-order scheme gives ratios near 16.
    """
    if len(dts) < 3:
        raise DomainError("richardson_ratio needs at least three step sizes.")
    endpoints = []
    for dt in dts:
        traj = integrate(RosslerParams(
            c=params.c, a=params.a, b=params.b, dt=dt, t_end=params.t_end,
            transient=0.0, initial_state=params.initial_state,
        ))
        endpoints.append(traj.coords()[-1])
    diffs = [float(np.linalg.norm(a - b)) for a, b in zip(endpoints, endpoints[1:])]
    return [coarse / fine for coarse, fine in zip(diffs, diffs[1:])]
