"""
Closed-form pieces of the Rössler-like trajectory.

Each piece is one revolution in normalized time tau in [0, 1) joining two
consecutive carrier radii. The radius is a sigmoid step plus a first-level
and a zero-level harmonic-oscillator hump; the elevation is a fourth-power
bump scaled by the starting radius.
"""
from dataclasses import asdict
from typing import List, NamedTuple, Sequence, Union

import numpy as np

from .carrier import RADIUS_SCALE
from .errors import DomainError
from .types import ShapeParams, Trajectory

ArrayLike = Union[float, np.ndarray]


class RadiusComponents(NamedTuple):
    sigmoid: float
    first_level: float
    zero_level: float


def _check_tau(tau: float) -> None:
    if not (0.0 <= tau < 1.0):
        raise DomainError(f"tau must lie in [0, 1), got {tau}.")


def _check_radius(r: float, name: str) -> None:
    if not r >= 0:
        raise DomainError(f"{name} must be >= 0, got {r}.")


def _sigmoid(r_i: float, r_next: float, tau: ArrayLike, params: ShapeParams) -> ArrayLike:
    m1, m2 = r_i, r_next - r_i
    return m1 + m2 / (1.0 + np.exp(-(tau - params.m3) / params.m4))


def _first_level(tau: ArrayLike, params: ShapeParams) -> ArrayLike:
    # a scales the linear prefactor as well as the Gaussian.
    u = params.a * (tau - params.m6)
    return -params.m5 * u * np.exp(-u * u / 2.0)


def _zero_level(tau: ArrayLike, params: ShapeParams) -> ArrayLike:
    u = params.a * (tau - params.m8)
    return params.m7 * np.exp(-u * u / 2.0)


def _radius(r_i: float, r_next: float, tau: ArrayLike, params: ShapeParams) -> ArrayLike:
    return _sigmoid(r_i, r_next, tau, params) + _first_level(tau, params) + _zero_level(tau, params)


def _elevation(r_i: float, tau: ArrayLike, params: ShapeParams) -> ArrayLike:
    base = (r_i / RADIUS_SCALE) * np.exp(-np.cos(2.0 * np.pi * tau - params.phase))
    return params.c3 * base ** 4


def check_shape_params(params: ShapeParams) -> None:
    if not params.m4 > 0:
        raise DomainError(f"m4 must be > 0, got {params.m4}.")
    if not params.a > 0:
        raise DomainError(f"a must be > 0, got {params.a}.")
    if not params.c3 > 0:
        raise DomainError(f"c3 must be > 0, got {params.c3}.")
    if isinstance(params.npoints, bool) or not isinstance(params.npoints, int) or params.npoints < 2:
        raise DomainError(f"npoints must be an integer >= 2, got {params.npoints!r}.")


def radius_components(r_i: float, r_next: float, tau: float, params: ShapeParams) -> RadiusComponents:
    _check_tau(tau)
    _check_radius(r_i, "r_i")
    _check_radius(r_next, "r_next")
    return RadiusComponents(
        sigmoid=float(_sigmoid(r_i, r_next, tau, params)),
        first_level=float(_first_level(tau, params)),
        zero_level=float(_zero_level(tau, params)),
    )


def radius_profile(r_i: float, r_next: float, tau: float, params: ShapeParams) -> float:
    """Radius on the X, Y plane at normalized time tau of the piece r_i -> r_next."""
    return float(sum(radius_components(r_i, r_next, tau, params)))


def radius_slope(r_i: float, r_next: float, tau: float, params: ShapeParams) -> float:
    """Analytic dR/dtau."""
    _check_tau(tau)
    e = np.exp(-(tau - params.m3) / params.m4)
    d_sigmoid = (r_next - r_i) * e / (params.m4 * (1.0 + e) ** 2)
    u = params.a * (tau - params.m6)
    d_first = -params.m5 * params.a * (1.0 - u * u) * np.exp(-u * u / 2.0)
    v = params.a * (tau - params.m8)
    d_zero = -params.m7 * params.a * v * np.exp(-v * v / 2.0)
    return float(d_sigmoid + d_first + d_zero)


def elevation_profile(r_i: float, tau: float, params: ShapeParams) -> float:
    """Height above the X, Y plane; grows as r_i ** 4 and peaks where cos(2*pi*tau - phase) = -1."""
    _check_tau(tau)
    _check_radius(r_i, "r_i")
    return float(_elevation(r_i, tau, params))


def assemble_trajectory(radii: Sequence[float], params: ShapeParams) -> Trajectory:
    """
    Joins one piece per consecutive pair of radii.

    Every piece contributes npoints samples at tau = k / npoints,
    k = 0..npoints-1; the next piece supplies the junction itself. t is the
    global sample index.
    """
    radii = [float(r) for r in radii]
    if len(radii) < 2:
        raise DomainError(f"Need at least 2 radii to assemble a trajectory, got {len(radii)}.")
    if any(not r >= 0 for r in radii):
        raise DomainError("All radii must be >= 0.")
    check_shape_params(params)

    n = params.npoints
    tau = np.arange(n) / n
    angle = 2.0 * np.pi * tau
    cos_a, sin_a = np.cos(angle), np.sin(angle)

    xs: List[np.ndarray] = []
    ys: List[np.ndarray] = []
    zs: List[np.ndarray] = []
    for r_i, r_next in zip(radii, radii[1:]):
        radius = _radius(r_i, r_next, tau, params)
        xs.append(-radius * cos_a)
        # + 0.0 turns the -0.0 produced at tau = 0 into 0.0
        ys.append(-radius * sin_a + 0.0)
        zs.append(_elevation(r_i, tau, params))

    total = (len(radii) - 1) * n
    return Trajectory(
        t=np.arange(total, dtype=float),
        x=np.concatenate(xs),
        y=np.concatenate(ys),
        z=np.concatenate(zs),
        meta={"source": "synthesized", "radii": radii, "shape": asdict(params)},
    )


def synthesize_cycle(cycle: Sequence[float], params: ShapeParams) -> Trajectory:
    """One closed period: the carrier cycle scaled to radii, first radius repeated at the end."""
    if not cycle:
        raise DomainError("Cannot synthesize an empty cycle.")
    radii = [RADIUS_SCALE * x for x in cycle]
    return assemble_trajectory(radii + radii[:1], params)


def piece_junction_gap(radii: Sequence[float], params: ShapeParams) -> List[float]:
    """|R_i(tau -> 1) - R_{i+1}(0)| at every interior junction."""
    radii = [float(r) for r in radii]
    if len(radii) < 3:
        raise DomainError(f"Need at least 3 radii for a junction, got {len(radii)}.")
    if any(not r >= 0 for r in radii):
        raise DomainError("All radii must be >= 0.")
    gaps = []
    for r_prev, r_mid, r_next in zip(radii, radii[1:], radii[2:]):
        end = _radius(r_prev, r_mid, 1.0, params)
        start = _radius(r_mid, r_next, 0.0, params)
        gaps.append(float(abs(end - start)))
    return gaps
