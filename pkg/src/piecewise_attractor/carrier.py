"""
Logistic-map carrier: the iterated parabola that supplies one radius per
revolution of the synthesized trajectory and selects its regime.
"""
from typing import List, Tuple

import numpy as np

from .errors import DomainError
from .parallel import ordered_map
from .types import (
    BifurcationEntry,
    CarrierConfig,
    CarrierSequence,
    PeriodResult,
    RegimeKind,
)

RADIUS_SCALE = 10.0
SAMPLES_KEPT = 256
# Keeps ln|f'(x)| finite when an iterate lands exactly on x = 1/2.
_LOG_FLOOR = 1e-300


def _check_lambda(lam: float) -> None:
    if not (0.0 <= lam <= 4.0):
        raise DomainError(f"lambda must lie in [0, 4], got {lam}.")


def _check_iterate(x: float, name: str = "x") -> None:
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {x}.")


def check_carrier_config(config: CarrierConfig) -> None:
    _check_lambda(config.lam)
    _check_iterate(config.x0, "x0")
    if isinstance(config.niter, bool) or not isinstance(config.niter, int) or config.niter < 1:
        raise DomainError(f"niter must be a positive integer, got {config.niter!r}.")


def logistic_step(x: float, lam: float) -> float:
    """One application of the carrier, lam * x * (1 - x)."""
    _check_iterate(x)
    _check_lambda(lam)
    return lam * x * (1.0 - x)


def _orbit(lam: float, x: float, n: int) -> List[float]:
    """n successive iterates, the first being x itself."""
    out = []
    for _ in range(n):
        out.append(x)
        x = lam * x * (1.0 - x)
    return out


def _advance(lam: float, x: float, n: int) -> float:
    for _ in range(n):
        x = lam * x * (1.0 - x)
    return x


def iterate_carrier(config: CarrierConfig) -> CarrierSequence:
    """Iterates the carrier niter times from x0; radii are 10 * x."""
    check_carrier_config(config)
    xs = _orbit(config.lam, config.x0, config.niter + 1)
    return CarrierSequence(
        xs=tuple(xs),
        radii=tuple(RADIUS_SCALE * x for x in xs),
    )


def cobweb_path(config: CarrierConfig) -> List[Tuple[float, float]]:
    """
    Vertices of the graphical iteration against the diagonal, starting on
    the horizontal axis at (x0, 0).
    """
    xs = iterate_carrier(config).xs
    path = [(xs[0], 0.0)]
    for current, following in zip(xs, xs[1:]):
        path.append((current, following))
        path.append((following, following))
    return path


def _lyapunov(lam: float, orbit: np.ndarray) -> float:
    slopes = np.abs(lam * (1.0 - 2.0 * orbit))
    return float(np.mean(np.log(np.maximum(slopes, _LOG_FLOOR))))


def lyapunov_estimate(lam: float, x0: float, transient: int = 1000, iterations: int = 4096) -> float:
    """Mean of ln|lam * (1 - 2x)| over `iterations` post-transient iterates."""
    _check_lambda(lam)
    _check_iterate(x0, "x0")
    if transient < 0 or iterations < 1:
        raise DomainError("transient must be >= 0 and iterations >= 1.")
    x = _advance(lam, x0, transient)
    return _lyapunov(lam, np.array(_orbit(lam, x, iterations)))


def _smallest_period(orbit: np.ndarray, max_period: int, tol: float) -> int:
    # A period p must hold for 2p consecutive comparisons.
    for p in range(1, max_period + 1):
        if np.all(np.abs(orbit[p:3 * p] - orbit[:2 * p]) < tol):
            return p
    return 0


def _classify(
    lam: float,
    x0: float,
    transient: int,
    max_period: int,
    tol: float,
    lyapunov_iterations: int,
    keep: int = 0,
) -> Tuple[PeriodResult, np.ndarray]:
    _check_lambda(lam)
    _check_iterate(x0, "x0")
    if transient < 0:
        raise DomainError(f"transient must be >= 0, got {transient}.")
    if max_period < 1:
        raise DomainError(f"max_period must be >= 1, got {max_period}.")
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol}.")
    if lyapunov_iterations < 1:
        raise DomainError(f"lyapunov_iterations must be >= 1, got {lyapunov_iterations}.")

    x = _advance(lam, x0, transient)
    orbit = np.array(_orbit(lam, x, max(3 * max_period, lyapunov_iterations, keep)))
    lyap = _lyapunov(lam, orbit[:lyapunov_iterations])

    period = _smallest_period(orbit, max_period, tol)
    if period:
        result = PeriodResult(
            kind=RegimeKind.PERIODIC,
            period=period,
            cycle=tuple(float(v) for v in orbit[:period]),
            lyapunov_estimate=lyap,
        )
    elif lyap > 0:
        result = PeriodResult(kind=RegimeKind.CHAOTIC, lyapunov_estimate=lyap)
    else:
        result = PeriodResult(kind=RegimeKind.NOT_CONVERGED, lyapunov_estimate=lyap)
    return result, orbit


def detect_period(
    lam: float,
    x0: float = 0.5,
    transient: int = 1000,
    max_period: int = 64,
    tol: float = 1e-9,
    lyapunov_iterations: int = 4096,
) -> PeriodResult:
    """
    Classifies the asymptotic regime of the carrier at lam.

    After discarding `transient` iterates, the smallest p <= max_period with
    |x_{n+p} - x_n| < tol over 2p consecutive checks is reported as
    Periodic(p). Otherwise the sign of the Lyapunov estimate decides between
    Chaotic (positive) and NotConverged.
    """
    result, _ = _classify(lam, x0, transient, max_period, tol, lyapunov_iterations)
    return result


def bifurcation_scan(
    lambda_min: float,
    lambda_max: float,
    steps: int,
    x0: float = 0.5,
    transient: int = 1000,
    max_period: int = 64,
    tol: float = 1e-9,
    niter: int = 1000,
    lyapunov_iterations: int = 4096,
) -> List[BifurcationEntry]:
    """Runs detect_period over an even lambda grid, in grid order."""
    if steps < 2:
        raise DomainError(f"steps must be >= 2, got {steps}.")
    if not (lambda_min <= lambda_max <= 4.0):
        raise DomainError(
            f"Expected lambda_min <= lambda_max <= 4, got [{lambda_min}, {lambda_max}]."
        )
    if niter < 1:
        raise DomainError(f"niter must be >= 1, got {niter}.")
    kept = min(SAMPLES_KEPT, niter)

    def evaluate(lam: float) -> BifurcationEntry:
        result, orbit = _classify(
            lam, x0, transient, max_period, tol, lyapunov_iterations, keep=niter
        )
        samples = orbit[niter - kept:niter]
        return BifurcationEntry(lam=lam, result=result, samples=tuple(float(v) for v in samples))

    grid = [float(lam) for lam in np.linspace(lambda_min, lambda_max, steps)]
    return ordered_map(evaluate, grid)