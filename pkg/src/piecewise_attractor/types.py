import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .errors import DomainError


class RegimeKind(Enum):
    PERIODIC = "periodic"
    CHAOTIC = "chaotic"
    NOT_CONVERGED = "not_converged"


@dataclass(frozen=True)
class CarrierConfig:
    """Logistic-map carrier settings: x_i = lam * x_{i-1} * (1 - x_{i-1})."""
    lam: float = 3.5
    x0: float = 0.5
    niter: int = 64


@dataclass(frozen=True)
class CarrierSequence:
    xs: Tuple[float, ...]
    radii: Tuple[float, ...]


@dataclass(frozen=True)
class PeriodResult:
    kind: RegimeKind
    period: Optional[int] = None
    cycle: Tuple[float, ...] = ()
    lyapunov_estimate: Optional[float] = None

    @property
    def is_periodic(self) -> bool:
        return self.kind is RegimeKind.PERIODIC

    def label(self) -> str:
        if self.is_periodic:
            return f"Periodic({self.period})"
        return "Chaotic" if self.kind is RegimeKind.CHAOTIC else "NotConverged"


@dataclass(frozen=True)
class BifurcationEntry:
    lam: float
    result: PeriodResult
    samples: Tuple[float, ...]


@dataclass(frozen=True)
class ShapeParams:
    """
    Constants of the radius and elevation profiles of one piece.

    m1 and m2 are not stored here: they are r_i and r_{i+1} - r_i of the
    piece being evaluated.
    """
    m3: float = 0.5
    m4: float = 0.05
    m5: float = 3.5
    m6: float = 0.5
    m7: float = 2.5
    m8: float = 0.55
    a: float = 7.0
    c3: float = 1 / 3.5
    phase: float = math.pi / 6
    npoints: int = 80

    @classmethod
    def worksheet(cls) -> "ShapeParams":
        return cls()

    @classmethod
    def illustration(cls) -> "ShapeParams":
        # Sharper Gaussian and smaller zero-level hump, as drawn in the
        # radius-construction figure. Not used for the coordinate table.
        return cls(a=9.0, m7=1.0)


@dataclass(frozen=True)
class TrajectoryPoint:
    t: float
    x: float
    y: float
    z: float


@dataclass(eq=False)
class Trajectory:
    """Ordered (t, x, y, z) samples stored column-wise."""
    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.t = np.asarray(self.t, dtype=float)
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        self.z = np.asarray(self.z, dtype=float)
        n = self.t.shape[0]
        if any(col.shape != (n,) for col in (self.x, self.y, self.z)):
            raise DomainError("Trajectory columns must be one-dimensional and of equal length.")
        if n > 1 and not np.all(np.diff(self.t) > 0):
            raise DomainError("Trajectory times must be strictly increasing.")

    def __len__(self) -> int:
        return int(self.t.shape[0])

    def __getitem__(self, index: int) -> TrajectoryPoint:
        return TrajectoryPoint(
            float(self.t[index]), float(self.x[index]), float(self.y[index]), float(self.z[index])
        )

    def coords(self) -> np.ndarray:
        """(n, 3) array of x, y, z."""
        return np.column_stack((self.x, self.y, self.z))


@dataclass(frozen=True)
class RosslerParams:
    c: float = 5.7
    a: float = 0.2
    b: float = 0.2
    dt: float = 0.01
    t_end: float = 700.0
    transient: float = 200.0
    initial_state: Tuple[float, float, float] = (0.1, 0.1, 0.1)


Maximum = Tuple[float, float]


@dataclass(frozen=True)
class ReturnMap:
    maxima: Tuple[Maximum, ...]
    pairs: Tuple[Tuple[float, float], ...]


@dataclass(frozen=True)
class LogisticFit:
    """Least-squares fit x_next = alpha * x * (beta - x) + offset."""
    alpha: float
    beta: float
    offset: float
    rms: float
    span: float

    @property
    def relative_rms(self) -> float:
        return self.rms / self.span if self.span > 0 else math.inf


@dataclass(frozen=True)
class PolarSample:
    theta: float
    r: float
    z: float


@dataclass(frozen=True)
class RankPattern:
    perm: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(len(self.perm))):
            raise DomainError(f"{list(self.perm)} is not a permutation of 0..{len(self.perm) - 1}.")

    def __len__(self) -> int:
        return len(self.perm)


class Equivalence(Enum):
    EQUIVALENT = "equivalent"
    NOT_EQUIVALENT = "not_equivalent"
    LENGTH_MISMATCH = "length_mismatch"
    UNDETERMINED = "undetermined"


@dataclass
class Finding:
    """Outcome of one comparison check."""
    check_id: str
    message: str
    passed: bool
    severity: str = "info"
    explanation: Optional[str] = None


@dataclass
class ComparisonReport:
    lam: float
    c: float
    carrier_period: PeriodResult
    rossler_period: int
    rank_match: Equivalence
    min_separation: float
    junction_gap_max: float
    carrier_pattern: Optional[RankPattern] = None
    rossler_pattern: Optional[RankPattern] = None
    findings: List[Finding] = field(default_factory=list)


class Mode(Enum):
    SYNTHESIZE = "synthesize"
    ROSSLER = "rossler"
    CARRIER = "carrier"
    BIFURCATION = "bifurcation"
    COMPARE = "compare"


@dataclass(frozen=True)
class OutputSpec:
    path: Optional[str] = None
    format: str = "csv"
    plane: str = "xy"
    polar: bool = False


@dataclass(frozen=True)
class PeriodSettings:
    transient: int = 1000
    max_period: int = 64
    tol: float = 1e-9


@dataclass(frozen=True)
class ScanSettings:
    lambda_min: float = 2.8
    lambda_max: float = 4.0
    steps: int = 200


@dataclass(frozen=True)
class RunConfig:
    mode: Mode
    carrier: CarrierConfig = field(default_factory=CarrierConfig)
    shape: ShapeParams = field(default_factory=ShapeParams)
    rossler: RosslerParams = field(default_factory=RosslerParams)
    output: OutputSpec = field(default_factory=OutputSpec)
    period: PeriodSettings = field(default_factory=PeriodSettings)
    scan: ScanSettings = field(default_factory=ScanSettings)
    exclusion: int = 5
