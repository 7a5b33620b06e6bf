from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ..types import Equivalence, Finding, PeriodResult, RankPattern


@dataclass
class ComparisonContext:
    """Everything computed for one (lambda, c) pair before the checks run."""
    lam: float
    c: float
    carrier_period: PeriodResult
    rossler_clusters: int
    rossler_cycle: Optional[Tuple[float, ...]]
    carrier_pattern: Optional[RankPattern]
    rossler_pattern: Optional[RankPattern]
    rank_match: Equivalence
    min_separation: float
    separation_pair: Tuple[int, int]
    coincidences: List[Tuple[int, int, float]] = field(default_factory=list)
    junction_gaps: List[float] = field(default_factory=list)


class Check(ABC):
    """Abstract Base Class for all comparison checks."""

    @property
    @abstractmethod
    def id(self) -> str:
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    @property
    @abstractmethod
    def explanation(self) -> str:
        pass

    @abstractmethod
    def evaluate(self, context: ComparisonContext) -> Finding:
        pass
