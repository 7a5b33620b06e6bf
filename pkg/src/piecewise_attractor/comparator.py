from typing import List

from .analysis import (
    compare_patterns,
    cycle_from_max,
    min_separation,
    planar_coincidences,
    rank_order_pattern,
)
from .carrier import detect_period, iterate_carrier
from .checks import geometry  # noqa: F401  (registers GEO checks)
from .checks import regime  # noqa: F401  (registers REG checks)
from .checks.base import Check, ComparisonContext
from .errors import InsufficientDataError
from .piecewise import assemble_trajectory, piece_junction_gap, synthesize_cycle
from .reporter import console
from .rossler import cluster_values, extract_x_maxima, integrate, maxima_cycle
from .types import ComparisonReport, Equivalence, RunConfig


class Comparator:
    """
    Computes everything a (lambda, c) comparison needs, then runs every
    registered check against it and collects the findings into a report.
    """
    def __init__(self) -> None:
        self._checks: List[Check] = self._load_checks()

    def _load_checks(self) -> List[Check]:
        return [subclass() for subclass in Check.__subclasses__()]

    def build_context(self, config: RunConfig) -> ComparisonContext:
        carrier_cfg, period_cfg = config.carrier, config.period
        console.print(f"🔁 Classifying carrier at [cyan]lambda={carrier_cfg.lam}[/cyan]...")
        carrier_period = detect_period(
            carrier_cfg.lam,
            carrier_cfg.x0,
            transient=period_cfg.transient,
            max_period=period_cfg.max_period,
            tol=period_cfg.tol,
        )

        console.print(f"🌀 Integrating Rössler flow at [cyan]c={config.rossler.c}[/cyan]...")
        flow = integrate(config.rossler)
        maxima = extract_x_maxima(flow, config.rossler.transient)
        if len(maxima) < 2:
            raise InsufficientDataError(
                f"Only {len(maxima)} X maxima after t={config.rossler.transient}; increase --t-end."
            )
        values = [value for _, value in maxima]
        clusters = len(cluster_values(values))
        rossler_cycle = maxima_cycle(values, max_period=period_cfg.max_period)

        carrier_pattern = rossler_pattern = None
        rank_match = Equivalence.UNDETERMINED
        if carrier_period.is_periodic and rossler_cycle is not None:
            carrier_pattern = rank_order_pattern(cycle_from_max(carrier_period.cycle))
            rossler_pattern = rank_order_pattern(cycle_from_max(rossler_cycle))
            rank_match = compare_patterns(carrier_pattern, rossler_pattern)

        radii = iterate_carrier(carrier_cfg).radii
        if carrier_period.is_periodic:
            synthesized = synthesize_cycle(carrier_period.cycle, config.shape)
        else:
            synthesized = assemble_trajectory(radii, config.shape)
        console.print(f"📏 Scanning {len(synthesized)} synthesized samples for self-intersection...")
        separation, pair = min_separation(synthesized, config.exclusion)

        return ComparisonContext(
            lam=carrier_cfg.lam,
            c=config.rossler.c,
            carrier_period=carrier_period,
            rossler_clusters=clusters,
            rossler_cycle=rossler_cycle,
            carrier_pattern=carrier_pattern,
            rossler_pattern=rossler_pattern,
            rank_match=rank_match,
            min_separation=separation,
            separation_pair=pair,
            coincidences=planar_coincidences(synthesized, exclusion=config.exclusion),
            junction_gaps=piece_junction_gap(radii, config.shape) if len(radii) >= 3 else [],
        )

    def run(self, config: RunConfig) -> ComparisonReport:
        context = self.build_context(config)
        console.print(f"🔬 Running {len(self._checks)} checks...")
        findings = [check.evaluate(context) for check in self._checks]
        return ComparisonReport(
            lam=context.lam,
            c=context.c,
            carrier_period=context.carrier_period,
            rossler_period=context.rossler_clusters,
            rank_match=context.rank_match,
            min_separation=context.min_separation,
            junction_gap_max=max(context.junction_gaps, default=0.0),
            carrier_pattern=context.carrier_pattern,
            rossler_pattern=context.rossler_pattern,
            findings=findings,
        )
