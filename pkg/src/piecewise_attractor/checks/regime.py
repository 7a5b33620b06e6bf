from .base import Check, ComparisonContext
from ..types import Equivalence, Finding

# A chaotic flow scatters its maxima; fewer clusters mean a hidden short cycle.
CHAOTIC_MIN_CLUSTERS = 12


class PeriodAgreementCheck(Check):
    """
    The carrier and the Rössler flow should sit in the same regime.

    ID: REG001
    """

    @property
    def id(self) -> str:
        return "REG001"

    @property
    def description(self) -> str:
        return "Carrier period matches the number of Rössler maxima clusters."

    @property
    def explanation(self) -> str:
        return (
            "Each regime of the Rössler flow pairs with a carrier parameter: period 2 "
            "at c=3.25 with lambda=3.30, period 4 at c=4.00 with lambda=3.50, period 8 "
            "at c=4.20 with lambda=3.55. A periodic carrier of period p should face "
            "exactly p distinct X maxima in the flow."
        )

    def evaluate(self, context: ComparisonContext) -> Finding:
        carrier = context.carrier_period
        if not carrier.is_periodic:
            return Finding(
                check_id=self.id,
                message=f"Carrier is {carrier.label()}; flow shows {context.rossler_clusters} maxima clusters.",
                passed=context.rossler_clusters >= CHAOTIC_MIN_CLUSTERS,
                severity="info",
                explanation=self.explanation,
            )
        passed = carrier.period == context.rossler_clusters
        return Finding(
            check_id=self.id,
            message=(
                f"Carrier period {carrier.period} vs {context.rossler_clusters} "
                f"Rössler maxima clusters."
            ),
            passed=passed,
            severity="info" if passed else "warning",
            explanation=self.explanation,
        )


class RankPatternCheck(Check):
    """
    Successive maxima should follow the same order of relative values.

    ID: REG002
    """

    @property
    def id(self) -> str:
        return "REG002"

    @property
    def description(self) -> str:
        return "Carrier cycle and Rössler maxima cycle share a rank-order pattern."

    @property
    def explanation(self) -> str:
        return (
            "Numbering the values of one cycle 0, 1, 2, ... from smallest to largest, "
            "the order in which they are visited is the cycle's rank pattern. For "
            "period 4 both the carrier and the flow visit 3, 0, 2, 1. Patterns are "
            "compared up to rotation because a cycle has no natural first element."
        )

    def evaluate(self, context: ComparisonContext) -> Finding:
        if context.rank_match is Equivalence.UNDETERMINED:
            message = "No periodic cycle on one or both sides; rank patterns not compared."
        else:
            carrier = list(context.carrier_pattern.perm) if context.carrier_pattern else None
            rossler = list(context.rossler_pattern.perm) if context.rossler_pattern else None
            message = f"Carrier {carrier} vs Rössler {rossler}: {context.rank_match.value}."
        passed = context.rank_match is Equivalence.EQUIVALENT
        return Finding(
            check_id=self.id,
            message=message,
            passed=passed,
            severity="info" if passed else "warning",
            explanation=self.explanation,
        )
