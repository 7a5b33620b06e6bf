from .base import Check, ComparisonContext
from ..types import Finding

MIN_SEPARATION = 0.01
MAX_JUNCTION_GAP = 0.15


class SeparationCheck(Check):
    """
    ID: GEO001
    """

    @property
    def id(self) -> str:
        return "GEO001"

    @property
    def description(self) -> str:
        return "Synthesized trajectory keeps its distance from itself."

    @property
    def explanation(self) -> str:
        return (
            "A deterministic flow cannot pass twice through the same point. Samples "
            "more than a few steps apart must stay at least 0.01 units away from "
            "each other."
        )

    def evaluate(self, context: ComparisonContext) -> Finding:
        passed = context.min_separation > MIN_SEPARATION
        i, j = context.separation_pair
        return Finding(
            check_id=self.id,
            message=f"Minimum separation {context.min_separation:.4g} between samples {i} and {j}.",
            passed=passed,
            severity="info" if passed else "error",
            explanation=self.explanation,
        )


class ElevationSeparationCheck(Check):
    """
    ID: GEO002
    """

    @property
    def id(self) -> str:
        return "GEO002"

    @property
    def description(self) -> str:
        return "Crossings on the X, Y plane are separated in Z."

    @property
    def explanation(self) -> str:
        return (
            "The radius curves of different revolutions do cross, so some samples "
            "share X and Y. Those crossings happen where the trajectory has risen "
            "off the plane by different amounts, so no X, Y, Z triple repeats."
        )

    def evaluate(self, context: ComparisonContext) -> Finding:
        count = len(context.coincidences)
        if count == 0:
            message = "Every planar crossing is separated in Z."
        else:
            i, j, dz = context.coincidences[0]
            message = f"{count} planar crossing(s) without Z separation, first at samples {i} and {j} (|dZ|={dz:.3g})."
        return Finding(
            check_id=self.id,
            message=message,
            passed=count == 0,
            severity="info" if count == 0 else "error",
            explanation=self.explanation,
        )


class JunctionGapCheck(Check):
    """
    ID: GEO003
    """

    @property
    def id(self) -> str:
        return "GEO003"

    @property
    def description(self) -> str:
        return "Consecutive pieces meet without a visible jump in radius."

    @property
    def explanation(self) -> str:
        return (
            "Each piece ends where its sigmoid reaches the next radius, but the "
            "Gaussian tails of the oscillator humps do not vanish exactly at the "
            "ends. The leftover jump should stay below 0.15 radius units."
        )

    def evaluate(self, context: ComparisonContext) -> Finding:
        worst = max(context.junction_gaps, default=0.0)
        passed = worst < MAX_JUNCTION_GAP
        return Finding(
            check_id=self.id,
            message=f"Largest junction gap {worst:.4g} over {len(context.junction_gaps)} junctions.",
            passed=passed,
            severity="info" if passed else "warning",
            explanation=self.explanation,
        )
