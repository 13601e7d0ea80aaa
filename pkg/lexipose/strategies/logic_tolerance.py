from typing import Dict, Sequence

from core.errors import ConfigurationError
from models.decision import DecisionOutcome
from models.posture import ReferencePosture
from strategies.core import BaseStrategy


class ToleranceStrictStrategy(BaseStrategy):
    """
    Recognize the reference whose tolerance volume contains the measurement.

    Volumes are expected to be pairwise disjoint (checked when the reference
    set is loaded), so the result is empty or a singleton. Two volumes
    containing the same measurement prove an overlap and are rejected.
    """

    name = "tolerance_strict"

    def decide(self, distances: Dict[str, float], refs: Sequence[ReferencePosture]) -> DecisionOutcome:
        inside = self.within_tolerance(refs, distances)
        if len(inside) > 1:
            names = ", ".join(ref.name for ref in inside)
            raise ConfigurationError(f"tolerance volumes overlap under tolerance_strict: {names}")
        return self.tolerance_outcome(distances, inside)


class ToleranceOverlapStrategy(BaseStrategy):
    """Every containing volume is recognized; several of them form a partial decision without action."""

    name = "tolerance_overlap"

    def decide(self, distances: Dict[str, float], refs: Sequence[ReferencePosture]) -> DecisionOutcome:
        return self.tolerance_outcome(distances, refs)
