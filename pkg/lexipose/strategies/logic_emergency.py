import logging
from typing import Dict, Sequence

from models.decision import DecisionOutcome
from models.posture import ReferencePosture
from strategies.core import BaseStrategy


class EmergencyPriorityStrategy(BaseStrategy):
    """
    An emergency reference within tolerance overrides any classical one.

    The nearest in-tolerance emergency reference is chosen even when a
    classical reference is closer. Without such a reference the decision is
    the overlap decision over classical references only.
    """

    name = "emergency_priority"

    def decide(self, distances: Dict[str, float], refs: Sequence[ReferencePosture]) -> DecisionOutcome:
        emergencies = self.rank(
            [ref for ref in self.within_tolerance(refs, distances) if ref.is_emergency],
            distances,
        )
        if emergencies:
            chosen = emergencies[0]
            logging.info(f"🚨 Emergency posture '{chosen.name}' recognized at {distances[chosen.name]:.4f}")
            return self.outcome(distances, [chosen], "emergency_override", chosen=chosen)

        classical = [ref for ref in refs if not ref.is_emergency]
        return self.tolerance_outcome(distances, classical)
