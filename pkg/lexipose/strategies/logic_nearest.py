import logging
from typing import Dict, Sequence

from models.decision import DecisionOutcome
from models.posture import ReferencePosture
from strategies.core import BaseStrategy


class NearestStrategy(BaseStrategy):
    """Closest reference wins; tolerances are ignored."""

    name = "nearest"

    def decide(self, distances: Dict[str, float], refs: Sequence[ReferencePosture]) -> DecisionOutcome:
        best = self.rank(refs, distances)[0]
        cap = self.config.max_distance
        if cap is not None and distances[best.name] > cap:
            logging.debug(f"Nearest reference '{best.name}' at {distances[best.name]:.4f} exceeds cap {cap}")
            return self.outcome(distances, (), "beyond_distance_cap")
        return self.outcome(distances, [best], "closest_reference", chosen=best)
