from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence

from models.decision import DecisionConfig, DecisionOutcome, RationaleTag, StrategyName
from models.posture import ReferencePosture


class BaseStrategy(ABC):
    """Decision strategy over precomputed reference distances."""

    name: StrategyName

    def __init__(self, config: DecisionConfig):
        self.config = config

    @abstractmethod
    def decide(self, distances: Dict[str, float], refs: Sequence[ReferencePosture]) -> DecisionOutcome:
        """Pick the recognized references (possibly none) and the action."""
        pass

    def rank(self, refs: Sequence[ReferencePosture], distances: Dict[str, float]) -> List[ReferencePosture]:
        """Nearest first; equal distances ordered by the configured tie-break."""
        if self.config.tie_break == "declaration":
            position = {ref.name: i for i, ref in enumerate(refs)}
            return sorted(refs, key=lambda ref: (distances[ref.name], position[ref.name]))
        return sorted(refs, key=lambda ref: (distances[ref.name], ref.name))

    @staticmethod
    def within_tolerance(refs: Sequence[ReferencePosture], distances: Dict[str, float]) -> List[ReferencePosture]:
        return [ref for ref in refs if distances[ref.name] <= ref.tolerance]

    def outcome(
        self,
        distances: Dict[str, float],
        recognized: Sequence[ReferencePosture],
        rationale: RationaleTag,
        chosen: Optional[ReferencePosture] = None,
    ) -> DecisionOutcome:
        return DecisionOutcome(
            strategy=self.name,
            recognized=tuple(ref.name for ref in recognized),
            chosen_action=chosen.action_id if chosen is not None else None,
            distances=dict(distances),
            rationale=rationale,
        )

    def tolerance_outcome(self, distances: Dict[str, float], candidates: Sequence[ReferencePosture]) -> DecisionOutcome:
        """Empty, single or partial decision from the references whose volume holds the measurement."""
        inside = self.rank(self.within_tolerance(candidates, distances), distances)
        if not inside:
            return self.outcome(distances, (), "no_reference_in_tolerance")
        if len(inside) == 1:
            return self.outcome(distances, inside, "within_tolerance", chosen=inside[0])
        return self.outcome(distances, inside, "partial_decision")
