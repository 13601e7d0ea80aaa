from typing import Dict, Literal, Optional, Tuple, get_args

from pydantic import BaseModel, ConfigDict, Field

StrategyName = Literal["nearest", "tolerance_strict", "tolerance_overlap", "emergency_priority"]
TieBreak = Literal["lexicographic", "declaration"]

RationaleTag = Literal[
    "closest_reference",          # nearest reference taken, no tolerance check
    "beyond_distance_cap",        # nearest reference farther than max_distance
    "no_reference_in_tolerance",  # outside every tolerance volume
    "within_tolerance",           # inside exactly one tolerance volume
    "partial_decision",           # inside several overlapping volumes, no action
    "emergency_override",         # an emergency volume contains the measurement
]

RATIONALE_TAGS: Tuple[str, ...] = get_args(RationaleTag)


class DecisionConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    strategy: StrategyName = "nearest"
    tie_break: TieBreak = "lexicographic"
    max_distance: Optional[float] = Field(default=None, ge=0.0)  # nearest only; None disables the cap
    restrict_to_emergency: bool = False  # decide among emergency references only


class DecisionOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    strategy: StrategyName
    recognized: Tuple[str, ...] = ()
    chosen_action: Optional[str] = None
    distances: Dict[str, float] = {}
    rationale: RationaleTag

    @property
    def abstained(self) -> bool:
        return self.chosen_action is None


class ToleranceOverlap(BaseModel):
    model_config = ConfigDict(frozen=True)

    first_index: int
    second_index: int
    first: str
    second: str
    distance: float
    tolerance_sum: float
