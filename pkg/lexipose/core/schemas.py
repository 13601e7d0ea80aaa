from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel

from models.decision import DecisionOutcome, StrategyName
from models.posture import AngleQuadruple


class FrameDocument(BaseModel):
    """One line of a skeleton recording."""
    frame: Optional[int] = None
    joints: Dict[str, Tuple[float, float, float]]


class LfsLine(BaseModel):
    """One line of `fuzzify` output."""
    frame: int
    angles: AngleQuadruple
    arm: Dict[str, float]
    forearm: Dict[str, float]
    lfs: Dict[str, float]  # modal posture masses, nonzero terms only


class RunRecord(BaseModel):
    frame: int
    angles: AngleQuadruple
    top_terms: List[Tuple[str, float]]
    outcome: DecisionOutcome


class RunReport(BaseModel):
    strategy: StrategyName
    records: List[RunRecord] = []
    summary: Dict[str, int] = {}  # rationale tag -> frame count
    skipped: List[int] = []

    @property
    def frame_total(self) -> int:
        return len(self.records)


class DistanceTable(BaseModel):
    names: List[str]
    distances: List[List[float]]
