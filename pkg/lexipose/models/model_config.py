from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.decision import DecisionConfig
from models.lexicon import FuzzyPartition
from models.posture import RuleTable
from models.vocabulary import MODAL
from utils.fuzzify import default_partitions
from utils.ground import DEFAULT_ELBOW_MIN, DEFAULT_MAX_DIST, DEFAULT_SHOULDER_MIN
from utils.rules import default_arm_table, default_forearm_table, default_modal_table


def _partition(key: str):
    return lambda: default_partitions()[key]


class PostureModelConfig(BaseModel):
    """Everything needed to turn a skeleton into a modal LFS and decide on it."""
    model_config = ConfigDict(frozen=True)

    a_theta: FuzzyPartition = Field(default_factory=_partition("a_theta"))
    a_psi: FuzzyPartition = Field(default_factory=_partition("a_psi"))
    f_theta: FuzzyPartition = Field(default_factory=_partition("f_theta"))
    f_psi: FuzzyPartition = Field(default_factory=_partition("f_psi"))

    arm_table: RuleTable = Field(default_factory=default_arm_table)
    forearm_table: RuleTable = Field(default_factory=default_forearm_table)
    modal_table: RuleTable = Field(default_factory=default_modal_table)

    # Ground distance generator over the modal lexicon
    max_dist: float = DEFAULT_MAX_DIST
    shoulder_min: float = DEFAULT_SHOULDER_MIN
    elbow_min: float = DEFAULT_ELBOW_MIN
    ground_file: Optional[str] = None

    decision: DecisionConfig = Field(default_factory=DecisionConfig)

    @model_validator(mode="after")
    def _check_wiring(self):
        pairs = [
            ("arm_table rows", self.arm_table.row_lexicon, self.a_psi.lexicon),
            ("arm_table cols", self.arm_table.col_lexicon, self.a_theta.lexicon),
            ("forearm_table rows", self.forearm_table.row_lexicon, self.f_psi.lexicon),
            ("forearm_table cols", self.forearm_table.col_lexicon, self.f_theta.lexicon),
            ("modal_table rows", self.modal_table.row_lexicon, self.arm_table.out_lexicon),
            ("modal_table cols", self.modal_table.col_lexicon, self.forearm_table.out_lexicon),
        ]
        for label, actual, expected in pairs:
            if actual != expected:
                raise ValueError(
                    f"{label} {actual.name}{list(actual.terms)} do not match {expected.name}{list(expected.terms)}"
                )
        if self.modal_table.out_lexicon.terms != MODAL.terms and self.ground_file is None:
            raise ValueError("a custom modal vocabulary needs a ground_file")
        return self

    @property
    def modal_lexicon(self):
        return self.modal_table.out_lexicon
