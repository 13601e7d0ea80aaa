import math
from typing import Dict, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from models.lexicon import Lexicon, MassVector

REQUIRED_JOINTS = ("right_shoulder", "right_elbow", "right_wrist", "torso", "left_shoulder")

ActionClass = Literal["classical", "emergency"]


class Skeleton(BaseModel):
    """Measured 3D joint positions (meters) for one frame."""
    model_config = ConfigDict(frozen=True)

    frame: Optional[int] = None
    joints: Dict[str, Tuple[float, float, float]]

    def position(self, joint: str) -> np.ndarray:
        return np.asarray(self.joints[joint], dtype=float)


class AngleQuadruple(BaseModel):
    model_config = ConfigDict(frozen=True)

    a_theta: float = Field(ge=0.0, le=180.0)  # arm vs body-down vertical
    a_psi: float = Field(ge=-180.0, lt=180.0)  # arm azimuth, front = 0
    f_theta: float = Field(ge=0.0, le=180.0)  # elbow opening, 180 = straight
    f_psi: float = Field(ge=-180.0, lt=180.0)  # forearm bend vs vertical, 90 = horizontal


class RuleTable(BaseModel):
    """Total map (row term, col term) -> out term."""
    model_config = ConfigDict(frozen=True)

    row_lexicon: Lexicon
    col_lexicon: Lexicon
    out_lexicon: Lexicon
    cells: Dict[Tuple[str, str], str]

    @model_validator(mode="after")
    def _check_cells(self):
        for r in self.row_lexicon.terms:
            for c in self.col_lexicon.terms:
                out = self.cells.get((r, c))
                if out is None:
                    raise ValueError(f"rule table has no cell for ({r}, {c})")
                if out not in self.out_lexicon:
                    raise ValueError(f"cell ({r}, {c}) -> '{out}' is not in '{self.out_lexicon.name}'")
        unknown = [
            key for key in self.cells
            if key[0] not in self.row_lexicon or key[1] not in self.col_lexicon
        ]
        if unknown:
            raise ValueError(f"rule table has cells outside its lexicons: {unknown}")
        return self

    def cell(self, row: str, col: str) -> str:
        return self.cells[(row, col)]

    def index_matrix(self) -> np.ndarray:
        """Out-term index for every (row, col) position."""
        return np.array(
            [
                [self.out_lexicon.index(self.cells[(r, c)]) for c in self.col_lexicon.terms]
                for r in self.row_lexicon.terms
            ],
            dtype=int,
        )


class ReferencePosture(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = Field(min_length=1)
    lfs: MassVector
    tolerance: float = Field(ge=0.0)
    action_class: ActionClass = "classical"
    action_id: str = Field(min_length=1)

    @field_validator("tolerance")
    @classmethod
    def _finite_tolerance(cls, tolerance: float) -> float:
        if not math.isfinite(tolerance):
            raise ValueError("tolerance must be finite")
        return tolerance

    @property
    def is_emergency(self) -> bool:
        return self.action_class == "emergency"


class PostureMeasurement(BaseModel):
    """Intermediate and final representations of one measured skeleton."""
    model_config = ConfigDict(frozen=True)

    angles: AngleQuadruple
    arm: MassVector
    forearm: MassVector
    modal: MassVector
