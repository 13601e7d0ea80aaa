import math
from typing import List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from models.lexicon import Lexicon

SYMMETRY_TOLERANCE = 1e-12


class GroundDistance(BaseModel):
    """Symmetric distance between the terms of one lexicon."""
    model_config = ConfigDict(frozen=True)

    lexicon: Lexicon
    matrix: Tuple[Tuple[float, ...], ...]

    @model_validator(mode="after")
    def _check_matrix(self):
        n = self.lexicon.size
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError(f"ground matrix must be {n}x{n} for lexicon '{self.lexicon.name}'")
        for i, row in enumerate(self.matrix):
            for j, value in enumerate(row):
                if not math.isfinite(value) or value < 0.0:
                    raise ValueError(f"ground distance [{i}][{j}] must be finite and nonnegative")
                if abs(value - self.matrix[j][i]) > SYMMETRY_TOLERANCE:
                    raise ValueError(f"ground matrix is not symmetric at [{i}][{j}]")
            if row[i] != 0.0:
                raise ValueError(f"ground matrix diagonal must be zero at [{i}][{i}]")
        return self

    def as_array(self) -> np.ndarray:
        return np.asarray(self.matrix, dtype=float)

    def distance(self, a: str, b: str) -> float:
        return self.matrix[self.lexicon.index(a)][self.lexicon.index(b)]

    def triangle_violations(self, slack: float = 1e-12) -> List[Tuple[int, int, int]]:
        """Triples (i, j, k) with d[i][k] > d[i][j] + d[j][k]."""
        d = self.as_array()
        # excess[i, j, k] = d[i, k] - d[i, j] - d[j, k]
        excess = d[:, None, :] - d[:, :, None] - d[None, :, :]
        return [tuple(int(x) for x in idx) for idx in np.argwhere(excess > slack)]

    @property
    def is_metric(self) -> bool:
        return not self.triangle_violations()


class TransportPlan(BaseModel):
    """Optimal flow between two mass vectors; flows are (source index, target index, mass)."""
    model_config = ConfigDict(frozen=True)

    lexicon: Lexicon
    flows: Tuple[Tuple[int, int, float], ...]
    total_cost: float

    @field_validator("flows")
    @classmethod
    def _check_flows(cls, flows):
        if any(mass < 0.0 for _, _, mass in flows):
            raise ValueError("transport flows must be nonnegative")
        return flows

    def as_matrix(self) -> np.ndarray:
        plan = np.zeros((self.lexicon.size, self.lexicon.size))
        for i, j, mass in self.flows:
            plan[i, j] += mass
        return plan

    def named_flows(self) -> List[Tuple[str, str, float]]:
        terms = self.lexicon.terms
        return [(terms[i], terms[j], mass) for i, j, mass in self.flows]
