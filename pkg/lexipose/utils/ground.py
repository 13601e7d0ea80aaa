import json
import logging
import math
import os
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from core.errors import ConfigurationError, InputError, describe_validation_error
from models.lexicon import Lexicon
from models.transport import GroundDistance
from models.vocabulary import ARM_TERMS, FOREARM_TERMS, MODAL, split_modal_term

DEFAULT_MAX_DIST = 3.0
DEFAULT_SHOULDER_MIN = 1.0
DEFAULT_ELBOW_MIN = 0.5

# Unit directions of the arm terms in a body frame (forward, outward, up).
ARM_DIRECTIONS: Dict[str, Tuple[float, float, float]] = {
    "down": (0.0, 0.0, -1.0),
    "up": (0.0, 0.0, 1.0),
    "front": (1.0, 0.0, 0.0),
    "rear": (-1.0, 0.0, 0.0),
    "outside": (0.0, 1.0, 0.0),
    "inside": (0.0, -1.0, 0.0),
}


def arm_steps(a: str, b: str) -> int:
    """Quarter turns between two arm directions (0, 1 or 2)."""
    cos = float(np.clip(np.dot(ARM_DIRECTIONS[a], ARM_DIRECTIONS[b]), -1.0, 1.0))
    return int(round(math.degrees(math.acos(cos)) / 90.0))


def forearm_steps(a: str, b: str) -> int:
    """Cyclic distance between forearm terms in lexicon order."""
    n = len(FOREARM_TERMS)
    gap = abs(FOREARM_TERMS.index(a) - FOREARM_TERMS.index(b))
    return min(gap, n - gap)


def _graded(steps: int, unit: float, grade: float) -> float:
    if steps == 0:
        return 0.0
    return unit * (1.0 + (steps - 1) * grade)


def build_modal_ground_distance(
    max_dist: float = DEFAULT_MAX_DIST,
    shoulder_min: float = DEFAULT_SHOULDER_MIN,
    elbow_min: float = DEFAULT_ELBOW_MIN,
) -> GroundDistance:
    """
    Ground distance over the 24 modal postures as arm part + forearm part.

    One step on either component costs its minimum (shoulder_min for the arm,
    elbow_min for the forearm); further steps are graded by a common factor
    chosen so that the farthest pair sits exactly at max_dist. With the
    defaults (3.0, 1.0, 0.5) every component distance is a plain multiple of
    its minimum.
    """
    if not (0.0 < elbow_min <= shoulder_min <= max_dist):
        raise ConfigurationError(
            f"ground parameters must satisfy 0 < elbow_min <= shoulder_min <= max_dist "
            f"(got max_dist={max_dist}, shoulder_min={shoulder_min}, elbow_min={elbow_min})"
        )
    if max_dist < shoulder_min + elbow_min:
        raise ConfigurationError(
            f"max_dist={max_dist} is below shoulder_min + elbow_min={shoulder_min + elbow_min}; "
            f"a pair differing in both components cannot be that close"
        )

    max_arm = max(arm_steps(a, b) for a in ARM_TERMS for b in ARM_TERMS)
    max_forearm = max(forearm_steps(a, b) for a in FOREARM_TERMS for b in FOREARM_TERMS)
    spread = shoulder_min * (max_arm - 1) + elbow_min * (max_forearm - 1)
    grade = (max_dist - shoulder_min - elbow_min) / spread if spread > 0 else 0.0

    parts = [split_modal_term(t) for t in MODAL.terms]
    n = MODAL.size
    matrix = np.zeros((n, n))
    for i, (arm_i, fore_i) in enumerate(parts):
        for j, (arm_j, fore_j) in enumerate(parts):
            ka = arm_steps(arm_i, arm_j)
            kf = forearm_steps(fore_i, fore_j)
            if ka == max_arm and kf == max_forearm:
                matrix[i, j] = max_dist
            else:
                matrix[i, j] = _graded(ka, shoulder_min, grade) + _graded(kf, elbow_min, grade)

    ground = GroundDistance(lexicon=MODAL, matrix=tuple(tuple(float(v) for v in row) for row in matrix))
    report_triangle_violations(ground)
    return ground


def report_triangle_violations(ground: GroundDistance) -> List[Tuple[int, int, int]]:
    violations = ground.triangle_violations()
    if violations:
        i, j, k = violations[0]
        terms = ground.lexicon.terms
        logging.warning(
            f"Ground distance on '{ground.lexicon.name}' violates the triangle inequality "
            f"for {len(violations)} triples (e.g. {terms[i]} -> {terms[j]} -> {terms[k]}); "
            f"metric properties of the transport distance do not hold"
        )
    return violations


def ground_from_document(doc: dict, expected: Optional[Lexicon] = None) -> GroundDistance:
    """Parse ``{"lexicon": [...], "matrix": [[...]]}``, reordered onto ``expected`` when given."""
    if not isinstance(doc, dict) or "lexicon" not in doc or "matrix" not in doc:
        raise ConfigurationError("ground document needs 'lexicon' and 'matrix' keys")
    terms = tuple(doc["lexicon"])
    matrix = doc["matrix"]
    if expected is not None and terms != expected.terms:
        if sorted(terms) != sorted(expected.terms):
            raise ConfigurationError(
                f"ground lexicon does not match '{expected.name}': {sorted(set(terms) ^ set(expected.terms))}"
            )
        order = [terms.index(t) for t in expected.terms]
        matrix = [[matrix[i][j] for j in order] for i in order]
        terms = expected.terms
    name = expected.name if expected is not None else doc.get("name", "modal")
    try:
        ground = GroundDistance(
            lexicon=Lexicon(name=name, terms=terms),
            matrix=tuple(tuple(float(v) for v in row) for row in matrix),
        )
    except (ValidationError, TypeError, IndexError) as e:
        detail = describe_validation_error(e) if isinstance(e, ValidationError) else str(e)
        raise ConfigurationError(f"invalid ground matrix: {detail}") from e
    report_triangle_violations(ground)
    return ground


def load_ground(path: str, expected: Optional[Lexicon] = MODAL) -> GroundDistance:
    if not os.path.exists(path):
        raise InputError(f"ground file not found: {path}")
    try:
        with open(path, "r") as f:
            doc = json.load(f)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read ground file {path}: {e}") from e
    logging.info(f"Loaded ground matrix from {path}")
    return ground_from_document(doc, expected=expected)


def ground_to_document(ground: GroundDistance) -> dict:
    return {"lexicon": list(ground.lexicon.terms), "matrix": [list(row) for row in ground.matrix]}


def save_ground(ground: GroundDistance, path: str):
    with open(path, "w") as f:
        json.dump(ground_to_document(ground), f, indent=2)
