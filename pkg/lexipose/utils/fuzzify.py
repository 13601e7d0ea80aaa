import logging
import math
from typing import Dict

import numpy as np

from core.errors import DataValidationError
from models.lexicon import FuzzyPartition, MassVector, make_mass_vector
from models.vocabulary import A_PSI, A_THETA, F_PSI, F_THETA

ANGLE_PERIOD = 360.0

# Modal angles in degrees. a_theta is measured from the body-down vertical;
# a_psi has front at 0 and outside (the right side for the right arm) at -90.
DEFAULT_MODAL_ANGLES: Dict[str, Dict[str, float]] = {
    "a_theta": {"down": 0.0, "horizon": 90.0, "up": 180.0},
    "a_psi": {"rear": -180.0, "outside": -90.0, "front": 0.0, "inside": 90.0},
    "f_theta": {"close": 0.0, "middle": 90.0, "open": 180.0},
    "f_psi": {"vertical": 0.0, "horizontal": 90.0},
}


def default_partitions() -> Dict[str, FuzzyPartition]:
    lexicons = {"a_theta": A_THETA, "a_psi": A_PSI, "f_theta": F_THETA, "f_psi": F_PSI}
    return {
        key: FuzzyPartition.from_mapping(
            name=lexicon.name,
            terms=lexicon.terms,
            modal_angles=DEFAULT_MODAL_ANGLES[key],
            circular=(key == "a_psi"),
        )
        for key, lexicon in lexicons.items()
    }


def fuzzify_angle(angle: float, partition: FuzzyPartition) -> MassVector:
    """
    Map an angle onto the partition's lexicon with triangular memberships.

    Memberships are linear between consecutive modal angles, so at most two
    adjacent terms carry mass and the result is a singleton exactly at a
    modal angle. Non-circular partitions clamp to the end terms; circular
    ones wrap at +/-180 degrees.

    Args:
        angle (float): Angle in degrees.
        partition (FuzzyPartition): Modal angles and lexicon of the variable.

    Returns:
        MassVector: Unit mass over the partition's lexicon.
    """
    if angle is None or not math.isfinite(angle):
        raise DataValidationError(f"cannot fuzzify non-finite angle {angle!r}")
    size = partition.lexicon.size
    if size == 0:
        raise DataValidationError("empty partition")
    if size == 1:
        return MassVector.singleton(partition.lexicon, partition.lexicon.terms[0])

    modal = np.asarray(partition.modal_angles, dtype=float)
    if not partition.circular and not (modal[0] <= angle <= modal[-1]):
        logging.debug(f"Clamping {partition.lexicon.name}={angle:.2f} to [{modal[0]}, {modal[-1]}]")

    period = ANGLE_PERIOD if partition.circular else None
    # One indicator row per term; interpolating each gives its triangular membership.
    indicators = np.eye(size)
    masses = [float(np.interp(angle, modal, indicators[i], period=period)) for i in range(size)]
    return make_mass_vector(partition.lexicon, masses)
