import logging
import math
from typing import Optional, Sequence

from pydantic import ValidationError

from core.errors import DataValidationError, describe_validation_error
from models.lexicon import MassVector, make_mass_vector
from models.model_config import PostureModelConfig
from models.posture import ActionClass, PostureMeasurement, ReferencePosture, Skeleton
from utils.fuzzify import fuzzify_angle
from utils.geometry import joints_to_angles
from utils.rules import evaluate_rule_table


def measure_posture_detailed(skeleton: Skeleton, config: PostureModelConfig) -> PostureMeasurement:
    """Skeleton -> angles -> per-angle LFSs -> arm and forearm LFSs -> modal LFS."""
    angles = joints_to_angles(skeleton)
    arm = evaluate_rule_table(
        fuzzify_angle(angles.a_psi, config.a_psi),
        fuzzify_angle(angles.a_theta, config.a_theta),
        config.arm_table,
    )
    forearm = evaluate_rule_table(
        fuzzify_angle(angles.f_psi, config.f_psi),
        fuzzify_angle(angles.f_theta, config.f_theta),
        config.forearm_table,
    )
    modal = evaluate_rule_table(arm, forearm, config.modal_table)
    return PostureMeasurement(angles=angles, arm=arm, forearm=forearm, modal=modal)


def measure_posture(skeleton: Skeleton, config: PostureModelConfig) -> MassVector:
    return measure_posture_detailed(skeleton, config).modal


def learn_reference(
    samples: Sequence[MassVector],
    name: str,
    tolerance: float,
    action_class: ActionClass = "classical",
    action_id: Optional[str] = None,
) -> ReferencePosture:
    """Reference posture whose LFS is the renormalized mean of the samples."""
    if not samples:
        raise DataValidationError(f"cannot learn '{name}' from an empty sample list")
    lexicon = samples[0].lexicon
    for sample in samples[1:]:
        if sample.lexicon != lexicon:
            raise DataValidationError(
                f"mixed lexicons in samples for '{name}': '{lexicon.name}' and '{sample.lexicon.name}'"
            )

    n = len(samples)
    mean = [math.fsum(sample.masses[i] for sample in samples) / n for i in range(lexicon.size)]
    lfs = make_mass_vector(lexicon, mean)
    try:
        reference = ReferencePosture(
            name=name,
            lfs=lfs,
            tolerance=tolerance,
            action_class=action_class,
            action_id=action_id or name,
        )
    except ValidationError as e:
        raise DataValidationError(f"invalid reference '{name}': {describe_validation_error(e)}") from e
    logging.info(f"Learned reference '{name}' from {n} samples (top: {lfs.top(3)})")
    return reference
