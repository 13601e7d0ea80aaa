import logging
import math
from itertools import combinations
from typing import Dict, List, Literal, Sequence

from core.errors import ConfigurationError, DataValidationError
from models.decision import DecisionConfig, DecisionOutcome, ToleranceOverlap
from models.lexicon import MassVector
from models.posture import ReferencePosture
from models.transport import GroundDistance
from strategies import build_strategy
from utils.transport import transport_distance


def _check_references(refs: Sequence[ReferencePosture]):
    if not refs:
        raise DataValidationError("empty reference set")
    names = [ref.name for ref in refs]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise DataValidationError(f"duplicate reference names: {duplicates}")


def candidate_references(refs: Sequence[ReferencePosture], config: DecisionConfig) -> List[ReferencePosture]:
    if not config.restrict_to_emergency:
        return list(refs)
    emergencies = [ref for ref in refs if ref.is_emergency]
    if not emergencies:
        raise ConfigurationError("restrict_to_emergency is set but no emergency reference is defined")
    return emergencies


def decide_from_distances(
    distances: Dict[str, float],
    refs: Sequence[ReferencePosture],
    config: DecisionConfig,
) -> DecisionOutcome:
    """Apply the configured strategy to a measurement's distances to every reference."""
    _check_references(refs)
    missing = [ref.name for ref in refs if ref.name not in distances]
    if missing:
        raise DataValidationError(f"no distance for references {missing}")
    for name, value in distances.items():
        if not math.isfinite(value) or value < 0.0:
            raise DataValidationError(f"distance to '{name}' must be finite and nonnegative (got {value})")

    known = {ref.name for ref in refs}
    scoped = {name: value for name, value in distances.items() if name in known}
    strategy = build_strategy(config)
    return strategy.decide(scoped, candidate_references(refs, config))


def reference_distances(
    measured: MassVector,
    refs: Sequence[ReferencePosture],
    ground: GroundDistance,
) -> Dict[str, float]:
    return {ref.name: transport_distance(measured, ref.lfs, ground) for ref in refs}


def decide(
    measured: MassVector,
    refs: Sequence[ReferencePosture],
    ground: GroundDistance,
    config: DecisionConfig,
) -> DecisionOutcome:
    _check_references(refs)
    distances = reference_distances(measured, refs, ground)
    logging.debug(f"Reference distances: {distances}")
    return decide_from_distances(distances, refs, config)


def validate_tolerances(
    refs: Sequence[ReferencePosture],
    ground: GroundDistance,
    mode: Literal["strict", "overlap"] = "strict",
) -> List[ToleranceOverlap]:
    """
    Pairs of references whose tolerance volumes overlap.

    A pair overlaps when the distance between the references is below the
    sum of their tolerances. Strict mode also reports tangent volumes, since a
    measurement on the tangent point lies inside both. In strict mode any
    overlap is a configuration error for the caller; in overlap mode the list
    is informational.
    """
    overlaps = []
    for (i, first), (j, second) in combinations(enumerate(refs), 2):
        distance = transport_distance(first.lfs, second.lfs, ground)
        tolerance_sum = first.tolerance + second.tolerance
        if distance < tolerance_sum or (mode == "strict" and distance <= tolerance_sum):
            overlaps.append(
                ToleranceOverlap(
                    first_index=i,
                    second_index=j,
                    first=first.name,
                    second=second.name,
                    distance=distance,
                    tolerance_sum=tolerance_sum,
                )
            )
    if overlaps and mode == "overlap":
        for overlap in overlaps:
            logging.info(
                f"Tolerance volumes of '{overlap.first}' and '{overlap.second}' overlap "
                f"(distance {overlap.distance:.4f} < {overlap.tolerance_sum:.4f})"
            )
    return overlaps


def ensure_tolerances_valid(
    refs: Sequence[ReferencePosture],
    ground: GroundDistance,
    config: DecisionConfig,
) -> List[ToleranceOverlap]:
    """Reject overlapping volumes before any frame is processed when the strategy is strict."""
    _check_references(refs)
    candidates = candidate_references(refs, config)
    mode = "strict" if config.strategy == "tolerance_strict" else "overlap"
    overlaps = validate_tolerances(candidates, ground, mode=mode)
    if overlaps and mode == "strict":
        pairs = ", ".join(f"{o.first}/{o.second}" for o in overlaps)
        logging.error(f"Overlapping tolerance volumes under tolerance_strict: {pairs}")
        raise ConfigurationError(f"overlapping tolerance volumes under tolerance_strict: {pairs}")
    return overlaps


def pairwise_distances(refs: Sequence[ReferencePosture], ground: GroundDistance) -> Dict[str, Dict[str, float]]:
    """Symmetric table of transport distances between references, zero diagonal."""
    table = {ref.name: {other.name: 0.0 for other in refs} for ref in refs}
    for first, second in combinations(refs, 2):
        distance = transport_distance(first.lfs, second.lfs, ground)
        table[first.name][second.name] = distance
        table[second.name][first.name] = distance
    return table
