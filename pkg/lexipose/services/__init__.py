from .decision_service import decide, decide_from_distances, validate_tolerances
from .posture_service import learn_reference, measure_posture
