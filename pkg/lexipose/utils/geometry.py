import math
from typing import Tuple

import numpy as np

from core.errors import DataValidationError
from models.posture import REQUIRED_JOINTS, AngleQuadruple, Skeleton

MIN_SEGMENT_LENGTH = 1e-6


def angle_between(u: np.ndarray, v: np.ndarray) -> float:
    """Unsigned angle in degrees between two nonzero vectors."""
    cosine = np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v))
    return math.degrees(math.acos(float(np.clip(cosine, -1.0, 1.0))))


def _wrap_degrees(angle: float) -> float:
    """Map onto [-180, 180)."""
    wrapped = (angle + 180.0) % 360.0 - 180.0
    return -180.0 if wrapped >= 180.0 else wrapped


def _segment(skeleton: Skeleton, start: str, end: str) -> np.ndarray:
    vector = skeleton.position(end) - skeleton.position(start)
    if np.linalg.norm(vector) <= MIN_SEGMENT_LENGTH:
        raise DataValidationError(f"degenerate segment {start} -> {end} (zero length)")
    return vector


def body_frame(skeleton: Skeleton) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Orthonormal (forward, right, up) frame of the body.

    Up runs from the torso to the middle of the shoulders; right is the
    left-to-right shoulder axis made orthogonal to up; forward completes a
    right-handed frame.
    """
    right_shoulder = skeleton.position("right_shoulder")
    left_shoulder = skeleton.position("left_shoulder")
    up = (right_shoulder + left_shoulder) / 2.0 - skeleton.position("torso")
    if np.linalg.norm(up) <= MIN_SEGMENT_LENGTH:
        raise DataValidationError("collinear shoulder frame: torso coincides with the shoulder center")
    up = up / np.linalg.norm(up)

    lateral = right_shoulder - left_shoulder
    lateral = lateral - np.dot(lateral, up) * up
    if np.linalg.norm(lateral) <= MIN_SEGMENT_LENGTH:
        raise DataValidationError("collinear shoulder frame: shoulder axis is parallel to the body vertical")
    right = lateral / np.linalg.norm(lateral)
    forward = np.cross(up, right)
    return forward, right, up


def check_skeleton(skeleton: Skeleton):
    for joint in REQUIRED_JOINTS:
        if joint not in skeleton.joints:
            raise DataValidationError(f"missing joint '{joint}'")
        if not all(math.isfinite(c) for c in skeleton.joints[joint]):
            raise DataValidationError(f"joint '{joint}' has non-finite coordinates")


def joints_to_angles(skeleton: Skeleton) -> AngleQuadruple:
    """Arm and forearm angles of the right upper limb."""
    check_skeleton(skeleton)
    arm = _segment(skeleton, "right_shoulder", "right_elbow")
    forearm = _segment(skeleton, "right_elbow", "right_wrist")
    forward, right, up = body_frame(skeleton)

    a_theta = angle_between(-up, arm)

    ahead, outward = float(np.dot(arm, forward)), float(np.dot(arm, right))
    if math.hypot(ahead, outward) <= MIN_SEGMENT_LENGTH * np.linalg.norm(arm):
        a_psi = 0.0  # vertical arm, azimuth irrelevant
    else:
        a_psi = _wrap_degrees(math.degrees(math.atan2(-outward, ahead)))

    f_theta = angle_between(-arm, forearm)

    axis = arm / np.linalg.norm(arm)
    bend = forearm - np.dot(forearm, axis) * axis
    if np.linalg.norm(bend) <= MIN_SEGMENT_LENGTH * np.linalg.norm(forearm):
        f_psi = 0.0  # straight or fully folded, orientation irrelevant
    else:
        f_psi = math.degrees(math.acos(float(np.clip(abs(np.dot(bend, up)) / np.linalg.norm(bend), 0.0, 1.0))))

    return AngleQuadruple(a_theta=a_theta, a_psi=a_psi, f_theta=f_theta, f_psi=f_psi)
