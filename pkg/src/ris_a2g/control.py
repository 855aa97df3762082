"""Reconfiguration decision logic of the enhanced control loop.

Two policies decide when CSI acquisition plus surface reconfiguration
happens: ``fixed_period`` fires every K frames regardless of feedback,
``adaptive`` fires when the user-reported rate falls more than a
fraction ``degradation_threshold`` below the rate recorded at the last
reconfiguration.  The very first frame always reconfigures (bootstrap).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Literal

from .errors import InvalidParameterError
from .geometry import Attitude, Pose, Vec3, wrap_angle

MANEUVERING_MODES = ("coupled", "feedback_based")


@dataclass(frozen=True)
class ReconfigPolicy:
    kind: Literal["fixed_period", "adaptive"]
    period_frames: int = 13          # fixed_period: K
    degradation_threshold: float = 0.1  # adaptive: trigger fraction below reference
    min_gap_frames: int = 1          # adaptive: minimum frames between events

    def __post_init__(self):
        if self.kind not in ("fixed_period", "adaptive"):
            raise InvalidParameterError(f"unknown policy kind {self.kind!r}")
        if self.period_frames < 1:
            raise InvalidParameterError("period_frames must be >= 1")
        if not 0.0 < self.degradation_threshold < 1.0:
            raise InvalidParameterError("degradation_threshold must lie in (0, 1)")
        if self.min_gap_frames < 1:
            raise InvalidParameterError("min_gap_frames must be >= 1")


@dataclass(frozen=True)
class OverheadModel:
    """Time cost of one reconfiguration event, relative to the frame."""

    reconfig_time: float   # s per event (CSI acquisition + config transfer)
    frame_duration: float  # s

    def __post_init__(self):
        if not self.frame_duration > 0:
            raise InvalidParameterError("frame_duration must be > 0")
        if not 0.0 <= self.reconfig_time <= self.frame_duration:
            raise InvalidParameterError(
                "reconfig_time must lie in [0, frame_duration]")


@dataclass(frozen=True)
class FeedbackSample:
    """User-reported rate, the QoS proxy the adaptive trigger watches."""

    measured_rate: float  # bit/s/Hz

    def __post_init__(self):
        if not self.measured_rate >= 0:
            raise InvalidParameterError("measured_rate must be >= 0")


@dataclass
class ControllerState:
    """Mutable per-run controller memory, advanced by the engine."""

    reference_rate: float = 0.0     # pre-overhead rate at the last reconfiguration
    frames_since_reconfig: int = 0
    pose_history: deque = field(default_factory=lambda: deque(maxlen=16))
    has_reconfigured: bool = False

    def record_pose(self, t: float, pose: Pose) -> None:
        self.pose_history.append((t, pose))

    def mark_reconfigured(self, rate: float) -> None:
        self.reference_rate = rate
        self.frames_since_reconfig = 0
        self.has_reconfigured = True


def decide(policy: ReconfigPolicy, state: ControllerState,
           feedback: FeedbackSample) -> bool:
    """True when this frame should reconfigure.

    Pure function of its arguments; the engine owns all state updates.
    """
    if not state.has_reconfigured:
        return True  # bootstrap: nothing configured yet
    if policy.kind == "fixed_period":
        return state.frames_since_reconfig >= policy.period_frames
    if state.frames_since_reconfig < policy.min_gap_frames:
        return False
    threshold = (1.0 - policy.degradation_threshold) * state.reference_rate
    return feedback.measured_rate < threshold


def predict_pose(history, horizon: float) -> Pose:
    """Constant-velocity extrapolation from the last two known poses.

    Positions extrapolate linearly; attitude angles extrapolate on the
    wrapped difference.  A single-entry history is returned unchanged
    (zero-order hold).  Exact for any constant-velocity ground truth.
    """
    if len(history) == 0:
        raise InvalidParameterError("pose history must be non-empty")
    t1, last = history[-1]
    if len(history) == 1:
        return last
    t0, prev = history[-2]
    dt = t1 - t0
    if dt <= 0:
        return last
    k = horizon / dt
    p0, p1 = prev.position, last.position
    position = Vec3(
        p1.x + (p1.x - p0.x) * k,
        p1.y + (p1.y - p0.y) * k,
        p1.z + (p1.z - p0.z) * k,
    )
    a0, a1 = prev.attitude, last.attitude
    attitude = Attitude(
        a1.yaw + wrap_angle(a1.yaw - a0.yaw) * k,
        a1.pitch + wrap_angle(a1.pitch - a0.pitch) * k,
        a1.roll + wrap_angle(a1.roll - a0.roll) * k,
    )
    return Pose(position, attitude)


def overhead_fraction(reconfigured: bool, model: OverheadModel) -> float:
    """Fraction of this frame spent on reconfiguration instead of data."""
    if not reconfigured:
        return 0.0
    return model.reconfig_time / model.frame_duration
