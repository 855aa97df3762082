"""Rigid-body geometry of the UAV-mounted surface.

Conventions used throughout:
  * right-handed world frame, z is altitude (m)
  * attitude = (yaw, pitch, roll) in radians, applied as intrinsic
    Z(yaw) - Y(pitch) - X(roll), the standard aeronautical order
  * circular trajectories run counterclockwise starting from the +x
    direction at ``initial_angle``
  * the surface element grid lies in the local x-y plane, centered on
    the UAV position
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Literal

import numpy as np

from .errors import InvalidParameterError

if TYPE_CHECKING:
    from .ris import RisSpec


def wrap_angle(angle: float) -> float:
    """Wrap an angle to the canonical range (-pi, pi]."""
    if -math.pi < angle <= math.pi:  # fast path, already canonical
        return angle
    wrapped = math.remainder(angle, math.tau)
    if wrapped <= -math.pi:
        wrapped += math.tau
    return wrapped


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InvalidParameterError(message)


@dataclass(frozen=True)
class Vec3:
    """Point or offset in the world frame, meters."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        _require(all(math.isfinite(v) for v in (self.x, self.y, self.z)),
                 "Vec3 components must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    @classmethod
    def from_array(cls, a) -> "Vec3":
        return cls(float(a[0]), float(a[1]), float(a[2]))

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)


@dataclass(frozen=True)
class Attitude:
    """Yaw/pitch/roll in radians, each wrapped to (-pi, pi]."""

    yaw: float
    pitch: float
    roll: float

    def __post_init__(self):
        for name in ("yaw", "pitch", "roll"):
            v = getattr(self, name)
            _require(math.isfinite(v), f"Attitude.{name} must be finite")
            object.__setattr__(self, name, wrap_angle(v))

    @classmethod
    def zero(cls) -> "Attitude":
        return cls(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class Pose:
    position: Vec3
    attitude: Attitude


@dataclass(frozen=True)
class TrajectorySpec:
    """Parametric UAV trajectory around a center point (the user).

    ``static`` holds the pose the circle parameterization gives at
    ``initial_angle``; ``circular`` advances the angle at
    ``speed / radius`` rad/s.  ``altitude`` is absolute (world z).
    """

    kind: Literal["static", "circular"]
    center: Vec3
    radius: float
    altitude: float
    speed: float = 0.0
    initial_angle: float = 0.0
    attitude_rule: Literal["level", "face_center"] = "level"

    def __post_init__(self):
        _require(self.kind in ("static", "circular"),
                 f"unknown trajectory kind {self.kind!r}")
        _require(self.attitude_rule in ("level", "face_center"),
                 f"unknown attitude_rule {self.attitude_rule!r}")
        if self.kind == "circular":
            _require(self.radius > 0, "radius must be > 0 for circular trajectories")
        else:
            _require(self.radius >= 0, "radius must be >= 0")
        _require(self.speed >= 0, "speed must be >= 0")
        _require(math.isfinite(self.altitude), "altitude must be finite")
        _require(math.isfinite(self.initial_angle), "initial_angle must be finite")


@dataclass(frozen=True)
class PerturbationModel:
    """Stationary AR(1) jitter on attitude and position.

    Each scalar component evolves as ``x <- rho*x + sqrt(1-rho^2)*sigma*w``
    with w standard normal, so the stationary standard deviation is exactly
    ``sigma`` and the lag-1 autocorrelation is ``rho``.
    """

    sigma_attitude: tuple[float, float, float] = (0.0, 0.0, 0.0)  # yaw, pitch, roll (rad)
    sigma_position: tuple[float, float, float] = (0.0, 0.0, 0.0)  # x, y, z (m)
    ar_coefficient: float = 0.0

    def __post_init__(self):
        _require(len(self.sigma_attitude) == 3 and len(self.sigma_position) == 3,
                 "perturbation sigmas must have 3 components")
        object.__setattr__(self, "sigma_attitude", tuple(float(s) for s in self.sigma_attitude))
        object.__setattr__(self, "sigma_position", tuple(float(s) for s in self.sigma_position))
        _require(all(s >= 0 for s in self.sigma_attitude), "sigma_attitude must be >= 0")
        _require(all(s >= 0 for s in self.sigma_position), "sigma_position must be >= 0")
        _require(0.0 <= self.ar_coefficient < 1.0, "ar_coefficient must lie in [0, 1)")

    def is_zero(self) -> bool:
        return all(s == 0 for s in self.sigma_attitude + self.sigma_position)


@dataclass(frozen=True)
class PerturbationState:
    """Current jitter offsets (the AR(1) process memory)."""

    attitude_offset: Attitude
    position_offset: Vec3

    @classmethod
    def zero(cls) -> "PerturbationState":
        return cls(Attitude.zero(), Vec3(0.0, 0.0, 0.0))


def rotation_matrix(attitude: Attitude) -> np.ndarray:
    """3x3 proper rotation for intrinsic Z(yaw)-Y(pitch)-X(roll)."""
    cy, sy = math.cos(attitude.yaw), math.sin(attitude.yaw)
    cp, sp = math.cos(attitude.pitch), math.sin(attitude.pitch)
    cr, sr = math.cos(attitude.roll), math.sin(attitude.roll)
    return np.array([
        [cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr],
        [sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr],
        [-sp, cp * sr, cp * cr],
    ])


def pose_at_time(t: float, traj: TrajectorySpec) -> Pose:
    """Nominal (unperturbed) pose at time t >= 0."""
    _require(t >= 0, "t must be >= 0")
    if traj.kind == "circular" and traj.speed > 0:
        phi = traj.initial_angle + traj.speed * t / traj.radius
    else:
        phi = traj.initial_angle
    position = Vec3(
        traj.center.x + traj.radius * math.cos(phi),
        traj.center.y + traj.radius * math.sin(phi),
        traj.altitude,
    )
    if traj.attitude_rule == "face_center":
        yaw = math.atan2(traj.center.y - position.y, traj.center.x - position.x)
        attitude = Attitude(yaw, 0.0, 0.0)
    else:
        attitude = Attitude.zero()
    return Pose(position, attitude)


def element_positions(ris: "RisSpec", pose: Pose) -> np.ndarray:
    """World coordinates of the surface elements, shape (N, 3).

    Element (i, j) sits on a centered rows x cols grid in the local x-y
    plane (rows along local y, columns along local x), rotated by the
    pose attitude and translated to the pose position.  Row-major order.
    """
    local = local_grid(ris)
    rot = rotation_matrix(pose.attitude)
    return pose.position.as_array() + local @ rot.T


def local_grid(ris: "RisSpec") -> np.ndarray:
    """Element offsets in the surface frame, shape (N, 3), z == 0."""
    return _local_grid_cached(ris.rows, ris.cols, ris.element_spacing)


@lru_cache(maxsize=16)
def _local_grid_cached(rows: int, cols: int, spacing: float) -> np.ndarray:
    xs = (np.arange(cols) - (cols - 1) / 2.0) * spacing
    ys = (np.arange(rows) - (rows - 1) / 2.0) * spacing
    gy, gx = np.meshgrid(ys, xs, indexing="ij")
    out = np.zeros((rows * cols, 3))
    out[:, 0] = gx.ravel()
    out[:, 1] = gy.ravel()
    out.setflags(write=False)  # shared across calls
    return out


def step_perturbation(model: PerturbationModel, state: PerturbationState,
                      rng: np.random.Generator) -> PerturbationState:
    """Advance the AR(1) jitter by one frame.

    Always consumes exactly six standard-normal draws (yaw, pitch, roll,
    x, y, z) so that stream positions stay comparable across scenarios
    that differ only in sigma.
    """
    rho = model.ar_coefficient
    drive = math.sqrt(1.0 - rho * rho)
    w = rng.standard_normal(6)
    att = state.attitude_offset
    pos = state.position_offset
    new_att = Attitude(
        rho * att.yaw + drive * model.sigma_attitude[0] * w[0],
        rho * att.pitch + drive * model.sigma_attitude[1] * w[1],
        rho * att.roll + drive * model.sigma_attitude[2] * w[2],
    )
    new_pos = Vec3(
        rho * pos.x + drive * model.sigma_position[0] * w[3],
        rho * pos.y + drive * model.sigma_position[1] * w[4],
        rho * pos.z + drive * model.sigma_position[2] * w[5],
    )
    return PerturbationState(new_att, new_pos)


def apply_perturbation(pose: Pose, state: PerturbationState) -> Pose:
    """Compose a nominal pose with the current jitter offsets."""
    off_a = state.attitude_offset
    att = pose.attitude
    return Pose(
        pose.position + state.position_offset,
        Attitude(att.yaw + off_a.yaw, att.pitch + off_a.pitch, att.roll + off_a.roll),
    )
