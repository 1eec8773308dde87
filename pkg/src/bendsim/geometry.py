"""Parametric actuator description and planar forward kinematics.

The actuator is modeled as a serial chain of rigid modules in the sagittal
plane, connected by revolute joints with parallel axes.  All lengths are in
millimeters and all angles in radians unless a name says otherwise; degrees
and kPa appear only at the CLI/config boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ShellParams",
    "ChamberParams",
    "ActuatorSpec",
    "JointState",
    "PlanarPose",
    "forward_kinematics",
    "tip_deflection_angle",
    "chain_outline",
    "total_length",
]


@dataclass(frozen=True)
class ShellParams:
    """Geometry of one rigid shell module (sagittal-plane view).

    Attributes:
        effective_length: Nominal shell length along the chain (mm).
        opening_angle: Opening angle of the shell cutout (deg).
        joint_radius: Radius of the joint boss (mm).
        shell_radius: Outer radius of the shell (mm).
        wall_thickness: Shell wall thickness (mm).
    """

    effective_length: float = 14.0
    opening_angle: float = 75.0
    joint_radius: float = 10.0
    shell_radius: float = 12.0
    wall_thickness: float = 1.0

    def __post_init__(self):
        for name in ("effective_length", "opening_angle", "joint_radius",
                     "shell_radius", "wall_thickness"):
            if not getattr(self, name) > 0:
                raise ValueError(f"ShellParams.{name} must be > 0")
        if not self.wall_thickness < self.joint_radius:
            raise ValueError("ShellParams: wall_thickness must be < joint_radius")
        if not self.joint_radius < self.shell_radius:
            raise ValueError("ShellParams: joint_radius must be < shell_radius")
        if not self.opening_angle < 180.0:
            raise ValueError("ShellParams: opening_angle must be < 180 deg")


@dataclass(frozen=True)
class ChamberParams:
    """Geometry of the soft chamber (one semi-spherical cell per module).

    Attributes:
        sphere_radius: Radius of one semi-spherical cell (mm).
        chamber_thickness: Chamber wall thickness (mm).
    """

    sphere_radius: float = 9.0
    chamber_thickness: float = 1.5

    def __post_init__(self):
        if not self.chamber_thickness > 0:
            raise ValueError("ChamberParams.chamber_thickness must be > 0")
        if not self.chamber_thickness < self.sphere_radius:
            raise ValueError(
                "ChamberParams: chamber_thickness must be < sphere_radius")


@dataclass(frozen=True)
class ActuatorSpec:
    """Full geometric description of one actuator.

    Module 1 is fixed to the mount; joint i (1-based, i = 1..module_count-1)
    connects modules i and i+1 and sits at arc position i * module_pitch
    from the base.

    Attributes:
        module_count: Number of rigid modules (>= 2).
        module_pitch: Joint-to-joint spacing along the straight chain (mm).
        shell: Rigid shell geometry.
        chamber: Soft chamber geometry.
    """

    module_count: int = 7
    module_pitch: float = 15.0
    shell: ShellParams = field(default_factory=ShellParams)
    chamber: ChamberParams = field(default_factory=ChamberParams)

    def __post_init__(self):
        if self.module_count < 2:
            raise ValueError("ActuatorSpec.module_count must be >= 2")
        if not self.module_pitch > 0:
            raise ValueError("ActuatorSpec.module_pitch must be > 0")
        if not self.chamber.sphere_radius < self.shell.joint_radius:
            raise ValueError(
                "ActuatorSpec: chamber.sphere_radius must be < shell.joint_radius")

    @property
    def joint_count(self) -> int:
        return self.module_count - 1

    def joint_position(self, joint_index: int) -> float:
        """Arc position of joint `joint_index` (1-based) from the base (mm)."""
        if not 1 <= joint_index <= self.joint_count:
            raise ValueError(f"joint index {joint_index} out of range")
        return joint_index * self.module_pitch


@dataclass(frozen=True)
class JointState:
    """Vector of joint angles (rad); positive bends toward the pressurized-side curl."""

    angles: tuple

    def __post_init__(self):
        angles = tuple(float(a) for a in self.angles)
        if not all(math.isfinite(a) for a in angles):
            raise ValueError("JointState angles must be finite")
        object.__setattr__(self, "angles", angles)

    @classmethod
    def zeros(cls, joint_count: int) -> "JointState":
        return cls((0.0,) * joint_count)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.angles, dtype=float)

    def __len__(self) -> int:
        return len(self.angles)


@dataclass(frozen=True)
class PlanarPose:
    """Position and heading of a frame in the actuator plane (mm, rad)."""

    x: float
    y: float
    heading: float

    def advanced(self, distance: float) -> "PlanarPose":
        """Pose translated `distance` mm along the current heading."""
        return PlanarPose(self.x + distance * math.cos(self.heading),
                          self.y + distance * math.sin(self.heading),
                          self.heading)

    def rotated(self, angle: float) -> "PlanarPose":
        """Pose with heading increased by `angle` rad."""
        return PlanarPose(self.x, self.y, self.heading + angle)

    def position(self) -> np.ndarray:
        return np.array([self.x, self.y])


def _check_state(spec: ActuatorSpec, state: JointState) -> None:
    if len(state) != spec.joint_count:
        raise ValueError(
            f"JointState has {len(state)} angles, spec expects {spec.joint_count}")


def forward_kinematics(spec: ActuatorSpec, state: JointState) -> list[PlanarPose]:
    """Poses of the base, every joint, and the tip, base first.

    The base pose is (0, 0, 0).  Each subsequent pose advances one module
    pitch along the current heading and then rotates by the joint angle;
    the tip pose is the last joint pose advanced by one more pitch.

    Args:
        spec: Actuator geometry.
        state: Joint angles, length spec.joint_count.

    Returns:
        List of module_count + 1 poses: [base, J1, ..., Jn, tip].
    """
    _check_state(spec, state)
    poses = [PlanarPose(0.0, 0.0, 0.0)]
    pose = poses[0]
    for angle in state.angles:
        pose = pose.advanced(spec.module_pitch).rotated(angle)
        poses.append(pose)
    poses.append(pose.advanced(spec.module_pitch))
    return poses


def tip_deflection_angle(state: JointState) -> float:
    """Heading of the tip segment relative to the straight pose, in degrees.

    Equals the sum of all joint angles.
    """
    return math.degrees(math.fsum(state.angles))


def chain_outline(spec: ActuatorSpec, state: JointState,
                  samples_per_link: int = 8) -> np.ndarray:
    """Centerline samples of every link in world frame, base to tip.

    Each of the module_count links contributes samples_per_link points
    placed uniformly from its proximal to its distal end (both included),
    so the first point is the base position and the last is the tip.

    Args:
        spec: Actuator geometry.
        state: Joint angles.
        samples_per_link: Points per link, >= 2.

    Returns:
        Array of shape (module_count * samples_per_link, 2), in mm.
    """
    if samples_per_link < 2:
        raise ValueError("samples_per_link must be >= 2")
    _check_state(spec, state)
    poses = forward_kinematics(spec, state)
    ts = np.linspace(0.0, 1.0, samples_per_link)
    points = np.empty((spec.module_count * samples_per_link, 2))
    for k in range(spec.module_count):
        start = poses[k]
        dx = spec.module_pitch * math.cos(start.heading)
        dy = spec.module_pitch * math.sin(start.heading)
        rows = slice(k * samples_per_link, (k + 1) * samples_per_link)
        points[rows, 0] = start.x + ts * dx
        points[rows, 1] = start.y + ts * dy
    return points


def total_length(spec: ActuatorSpec) -> float:
    """Straight length of the chain: module_count * module_pitch (mm)."""
    return spec.module_count * spec.module_pitch
