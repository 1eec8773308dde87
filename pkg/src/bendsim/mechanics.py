"""Actuation model: pressure-to-torque, restoring springs, travel saturation.

The soft chamber is one continuous tube, so every active joint receives the
same pressure moment.  Both the pressure moment and the elastic restoring
moment are linear, which makes free bending closed-form: below saturation
each active joint settles where torque_coeff * p balances spring_coeff * angle.
The two coefficients are not material constants; they are calibrated from a
measured bending anchor and a measured blocked-force anchor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CalibrationError
from .geometry import ActuatorSpec, JointState, tip_deflection_angle, total_length
from .locking import ActiveJointMask, dof, preset, resolve_mask
from .table import SweepTable

__all__ = [
    "ActuationModel",
    "CalibrationAnchors",
    "DEFAULT_JOINT_LIMIT",
    "tip_lever",
    "calibrate",
    "free_equilibrium",
    "blocked_tip_force",
    "bending_sweep",
    "force_sweep",
]

DEFAULT_JOINT_LIMIT = math.radians(45.0)


@dataclass(frozen=True)
class ActuationModel:
    """Calibrated linear actuation coefficients with a hard travel stop.

    Attributes:
        torque_coeff: Joint moment per unit gauge pressure (N*mm/kPa),
            identical for every active joint.
        spring_coeff: Linear restoring stiffness of the soft chamber at
            each joint (N*mm/rad).
        joint_limit: Hard per-joint travel stop (rad).
    """

    torque_coeff: float
    spring_coeff: float
    joint_limit: float = DEFAULT_JOINT_LIMIT

    def __post_init__(self):
        if not self.torque_coeff > 0:
            raise ValueError("ActuationModel.torque_coeff must be > 0")
        if not self.spring_coeff > 0:
            raise ValueError("ActuationModel.spring_coeff must be > 0")
        if not 0 < self.joint_limit <= math.pi / 2:
            raise ValueError("ActuationModel.joint_limit must be in (0, pi/2]")

    @property
    def saturation_pressure(self) -> float:
        """Pressure at which every active joint reaches the travel stop (kPa)."""
        return self.spring_coeff * self.joint_limit / self.torque_coeff


@dataclass(frozen=True)
class CalibrationAnchors:
    """The two measured operating points the model is fitted through.

    Defaults are the 6R measurements: 230 deg tip deflection at 120 kPa and
    4 N blocked tip force at 165 kPa.
    """

    bend_pressure: float = 120.0
    bend_tip_angle: float = 230.0
    bend_config: str = "6R"
    force_pressure: float = 165.0
    force_value: float = 4.0
    force_config: str = "6R"

    def __post_init__(self):
        if not self.bend_pressure > 0 or not self.force_pressure > 0:
            raise ValueError("CalibrationAnchors pressures must be > 0")
        if not self.bend_tip_angle > 0:
            raise ValueError("CalibrationAnchors.bend_tip_angle must be > 0")
        if not self.force_value > 0:
            raise ValueError("CalibrationAnchors.force_value must be > 0")


def tip_lever(spec: ActuatorSpec, mask: ActiveJointMask) -> float:
    """Lever arm from the most distal active joint to the tip (mm)."""
    active = mask.active_indices()
    if not active:
        raise ValueError("no active joints: lock configuration is fully pinned")
    return total_length(spec) - spec.joint_position(active[-1])


def _mask_for(spec: ActuatorSpec, config_name: str) -> ActiveJointMask:
    return resolve_mask(spec, preset(config_name))


def calibrate(anchors: CalibrationAnchors, spec: ActuatorSpec,
              joint_limit: float = DEFAULT_JOINT_LIMIT) -> ActuationModel:
    """Fit the two linear coefficients through the measured anchors.

    torque_coeff comes from the blocked-force anchor: the platform reacts
    every joint proximal to the distal-most active joint, so the tip post
    sees that joint's moment over the tip lever.  spring_coeff then comes
    from the bending anchor, where each active joint carries an equal share
    of the tip deflection.

    Raises:
        CalibrationError: If the bend anchor's per-joint angle exceeds
            `joint_limit`, or the force configuration has zero tip lever.
    """
    force_mask = _mask_for(spec, anchors.force_config)
    lever = tip_lever(spec, force_mask)
    if lever <= 0:
        raise CalibrationError(
            "degenerate spec: most distal active joint sits at the tip, "
            "blocked-force lever is zero")
    torque_coeff = anchors.force_value * lever / anchors.force_pressure

    bend_mask = _mask_for(spec, anchors.bend_config)
    per_joint = math.radians(anchors.bend_tip_angle) / dof(bend_mask)
    if per_joint > joint_limit:
        raise CalibrationError(
            f"infeasible calibration: bend anchor implies "
            f"{math.degrees(per_joint):.3f} deg per joint, above the "
            f"{math.degrees(joint_limit):.3f} deg joint limit")
    spring_coeff = torque_coeff * anchors.bend_pressure / per_joint
    return ActuationModel(torque_coeff, spring_coeff, joint_limit)


def free_equilibrium(model: ActuationModel, mask: ActiveJointMask,
                     pressure: float) -> JointState:
    """Unobstructed equilibrium state at `pressure` (closed form).

    Every active joint settles at min(torque_coeff * p / spring_coeff,
    joint_limit); locked joints stay at exactly 0.
    """
    if pressure < 0:
        raise ValueError("pressure must be >= 0")
    angle = min(model.torque_coeff * pressure / model.spring_coeff,
                model.joint_limit)
    return JointState(tuple(angle if a else 0.0 for a in mask.active))


def blocked_tip_force(model: ActuationModel, spec: ActuatorSpec,
                      mask: ActiveJointMask, pressure: float) -> float:
    """Tip force with the chain held straight by a constraining platform (N).

    The platform reacts all proximal joints; the sensor post balances the
    distal active joint's moment through the rigid tip segment.
    """
    if pressure < 0:
        raise ValueError("pressure must be >= 0")
    lever = tip_lever(spec, mask)
    if lever <= 0:
        raise CalibrationError("degenerate configuration: zero tip lever")
    return model.torque_coeff * pressure / lever


def _check_ramp(pressures) -> list[float]:
    ps = [float(p) for p in pressures]
    if any(p < 0 for p in ps):
        raise ValueError("pressures must be >= 0")
    if any(b <= a for a, b in zip(ps, ps[1:])):
        raise ValueError("pressures must be strictly ascending")
    return ps


def bending_sweep(model: ActuationModel, spec: ActuatorSpec,
                  mask: ActiveJointMask, pressures) -> SweepTable:
    """Free-bending table: one row per pressure.

    Columns: pressure_kPa, tip_angle_deg, then one angle_deg column per joint.
    """
    columns = ("pressure_kPa", "tip_angle_deg") + tuple(
        f"joint{i}_angle_deg" for i in range(1, spec.joint_count + 1))
    table = SweepTable(columns)
    for p in _check_ramp(pressures):
        state = free_equilibrium(model, mask, p)
        table.append((p, tip_deflection_angle(state))
                     + tuple(math.degrees(a) for a in state.angles))
    return table


def force_sweep(model: ActuationModel, spec: ActuatorSpec,
                mask: ActiveJointMask, pressures) -> SweepTable:
    """Blocked-force table: columns pressure_kPa, force_N."""
    table = SweepTable(("pressure_kPa", "force_N"))
    for p in _check_ramp(pressures):
        table.append((p, blocked_tip_force(model, spec, mask, p)))
    return table
