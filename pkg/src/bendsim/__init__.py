"""Planar quasi-static simulator of a pin-lockable hybrid rigid-soft bending actuator."""

from .geometry import (
    ActuatorSpec,
    ChamberParams,
    JointState,
    PlanarPose,
    ShellParams,
    chain_outline,
    forward_kinematics,
    tip_deflection_angle,
    total_length,
)
from .locking import (
    ActiveJointMask,
    LockConfig,
    PinLock,
    dof,
    preset,
    preset_names,
    resolve_mask,
)
from .mechanics import (
    ActuationModel,
    CalibrationAnchors,
    DEFAULT_JOINT_LIMIT,
    bending_sweep,
    blocked_tip_force,
    calibrate,
    force_sweep,
    free_equilibrium,
    tip_lever,
)
from .contact import (
    CircleObstacle,
    ConformityReport,
    ContactSolution,
    Obstacle,
    RectangleObstacle,
    Scene,
    conformity,
    signed_distance,
    signed_distances,
    solve_equilibrium_with_contact,
    solve_ramp,
    state_energy,
)
from .errors import CalibrationError, ConfigError, InfeasibleSceneError, SolverError
from .table import SweepTable

__version__ = "0.1.0"
