"""Pin-locks that deactivate groups of adjacent joints.

A pin spanning k consecutive modules rigidly joins them and therefore locks
the k-1 joints between them.  Locked joints are held at exactly 0 rad (the
straight pose).  Named presets reproduce the measured 1R/2R/4R/6R
configurations of the default 7-module actuator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import ActuatorSpec

__all__ = [
    "PinLock",
    "LockConfig",
    "ActiveJointMask",
    "resolve_mask",
    "preset",
    "preset_names",
    "dof",
]


@dataclass(frozen=True)
class PinLock:
    """One locking pin: rigidly joins `span` modules starting at `start_module` (1-based)."""

    start_module: int
    span: int

    def __post_init__(self):
        if self.span < 2:
            raise ValueError("PinLock.span must be >= 2")
        if self.start_module < 1:
            raise ValueError("PinLock.start_module must be >= 1")

    def locked_joints(self) -> range:
        """1-based indices of the joints this pin locks."""
        return range(self.start_module, self.start_module + self.span - 1)


@dataclass(frozen=True)
class LockConfig:
    """A set of pins; overlapping pins are legal and union their locked joints."""

    pins: tuple

    def __post_init__(self):
        object.__setattr__(self, "pins", tuple(self.pins))

    @classmethod
    def from_pairs(cls, pairs) -> "LockConfig":
        """Build from (start_module, span) pairs."""
        return cls(tuple(PinLock(int(s), int(n)) for s, n in pairs))


@dataclass(frozen=True)
class ActiveJointMask:
    """Boolean vector over joints J1..Jn; True = joint is free to rotate."""

    active: tuple

    def __post_init__(self):
        object.__setattr__(self, "active", tuple(bool(a) for a in self.active))

    def active_indices(self) -> list[int]:
        """1-based indices of the active joints."""
        return [i + 1 for i, a in enumerate(self.active) if a]

    def __len__(self) -> int:
        return len(self.active)


# Preset pin placements for the 7-module actuator: each pair of pins locks
# runs of modules at the mount and free ends, leaving the named active set.
_PRESETS = {
    "6R": (),
    "4R": ((1, 2), (6, 2)),
    "2R": ((1, 3), (5, 3)),
    "1R": ((1, 3), (4, 4)),
}


def resolve_mask(spec: ActuatorSpec, config: LockConfig) -> ActiveJointMask:
    """Derive the active-joint mask for `config` on `spec`.

    Joint Ji is locked iff some pin spans both modules Mi and Mi+1.

    Raises:
        ValueError: If a pin extends past the last module.
    """
    locked = set()
    for pin in config.pins:
        if pin.start_module + pin.span - 1 > spec.module_count:
            raise ValueError(
                f"pin (start={pin.start_module}, span={pin.span}) exceeds "
                f"module count {spec.module_count}")
        locked.update(pin.locked_joints())
    return ActiveJointMask(tuple(i + 1 not in locked
                                 for i in range(spec.joint_count)))


def preset(name: str) -> LockConfig:
    """Named lock configuration: one of 1R, 2R, 4R, 6R."""
    key = str(name).upper()
    if key not in _PRESETS:
        raise ValueError(
            f"unknown configuration {name!r}; expected one of {sorted(_PRESETS)}")
    return LockConfig.from_pairs(_PRESETS[key])


def preset_names() -> list[str]:
    return ["1R", "2R", "4R", "6R"]


def dof(mask: ActiveJointMask) -> int:
    """Number of active joints."""
    return sum(mask.active)
