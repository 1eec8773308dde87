"""Run configuration: JSON documents with defaults for every field.

Configs use the measurement units (mm, deg, kPa); conversion to the
internal mm/rad representation happens here.  An empty document yields the
default 7-module actuator with the default calibration anchors.  Unknown
keys are rejected by name so typos cannot silently fall back to defaults.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Optional

from .errors import ConfigError
from .geometry import ActuatorSpec, ChamberParams, ShellParams
from .locking import LockConfig, preset, preset_names
from .mechanics import DEFAULT_JOINT_LIMIT, CalibrationAnchors
from .scenario import Scenario, load_scenario, parse_scenario

__all__ = ["PressureRamp", "RunConfig", "parse_config", "parse_config_dict"]


@dataclass(frozen=True)
class PressureRamp:
    """Ascending pressure schedule: start, stop, step (kPa)."""

    start: float
    stop: float
    step: float

    def __post_init__(self):
        if self.step <= 0:
            raise ConfigError("pressures.step_kpa must be > 0")
        if self.start < 0:
            raise ConfigError("pressures.start_kpa must be >= 0")
        if self.stop < self.start:
            raise ConfigError("pressures.stop_kpa must be >= start_kpa")

    def values(self) -> list[float]:
        """Strictly ascending pressures from start to stop inclusive."""
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9))
        vals = [self.start + k * self.step for k in range(count + 1)]
        if vals[-1] < self.stop - 1e-9 * max(1.0, self.stop):
            vals.append(self.stop)
        vals[-1] = self.stop
        return vals


@dataclass(frozen=True)
class RunConfig:
    """Everything one run needs: actuator, anchors, lock, ramp, scenario, output."""

    spec: ActuatorSpec
    anchors: CalibrationAnchors
    joint_limit: float
    lock_name: str
    lock: LockConfig
    ramp: Optional[PressureRamp]
    scenario: Optional[Scenario]
    out_dir: str = "out"
    svg: bool = False
    plot: bool = True

    def with_overrides(self, *, lock=None, out_dir=None, svg=None, plot=None,
                       scenario=None, start=None, stop=None, step=None
                       ) -> "RunConfig":
        """Apply CLI-level overrides on top of the parsed file."""
        cfg = self
        if lock is not None:
            name, lock_cfg = _parse_lock(lock)
            cfg = replace(cfg, lock_name=name, lock=lock_cfg)
        if out_dir is not None:
            cfg = replace(cfg, out_dir=out_dir)
        if svg is not None:
            cfg = replace(cfg, svg=bool(svg))
        if plot is not None:
            cfg = replace(cfg, plot=bool(plot))
        if scenario is not None:
            cfg = replace(cfg, scenario=load_scenario(scenario))
        if start is not None or stop is not None or step is not None:
            base = cfg.ramp
            cfg = replace(cfg, ramp=PressureRamp(
                start if start is not None else (base.start if base else 0.0),
                stop if stop is not None else (base.stop if base else
                                               (start or 0.0)),
                step if step is not None else (base.step if base else 10.0)))
        return cfg


def _reject_unknown(doc: dict, allowed, where: str) -> None:
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        keys = ", ".join(f"{where}.{k}" if where else k for k in unknown)
        raise ConfigError(f"unknown keys: {keys}")


def _number(doc: dict, key: str, default: float, where: str) -> float:
    value = doc.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number")
    return float(value)


def _parse_spec(doc: dict) -> ActuatorSpec:
    _reject_unknown(doc, {"module_count", "module_pitch_mm", "shell", "chamber"},
                    "spec")
    shell_doc = doc.get("shell", {})
    _reject_unknown(shell_doc, {"effective_length_mm", "opening_angle_deg",
                                "joint_radius_mm", "shell_radius_mm",
                                "wall_thickness_mm"}, "spec.shell")
    chamber_doc = doc.get("chamber", {})
    _reject_unknown(chamber_doc, {"sphere_radius_mm", "chamber_thickness_mm"},
                    "spec.chamber")
    try:
        shell = ShellParams(
            effective_length=_number(shell_doc, "effective_length_mm", 14.0,
                                     "spec.shell"),
            opening_angle=_number(shell_doc, "opening_angle_deg", 75.0,
                                  "spec.shell"),
            joint_radius=_number(shell_doc, "joint_radius_mm", 10.0, "spec.shell"),
            shell_radius=_number(shell_doc, "shell_radius_mm", 12.0, "spec.shell"),
            wall_thickness=_number(shell_doc, "wall_thickness_mm", 1.0,
                                   "spec.shell"),
        )
        chamber = ChamberParams(
            sphere_radius=_number(chamber_doc, "sphere_radius_mm", 9.0,
                                  "spec.chamber"),
            chamber_thickness=_number(chamber_doc, "chamber_thickness_mm", 1.5,
                                      "spec.chamber"),
        )
        count = doc.get("module_count", 7)
        if isinstance(count, bool) or not isinstance(count, int):
            raise ConfigError("spec.module_count must be an integer")
        return ActuatorSpec(
            module_count=count,
            module_pitch=_number(doc, "module_pitch_mm", 15.0, "spec"),
            shell=shell,
            chamber=chamber,
        )
    except ValueError as exc:
        raise ConfigError(f"spec: {exc}") from exc


def _parse_anchors(doc: dict) -> CalibrationAnchors:
    _reject_unknown(doc, {"bend_pressure_kpa", "bend_tip_angle_deg",
                          "bend_config", "force_pressure_kpa", "force_value_n",
                          "force_config"}, "anchors")
    try:
        return CalibrationAnchors(
            bend_pressure=_number(doc, "bend_pressure_kpa", 120.0, "anchors"),
            bend_tip_angle=_number(doc, "bend_tip_angle_deg", 230.0, "anchors"),
            bend_config=str(doc.get("bend_config", "6R")),
            force_pressure=_number(doc, "force_pressure_kpa", 165.0, "anchors"),
            force_value=_number(doc, "force_value_n", 4.0, "anchors"),
            force_config=str(doc.get("force_config", "6R")),
        )
    except ValueError as exc:
        raise ConfigError(f"anchors: {exc}") from exc


def _parse_lock(value) -> tuple[str, LockConfig]:
    if isinstance(value, str):
        try:
            return value.upper(), preset(value)
        except ValueError as exc:
            raise ConfigError(
                f"lock: {exc}; pass one of {preset_names() + ['6R']} or a "
                f"list of [start_module, span] pairs") from exc
    if isinstance(value, (list, tuple)):
        try:
            pairs = [(int(s), int(n)) for s, n in value]
            return "custom", LockConfig.from_pairs(pairs)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"lock: {exc}") from exc
    raise ConfigError("lock must be a configuration name or a list of "
                      "[start_module, span] pairs")


def _parse_ramp(doc: dict) -> PressureRamp:
    _reject_unknown(doc, {"start_kpa", "stop_kpa", "step_kpa"}, "pressures")
    if "stop_kpa" not in doc:
        raise ConfigError("pressures.stop_kpa is required when pressures is given")
    start = _number(doc, "start_kpa", 0.0, "pressures")
    stop = _number(doc, "stop_kpa", start, "pressures")
    step = _number(doc, "step_kpa", 10.0, "pressures")
    return PressureRamp(start, stop, step)


def _parse_output(doc: dict) -> tuple[str, bool, bool]:
    _reject_unknown(doc, {"dir", "svg", "plot"}, "output")
    out_dir = str(doc.get("dir", "out"))
    svg = doc.get("svg", False)
    plot = doc.get("plot", True)
    if not isinstance(svg, bool):
        raise ConfigError("output.svg must be a boolean")
    if not isinstance(plot, bool):
        raise ConfigError("output.plot must be a boolean")
    return out_dir, svg, plot


def parse_config_dict(doc: dict) -> RunConfig:
    """Validated RunConfig from a parsed JSON object; defaults applied."""
    if not isinstance(doc, dict):
        raise ConfigError("config root must be an object")
    _reject_unknown(doc, {"spec", "anchors", "joint_limit_deg", "lock",
                          "pressures", "scenario", "output"}, "")
    spec = _parse_spec(doc.get("spec", {}))
    anchors = _parse_anchors(doc.get("anchors", {}))
    limit_deg = _number(doc, "joint_limit_deg",
                        math.degrees(DEFAULT_JOINT_LIMIT), "")
    if not 0 < limit_deg <= 90:
        raise ConfigError("joint_limit_deg must be in (0, 90]")
    lock_name, lock = _parse_lock(doc.get("lock", "6R"))
    ramp = _parse_ramp(doc["pressures"]) if "pressures" in doc else None

    scenario = None
    if "scenario" in doc:
        sc = doc["scenario"]
        if isinstance(sc, str):
            scenario = load_scenario(sc)
        else:
            scenario = parse_scenario(sc)

    out_dir, svg, plot = _parse_output(doc.get("output", {}))
    return RunConfig(
        spec=spec,
        anchors=anchors,
        joint_limit=math.radians(limit_deg),
        lock_name=lock_name,
        lock=lock,
        ramp=ramp,
        scenario=scenario,
        out_dir=out_dir,
        svg=svg,
        plot=plot,
    )


def parse_config(text: str) -> RunConfig:
    """Validated RunConfig from a JSON document; empty text means defaults."""
    text = text.strip()
    if not text:
        return parse_config_dict({})
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    return parse_config_dict(doc)
