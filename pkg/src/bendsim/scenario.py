"""Scenario fixtures: one obstacle placed relative to the mounted actuator.

Two canonical scenarios ship with the package ("can" and "box"); both place
the object in the curl path so the free chain meets it partway along the
movable links during a 0-100 kPa ramp.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .contact import CircleObstacle, Obstacle, RectangleObstacle
from .errors import ConfigError

__all__ = ["Scenario", "load_scenario", "parse_scenario", "parse_obstacle",
           "shipped_scenarios"]

DEFAULT_ADAPT_PRESSURE = 100.0


@dataclass(frozen=True)
class Scenario:
    """Obstacle placement plus the target pressure of the adaptation run."""

    name: str
    obstacle: Obstacle
    clearance: Optional[float] = None  # None: use the shell radius
    pressure: float = DEFAULT_ADAPT_PRESSURE
    description: str = ""


def _reject_unknown(doc: dict, allowed, where: str) -> None:
    unknown = sorted(set(doc) - set(allowed))
    if unknown:
        raise ConfigError(f"{where}: unknown keys: {', '.join(unknown)}")


def parse_obstacle(doc, where: str = "obstacle") -> Obstacle:
    """Obstacle from its JSON form (lengths mm, rotation deg)."""
    if not isinstance(doc, dict):
        raise ConfigError(f"{where} must be an object")
    kind = doc.get("type")
    try:
        if kind == "circle":
            _reject_unknown(doc, {"type", "center_mm", "radius_mm"}, where)
            return CircleObstacle(tuple(doc["center_mm"]), float(doc["radius_mm"]))
        if kind == "rectangle":
            _reject_unknown(doc, {"type", "center_mm", "width_mm", "height_mm",
                                  "rotation_deg"}, where)
            return RectangleObstacle(
                tuple(doc["center_mm"]), float(doc["width_mm"]),
                float(doc["height_mm"]),
                math.radians(float(doc.get("rotation_deg", 0.0))))
    except (KeyError, TypeError, IndexError) as exc:
        raise ConfigError(f"{where}: missing or malformed field: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    raise ConfigError(f"{where}.type must be 'circle' or 'rectangle'")


def parse_scenario(doc: dict, name: str = "scenario") -> Scenario:
    """Scenario from its JSON form."""
    if not isinstance(doc, dict):
        raise ConfigError("scenario must be an object")
    _reject_unknown(doc, {"name", "description", "obstacle", "clearance_mm",
                          "pressure_kpa"}, "scenario")
    if "obstacle" not in doc:
        raise ConfigError("scenario.obstacle is required")
    obstacle = parse_obstacle(doc["obstacle"], "scenario.obstacle")
    clearance = doc.get("clearance_mm")
    if clearance is not None:
        clearance = float(clearance)
        if clearance < 0:
            raise ConfigError("scenario.clearance_mm must be >= 0")
    pressure = float(doc.get("pressure_kpa", DEFAULT_ADAPT_PRESSURE))
    if pressure < 0:
        raise ConfigError("scenario.pressure_kpa must be >= 0")
    return Scenario(
        name=str(doc.get("name", name)),
        obstacle=obstacle,
        clearance=clearance,
        pressure=pressure,
        description=str(doc.get("description", "")),
    )


def shipped_scenarios() -> list[str]:
    return ["can", "box"]


def load_scenario(source: str) -> Scenario:
    """Load a scenario by shipped name ("can", "box") or file path."""
    if source in shipped_scenarios():
        text = (resources.files("bendsim") / "scenarios"
                / f"{source}.scenario").read_text()
        return parse_scenario(json.loads(text), name=source)
    if not os.path.exists(source):
        raise ConfigError(
            f"scenario {source!r} is neither a shipped name "
            f"({', '.join(shipped_scenarios())}) nor an existing file")
    with open(source) as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"scenario file {source}: invalid JSON: {exc}") from exc
    base = os.path.splitext(os.path.basename(source))[0]
    return parse_scenario(doc, name=base)
