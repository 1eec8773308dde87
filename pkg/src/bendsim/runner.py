"""Experiment runners: calibrate once, sweep, and write the report files.

Each runner mirrors one physical test: `run_bend` the free-bending sweep,
`run_force` the blocked-force sweep, `run_adapt` the contact adaptation
ramp.  All emit CSV (plus optional SVG frames and a matplotlib figure)
into the configured output directory and return the in-memory table.
"""

from __future__ import annotations

import math
import os

from .config import PressureRamp, RunConfig
from .contact import Scene, conformity, iter_ramp
from .errors import ConfigError, SolverError
from .geometry import tip_deflection_angle
from .locking import resolve_mask
from .mechanics import (
    ActuationModel,
    bending_sweep,
    calibrate,
    force_sweep,
    free_equilibrium,
)
from .render import render_svg
from .scenario import DEFAULT_ADAPT_PRESSURE
from .table import SweepTable

__all__ = ["build_model", "run_calibrate", "run_bend", "run_force",
           "run_adapt", "run_render"]

_DEFAULT_RAMPS = {
    "bend": (0.0, 120.0, 10.0),
    "force": (0.0, 165.0, 10.0),
    "adapt": (0.0, DEFAULT_ADAPT_PRESSURE, 5.0),
}


def build_model(cfg: RunConfig) -> ActuationModel:
    return calibrate(cfg.anchors, cfg.spec, cfg.joint_limit)


def _ramp_for(cfg: RunConfig, command: str) -> PressureRamp:
    if cfg.ramp is not None:
        return cfg.ramp
    start, stop, step = _DEFAULT_RAMPS[command]
    if command == "adapt" and cfg.scenario is not None:
        stop = cfg.scenario.pressure
    return PressureRamp(start, stop, step)


def _ensure_out(cfg: RunConfig) -> str:
    os.makedirs(cfg.out_dir, exist_ok=True)
    return cfg.out_dir


def run_calibrate(cfg: RunConfig):
    """Calibrate and write calibration.csv; returns (model, csv path)."""
    model = build_model(cfg)
    out = _ensure_out(cfg)
    table = SweepTable(("torque_coeff_Nmm_per_kPa", "spring_coeff_Nmm_per_rad",
                        "joint_limit_deg", "saturation_pressure_kPa"))
    table.append((model.torque_coeff, model.spring_coeff,
                  math.degrees(model.joint_limit), model.saturation_pressure))
    path = os.path.join(out, "calibration.csv")
    table.write_csv(path)
    return model, path


def _write_frames(cfg: RunConfig, stem: str, states, obstacle=None) -> list:
    paths = []
    for i, state in enumerate(states):
        path = os.path.join(cfg.out_dir, f"{stem}_{i:03d}.svg")
        render_svg(cfg.spec, state, obstacle, path)
        paths.append(path)
    return paths


def run_bend(cfg: RunConfig):
    """Free-bending sweep; writes bend_<lock>.csv (+ figure / SVG frames)."""
    model = build_model(cfg)
    mask = resolve_mask(cfg.spec, cfg.lock)
    ramp = _ramp_for(cfg, "bend")
    table = bending_sweep(model, cfg.spec, mask, ramp.values())
    out = _ensure_out(cfg)
    stem = f"bend_{cfg.lock_name}"
    paths = [os.path.join(out, f"{stem}.csv")]
    table.write_csv(paths[0])
    if cfg.plot:
        from .plots import plot_bend
        fig_path = os.path.join(out, f"{stem}.png")
        plot_bend(table, fig_path, label=cfg.lock_name)
        paths.append(fig_path)
    if cfg.svg:
        states = [free_equilibrium(model, mask, p) for p in ramp.values()]
        paths.extend(_write_frames(cfg, stem, states))
    return table, paths


def run_force(cfg: RunConfig):
    """Blocked-force sweep; writes force_<lock>.csv (+ figure)."""
    model = build_model(cfg)
    mask = resolve_mask(cfg.spec, cfg.lock)
    ramp = _ramp_for(cfg, "force")
    table = force_sweep(model, cfg.spec, mask, ramp.values())
    out = _ensure_out(cfg)
    stem = f"force_{cfg.lock_name}"
    paths = [os.path.join(out, f"{stem}.csv")]
    table.write_csv(paths[0])
    if cfg.plot:
        from .plots import plot_force
        fig_path = os.path.join(out, f"{stem}.png")
        plot_force(table, fig_path, label=cfg.lock_name)
        paths.append(fig_path)
    return table, paths


def _adapt_columns(joint_count: int):
    return (("pressure_kPa", "mean_gap_mm", "max_gap_mm", "contact_fraction",
             "max_penetration_mm")
            + tuple(f"joint{i}_angle_deg" for i in range(1, joint_count + 1)))


def run_adapt(cfg: RunConfig):
    """Contact adaptation ramp against the configured scenario.

    Writes adapt_<lock>.csv row by row; if a ramp step fails its tolerance
    contract, the rows so far plus a diagnostics row are still written
    before the SolverError propagates.
    """
    if cfg.scenario is None:
        raise ConfigError("adapt requires a scenario (config key 'scenario' "
                          "or --scenario)")
    model = build_model(cfg)
    mask = resolve_mask(cfg.spec, cfg.lock)
    scene = Scene(cfg.spec, model, mask, cfg.scenario.obstacle,
                  cfg.scenario.clearance)
    ramp = _ramp_for(cfg, "adapt")
    out = _ensure_out(cfg)
    stem = f"adapt_{cfg.lock_name}"
    csv_path = os.path.join(out, f"{stem}.csv")
    table = SweepTable(_adapt_columns(cfg.spec.joint_count))
    paths = [csv_path]
    frame_states = []
    try:
        for sol in iter_ramp(scene, ramp.values()):
            rep = conformity(sol, scene)
            table.append((sol.pressure, rep.mean_gap, rep.max_gap,
                          rep.contact_fraction, sol.max_penetration)
                         + tuple(math.degrees(a) for a in sol.state.angles))
            frame_states.append(sol.state)
    except SolverError as exc:
        diag = exc.diagnostics
        nan = float("nan")
        table.append((diag.get("pressure", nan), nan, nan, nan,
                      diag.get("max_penetration", nan))
                     + (nan,) * cfg.spec.joint_count)
        table.write_csv(csv_path)
        raise
    table.write_csv(csv_path)
    if cfg.plot:
        from .plots import plot_adapt
        fig_path = os.path.join(out, f"{stem}.png")
        plot_adapt(table, fig_path, label=f"{cfg.lock_name} / {cfg.scenario.name}")
        paths.append(fig_path)
    if cfg.svg:
        paths.extend(_write_frames(cfg, stem, frame_states,
                                   obstacle=cfg.scenario.obstacle))
    return table, paths


def run_render(cfg: RunConfig, pressure: float = None):
    """Render one equilibrium state to SVG; returns the file path.

    With a scenario the state is the contact equilibrium at `pressure`
    (default: the scenario pressure); otherwise the free equilibrium.
    """
    model = build_model(cfg)
    mask = resolve_mask(cfg.spec, cfg.lock)
    out = _ensure_out(cfg)
    obstacle = None
    if cfg.scenario is not None:
        from .contact import solve_equilibrium_with_contact
        if pressure is None:
            pressure = cfg.scenario.pressure
        scene = Scene(cfg.spec, model, mask, cfg.scenario.obstacle,
                      cfg.scenario.clearance)
        state = solve_equilibrium_with_contact(scene, pressure).state
        obstacle = cfg.scenario.obstacle
    else:
        if pressure is None:
            pressure = DEFAULT_ADAPT_PRESSURE
        state = free_equilibrium(model, mask, pressure)
    path = os.path.join(out, f"render_{cfg.lock_name}.svg")
    render_svg(cfg.spec, state, obstacle, path)
    return path
