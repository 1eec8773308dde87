"""Command-line interface.

Subcommands mirror the physical tests: `calibrate`, `bend`, `force`,
`adapt`, `render`, and `presets`.  Exit codes: 0 success, 2 configuration
error, 3 solver failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys

from .config import RunConfig, parse_config, parse_config_dict
from .errors import CalibrationError, ConfigError, SolverError
from .geometry import ActuatorSpec
from .locking import dof, preset, preset_names, resolve_mask
from . import runner

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bendsim",
        description="Planar quasi-static simulator of a pin-lockable "
                    "hybrid rigid-soft pneumatic bending actuator.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE",
                        help="JSON run configuration (defaults apply)")
    common.add_argument("--lock", metavar="NAME",
                        help="lock configuration: 1R, 2R, 4R or 6R")
    common.add_argument("--out", metavar="DIR", help="output directory")

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--start", type=float, metavar="KPA",
                       help="ramp start pressure")
    sweep.add_argument("--stop", type=float, metavar="KPA",
                       help="ramp stop pressure")
    sweep.add_argument("--step", type=float, metavar="KPA",
                       help="ramp pressure step")
    sweep.add_argument("--svg", action="store_true", default=None,
                       help="write an SVG frame per ramp step")
    sweep.add_argument("--no-plot", action="store_true",
                       help="skip the matplotlib figure")

    sub.add_parser("calibrate", parents=[common],
                   help="fit the actuation coefficients from the anchors")
    sub.add_parser("bend", parents=[common, sweep],
                   help="free-bending pressure sweep")
    sub.add_parser("force", parents=[common, sweep],
                   help="blocked-tip-force pressure sweep")

    adapt = sub.add_parser("adapt", parents=[common, sweep],
                           help="contact adaptation ramp against a scenario")
    adapt.add_argument("--scenario", metavar="NAME_OR_FILE",
                       help="shipped scenario name (can, box) or file path")

    render = sub.add_parser("render", parents=[common],
                            help="render one equilibrium state to SVG")
    render.add_argument("--scenario", metavar="NAME_OR_FILE",
                        help="draw and solve against this scenario")
    render.add_argument("--pressure", type=float, metavar="KPA",
                        help="pressure of the rendered state")

    sub.add_parser("presets", help="list the named lock configurations")
    return parser


def _load_config(args) -> RunConfig:
    if getattr(args, "config", None):
        try:
            with open(args.config) as f:
                text = f.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        cfg = parse_config(text)
    else:
        cfg = parse_config_dict({})
    return cfg.with_overrides(
        lock=getattr(args, "lock", None),
        out_dir=getattr(args, "out", None),
        svg=getattr(args, "svg", None),
        plot=False if getattr(args, "no_plot", False) else None,
        scenario=getattr(args, "scenario", None),
        start=getattr(args, "start", None),
        stop=getattr(args, "stop", None),
        step=getattr(args, "step", None),
    )


def _cmd_calibrate(cfg: RunConfig) -> int:
    model, path = runner.run_calibrate(cfg)
    print(f"torque_coeff        {model.torque_coeff:.6f} N*mm/kPa")
    print(f"spring_coeff        {model.spring_coeff:.6f} N*mm/rad")
    print(f"joint_limit         {math.degrees(model.joint_limit):.3f} deg")
    print(f"saturation_pressure {model.saturation_pressure:.3f} kPa")
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_bend(cfg: RunConfig) -> int:
    table, paths = runner.run_bend(cfg)
    last = table.rows[-1]
    print(f"{len(table)} rows; tip angle at {last[0]:g} kPa: {last[1]:.3f} deg")
    for p in paths:
        print(f"wrote {p}")
    return EXIT_OK


def _cmd_force(cfg: RunConfig) -> int:
    table, paths = runner.run_force(cfg)
    last = table.rows[-1]
    print(f"{len(table)} rows; force at {last[0]:g} kPa: {last[1]:.6f} N")
    for p in paths:
        print(f"wrote {p}")
    return EXIT_OK


def _cmd_adapt(cfg: RunConfig) -> int:
    table, paths = runner.run_adapt(cfg)
    last = table.rows[-1]
    print(f"{len(table)} rows; at {last[0]:g} kPa: mean gap {last[1]:.3f} mm, "
          f"max gap {last[2]:.3f} mm, contact fraction {last[3]:.3f}")
    for p in paths:
        print(f"wrote {p}")
    return EXIT_OK


def _cmd_render(cfg: RunConfig, pressure) -> int:
    path = runner.run_render(cfg, pressure)
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_presets() -> int:
    spec = ActuatorSpec()
    for name in preset_names():
        lock = preset(name)
        mask = resolve_mask(spec, lock)
        pins = ", ".join(f"(start={p.start_module}, span={p.span})"
                         for p in lock.pins) or "none"
        active = ", ".join(f"J{i}" for i in mask.active_indices())
        print(f"{name}: dof={dof(mask)} pins=[{pins}] active=[{active}]")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "presets":
            return _cmd_presets()
        cfg = _load_config(args)
        if args.command == "calibrate":
            return _cmd_calibrate(cfg)
        if args.command == "bend":
            return _cmd_bend(cfg)
        if args.command == "force":
            return _cmd_force(cfg)
        if args.command == "adapt":
            return _cmd_adapt(cfg)
        if args.command == "render":
            return _cmd_render(cfg, args.pressure)
        parser.error(f"unknown command {args.command}")
    except (ConfigError, CalibrationError, ValueError) as exc:
        print(f"bendsim: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"bendsim: solver failure: {exc}", file=sys.stderr)
        if exc.diagnostics:
            print(f"bendsim: diagnostics: {exc.diagnostics}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"bendsim: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
