"""Deterministic SVG rendering of chain states.

Output is plain SVG 1.1 assembled from fixed-format strings: identical
inputs produce byte-identical files.  The drawing shows a 10 mm reference
grid, the links as rounded rectangles of width twice the shell radius,
the joints as circles, the obstacle outline when present, and the tip
deflection annotation.
"""

from __future__ import annotations

import math
from typing import Optional

from .contact import CircleObstacle, Obstacle, RectangleObstacle
from .geometry import ActuatorSpec, JointState, forward_kinematics, tip_deflection_angle

__all__ = ["render_svg"]

_SCALE = 3.0      # px per mm
_MARGIN = 18.0    # mm of padding around the drawing bounds
_GRID = 10.0      # mm


def _fmt(value: float) -> str:
    # fixed decimal format keeps output byte-stable and compact
    text = f"{value:.3f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def _obstacle_bounds(obstacle: Obstacle):
    if isinstance(obstacle, CircleObstacle):
        cx, cy = obstacle.center
        r = obstacle.radius
        return cx - r, cy - r, cx + r, cy + r
    half_w, half_h = obstacle.width / 2.0, obstacle.height / 2.0
    c, s = math.cos(obstacle.rotation), math.sin(obstacle.rotation)
    ext_x = abs(c) * half_w + abs(s) * half_h
    ext_y = abs(s) * half_w + abs(c) * half_h
    cx, cy = obstacle.center
    return cx - ext_x, cy - ext_y, cx + ext_x, cy + ext_y


def render_svg(spec: ActuatorSpec, state: JointState,
               obstacle: Optional[Obstacle] = None,
               path: Optional[str] = None) -> str:
    """Render one chain state (and optional obstacle) to an SVG document.

    Args:
        spec: Actuator geometry.
        state: Joint angles to draw.
        obstacle: Optional obstacle outline.
        path: When given, the document is also written to this file.

    Returns:
        The SVG document as a string.
    """
    poses = forward_kinematics(spec, state)
    shell_r = spec.shell.shell_radius
    xs = [p.x for p in poses]
    ys = [p.y for p in poses]
    min_x, max_x = min(xs) - shell_r, max(xs) + shell_r
    min_y, max_y = min(ys) - shell_r, max(ys) + shell_r
    if obstacle is not None:
        ox0, oy0, ox1, oy1 = _obstacle_bounds(obstacle)
        min_x, max_x = min(min_x, ox0), max(max_x, ox1)
        min_y, max_y = min(min_y, oy0), max(max_y, oy1)
    min_x -= _MARGIN
    min_y -= _MARGIN
    max_x += _MARGIN
    max_y += _MARGIN

    width = (max_x - min_x) * _SCALE
    height = (max_y - min_y) * _SCALE

    def to_px(wx: float, wy: float):
        return (wx - min_x) * _SCALE, (max_y - wy) * _SCALE

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'fill="#ffffff"/>',
    ]

    # 10 mm reference grid
    parts.append('<g stroke="#d9e0e7" stroke-width="1">')
    gx = math.ceil(min_x / _GRID) * _GRID
    while gx <= max_x:
        px, _ = to_px(gx, 0.0)
        parts.append(f'<line x1="{_fmt(px)}" y1="0" x2="{_fmt(px)}" '
                     f'y2="{_fmt(height)}"/>')
        gx += _GRID
    gy = math.ceil(min_y / _GRID) * _GRID
    while gy <= max_y:
        _, py = to_px(0.0, gy)
        parts.append(f'<line x1="0" y1="{_fmt(py)}" x2="{_fmt(width)}" '
                     f'y2="{_fmt(py)}"/>')
        gy += _GRID
    parts.append('</g>')

    # axes through the world origin
    origin_px = to_px(0.0, 0.0)
    parts.append(f'<g stroke="#aab4be" stroke-width="1">'
                 f'<line x1="0" y1="{_fmt(origin_px[1])}" x2="{_fmt(width)}" '
                 f'y2="{_fmt(origin_px[1])}"/>'
                 f'<line x1="{_fmt(origin_px[0])}" y1="0" '
                 f'x2="{_fmt(origin_px[0])}" y2="{_fmt(height)}"/></g>')

    if obstacle is not None:
        if isinstance(obstacle, CircleObstacle):
            cx, cy = to_px(*obstacle.center)
            parts.append(
                f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
                f'r="{_fmt(obstacle.radius * _SCALE)}" fill="#dbe7f5" '
                f'stroke="#4a6fa5" stroke-width="2"/>')
        else:
            cx, cy = to_px(*obstacle.center)
            rot_deg = -math.degrees(obstacle.rotation)  # svg y points down
            parts.append(
                f'<g transform="translate({_fmt(cx)} {_fmt(cy)}) '
                f'rotate({_fmt(rot_deg)})">'
                f'<rect x="{_fmt(-obstacle.width / 2 * _SCALE)}" '
                f'y="{_fmt(-obstacle.height / 2 * _SCALE)}" '
                f'width="{_fmt(obstacle.width * _SCALE)}" '
                f'height="{_fmt(obstacle.height * _SCALE)}" fill="#dbe7f5" '
                f'stroke="#4a6fa5" stroke-width="2"/></g>')

    # links: rounded rectangles from each pose along its heading
    parts.append('<g fill="#f2e3c6" stroke="#8a6d3b" stroke-width="1.5">')
    for k in range(spec.module_count):
        pose = poses[k]
        px, py = to_px(pose.x, pose.y)
        rot_deg = -math.degrees(pose.heading)
        parts.append(
            f'<g transform="translate({_fmt(px)} {_fmt(py)}) '
            f'rotate({_fmt(rot_deg)})">'
            f'<rect x="0" y="{_fmt(-shell_r * _SCALE)}" '
            f'width="{_fmt(spec.module_pitch * _SCALE)}" '
            f'height="{_fmt(2 * shell_r * _SCALE)}" '
            f'rx="{_fmt(0.35 * shell_r * _SCALE)}"/></g>')
    parts.append('</g>')

    # joints
    parts.append('<g fill="#ffffff" stroke="#8a6d3b" stroke-width="1.5">')
    for pose in poses[1:-1]:
        px, py = to_px(pose.x, pose.y)
        parts.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" '
                     f'r="{_fmt(spec.shell.joint_radius * _SCALE)}"/>')
    parts.append('</g>')

    # tip deflection annotation
    tip = poses[-1]
    tx, ty = to_px(tip.x, tip.y)
    label = f"{tip_deflection_angle(state):.1f}°"
    parts.append(f'<text x="{_fmt(tx + 12)}" y="{_fmt(ty - 12)}" '
                 f'font-family="sans-serif" font-size="16" '
                 f'fill="#333333">{label}</text>')
    parts.append('</svg>')
    document = "\n".join(parts) + "\n"

    if path is not None:
        with open(path, "w", newline="") as f:
            f.write(document)
    return document
