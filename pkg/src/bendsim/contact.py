"""Obstacles, signed distances, contact-constrained equilibrium, conformity.

The chain centerline is the contact reference curve; the required separation
from the obstacle surface (default: the shell radius) is carried by the
scene's `clearance`.  Equilibrium against an obstacle minimizes the joint
energy subject to the box travel limits and the clearance constraint at
sampled centerline points.  The solve uses an exterior quadratic penalty
with continuation and a projected Newton descent with backtracking,
warm-started along a pressure ramp; the contract is the tolerances, not the
method.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import InfeasibleSceneError, SolverError
from .geometry import ActuatorSpec, JointState, chain_outline
from .locking import ActiveJointMask
from .mechanics import ActuationModel

__all__ = [
    "CircleObstacle",
    "RectangleObstacle",
    "Obstacle",
    "Scene",
    "ContactSolution",
    "ConformityReport",
    "signed_distance",
    "signed_distances",
    "state_energy",
    "solve_equilibrium_with_contact",
    "solve_ramp",
    "iter_ramp",
    "conformity",
]


@dataclass(frozen=True)
class CircleObstacle:
    """Rigid circular cross-section fixed in the actuator plane (mm)."""

    center: tuple
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center",
                           (float(self.center[0]), float(self.center[1])))
        if not self.radius > 0:
            raise ValueError("CircleObstacle.radius must be > 0")


@dataclass(frozen=True)
class RectangleObstacle:
    """Rigid rectangular cross-section; `rotation` is about its center (rad)."""

    center: tuple
    width: float
    height: float
    rotation: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center",
                           (float(self.center[0]), float(self.center[1])))
        if not (self.width > 0 and self.height > 0):
            raise ValueError("RectangleObstacle width and height must be > 0")


Obstacle = Union[CircleObstacle, RectangleObstacle]


def _sd_grad_hess(obstacle: Obstacle, pts: np.ndarray):
    """Signed distance with spatial gradient and Hessian at each point.

    Positive outside, negative inside, zero on the boundary; exact for both
    variants (sharp rectangle corners).

    Args:
        pts: Array (N, 2).

    Returns:
        (sd, grad, hess): arrays (N,), (N, 2) and (N, 2, 2).
    """
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    n = pts.shape[0]
    eye = np.eye(2)

    if isinstance(obstacle, CircleObstacle):
        rel = pts - np.asarray(obstacle.center)
        dist = np.hypot(rel[:, 0], rel[:, 1])
        safe = np.where(dist > 0, dist, 1.0)
        grad = rel / safe[:, None]
        grad[dist == 0] = (1.0, 0.0)
        hess = (eye[None, :, :]
                - grad[:, :, None] * grad[:, None, :]) / safe[:, None, None]
        hess[dist == 0] = 0.0
        return dist - obstacle.radius, grad, hess

    if isinstance(obstacle, RectangleObstacle):
        c, s = math.cos(obstacle.rotation), math.sin(obstacle.rotation)
        rot = np.array([[c, -s], [s, c]])
        local = (pts - np.asarray(obstacle.center)) @ rot  # world -> local
        half = np.array([obstacle.width / 2.0, obstacle.height / 2.0])
        q = np.abs(local) - half
        outside = np.maximum(q, 0.0)
        out_dist = np.hypot(outside[:, 0], outside[:, 1])
        inner = np.minimum(np.maximum(q[:, 0], q[:, 1]), 0.0)
        sd = out_dist + inner

        sign = np.where(local >= 0, 1.0, -1.0)
        is_out = out_dist > 0
        safe = np.where(is_out, out_dist, 1.0)
        grad_local = sign * outside / safe[:, None]
        # inside: move along the axis closest to the boundary
        inside = ~is_out
        along_x = q[:, 0] >= q[:, 1]
        grad_local[inside & along_x, 0] = sign[inside & along_x, 0]
        grad_local[inside & along_x, 1] = 0.0
        grad_local[inside & ~along_x, 0] = 0.0
        grad_local[inside & ~along_x, 1] = sign[inside & ~along_x, 1]

        # curvature only in the outside corner regions; faces and the
        # interior are flat
        hess_local = np.zeros((n, 2, 2))
        corner = (q[:, 0] > 0) & (q[:, 1] > 0)
        if corner.any():
            g = grad_local[corner]
            hess_local[corner] = (eye[None, :, :]
                                  - g[:, :, None] * g[:, None, :]) / \
                out_dist[corner, None, None]
        grad = grad_local @ rot.T
        hess = np.einsum("ij,njk,lk->nil", rot, hess_local, rot)
        return sd, grad, hess

    raise TypeError(f"unknown obstacle type {type(obstacle).__name__}")


def signed_distances(obstacle: Obstacle, pts: np.ndarray) -> np.ndarray:
    """Signed distance from each row of `pts` to the obstacle surface (mm)."""
    return _sd_grad_hess(obstacle, pts)[0]


def signed_distance(obstacle: Obstacle, point) -> float:
    """Signed distance from one point to the obstacle surface (mm)."""
    return float(signed_distances(obstacle, np.asarray(point, dtype=float))[0])


@dataclass(frozen=True)
class Scene:
    """One obstacle placed against one calibrated, lock-configured actuator.

    `clearance` is the required separation between the chain centerline and
    the obstacle surface; None means the shell radius.
    """

    spec: ActuatorSpec
    model: ActuationModel
    mask: ActiveJointMask
    obstacle: Obstacle
    clearance: Optional[float] = None

    def __post_init__(self):
        if len(self.mask) != self.spec.joint_count:
            raise ValueError("mask length does not match spec joint count")
        if self.clearance is None:
            object.__setattr__(self, "clearance", self.spec.shell.shell_radius)
        if self.clearance < 0:
            raise ValueError("Scene.clearance must be >= 0")


@dataclass(frozen=True)
class ContactSolution:
    """Constrained equilibrium with solver diagnostics."""

    state: JointState
    pressure: float
    max_penetration: float
    stationarity_residual: float
    iterations: int
    energy: float


@dataclass(frozen=True)
class ConformityReport:
    """Gap statistics between the movable part of the chain and the surface."""

    mean_gap: float
    max_gap: float
    contact_fraction: float
    sample_count: int


def state_energy(model: ActuationModel, mask: ActiveJointMask,
                 pressure: float, state: JointState) -> float:
    """Spring energy minus pressure work over the active joints (N*mm)."""
    total = 0.0
    for active, angle in zip(mask.active, state.angles):
        if active:
            total += (0.5 * model.spring_coeff * angle * angle
                      - model.torque_coeff * pressure * angle)
    return total


# ---------------------------------------------------------------------------
# solver internals

class _ChainSampler:
    """Vectorized centerline samples with first and second joint derivatives."""

    def __init__(self, spec: ActuatorSpec, active_idx: np.ndarray,
                 samples_per_link: int, bend_sign: int):
        self.spec = spec
        self.active_idx = active_idx          # 0-based indices into the angle vector
        self.samples = samples_per_link
        self.sign = float(bend_sign)
        self.ts = np.linspace(0.0, 1.0, samples_per_link)
        n = spec.module_count
        self.link_of_sample = np.repeat(np.arange(n), samples_per_link)
        # moved[j, a]: sample j is distal to active joint column a
        self.moved = (self.link_of_sample[:, None] >= active_idx[None, :] + 1)

    def full_angles(self, x: np.ndarray) -> np.ndarray:
        full = np.zeros(self.spec.joint_count)
        full[self.active_idx] = x
        return full

    def geometry(self, x: np.ndarray):
        """Points (N,2), Jacobian (N,2,A), joint anchors (A,2) for active joints.

        All geometry is evaluated at the effective angles sign * x; the
        Jacobian already includes the sign chain rule, the second-derivative
        helper below does not need it (sign^2 = 1).
        """
        spec = self.spec
        n = spec.module_count
        angles = self.sign * self.full_angles(x)
        headings = np.concatenate(([0.0], np.cumsum(angles)))  # per link
        dirs = np.column_stack([np.cos(headings), np.sin(headings)])
        steps = spec.module_pitch * dirs
        starts = np.vstack([[0.0, 0.0], np.cumsum(steps, axis=0)])  # (n+1, 2)
        pts = (starts[:n, None, :]
               + spec.module_pitch * self.ts[None, :, None] * dirs[:n, None, :])
        pts = pts.reshape(n * self.samples, 2)

        anchors = starts[self.active_idx + 1]  # joint i (1-based) at starts[i]
        rel = (pts[:, None, :] - anchors[None, :, :]) * self.moved[:, :, None]
        jac = np.empty((pts.shape[0], 2, len(self.active_idx)))
        jac[:, 0, :] = -rel[:, :, 1] * self.sign
        jac[:, 1, :] = rel[:, :, 0] * self.sign
        return pts, jac, anchors


def _penalized_problem(sampler: _ChainSampler, scene: Scene, pressure: float):
    """Value/gradient/Hessian closures for the penalized energy at one pressure."""
    k_spring = scene.model.spring_coeff
    drive = scene.model.torque_coeff * pressure
    obstacle = scene.obstacle
    clearance = scene.clearance
    n_active = len(sampler.active_idx)

    def value(x, mu):
        pts = sampler.geometry(x)[0]
        v = np.maximum(clearance - signed_distances(obstacle, pts), 0.0)
        return (0.5 * k_spring * np.dot(x, x) - drive * np.sum(x)
                + 0.5 * mu * np.dot(v, v))

    def value_grad_hess(x, mu):
        pts, jac, anchors = sampler.geometry(x)
        sd, g_q, h_q = _sd_grad_hess(obstacle, pts)
        v = np.maximum(clearance - sd, 0.0)
        f = (0.5 * k_spring * np.dot(x, x) - drive * np.sum(x)
             + 0.5 * mu * np.dot(v, v))

        dsd = np.einsum("nd,ndk->nk", g_q, jac)  # (N, A)
        g = k_spring * x - drive - mu * (v @ dsd)

        hess = k_spring * np.eye(n_active)
        touch = v > 0
        if touch.any():
            a = dsd[touch]
            hess = hess + mu * (a.T @ a)
            # exact curvature of sd along the chain:
            #   d2sd[a,b] = J_a^T Hq J_b + g_q . d2q/da db,
            #   d2q/da db = -(q - anchor_max(a,b)) for joints proximal to q
            pts_t = pts[touch]
            jac_t = jac[touch]
            gq_t = g_q[touch]
            hq_t = h_q[touch]
            v_t = v[touch]
            spatial = np.einsum("nia,nij,njb->nab", jac_t, hq_t, jac_t)
            # anchor of the more distal joint of each (a, b) pair
            order = np.arange(n_active)
            m = np.maximum(order[:, None], order[None, :])
            rel = pts_t[:, None, :] - anchors[None, :, :]      # (Nt, A, 2)
            gdot = np.einsum("nd,nad->na", gq_t, rel)           # (Nt, A)
            both = sampler.moved[touch][:, :, None] & sampler.moved[touch][:, None, :]
            chain = -gdot[:, m] * both                          # (Nt, A, A)
            d2sd = spatial + chain
            # d2 of 0.5*mu*v^2 with v = clearance - sd:  mu*(dsd dsd^T - v * d2sd)
            hess = hess - mu * np.einsum("n,nab->ab", v_t, d2sd)
        return f, g, hess

    return value, value_grad_hess


def _projected_newton(x, limit, mu, value, value_grad_hess, tol, max_iter):
    """Minimize the penalized energy over the box [0, limit]^d at fixed mu.

    Terminates when the unit-step projected-gradient mapping norm is <= tol,
    when the iteration cap is hit, or when no admissible decrease is left at
    floating-point resolution.

    Returns:
        (x, iterations, residual)
    """
    d = len(x)
    x = np.clip(x, 0.0, limit)
    if d == 0:
        return x, 0, 0.0
    iters = 0
    residual = math.inf
    while iters < max_iter:
        f, g, hess = value_grad_hess(x, mu)
        residual = float(np.max(np.abs(x - np.clip(x - g, 0.0, limit))))
        if residual <= tol:
            return x, iters, residual
        iters += 1

        eps_active = min(1e-9, residual)
        blocked = ((x <= eps_active) & (g > 0)) | ((x >= limit - eps_active) & (g < 0))
        free = ~blocked
        step = np.zeros(d)
        if free.any():
            h_ff = hess[np.ix_(free, free)]
            g_f = g[free]
            step_f = None
            damping = 0.0
            for _ in range(12):  # Levenberg damping until descent direction
                try:
                    trial = np.linalg.solve(
                        h_ff + damping * np.eye(len(g_f)), -g_f)
                except np.linalg.LinAlgError:
                    trial = None
                if trial is not None and np.dot(trial, g_f) < 0 \
                        and np.all(np.isfinite(trial)):
                    step_f = trial
                    break
                damping = max(2.0 * damping, 1e-6 * (1.0 + abs(h_ff).max()))
            if step_f is None:
                step_f = -g_f
            step[free] = step_f
        else:
            step = -g

        noise = 1e-10 * (1.0 + abs(f))
        accepted = False
        for direction in (step, -g):
            alpha = 1.0
            for _ in range(60):
                x_new = np.clip(x + alpha * direction, 0.0, limit)
                delta = x_new - x
                if not delta.any():
                    break
                f_new = value(x_new, mu)
                if f_new <= f + min(1e-4 * np.dot(g, delta), 0.0) + noise:
                    x = x_new
                    accepted = True
                    break
                alpha *= 0.5
            if accepted:
                break
        if not accepted:
            break  # at floating-point resolution of the objective
    return x, iters, residual


def _solve_one_pressure(sampler, scene, pressure, x0, *, penetration_tol,
                        stationarity_tol, max_iterations):
    """Penalty continuation at one fixed pressure.

    Returns (x, iterations, residual, penetration); raises SolverError when
    the tolerance contract cannot be met within the iteration budget.
    """
    value, value_grad_hess = _penalized_problem(sampler, scene, pressure)
    limit = scene.model.joint_limit

    def max_penetration(x):
        sd = signed_distances(scene.obstacle, sampler.geometry(x)[0])
        return max(0.0, float(np.max(scene.clearance - sd)))

    x = np.asarray(x0, dtype=float)
    inner_tol = 0.1 * stationarity_tol
    pen_target = 0.25 * penetration_tol
    mu = 1e4
    iters_total = 0
    residual = math.inf
    pen = max_penetration(x)
    while True:
        budget = max_iterations - iters_total
        if budget <= 0:
            break
        x, iters, residual = _projected_newton(
            x, limit, mu, value, value_grad_hess, inner_tol, budget)
        iters_total += iters
        pen = max_penetration(x)
        if pen <= pen_target or mu >= 1e12:
            break
        mu *= 10.0

    if pen > penetration_tol or residual > stationarity_tol:
        raise SolverError(
            f"contact solve missed tolerances at {pressure:g} kPa: "
            f"penetration {pen:.3e} mm, stationarity {residual:.3e} N*mm",
            {"pressure": pressure, "iterations": iters_total,
             "max_penetration": pen, "stationarity_residual": residual})
    return x, iters_total, residual, pen


def _build_solution(sampler, scene, pressure, x, iters, residual, pen):
    state = JointState(tuple(sampler.full_angles(x)))
    return ContactSolution(
        state=state,
        pressure=pressure,
        max_penetration=pen,
        stationarity_residual=residual,
        iterations=iters,
        energy=state_energy(scene.model, scene.mask, pressure, state),
    )


def iter_ramp(scene: Scene, pressures, *, samples_per_link: int = 8,
              penetration_tol: float = 1e-3, stationarity_tol: float = 1e-6,
              max_iterations: int = 10000, bend_sign: int = 1):
    """Iterator over contact equilibria along an ascending pressure ramp.

    Each step is warm-started from the previous solution.  `bend_sign` of -1
    mounts the actuator mirrored about the x-axis (positive angles curl
    toward -y).  Input validation and the straight-pose feasibility check
    run eagerly; the solves run as the iterator is consumed, so earlier
    solutions survive a failing later step.

    Yields:
        One ContactSolution per ramp pressure.

    Raises:
        InfeasibleSceneError: If the straight pose violates the clearance.
        SolverError: If a step misses the tolerance contract within its
            iteration budget.
    """
    if samples_per_link < 8:
        raise ValueError("samples_per_link must be >= 8")
    if bend_sign not in (1, -1):
        raise ValueError("bend_sign must be +1 or -1")
    ps = [float(p) for p in pressures]
    if any(p < 0 for p in ps):
        raise ValueError("pressures must be >= 0")
    if any(b <= a for a, b in zip(ps, ps[1:])):
        raise ValueError("pressures must be strictly ascending")

    active_idx = np.array([i - 1 for i in scene.mask.active_indices()], dtype=int)
    sampler = _ChainSampler(scene.spec, active_idx, samples_per_link, bend_sign)

    straight = sampler.geometry(np.zeros(len(active_idx)))[0]
    min_sd = float(np.min(signed_distances(scene.obstacle, straight)))
    if min_sd < scene.clearance - 1e-12:
        raise InfeasibleSceneError(
            f"straight pose already within clearance: min signed distance "
            f"{min_sd:.3f} mm < clearance {scene.clearance:g} mm")

    def steps():
        x = np.zeros(len(active_idx))
        for p in ps:
            x, iters, residual, pen = _solve_one_pressure(
                sampler, scene, p, x, penetration_tol=penetration_tol,
                stationarity_tol=stationarity_tol,
                max_iterations=max_iterations)
            yield _build_solution(sampler, scene, p, x, iters, residual, pen)

    return steps()


def solve_ramp(scene: Scene, pressures, **kwargs):
    """Contact equilibria along a pressure ramp, as a list (see iter_ramp)."""
    return list(iter_ramp(scene, pressures, **kwargs))


def solve_equilibrium_with_contact(scene: Scene, pressure: float, *,
                                   ramp_step: float = 5.0,
                                   samples_per_link: int = 8,
                                   penetration_tol: float = 1e-3,
                                   stationarity_tol: float = 1e-6,
                                   max_iterations: int = 10000,
                                   bend_sign: int = 1) -> ContactSolution:
    """Equilibrium against the scene obstacle at `pressure`.

    The solve ramps the pressure up in `ramp_step` increments with warm
    starts, mirroring a gradual inflation, and returns the final step.
    """
    if pressure < 0:
        raise ValueError("pressure must be >= 0")
    if ramp_step <= 0:
        raise ValueError("ramp_step must be > 0")
    n_steps = int(math.floor(pressure / ramp_step + 1e-9))
    ramp = [ramp_step * k for k in range(1, n_steps + 1)]
    if not ramp or ramp[-1] < pressure - 1e-9:
        ramp.append(pressure)
    ramp[-1] = pressure
    if pressure == 0:
        ramp = [0.0]
    solutions = solve_ramp(scene, ramp, samples_per_link=samples_per_link,
                           penetration_tol=penetration_tol,
                           stationarity_tol=stationarity_tol,
                           max_iterations=max_iterations, bend_sign=bend_sign)
    return solutions[-1]


def conformity(solution: ContactSolution, scene: Scene,
               gap_threshold: float = 1.0,
               samples_per_link: int = 8) -> ConformityReport:
    """Gap statistics between the movable links and the obstacle surface.

    A module is movable when some active joint sits between it and the
    mount.  The gap at a sample is its signed distance minus the scene
    clearance, clamped below at zero; contact_fraction is the fraction of
    movable-link samples with gap <= `gap_threshold`.
    """
    active = scene.mask.active_indices()
    if not active:
        return ConformityReport(0.0, 0.0, 0.0, 0)
    first_movable_module = active[0] + 1  # module index, 1-based
    outline = chain_outline(scene.spec, solution.state, samples_per_link)
    start_row = (first_movable_module - 1) * samples_per_link
    pts = outline[start_row:]
    gaps = np.maximum(
        signed_distances(scene.obstacle, pts) - scene.clearance, 0.0)
    return ConformityReport(
        mean_gap=float(np.mean(gaps)),
        max_gap=float(np.max(gaps)),
        contact_fraction=float(np.mean(gaps <= gap_threshold)),
        sample_count=len(gaps),
    )
