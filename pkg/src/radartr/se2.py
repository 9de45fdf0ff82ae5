"""Planar rigid-body primitives: poses, body twists, exp/log, and the
Jacobian blocks needed by the Gauss-Newton solvers.

Conventions: a Pose2 maps body-frame coordinates into the parent frame.
Tangent vectors are ordered (dx, dy, dtheta), translation first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TAU = 2.0 * math.pi

# Below this rotation magnitude the closed-form exp/log coefficients are
# replaced by their series expansions to avoid 0/0.
_SMALL_ANGLE = 1e-6


def wrap_angle(a: float) -> float:
    """Normalize an angle to (-pi, pi]."""
    a = math.remainder(a, TAU)
    if a <= -math.pi:
        a += TAU
    return a


@dataclass(frozen=True, slots=True)
class Pose2:
    """Rigid transform in the plane; theta is kept normalized to (-pi, pi]."""

    x: float
    y: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.theta)):
            raise ValueError(f"non-finite pose ({self.x}, {self.y}, {self.theta})")
        object.__setattr__(self, "theta", wrap_angle(self.theta))

    @staticmethod
    def identity() -> "Pose2":
        return Pose2(0.0, 0.0, 0.0)

    def rotation(self) -> np.ndarray:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return np.array([[c, -s], [s, c]])

    def translation(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.theta])


@dataclass(frozen=True, slots=True)
class Twist2:
    """Body-frame velocity (vx, vy, omega)."""

    vx: float
    vy: float
    omega: float

    def __post_init__(self):
        if not (math.isfinite(self.vx) and math.isfinite(self.vy) and math.isfinite(self.omega)):
            raise ValueError(f"non-finite twist ({self.vx}, {self.vy}, {self.omega})")

    @staticmethod
    def zero() -> "Twist2":
        return Twist2(0.0, 0.0, 0.0)

    def as_array(self) -> np.ndarray:
        return np.array([self.vx, self.vy, self.omega])

    def scaled(self, dt: float) -> np.ndarray:
        return np.array([self.vx * dt, self.vy * dt, self.omega * dt])


def compose(a: Pose2, b: Pose2) -> Pose2:
    ca, sa = math.cos(a.theta), math.sin(a.theta)
    return Pose2(
        a.x + ca * b.x - sa * b.y,
        a.y + sa * b.x + ca * b.y,
        a.theta + b.theta,
    )


def inverse(p: Pose2) -> Pose2:
    c, s = math.cos(p.theta), math.sin(p.theta)
    return Pose2(-(c * p.x + s * p.y), s * p.x - c * p.y, -p.theta)


def transform_point(p: Pose2, pt) -> np.ndarray:
    c, s = math.cos(p.theta), math.sin(p.theta)
    x, y = float(pt[0]), float(pt[1])
    return np.array([p.x + c * x - s * y, p.y + s * x + c * y])


def transform_points(p: Pose2, pts: np.ndarray) -> np.ndarray:
    """Apply a pose to an (N, 2) array of points."""
    pts = np.asarray(pts, dtype=float)
    c, s = math.cos(p.theta), math.sin(p.theta)
    out = np.empty_like(pts)
    out[:, 0] = p.x + c * pts[:, 0] - s * pts[:, 1]
    out[:, 1] = p.y + s * pts[:, 0] + c * pts[:, 1]
    return out


def _exp_coefficients(theta: float) -> tuple[float, float]:
    # a = sin(t)/t, b = (1-cos(t))/t with series fallbacks near zero.
    if abs(theta) < _SMALL_ANGLE:
        t2 = theta * theta
        a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0
        b = theta * 0.5 - theta * t2 / 24.0
    else:
        a = math.sin(theta) / theta
        b = (1.0 - math.cos(theta)) / theta
    return a, b


def exp(xi) -> Pose2:
    """Closed-form SE(2) exponential of a tangent increment (dx, dy, dtheta)."""
    dx, dy, dtheta = float(xi[0]), float(xi[1]), float(xi[2])
    a, b = _exp_coefficients(dtheta)
    return Pose2(a * dx - b * dy, b * dx + a * dy, dtheta)


def log(p: Pose2) -> np.ndarray:
    """Inverse of exp(); raises on the theta = pi branch boundary."""
    theta = p.theta
    if abs(abs(theta) - math.pi) < 1e-15:
        raise ValueError("log undefined at theta = +/-pi (branch boundary)")
    a, b = _exp_coefficients(theta)
    d = a * a + b * b
    # V^-1 = [[a, b], [-b, a]] / (a^2 + b^2)
    return np.array(
        [(a * p.x + b * p.y) / d, (-b * p.x + a * p.y) / d, theta]
    )


def interpolate_pose(knot_pose: Pose2, knot_twist: Twist2, dt: float, max_dt: float = 0.25) -> Pose2:
    """Constant-body-velocity flow from a knot over dt seconds (|dt| <= max_dt)."""
    if abs(dt) > max_dt + 1e-12:
        raise ValueError(f"interpolation dt {dt} outside +/-{max_dt} s")
    if dt == 0.0:
        return knot_pose
    return compose(knot_pose, exp(knot_twist.scaled(dt)))


def adjoint(p: Pose2) -> np.ndarray:
    """Adjoint matrix of a pose, mapping body tangents to parent-frame tangents."""
    c, s = math.cos(p.theta), math.sin(p.theta)
    return np.array([[c, -s, p.y], [s, c, -p.x], [0.0, 0.0, 1.0]])


def left_jacobian(xi) -> np.ndarray:
    """Left Jacobian of the SE(2) exponential at a tangent vector."""
    dx, dy, theta = float(xi[0]), float(xi[1]), float(xi[2])
    a, b = _exp_coefficients(theta)
    if abs(theta) < _SMALL_ANGLE:
        t2 = theta * theta
        p = theta / 6.0 - theta * t2 / 120.0  # (1 - a)/theta
        q = 0.5 - t2 / 24.0                   # b/theta
    else:
        p = (1.0 - a) / theta
        q = b / theta
    c1 = p * dx + q * dy
    c2 = -q * dx + p * dy
    return np.array([[a, -b, c1], [b, a, c2], [0.0, 0.0, 1.0]])


def right_jacobian(xi) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    return left_jacobian(-xi)


def right_jacobian_inv(xi) -> np.ndarray:
    return np.linalg.inv(right_jacobian(xi))


def flow_points(twist: Twist2, dts: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Apply exp(dt_j * twist) to point j, vectorized over points.

    Used for per-point motion compensation: each point is carried along the
    constant-twist flow by its own time offset dt_j.
    """
    dts = np.asarray(dts, dtype=float)
    pts = np.asarray(pts, dtype=float)
    th = dts * twist.omega
    a = np.sinc(th / np.pi)                      # sin(th)/th
    half = th * 0.5
    b = half * np.sinc(half / np.pi) ** 2        # (1-cos(th))/th
    dx = dts * twist.vx
    dy = dts * twist.vy
    tx = a * dx - b * dy
    ty = b * dx + a * dy
    c, s = np.cos(th), np.sin(th)
    out = np.empty_like(pts)
    out[:, 0] = tx + c * pts[:, 0] - s * pts[:, 1]
    out[:, 1] = ty + s * pts[:, 0] + c * pts[:, 1]
    return out


def validate_covariance3(mat: np.ndarray, sym_tol: float = 1e-12, eig_floor: float = -1e-10) -> np.ndarray:
    """Check a 3x3 covariance over (x, y, theta): symmetric and PSD."""
    mat = np.asarray(mat, dtype=float)
    if mat.shape != (3, 3):
        raise ValueError(f"covariance must be 3x3, got {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise ValueError("non-finite covariance")
    if np.max(np.abs(mat - mat.T)) > sym_tol:
        raise ValueError("covariance not symmetric")
    if np.min(np.linalg.eigvalsh(mat)) < eig_floor:
        raise ValueError("covariance not positive semi-definite")
    return mat
