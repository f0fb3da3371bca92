"""Axes, sphere points and the right-handed frame attached to a quantization axis.

All angles are radians. Colatitudes outside [0, pi] are rejected; azimuths are
wrapped into [0, 2*pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


def _check_angles(theta: float, phi: float, what: str) -> tuple[float, float]:
    theta = float(theta)
    phi = float(phi)
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValueError(f"{what}: angles must be finite, got ({theta}, {phi})")
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"{what}: colatitude {theta} outside [0, pi]")
    phi = math.fmod(phi, TWO_PI)
    if phi < 0.0:
        phi += TWO_PI
    # fmod of a tiny negative number can round up to exactly 2*pi
    if phi >= TWO_PI:
        phi = 0.0
    return theta, phi


@dataclass(frozen=True)
class Axis:
    """Quantization direction given by its polar angles (theta_p, phi_p)."""

    theta_p: float
    phi_p: float

    def __post_init__(self):
        theta, phi = _check_angles(self.theta_p, self.phi_p, "Axis")
        object.__setattr__(self, "theta_p", theta)
        object.__setattr__(self, "phi_p", phi)


@dataclass(frozen=True)
class SpherePoint:
    """Angular position (theta, phi) on the unit sphere."""

    theta: float
    phi: float

    def __post_init__(self):
        theta, phi = _check_angles(self.theta, self.phi, "SpherePoint")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)


Z_AXIS = Axis(0.0, 0.0)


@dataclass(frozen=True)
class Frame:
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray

    def orthonormality_residual(self) -> float:
        """Largest violation of unit norm, mutual orthogonality and right-handedness."""
        u, v, w = self.u, self.v, self.w
        res = [
            abs(np.linalg.norm(u) - 1.0),
            abs(np.linalg.norm(v) - 1.0),
            abs(np.linalg.norm(w) - 1.0),
            abs(u @ v),
            abs(u @ w),
            abs(v @ w),
            np.max(np.abs(np.cross(u, v) - w)),
            np.max(np.abs(np.cross(v, w) - u)),
            np.max(np.abs(np.cross(w, u) - v)),
        ]
        return float(max(res))


def axis_to_unit_vector(a: Axis) -> np.ndarray:
    st, ct = math.sin(a.theta_p), math.cos(a.theta_p)
    return np.array([st * math.cos(a.phi_p), st * math.sin(a.phi_p), ct])


def frame_from_axis(a: Axis) -> Frame:
    """Frame (u, v, w) with w along the axis.

    u = (-cos t' cos p', -cos t' sin p', sin t'),  v = (sin p', -cos p', 0).
    """
    ct, st = math.cos(a.theta_p), math.sin(a.theta_p)
    cp, sp = math.cos(a.phi_p), math.sin(a.phi_p)
    w = axis_to_unit_vector(a)
    u = np.array([-ct * cp, -ct * sp, st])
    v = np.array([sp, -cp, 0.0])
    return Frame(u=u, v=v, w=w)


def random_axes(rng: np.random.Generator, n: int) -> list[Axis]:
    """Axes drawn uniformly over the sphere (area measure)."""
    cos_t = rng.uniform(-1.0, 1.0, size=n)
    phi = rng.uniform(0.0, TWO_PI, size=n)
    theta = np.arccos(np.clip(cos_t, -1.0, 1.0))
    return [Axis(float(t), float(p)) for t, p in zip(theta, phi)]


def cell_centered_grid(n_theta: int, n_phi: int) -> tuple[np.ndarray, np.ndarray]:
    """Row-major (theta-outer) grid: theta_i = (i + 1/2) pi / n_theta, phi_j = 2 pi j / n_phi."""
    if n_theta < 2 or n_phi < 2:
        raise ValueError("grid counts must be >= 2")
    theta = (np.arange(n_theta) + 0.5) * math.pi / n_theta
    phi = np.arange(n_phi) * TWO_PI / n_phi
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    return tt.ravel(), pp.ravel()
