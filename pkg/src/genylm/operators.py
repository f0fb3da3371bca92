"""Angular-momentum operators on the sphere, applied by central finite differences.

hbar = 1, so eigenvalues are the bare m and l(l+1) = 2.
An operator is  coef_dtheta(theta, phi) * d/dtheta + coef_dphi(theta, phi) * d/dphi.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .geometry import Axis, SpherePoint, frame_from_axis
from .harmonics import AxisKind, GeneralizedHarmonic

THETA_MIN = 0.2
MAX_STEP = 1e-3
STEP_FIRST = 1e-5
STEP_L2 = 1e-4

Field = Callable[[np.ndarray, np.ndarray], np.ndarray]


class PoleExclusionError(ValueError):
    """Point lies inside the band around a pole where cot(theta) is unsafe to difference."""


class OperatorLabel(enum.Enum):
    Lx = "Lx"
    Ly = "Ly"
    Lz = "Lz"
    LxP = "LxP"
    LyP = "LyP"
    LzP = "LzP"


PRIMED = {OperatorLabel.LxP, OperatorLabel.LyP, OperatorLabel.LzP}
KIND_FOR_OPERATOR = {
    OperatorLabel.LzP: AxisKind.W,
    OperatorLabel.LxP: AxisKind.U,
    OperatorLabel.LyP: AxisKind.V,
}


@dataclass(frozen=True)
class AngularOperator:
    label: OperatorLabel
    coef_dtheta: Callable
    coef_dphi: Callable
    axis: Axis | None = None

    def coefficients(self, theta, phi) -> tuple[np.ndarray, np.ndarray]:
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        shape = np.broadcast(theta, phi).shape
        a = np.broadcast_to(np.asarray(self.coef_dtheta(theta, phi), dtype=complex), shape)
        b = np.broadcast_to(np.asarray(self.coef_dphi(theta, phi), dtype=complex), shape)
        return a, b


@dataclass(frozen=True)
class ResidualStats:
    max_abs: float
    mean_abs: float
    points_tested: int
    step: float


def _cot(theta):
    return np.cos(theta) / np.sin(theta)


def _zero(theta, phi):
    return np.zeros(np.broadcast(theta, phi).shape, dtype=complex)


def _unprimed(label: OperatorLabel) -> tuple[Callable, Callable]:
    if label is OperatorLabel.Lx:
        return (lambda t, p: 1j * np.sin(p) + 0 * t, lambda t, p: 1j * _cot(t) * np.cos(p))
    if label is OperatorLabel.Ly:
        return (lambda t, p: -1j * np.cos(p) + 0 * t, lambda t, p: 1j * _cot(t) * np.sin(p))
    return (_zero, lambda t, p: np.full(np.broadcast(t, p).shape, -1j))


def build_operator(label: OperatorLabel | str, a: Axis | None = None) -> AngularOperator:
    label = OperatorLabel(label) if not isinstance(label, OperatorLabel) else label
    if label not in PRIMED:
        dt, dp = _unprimed(label)
        return AngularOperator(label, dt, dp, None)
    if a is None:
        raise ValueError(f"{label.value} needs an axis")
    stp, ctp, pp = math.sin(a.theta_p), math.cos(a.theta_p), a.phi_p
    if label is OperatorLabel.LxP:
        dt = lambda t, p: -1j * ctp * np.sin(p - pp) + 0 * t
        dp = lambda t, p: -1j * (ctp * _cot(t) * np.cos(p - pp) + stp)
    elif label is OperatorLabel.LyP:
        dt = lambda t, p: 1j * np.cos(p - pp) + 0 * t
        dp = lambda t, p: -1j * _cot(t) * np.sin(p - pp)
    else:
        dt = lambda t, p: 1j * stp * np.sin(p - pp) + 0 * t
        dp = lambda t, p: 1j * (stp * _cot(t) * np.cos(p - pp) - ctp)
    return AngularOperator(label, dt, dp, a)


def assembled_operator(label: OperatorLabel | str, a: Axis) -> AngularOperator:
    """n . L built from the Cartesian components Lx, Ly, Lz and the frame of `a`.

    Independent of the transcribed primed operators; used to cross-check them.
    """
    label = OperatorLabel(label) if not isinstance(label, OperatorLabel) else label
    frame = frame_from_axis(a)
    n = {OperatorLabel.LxP: frame.u, OperatorLabel.LyP: frame.v, OperatorLabel.LzP: frame.w}[label]
    comps = [_unprimed(lab) for lab in (OperatorLabel.Lx, OperatorLabel.Ly, OperatorLabel.Lz)]

    def dt(t, p):
        return sum(n[k] * comps[k][0](t, p) for k in range(3))

    def dp(t, p):
        return sum(n[k] * comps[k][1](t, p) for k in range(3))

    return AngularOperator(label, dt, dp, a)


def _check_domain(theta: np.ndarray, step: float) -> None:
    if not 0.0 < step <= MAX_STEP:
        raise ValueError(f"finite-difference step {step} outside (0, {MAX_STEP}]")
    bad = (theta < THETA_MIN) | (theta > math.pi - THETA_MIN)
    if np.any(bad):
        worst = float(np.asarray(theta)[bad].flat[0])
        raise PoleExclusionError(
            f"theta={worst} inside pole-exclusion band; need [{THETA_MIN}, pi-{THETA_MIN}]"
        )


def apply_on(op: AngularOperator, f: Field, theta, phi, step: float = STEP_FIRST) -> np.ndarray:
    """Vectorised (op f) at arrays of angles."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    _check_domain(theta, step)
    d_theta = (f(theta + step, phi) - f(theta - step, phi)) / (2.0 * step)
    d_phi = (f(theta, phi + step) - f(theta, phi - step)) / (2.0 * step)
    a, b = op.coefficients(theta, phi)
    return a * d_theta + b * d_phi


def apply(op: AngularOperator, f: Field, p: SpherePoint, step: float = STEP_FIRST) -> complex:
    return complex(apply_on(op, f, np.array([p.theta]), np.array([p.phi]), step)[0])


def apply_l2_on(f: Field, theta, phi, step: float = STEP_L2) -> np.ndarray:
    """-(f_tt + cot(t) f_t + f_pp / sin^2 t) with three-point stencils."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    _check_domain(theta, step)
    f0 = f(theta, phi)
    ftp, ftm = f(theta + step, phi), f(theta - step, phi)
    fpp, fpm = f(theta, phi + step), f(theta, phi - step)
    h2 = step * step
    f_tt = (ftp - 2.0 * f0 + ftm) / h2
    f_t = (ftp - ftm) / (2.0 * step)
    f_pp = (fpp - 2.0 * f0 + fpm) / h2
    s = np.sin(theta)
    return -(f_tt + _cot(theta) * f_t + f_pp / (s * s))


def apply_l2(f: Field, p: SpherePoint, step: float = STEP_L2) -> complex:
    return complex(apply_l2_on(f, np.array([p.theta]), np.array([p.phi]), step)[0])


def _points_arrays(points) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(points, tuple) and len(points) == 2 and not isinstance(points[0], SpherePoint):
        return np.asarray(points[0], dtype=float), np.asarray(points[1], dtype=float)
    pts = list(points)
    return (
        np.array([p.theta for p in pts], dtype=float),
        np.array([p.phi for p in pts], dtype=float),
    )


def eigen_residual(
    op_kind: OperatorLabel | str,
    harm: GeneralizedHarmonic,
    expected: float,
    points: Iterable[SpherePoint] | tuple[np.ndarray, np.ndarray],
    step: float | None = None,
) -> ResidualStats:
    """Statistics of |(op f)(p) - expected * f(p)| over `points`.

    `op_kind` is "L2" or a primed label; a primed operator is built on the
    harmonic's own axis and must match its axis kind (LzP~w, LxP~u, LyP~v).
    """
    theta, phi = _points_arrays(points)
    if op_kind == "L2":
        step = STEP_L2 if step is None else step
        lhs = apply_l2_on(harm, theta, phi, step)
    else:
        label = OperatorLabel(op_kind) if not isinstance(op_kind, OperatorLabel) else op_kind
        if label not in PRIMED:
            raise ValueError(f"eigen_residual takes L2 or a primed operator, got {label.value}")
        if KIND_FOR_OPERATOR[label] is not harm.axis_kind:
            raise ValueError(
                f"{label.value} does not match a harmonic quantized along {harm.axis_kind.value}"
            )
        step = STEP_FIRST if step is None else step
        lhs = apply_on(build_operator(label, harm.axis), harm, theta, phi, step)
    res = np.abs(lhs - expected * harm(theta, phi))
    return ResidualStats(float(res.max()), float(res.mean()), int(res.size), float(step))
