"""Ordinary and generalized l=1 spherical harmonics.

A generalized harmonic is held as three complex coefficients over the ordinary
basis (Y_1^{+1}, Y_1^0, Y_1^{-1}). That coefficient row is the only normative
representation. The printed closed forms below exist for auditing and are never
used to compute anything else.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .amplitudes import M_VALUES, check_m, index_of, z_table_from_trig
from .geometry import Axis, SpherePoint

C_PM = math.sqrt(3.0 / (8.0 * math.pi))
C_0 = math.sqrt(3.0 / (4.0 * math.pi))
DENSITY_SUM = 3.0 / (4.0 * math.pi)


class AxisKind(enum.Enum):
    """Which frame vector quantizes the initial state: w (the axis itself), u or v."""

    W = "w"
    U = "u"
    V = "v"


@dataclass(frozen=True)
class GeneralizedHarmonic:
    m: int
    axis: Axis
    axis_kind: AxisKind
    coeffs: tuple[complex, complex, complex]

    def norm_residual(self) -> float:
        return abs(sum(abs(c) ** 2 for c in self.coeffs) - 1.0)

    def __call__(self, theta, phi):
        """Vectorised evaluation; lets a harmonic be passed wherever a field f(theta, phi) is expected."""
        basis = ordinary_basis(theta, phi)
        c = self.coeffs
        return c[0] * basis[0] + c[1] * basis[1] + c[2] * basis[2]


def ordinary_harmonic(m: int, p: SpherePoint) -> complex:
    m = check_m(m)
    if m == 0:
        return complex(C_0 * math.cos(p.theta))
    s = math.sin(p.theta)
    if m == 1:
        return -C_PM * s * cmath.exp(1j * p.phi)
    return C_PM * s * cmath.exp(-1j * p.phi)


def ordinary_basis(theta, phi) -> np.ndarray:
    """Stack (Y_1^{+1}, Y_1^0, Y_1^{-1}) evaluated on broadcastable angle arrays."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    s = np.sin(theta)
    return np.stack(
        [
            -C_PM * s * np.exp(1j * phi),
            (C_0 * np.cos(theta)).astype(complex),
            C_PM * s * np.exp(-1j * phi),
        ]
    )


def _coeff_row(m: int, table: np.ndarray) -> tuple[complex, complex, complex]:
    row = table[index_of(m)]
    return (complex(row[0]), complex(row[1]), complex(row[2]))


def generalized_harmonic(m: int, a: Axis) -> GeneralizedHarmonic:
    tp = a.theta_p
    table = z_table_from_trig(
        math.cos(tp / 2) ** 2, math.sin(tp / 2) ** 2, math.sin(tp), math.cos(tp), a.phi_p
    )
    return GeneralizedHarmonic(check_m(m), a, AxisKind.W, _coeff_row(m, table))


def axis_variant(m: int, a: Axis, kind: AxisKind | str) -> GeneralizedHarmonic:
    """Harmonic quantized along the frame vector u or v of axis `a`.

    u: colatitude t' -> t' - pi/2, azimuth unchanged.
    v: colatitude fixed at pi/2, azimuth p' -> p' - pi/2.
    Shifted trig values are written out directly; no out-of-range Axis is built.
    """
    kind = AxisKind(kind) if not isinstance(kind, AxisKind) else kind
    if kind is AxisKind.W:
        return generalized_harmonic(m, a)
    st, ct = math.sin(a.theta_p), math.cos(a.theta_p)
    if kind is AxisKind.U:
        # cos(t' - pi/2) = sin t', sin(t' - pi/2) = -cos t'
        table = z_table_from_trig(0.5 * (1.0 + st), 0.5 * (1.0 - st), -ct, st, a.phi_p)
    else:
        table = z_table_from_trig(0.5, 0.5, 1.0, 0.0, a.phi_p - 0.5 * math.pi)
    return GeneralizedHarmonic(check_m(m), a, kind, _coeff_row(m, table))


def harmonic(m: int, a: Axis, kind: AxisKind | str = AxisKind.W) -> GeneralizedHarmonic:
    return axis_variant(m, a, kind)


def evaluate(h: GeneralizedHarmonic, p: SpherePoint) -> complex:
    """Scalar evaluation of the coefficient expansion at one point."""
    return sum(
        (c * ordinary_harmonic(m, p) for c, m in zip(h.coeffs, M_VALUES)),
        start=0j,
    )


def probability(h: GeneralizedHarmonic, p: SpherePoint) -> float:
    """Density |Y|^2 per steradian, clamped at zero."""
    return max(abs(evaluate(h, p)) ** 2, 0.0)


def density_field(h: GeneralizedHarmonic, theta, phi) -> np.ndarray:
    val = np.abs(h(theta, phi)) ** 2
    return np.maximum(val, 0.0)


# --- printed closed forms (audit only) ---------------------------------------

def _printed(m: int, tp: float, pp: float, kind: AxisKind, theta, phi):
    st, ct = np.sin(theta), np.cos(theta)
    stp, ctp = math.sin(tp), math.cos(tp)
    d = pp - phi
    cd, sd = np.cos(d), np.sin(d)
    if kind is AxisKind.W:
        if m == 1:
            return C_PM * (ctp * st * cd + stp * ct + 1j * st * sd)
        if m == 0:
            return C_0 * (ct * ctp + st * stp * cd) + 0j
        return C_PM * (-st * ctp * cd + stp * ct - 1j * st * sd)
    if kind is AxisKind.U:
        if m == 1:
            return -C_PM * (ctp * ct + st * (stp * cd - 1j * st * sd))
        if m == 0:
            return C_0 * (stp * ct - ctp * st * cd) + 0j
        return C_PM * (ctp * ct + st * (stp * cd + 1j * st * sd))
    if m == 1:
        return C_PM * (ct + 1j * st * cd)
    if m == 0:
        return C_0 * st * sd + 0j
    return -C_PM * (ct + 1j * st * np.cos(phi - pp))


PRINTED_LABELS = {
    (AxisKind.W, 1): "w+1",
    (AxisKind.W, 0): "w0",
    (AxisKind.W, -1): "w-1",
    (AxisKind.U, 1): "u+1",
    (AxisKind.U, 0): "u0",
    (AxisKind.U, -1): "u-1",
    (AxisKind.V, 1): "v+1",
    (AxisKind.V, 0): "v0",
    (AxisKind.V, -1): "v-1",
}


def printed_closed_form(m: int, a: Axis, kind: AxisKind | str, p: SpherePoint) -> complex:
    """Closed forms exactly as printed, typos included. Audit use only."""
    kind = AxisKind(kind) if not isinstance(kind, AxisKind) else kind
    return complex(_printed(check_m(m), a.theta_p, a.phi_p, kind, p.theta, p.phi))


def printed_closed_form_field(m: int, a: Axis, kind: AxisKind | str):
    kind = AxisKind(kind) if not isinstance(kind, AxisKind) else kind
    m = check_m(m)

    def field(theta, phi):
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        return np.asarray(_printed(m, a.theta_p, a.phi_p, kind, theta, phi), dtype=complex)

    return field


def printed_density(m: int, a: Axis, theta, phi) -> np.ndarray:
    """Printed densities for the axis-w harmonics (audit only)."""
    m = check_m(m)
    st, ct = np.sin(theta), np.cos(theta)
    stp, ctp = math.sin(a.theta_p), math.cos(a.theta_p)
    d = a.phi_p - np.asarray(phi, dtype=float)
    cross = 0.5 * np.sin(2 * theta) * math.sin(2 * a.theta_p) * np.cos(d)
    if m == 0:
        return DENSITY_SUM * (ctp**2 * ct**2 + st**2 * stp**2 * np.cos(d) ** 2 + cross)
    base = ctp**2 * st**2 * np.cos(d) ** 2 + stp**2 * ct**2 + st**2 * np.sin(d) ** 2
    sign = 1.0 if m == 1 else -1.0
    return 3.0 / (8.0 * math.pi) * (base + sign * cross)
