"""Spin-1 projection amplitudes chi(m_i along a; m_f along c).

Matrices are indexed [m_i][m_f] with the order (+1, 0, -1) on both axes.
hbar never appears; projections are the bare integers m.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .geometry import Z_AXIS, Axis

M_VALUES = (1, 0, -1)
SQRT1_2 = 1.0 / math.sqrt(2.0)


def check_m(m) -> int:
    if isinstance(m, bool) or int(m) != m or int(m) not in M_VALUES:
        raise ValueError(f"projection must be one of +1, 0, -1; got {m!r}")
    return int(m)


def index_of(m: int) -> int:
    """Row/column index of projection m in the (+1, 0, -1) ordering."""
    return 1 - check_m(m)


def _general_table(tp: float, pp: float, t: float, p: float) -> np.ndarray:
    # (tp, pp) locate the initial axis, (t, p) the final one
    c2p, s2p = math.cos(tp / 2) ** 2, math.sin(tp / 2) ** 2
    c2, s2 = math.cos(t / 2) ** 2, math.sin(t / 2) ** 2
    stp, ctp = math.sin(tp), math.cos(tp)
    st, ct = math.sin(t), math.cos(t)
    em = cmath.exp(-1j * (pp - p))
    ep = cmath.exp(1j * (pp - p))
    r = SQRT1_2
    return np.array(
        [
            [
                c2p * c2 * em + s2p * s2 * ep + 0.5 * stp * st,
                r * (s2p * st * ep - c2p * st * em + stp * ct),
                c2p * s2 * em + s2p * c2 * ep - 0.5 * stp * st,
            ],
            [
                r * (-stp * c2 * em + stp * s2 * ep + ctp * st),
                0.5 * stp * st * em + 0.5 * stp * st * ep + ctp * ct,
                r * (-stp * s2 * em + stp * c2 * ep - ctp * st),
            ],
            [
                s2p * c2 * em + c2p * s2 * ep - 0.5 * stp * st,
                r * (-s2p * st * em + c2p * st * ep - stp * ct),
                s2p * s2 * em + c2p * c2 * ep + 0.5 * stp * st,
            ],
        ],
        dtype=complex,
    )


def z_table_from_trig(cos_half_sq: float, sin_half_sq: float, sin_tp: float, cos_tp: float, phi_p: float) -> np.ndarray:
    """Amplitudes toward the z axis, from precomputed trig values of the initial colatitude.

    Taking the trig values (rather than the angle) lets callers substitute shifted
    colatitudes such as t' - pi/2 without forming an out-of-range Axis.
    """
    em = cmath.exp(-1j * phi_p)
    ep = cmath.exp(1j * phi_p)
    r = SQRT1_2
    return np.array(
        [
            [cos_half_sq * em, r * sin_tp, sin_half_sq * ep],
            [-r * sin_tp * em, cos_tp, r * sin_tp * ep],
            [-sin_half_sq * em, r * sin_tp, -cos_half_sq * ep],
        ],
        dtype=complex,
    )


def _z_table(a: Axis) -> np.ndarray:
    tp = a.theta_p
    return z_table_from_trig(
        math.cos(tp / 2) ** 2, math.sin(tp / 2) ** 2, math.sin(tp), math.cos(tp), a.phi_p
    )


def chi_general(m_i: int, a: Axis, m_f: int, c: Axis) -> complex:
    """Amplitude that projection m_i along `a` is measured as m_f along `c`."""
    return complex(_general_table(a.theta_p, a.phi_p, c.theta_p, c.phi_p)[index_of(m_i), index_of(m_f)])


def chi_to_z(m_i: int, a: Axis, m_f: int) -> complex:
    """Amplitude from axis `a` to the z axis, using the printed z-specialised table.

    Note the m_i = -1 row of that table is the negative of ``chi_general(-1, a, m_f, Z_AXIS)``.
    """
    return complex(_z_table(a)[index_of(m_i), index_of(m_f)])


@dataclass(frozen=True)
class TransitionMatrix:
    entries: np.ndarray
    source: Axis
    target: Axis

    def __matmul__(self, other: "TransitionMatrix") -> "TransitionMatrix":
        return TransitionMatrix(self.entries @ other.entries, self.source, other.target)

    def __getitem__(self, key):
        m_i, m_f = key
        return complex(self.entries[index_of(m_i), index_of(m_f)])

    def unitarity_residual(self) -> float:
        e = self.entries
        return float(
            max(
                np.max(np.abs(e @ e.conj().T - np.eye(3))),
                np.max(np.abs(e.conj().T @ e - np.eye(3))),
            )
        )


def chi_matrix(a: Axis, c: Axis) -> TransitionMatrix:
    return TransitionMatrix(_general_table(a.theta_p, a.phi_p, c.theta_p, c.phi_p), a, c)


def chi_to_z_matrix(a: Axis) -> TransitionMatrix:
    return TransitionMatrix(_z_table(a), a, Z_AXIS)


def chain(a: Axis, b: Axis, c: Axis) -> TransitionMatrix:
    """Sum over intermediate projections along `b`: chi(a, b) @ chi(b, c).

    Compare against ``chi_matrix(a, c)``; the verify module reports the gap.
    """
    return chi_matrix(a, b) @ chi_matrix(b, c)
