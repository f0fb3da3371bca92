"""Tensor-product sphere quadrature: Gauss-Legendre in cos(theta) times uniform phi."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import TWO_PI
from .harmonics import GeneralizedHarmonic, density_field

NEWTON_TOL = 1e-15


@lru_cache(maxsize=64)
def _gauss_legendre_cached(n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    x = np.empty(n)
    w = np.empty(n)
    for i in range((n + 1) // 2):
        # Tricomi initial guess for the i-th largest root
        z = math.cos(math.pi * (i + 0.75) / (n + 0.5))
        for _ in range(100):
            p0, p1 = 1.0, z
            for k in range(2, n + 1):
                p0, p1 = p1, ((2 * k - 1) * z * p1 - (k - 1) * p0) / k
            dp = n * (z * p1 - p0) / (z * z - 1.0) if n > 1 else 1.0
            dz = p1 / dp
            z -= dz
            if abs(dz) <= NEWTON_TOL:
                break
        p0, p1 = 1.0, z
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * z * p1 - (k - 1) * p0) / k
        dp = n * (z * p1 - p0) / (z * z - 1.0) if n > 1 else 1.0
        wt = 2.0 / ((1.0 - z * z) * dp * dp)
        x[i], x[n - 1 - i] = z, -z
        w[i] = w[n - 1 - i] = wt
    if n % 2 == 1:
        x[n // 2] = 0.0
    order = np.argsort(x)
    return tuple(x[order]), tuple(w[order])


def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (ascending) and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    if n < 1:
        raise ValueError("need at least one node")
    x, w = _gauss_legendre_cached(int(n))
    return np.array(x), np.array(w)


@dataclass(frozen=True)
class QuadratureRule:
    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray
    n_theta: int
    n_phi: int

    def __len__(self):
        return self.weights.size

    def integrate(self, values) -> complex:
        # fixed serial accumulation order so reported sums are reproducible
        return complex(math.fsum((self.weights * np.real(values)).tolist())) + 1j * math.fsum(
            (self.weights * np.imag(values)).tolist()
        )


def sphere_rule(n_theta: int, n_phi: int) -> QuadratureRule:
    if n_theta < 2 or n_phi < 2:
        raise ValueError(f"sphere_rule needs n_theta >= 2 and n_phi >= 2, got ({n_theta}, {n_phi})")
    x, wx = gauss_legendre(n_theta)
    phi = np.arange(n_phi) * TWO_PI / n_phi
    theta = np.arccos(x)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ww = np.outer(wx, np.full(n_phi, TWO_PI / n_phi))
    return QuadratureRule(tt.ravel(), pp.ravel(), ww.ravel(), n_theta, n_phi)


def patch_rule(theta_lo: float, theta_hi: float, phi_lo: float, phi_hi: float, n: int = 12) -> QuadratureRule:
    """Gauss-Legendre in theta and phi over one (theta, phi) rectangle, sin(theta) folded into the weights."""
    x, wx = gauss_legendre(n)
    ht, hp = 0.5 * (theta_hi - theta_lo), 0.5 * (phi_hi - phi_lo)
    theta = theta_lo + ht * (x + 1.0)
    phi = phi_lo + hp * (x + 1.0)
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    ww = np.outer(wx * ht * np.sin(theta), wx * hp)
    return QuadratureRule(tt.ravel(), pp.ravel(), ww.ravel(), n, n)


def inner_product(f, g, rule: QuadratureRule) -> complex:
    """<f, g> = integral of conj(f) g dOmega."""
    return rule.integrate(np.conj(f(rule.theta, rule.phi)) * g(rule.theta, rule.phi))


def integrate_density(h: GeneralizedHarmonic, rule: QuadratureRule) -> float:
    return rule.integrate(density_field(h, rule.theta, rule.phi)).real


def gram_matrix(harmonics, rule: QuadratureRule) -> np.ndarray:
    vals = [h(rule.theta, rule.phi) for h in harmonics]
    n = len(vals)
    out = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            out[i, j] = rule.integrate(np.conj(vals[i]) * vals[j])
    return out
