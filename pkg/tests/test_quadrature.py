import math

import numpy as np
import pytest

from genylm.geometry import Axis, random_axes
from genylm.harmonics import AxisKind, axis_variant, generalized_harmonic, ordinary_basis
from genylm.quadrature import gauss_legendre, gram_matrix, inner_product, integrate_density, patch_rule, sphere_rule

FOUR_PI = 12.566370614359172


@pytest.mark.parametrize("n", [1, 2, 3, 8, 16, 31, 40])
def test_nodes_match_numpy(n):
    x, w = gauss_legendre(n)
    xr, wr = np.polynomial.legendre.leggauss(n)
    assert np.abs(x - xr).max() <= 1e-14
    assert np.abs(w - wr).max() <= 1e-14


@pytest.mark.parametrize("n", [2, 5, 16])
def test_polynomial_exactness(n):
    x, w = gauss_legendre(n)
    for k in range(2 * n):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert abs(np.dot(w, x**k) - exact) <= 1e-14


def test_rule_is_deterministic():
    a, b = sphere_rule(16, 32), sphere_rule(16, 32)
    assert np.array_equal(a.weights, b.weights) and np.array_equal(a.theta, b.theta)


@pytest.mark.parametrize("n_theta, n_phi, count", [(16, 32, 512), (2, 4, 8)])
def test_total_weight(n_theta, n_phi, count):
    rule = sphere_rule(n_theta, n_phi)
    assert len(rule) == count
    assert (rule.weights > 0).all()
    assert abs(rule.weights.sum() - FOUR_PI) <= 1e-12


def test_cos_squared():
    rule = sphere_rule(16, 32)
    assert abs(rule.integrate(np.cos(rule.theta) ** 2).real - 4 * math.pi / 3) <= 1e-14


@pytest.mark.parametrize(
    "f, exact",
    [
        (lambda t, p: np.sin(t) ** 2 * np.cos(p) ** 2, 4 * math.pi / 3),
        (lambda t, p: np.sin(t) ** 2 * np.sin(2 * p), 0.0),
        (lambda t, p: np.sin(t) * np.cos(t) * np.cos(p), 0.0),
        (lambda t, p: np.cos(t) ** 2 * np.sin(p) ** 2, 2 * math.pi / 3),
        (lambda t, p: np.cos(t), 0.0),
    ],
)
def test_low_degree_exactness(f, exact):
    rule = sphere_rule(16, 32)
    assert abs(rule.integrate(f(rule.theta, rule.phi)) - exact) <= 1e-13


@pytest.mark.parametrize("n_theta, n_phi", [(1, 4), (4, 1), (0, 0)])
def test_counts_too_small(n_theta, n_phi):
    with pytest.raises(ValueError):
        sphere_rule(n_theta, n_phi)


def test_inner_product_examples():
    rule = sphere_rule(16, 32)

    def y(i):
        return lambda t, p: ordinary_basis(t, p)[i]

    assert abs(inner_product(y(1), y(1), rule) - 1) <= 1e-12
    assert abs(inner_product(y(0), y(2), rule)) <= 1e-12
    a = Axis(0.7, 2.1)
    assert abs(inner_product(generalized_harmonic(1, a), generalized_harmonic(0, a), rule)) <= 1e-12


def test_density_integrates_to_one(axes):
    rule = sphere_rule(16, 32)
    for a in axes[:50]:
        total = 0.0
        for m in (1, 0, -1):
            val = integrate_density(generalized_harmonic(m, a), rule)
            assert abs(val - 1) <= 1e-12
            total += val
        assert abs(total - 3) <= 1e-12
    assert abs(integrate_density(generalized_harmonic(0, Axis(0, 0)), rule) - 1) <= 1e-12


def test_gram_identity_all_kinds():
    rule = sphere_rule(16, 32)
    for a in random_axes(np.random.default_rng(5), 50):
        for kind in AxisKind:
            g = gram_matrix([axis_variant(m, a, kind) for m in (1, 0, -1)], rule)
            assert np.abs(g - np.eye(3)).max() <= 1e-12


def test_patch_rule_area():
    rule = patch_rule(0.3, 1.1, 0.5, 2.0)
    exact = (math.cos(0.3) - math.cos(1.1)) * 1.5
    assert abs(rule.weights.sum() - exact) <= 1e-14
