import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from genylm.amplitudes import M_VALUES, chain, check_m, chi_general, chi_matrix, chi_to_z, chi_to_z_matrix
from genylm.geometry import Z_AXIS, Axis, random_axes

R2 = 1 / math.sqrt(2)
axes_st = st.builds(Axis, st.floats(0.0, math.pi), st.floats(0.0, 2 * math.pi, exclude_max=True))
m_st = st.sampled_from(M_VALUES)


@pytest.mark.parametrize(
    "m_i, a, m_f, c, expected",
    [
        (0, (0, 0), 0, (0, 0), 1.0),
        (1, (math.pi / 2, 0), 1, (math.pi / 2, 0), 1.0),
        (1, (math.pi / 2, 0), 0, (0, 0), 0.7071067811865476),
    ],
)
def test_chi_general_examples(m_i, a, m_f, c, expected):
    assert chi_general(m_i, Axis(*a), m_f, Axis(*c)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "m_i, a, m_f, expected",
    [
        (1, (math.pi / 2, 0), 0, 0.7071067811865476),
        (0, (0, 0), 0, 1.0),
        (-1, (math.pi / 3, math.pi / 2), -1, -0.75j),
    ],
)
def test_chi_to_z_examples(m_i, a, m_f, expected):
    assert abs(chi_to_z(m_i, Axis(*a), m_f) - expected) <= 1e-15


def test_matrix_at_coincident_z_axes():
    # general amplitudes give the identity; the z-specialised table carries -1 in the last slot
    np.testing.assert_allclose(chi_matrix(Z_AXIS, Z_AXIS).entries, np.eye(3), atol=1e-15)
    np.testing.assert_allclose(chi_to_z_matrix(Z_AXIS).entries, np.diag([1, 1, -1]), atol=1e-15)


def test_matrix_row_toward_z():
    row = chi_matrix(Axis(math.pi / 2, 0), Z_AXIS).entries[0]
    np.testing.assert_allclose(row, [0.5, R2, 0.5], atol=1e-15)


def test_matrix_indexing():
    a, c = Axis(0.4, 1.0), Axis(2.0, 3.0)
    mat = chi_matrix(a, c)
    for m_i in M_VALUES:
        for m_f in M_VALUES:
            assert mat[m_i, m_f] == chi_general(m_i, a, m_f, c)


def test_row_norm_identity():
    # cos^4(t/2) + sin^2(t)/2 + sin^4(t/2) = 1
    for t in np.linspace(0, math.pi, 37):
        row = chi_to_z_matrix(Axis(t, 0.3)).entries[0]
        assert abs(np.sum(np.abs(row) ** 2) - 1) <= 1e-15


def test_unitarity_seeded():
    rng = np.random.default_rng(11)
    a_s, c_s = random_axes(rng, 1000), random_axes(rng, 1000)
    assert max(chi_matrix(a, c).unitarity_residual() for a, c in zip(a_s, c_s)) <= 1e-12


@settings(max_examples=300)
@given(axes_st, axes_st, m_st, m_st)
def test_hermiticity(a, c, m_i, m_f):
    assert abs(chi_general(m_i, a, m_f, c) - chi_general(m_f, c, m_i, a).conjugate()) <= 1e-12


def test_hermiticity_spot_value():
    # the +1 -> 0 amplitude toward z and its reverse both equal sin(t')/sqrt(2)
    a = Axis(1.1, 0.0)
    assert chi_to_z(1, a, 0) == pytest.approx(math.sin(1.1) * R2)
    assert chi_general(0, Z_AXIS, 1, a).conjugate() == pytest.approx(math.sin(1.1) * R2)


def test_specialisation_matches_for_upper_rows():
    rng = np.random.default_rng(12)
    worst = 0.0
    for a in random_axes(rng, 1000):
        for m_i in (1, 0):
            for m_f in M_VALUES:
                worst = max(worst, abs(chi_to_z(m_i, a, m_f) - chi_general(m_i, a, m_f, Z_AXIS)))
    assert worst <= 1e-14


def test_specialisation_lower_row_is_sign_flipped():
    # the printed z table for m_i = -1 is the negative of the general amplitudes at c = z
    rng = np.random.default_rng(13)
    for a in random_axes(rng, 200):
        for m_f in M_VALUES:
            assert abs(chi_to_z(-1, a, m_f) + chi_general(-1, a, m_f, Z_AXIS)) <= 1e-14


def test_chain_at_z():
    np.testing.assert_allclose(chain(Z_AXIS, Z_AXIS, Z_AXIS).entries, np.eye(3), atol=1e-15)


def test_chain_with_b_equal_c_is_unitary():
    a, c = Axis(0.9, 0.2), Axis(2.2, 4.0)
    assert chain(a, c, c).unitarity_residual() <= 1e-12


def test_chain_fixed_triple_against_high_precision():
    a, b, c = (math.pi / 2, 0.0), (0.0, 0.0), (math.pi / 4, math.pi / 3)
    # at 50 digits the composition reproduces the direct amplitudes exactly
    assert float(oracle.chain_deviation(a, b, c)) < 1e-45
    dev = np.max(np.abs(chain(Axis(*a), Axis(*b), Axis(*c)).entries - chi_matrix(Axis(*a), Axis(*c)).entries))
    assert dev <= 1e-15


def test_general_table_matches_oracle():
    a, c = (0.7, 2.1), (1.3, 0.4)
    ref = oracle.general_amplitudes(*a, *c)
    mat = chi_matrix(Axis(*a), Axis(*c)).entries
    for i in range(3):
        for j in range(3):
            assert abs(mat[i, j] - complex(ref[i, j])) <= 1e-15


@pytest.mark.parametrize("m", [2, -2, 0.5, True, "1"])
def test_bad_projection(m):
    with pytest.raises((ValueError, TypeError)):
        check_m(m)
