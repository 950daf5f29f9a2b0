"""Drift matrix, noise model, and stability analysis."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ommsim.dynamics import (MODE_BASIS, NOISE_CHANNELS, assemble_correlations,
                             assemble_drift, assemble_injection,
                             build_drift_matrix, build_noise_model,
                             channel_swap_matrix, mode_swap_matrix,
                             stability_analysis)
from ommsim.model import paper_defaults
from ommsim.steady_state import solve_steady_state


def test_basis_labels():
    assert len(MODE_BASIS) == 8
    assert len(NOISE_CHANNELS) == 9
    assert MODE_BASIS[6] == "dq" and MODE_BASIS[7] == "dp"
    assert NOISE_CHANNELS[8] == "xi"


# ---------------------------------------------------------------------------
# Drift assembly against a literal, independently written matrix
# ---------------------------------------------------------------------------

def test_assemble_drift_matches_literal_equations():
    da, dm, dc = 0.1, 0.23, 1.07
    ka, km, kc, gb, wb = 0.125, 0.05, 1.0, 2.5e-6, 1.0
    gma = 0.375
    Gmb = 0.06 + 0.08j
    Gbc = 0.25 - 0.50j

    # Written out row by row from the linearized equations of motion.
    expected = np.zeros((8, 8), dtype=complex)
    expected[0, 0] = -1j * da - ka / 2
    expected[0, 2] = -1j * gma
    expected[1, 1] = +1j * da - ka / 2
    expected[1, 3] = +1j * gma
    expected[2, 0] = -1j * gma
    expected[2, 2] = -1j * dm - km / 2
    expected[2, 6] = -1j * Gmb
    expected[3, 1] = +1j * gma
    expected[3, 3] = +1j * dm - km / 2
    expected[3, 6] = +1j * np.conj(Gmb)
    expected[4, 4] = -1j * dc - kc / 2
    expected[4, 6] = +1j * Gbc
    expected[5, 5] = +1j * dc - kc / 2
    expected[5, 6] = -1j * np.conj(Gbc)
    expected[6, 7] = wb
    expected[7, 6] = -wb
    expected[7, 7] = -gb
    expected[7, 2] = -np.conj(Gmb)
    expected[7, 3] = -Gmb
    expected[7, 4] = +np.conj(Gbc)
    expected[7, 5] = +Gbc

    A = assemble_drift(da, dm, dc, ka, km, kc, gb, wb, gma, Gmb, Gbc)
    assert np.abs(A - expected).max() == 0.0


def test_drift_nonzero_pattern():
    A = assemble_drift(0.1, 0.1, 1.0, 0.1, 0.1, 1.0, 1e-6, 1.0, 0.4,
                       0.1 + 0.2j, 0.3 - 0.4j)
    nonzero = set(zip(*np.nonzero(A)))
    expected = {(0, 0), (0, 2), (1, 1), (1, 3), (2, 0), (2, 2), (2, 6),
                (3, 1), (3, 3), (3, 6), (4, 4), (4, 6), (5, 5), (5, 6),
                (6, 7), (7, 2), (7, 3), (7, 4), (7, 5), (7, 6), (7, 7)}
    assert nonzero == expected


@settings(max_examples=50, deadline=None)
@given(
    st.floats(-2.0, 2.0), st.floats(-2.0, 2.0), st.floats(-2.0, 2.0),
    st.floats(0.0, 2.0), st.floats(0.0, 2.0), st.floats(0.0, 2.0),
    st.floats(0.0, 0.1), st.floats(0.0, 1.0),
    st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False),
)
def test_drift_conjugation_symmetry_property(da, dm, dc, ka, km, kc, gb, gma,
                                             Gmb, Gbc):
    # Swapping every (o, o+) pair and conjugating must reproduce A exactly;
    # this pins the dagger rows to their partners for any complex couplings.
    A = assemble_drift(da, dm, dc, ka, km, kc, gb, 1.0, gma, Gmb, Gbc)
    S = mode_swap_matrix()
    assert np.abs(S @ np.conj(A) @ S - A).max() == 0.0


@settings(max_examples=50, deadline=None)
@given(st.floats(0.0, 2.0), st.floats(0.0, 2.0), st.floats(0.0, 2.0),
       st.floats(0.0, 0.1))
def test_drift_trace_identity_property(ka, km, kc, gb):
    A = assemble_drift(0.1, 0.2, 1.0, ka, km, kc, gb, 1.0, 0.4,
                       0.1 + 0.1j, 0.2 - 0.3j)
    assert np.trace(A) == pytest.approx(-(ka + km + kc + gb), rel=1e-12, abs=1e-15)


def test_build_drift_matrix_is_normalized(base_params, base_steady, base_drift):
    # the mechanical rotation entries are exactly +-1 in omega_b units
    assert base_drift.entries[6, 7] == 1.0
    assert base_drift.entries[7, 6] == -1.0
    assert base_drift.omega_b == base_params.omega_b
    expected_trace = -(base_params.kappa_a + base_params.kappa_m
                       + base_params.kappa_c + base_params.gamma_b) / base_params.omega_b
    assert np.trace(base_drift.entries) == pytest.approx(expected_trace, rel=1e-12)


# ---------------------------------------------------------------------------
# Injection and correlations
# ---------------------------------------------------------------------------

def test_injection_structure():
    M = assemble_injection(0.16, 0.09, 0.81, 0.04)
    expected = np.zeros((8, 9))
    expected[0, 0] = expected[1, 1] = 0.4
    expected[2, 2] = expected[3, 3] = 0.3
    expected[4, 4] = expected[5, 5] = 0.9
    expected[4, 6] = expected[5, 7] = 0.2
    expected[7, 8] = 1.0
    assert np.array_equal(M, expected)


def test_correlations_symmetrized():
    C = assemble_correlations(1.0, 2.0, 0.0, 10.0, 0.5, symmetrized=True)
    assert C[0, 1] == C[1, 0] == 1.5
    assert C[2, 3] == C[3, 2] == 2.5
    assert C[4, 5] == C[5, 4] == 0.5
    assert C[6, 7] == C[7, 6] == 0.5
    assert C[8, 8] == 0.5 * 21.0
    # nothing else
    mask = np.zeros((9, 9), dtype=bool)
    for (i, j) in ((0, 1), (2, 3), (4, 5), (6, 7)):
        mask[i, j] = mask[j, i] = True
    mask[8, 8] = True
    assert np.all(C[~mask] == 0.0)


def test_correlations_raw():
    C = assemble_correlations(1.0, 2.0, 0.0, 10.0, 0.5, symmetrized=False)
    assert C[0, 1] == 2.0 and C[1, 0] == 1.0   # N + 1 above, N below
    assert C[4, 5] == 1.0 and C[5, 4] == 0.0   # vacuum optical port
    assert C[8, 8] == 0.5 * 21.0
    # symmetrizing the raw form reproduces the symmetrized form
    C_sym = assemble_correlations(1.0, 2.0, 0.0, 10.0, 0.5, symmetrized=True)
    assert np.allclose(0.5 * (C + C.T), C_sym, rtol=0, atol=0)


def test_build_noise_model(base_params, base_noise):
    wb = base_params.omega_b
    assert base_noise.injection[4, 4] == pytest.approx(
        np.sqrt(base_params.kappa_1 / wb), rel=1e-14)
    assert base_noise.injection[7, 8] == 1.0
    # mechanical bath dominates at 20 mK
    assert base_noise.correlations[8, 8] == pytest.approx(
        (base_params.gamma_b / wb) * (2 * 9.9263 + 1), rel=1e-3)
    assert base_noise.occupations.N_c == 0.0


# ---------------------------------------------------------------------------
# Stability
# ---------------------------------------------------------------------------

def test_stability_at_defaults(base_drift):
    report = stability_analysis(base_drift)
    assert report.stable
    # stability margin derived independently from the eigenvalue scan
    assert report.margin == pytest.approx(-0.039022, abs=1e-5)
    assert report.eigenvalues.shape == (8,)


def test_instability_detected():
    p = paper_defaults()
    unstable = p.with_overrides(Delta_c=0.4 * p.omega_b)
    ss = solve_steady_state(unstable)
    report = stability_analysis(build_drift_matrix(unstable, ss))
    assert not report.stable
    assert report.margin > 0.0


def test_eigenvalues_sorted_and_conjugate_paired(base_drift):
    report = stability_analysis(base_drift)
    ev = report.eigenvalues
    assert np.all(np.diff(ev.real) >= -1e-15)
    # conjugation symmetry of A forces a spectrum closed under conjugation
    for lam in ev:
        assert np.abs(ev - np.conj(lam)).min() < 1e-9 * abs(lam) + 1e-12


def test_zero_couplings_margin_is_slowest_decay():
    p = paper_defaults().with_overrides(g_ma=0.0, g_mb=0.0, g_bc=0.0)
    ss = solve_steady_state(p)
    report = stability_analysis(build_drift_matrix(p, ss))
    # decoupled modes decay at half their linewidths; gamma_b/2 is slowest
    assert report.margin == pytest.approx(-0.5 * p.gamma_b / p.omega_b, rel=1e-9)


def test_swap_matrices_are_involutions():
    S = mode_swap_matrix()
    P = channel_swap_matrix()
    assert np.array_equal(S @ S, np.eye(8))
    assert np.array_equal(P @ P, np.eye(9))
