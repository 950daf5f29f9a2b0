"""Drift matrix, noise-injection map, noise correlations, and stability.

The fluctuation state is the doubled-basis vector

    u = (da, da+, dm, dm+, dc, dc+, dq, dp),

with dynamics du/dt = A u + M n driven by the nine independent noise
channels

    n = (a_in, a_in+, m_in, m_in+, c1_in, c1_in+, c2_in, c2_in+, xi).

All matrices are assembled in omega_b-normalized units (every rate divided
by omega_b) for conditioning; the spectral density downstream is
dimensionless and invariant under this normalization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import SystemParams, ThermalOccupations, thermal_occupations
from .steady_state import SteadyState

__all__ = [
    "MODE_BASIS",
    "NOISE_CHANNELS",
    "DriftMatrix",
    "NoiseModel",
    "StabilityReport",
    "NumericalError",
    "assemble_drift",
    "assemble_injection",
    "assemble_correlations",
    "build_drift_matrix",
    "build_noise_model",
    "stability_analysis",
    "mode_swap_matrix",
    "channel_swap_matrix",
]

MODE_BASIS = ("da", "da+", "dm", "dm+", "dc", "dc+", "dq", "dp")
NOISE_CHANNELS = ("a_in", "a_in+", "m_in", "m_in+",
                  "c1_in", "c1_in+", "c2_in", "c2_in+", "xi")

# Index pairs (o, o+) swapped by the conjugation symmetry.
_MODE_PAIRS = ((0, 1), (2, 3), (4, 5))
_CHANNEL_PAIRS = ((0, 1), (2, 3), (4, 5), (6, 7))


class NumericalError(RuntimeError):
    """A dense linear-algebra routine failed on otherwise valid input."""


@dataclass(frozen=True)
class DriftMatrix:
    """8x8 complex drift matrix in the doubled fluctuation basis.

    ``entries`` is in omega_b-normalized units; ``omega_b`` (rad/s) records
    the normalization so callers can convert rates back to SI.
    """

    entries: np.ndarray
    omega_b: float
    basis: tuple[str, ...] = MODE_BASIS


@dataclass(frozen=True)
class NoiseModel:
    """Noise-injection map and channel correlation matrices.

    ``injection`` is the 8x9 map M (omega_b-normalized); ``correlations``
    is the 9x9 real symmetrized matrix C_sym (coefficient of
    delta(omega + omega') in <{n_i(omega), n_j(omega')}>/2);
    ``correlations_raw`` is the non-symmetrized counterpart with the
    (N + 1, N) ordering of the pair entries.
    """

    injection: np.ndarray
    correlations: np.ndarray
    correlations_raw: np.ndarray
    occupations: ThermalOccupations
    channels: tuple[str, ...] = NOISE_CHANNELS


@dataclass(frozen=True)
class StabilityReport:
    """Eigenvalue stability analysis of a drift matrix."""

    stable: bool
    margin: float
    eigenvalues: np.ndarray


def assemble_drift(delta_a: float, delta_m_eff: float, delta_c_eff: float,
                   kappa_a: float, kappa_m: float, kappa_c: float,
                   gamma_b: float, omega_b: float, g_ma: float,
                   G_mb: complex, G_bc: complex) -> np.ndarray:
    """Assemble the 8x8 drift matrix from rates in any one consistent unit.

    Rows follow the linearized equations of motion; each dagger row is the
    complex conjugate of its partner under the pair swap.
    """
    A = np.zeros((8, 8), dtype=complex)
    # da row and conjugate
    A[0, 0] = -1j * delta_a - 0.5 * kappa_a
    A[0, 2] = -1j * g_ma
    A[1, 1] = +1j * delta_a - 0.5 * kappa_a
    A[1, 3] = +1j * g_ma
    # dm row and conjugate (effective detuning; couples to dq)
    A[2, 2] = -1j * delta_m_eff - 0.5 * kappa_m
    A[2, 0] = -1j * g_ma
    A[2, 6] = -1j * G_mb
    A[3, 3] = +1j * delta_m_eff - 0.5 * kappa_m
    A[3, 1] = +1j * g_ma
    A[3, 6] = +1j * np.conj(G_mb)
    # dc row and conjugate (effective detuning; couples to dq)
    A[4, 4] = -1j * delta_c_eff - 0.5 * kappa_c
    A[4, 6] = +1j * G_bc
    A[5, 5] = +1j * delta_c_eff - 0.5 * kappa_c
    A[5, 6] = -1j * np.conj(G_bc)
    # mechanical block
    A[6, 7] = omega_b
    A[7, 6] = -omega_b
    A[7, 7] = -gamma_b
    A[7, 2] = -np.conj(G_mb)
    A[7, 3] = -G_mb
    A[7, 4] = +np.conj(G_bc)
    A[7, 5] = +G_bc
    return A


def assemble_injection(kappa_a: float, kappa_m: float,
                       kappa_1: float, kappa_2: float) -> np.ndarray:
    """Assemble the 8x9 noise-injection map M.

    sqrt(kappa) entries feed each input channel into its mode row; the two
    optical ports both enter the dc/dc+ rows; the Brownian force xi enters
    only the dp row with unit coefficient.
    """
    M = np.zeros((8, 9))
    M[0, 0] = M[1, 1] = np.sqrt(kappa_a)
    M[2, 2] = M[3, 3] = np.sqrt(kappa_m)
    M[4, 4] = M[5, 5] = np.sqrt(kappa_1)
    M[4, 6] = M[5, 7] = np.sqrt(kappa_2)
    M[7, 8] = 1.0
    return M


def assemble_correlations(N_a: float, N_m: float, N_c: float, N_b: float,
                          gamma_b: float, symmetrized: bool = True) -> np.ndarray:
    """Assemble the 9x9 channel correlation matrix.

    For each bosonic channel pair (o, o+) the only nonzero entries are the
    off-diagonal pair entries: (N + 1/2, N + 1/2) when symmetrized,
    (N + 1, N) otherwise.  The Brownian channel is Markovian with diagonal
    entry gamma_b (2 N_b + 1) in both forms.
    """
    C = np.zeros((9, 9))
    occupations = (N_a, N_a, N_m, N_m, N_c, N_c, N_c, N_c)
    for (i, j) in _CHANNEL_PAIRS:
        N = occupations[i]
        if symmetrized:
            C[i, j] = C[j, i] = N + 0.5
        else:
            C[i, j] = N + 1.0
            C[j, i] = N
    C[8, 8] = gamma_b * (2.0 * N_b + 1.0)
    return C


def build_drift_matrix(params: SystemParams, ss: SteadyState) -> DriftMatrix:
    """Drift matrix for a solved steady state, in omega_b-normalized units."""
    wb = params.omega_b
    entries = assemble_drift(
        delta_a=params.Delta_a / wb,
        delta_m_eff=ss.delta_m_eff / wb,
        delta_c_eff=ss.delta_c_eff / wb,
        kappa_a=params.kappa_a / wb,
        kappa_m=params.kappa_m / wb,
        kappa_c=params.kappa_c / wb,
        gamma_b=params.gamma_b / wb,
        omega_b=1.0,
        g_ma=params.g_ma / wb,
        G_mb=ss.G_mb / wb,
        G_bc=ss.G_bc / wb,
    )
    return DriftMatrix(entries=entries, omega_b=wb)


def build_noise_model(params: SystemParams) -> NoiseModel:
    """Injection map and correlation matrices, in omega_b-normalized units."""
    wb = params.omega_b
    occ = thermal_occupations(params)
    injection = assemble_injection(params.kappa_a / wb, params.kappa_m / wb,
                                   params.kappa_1 / wb, params.kappa_2 / wb)
    c_sym = assemble_correlations(occ.N_a, occ.N_m, occ.N_c, occ.N_b,
                                  params.gamma_b / wb, symmetrized=True)
    c_raw = assemble_correlations(occ.N_a, occ.N_m, occ.N_c, occ.N_b,
                                  params.gamma_b / wb, symmetrized=False)
    return NoiseModel(injection=injection, correlations=c_sym,
                      correlations_raw=c_raw, occupations=occ)


def stability_analysis(A: DriftMatrix | np.ndarray) -> StabilityReport:
    """Eigenvalue stability test: stable iff every eigenvalue has Re < 0.

    ``margin`` is the maximum real part (in the units of the matrix, i.e.
    omega_b-normalized for matrices built by this module).
    """
    entries = A.entries if isinstance(A, DriftMatrix) else np.asarray(A)
    try:
        eigenvalues = np.linalg.eigvals(entries)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"eigensolver failed: {exc}; matrix:\n{np.array_repr(entries)}"
        ) from exc
    order = np.lexsort((eigenvalues.imag, eigenvalues.real))
    eigenvalues = eigenvalues[order]
    margin = float(eigenvalues.real.max())
    return StabilityReport(stable=bool(margin < 0.0), margin=margin,
                           eigenvalues=eigenvalues)


def mode_swap_matrix() -> np.ndarray:
    """8x8 permutation swapping each (o, o+) pair; identity on (dq, dp)."""
    S = np.zeros((8, 8))
    for (i, j) in _MODE_PAIRS:
        S[i, j] = S[j, i] = 1.0
    S[6, 6] = S[7, 7] = 1.0
    return S


def channel_swap_matrix() -> np.ndarray:
    """9x9 permutation swapping each (o, o+) noise-channel pair; fixes xi."""
    S = np.zeros((9, 9))
    for (i, j) in _CHANNEL_PAIRS:
        S[i, j] = S[j, i] = 1.0
    S[8, 8] = 1.0
    return S
