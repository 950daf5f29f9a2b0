"""Self-consistent steady state of the driven four-mode system.

The coherent amplitudes obey

    <m> = Omega (kappa_a/2 + i Delta_a)
          / (g_ma^2 + (kappa_m/2 + i Delta_m_eff)(kappa_a/2 + i Delta_a)),
    <c> = E / (kappa_c/2 + i Delta_c_eff),
    <q> = (g_bc |<c>|^2 - g_mb |<m>|^2) / omega_b,

with the effective detunings Delta_m_eff = Delta_m + g_mb <q> and
Delta_c_eff = Delta_c - g_bc <q>.

Two detuning conventions are supported (see SystemParams):

* "effective" (default): the stated detunings are the operating,
  shift-inclusive detunings, as an experiment would tune them in situ.
  The equations above are then exactly self-consistent in one evaluation,
  and the implied bare detunings are reported in metadata.
* "bare": the stated detunings are drive-frame offsets before the static
  mechanical displacement; <q> is found by damped fixed-point iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import SystemParams, resolve_drives

__all__ = [
    "SteadyState",
    "solve_steady_state",
    "effective_couplings",
    "NonConvergence",
    "SingularDenominator",
]

_MAX_ITERATIONS = 1000
_REL_TOL = 1e-12
_SINGULAR_FLOOR = 1e-30  # in omega_b-normalized units
_DAMPING = 0.5


class NonConvergence(RuntimeError):
    """Fixed-point iteration failed to converge; carries the residual history."""

    def __init__(self, message: str, residual_history: list[float]):
        super().__init__(message)
        self.residual_history = residual_history


class SingularDenominator(ZeroDivisionError):
    """A steady-state denominator fell below the singularity floor."""


@dataclass(frozen=True)
class SteadyState:
    """Converged steady-state amplitudes and effective quantities.

    Amplitudes are dimensionless; detunings and couplings are rad/s.
    ``metadata`` records the drive route, implied bare detunings, and any
    calibration rescale factors.
    """

    m_avg: complex
    c_avg: complex
    q_avg: float
    delta_m_eff: float
    delta_c_eff: float
    G_mb: complex
    G_bc: complex
    iterations: int
    residual: float
    metadata: dict

    def asdict(self) -> dict:
        return {
            "m_avg": {"re": self.m_avg.real, "im": self.m_avg.imag},
            "c_avg": {"re": self.c_avg.real, "im": self.c_avg.imag},
            "q_avg": self.q_avg,
            "delta_m_eff": self.delta_m_eff,
            "delta_c_eff": self.delta_c_eff,
            "G_mb": {"re": self.G_mb.real, "im": self.G_mb.imag},
            "G_bc": {"re": self.G_bc.real, "im": self.G_bc.imag},
            "iterations": self.iterations,
            "residual": self.residual,
            "metadata": self.metadata,
        }


def _amplitudes(params: SystemParams, omega_rabi: float, e_amp: float,
                dm_eff: float, dc_eff: float) -> tuple[complex, complex]:
    """Evaluate the coherent amplitudes at fixed effective detunings.

    All rates are pre-normalized by omega_b; the amplitudes themselves are
    dimensionless so no back-conversion is needed.
    """
    wb = params.omega_b
    ka2 = 0.5 * params.kappa_a / wb
    km2 = 0.5 * params.kappa_m / wb
    kc2 = 0.5 * params.kappa_c / wb
    g_ma = params.g_ma / wb
    den_m = g_ma * g_ma + (km2 + 1j * dm_eff / wb) * (ka2 + 1j * params.Delta_a / wb)
    den_c = kc2 + 1j * dc_eff / wb
    if abs(den_m) < _SINGULAR_FLOOR or abs(den_c) < _SINGULAR_FLOOR:
        raise SingularDenominator(
            f"steady-state denominator below {_SINGULAR_FLOOR} "
            f"(|den_m| = {abs(den_m):.3e}, |den_c| = {abs(den_c):.3e})"
        )
    m_avg = (omega_rabi / wb) * (ka2 + 1j * params.Delta_a / wb) / den_m
    c_avg = (e_amp / wb) / den_c
    return m_avg, c_avg


def _apply_targets(params: SystemParams, m_avg: complex, c_avg: complex,
                   meta: dict) -> tuple[complex, complex]:
    """Rescale amplitude magnitudes to calibration targets, keeping phases."""
    d = params.drive
    if d.g_mb_target is not None:
        current = params.g_mb * abs(m_avg)
        if current == 0.0:
            raise SingularDenominator("g_mb_target with zero uncalibrated G_mb")
        scale = d.g_mb_target / current
        m_avg *= scale
        meta["g_mb_calibration_scale"] = scale
    if d.g_bc_target is not None:
        current = params.g_bc * abs(c_avg)
        if current == 0.0:
            raise SingularDenominator("g_bc_target with zero uncalibrated G_bc")
        scale = d.g_bc_target / current
        c_avg *= scale
        meta["g_bc_calibration_scale"] = scale
    return m_avg, c_avg


def _displacement(params: SystemParams, m_avg: complex, c_avg: complex) -> float:
    wb = params.omega_b
    return (params.g_bc / wb) * abs(c_avg) ** 2 - (params.g_mb / wb) * abs(m_avg) ** 2


def solve_steady_state(params: SystemParams) -> SteadyState:
    """Solve the steady state under the configured detuning convention.

    Raises
    ------
    NonConvergence
        If the bare-convention fixed point does not settle within 1000
        iterations (the residual history is attached).
    SingularDenominator
        If a denominator magnitude falls below 1e-30 in normalized units.
    """
    omega_rabi, e_amp, meta = resolve_drives(params)
    meta["detuning_convention"] = params.detuning_convention

    if params.detuning_convention == "effective":
        dm_eff, dc_eff = params.Delta_m, params.Delta_c
        m_avg, c_avg = _amplitudes(params, omega_rabi, e_amp, dm_eff, dc_eff)
        m_avg, c_avg = _apply_targets(params, m_avg, c_avg, meta)
        q_avg = _displacement(params, m_avg, c_avg)
        meta["delta_m_bare"] = dm_eff - params.g_mb * q_avg
        meta["delta_c_bare"] = dc_eff + params.g_bc * q_avg
        iterations, residual = 1, 0.0
    else:
        q_avg = 0.0
        damping = 1.0
        residual_history: list[float] = []
        for iterations in range(1, _MAX_ITERATIONS + 1):
            dm_eff = params.Delta_m + params.g_mb * q_avg
            dc_eff = params.Delta_c - params.g_bc * q_avg
            m_avg, c_avg = _amplitudes(params, omega_rabi, e_amp, dm_eff, dc_eff)
            m_avg, c_avg = _apply_targets(params, m_avg, c_avg, meta)
            q_next = _displacement(params, m_avg, c_avg)
            step = q_next - q_avg
            residual = abs(step) / max(1.0, abs(q_next))
            residual_history.append(residual)
            q_avg = q_avg + damping * step
            if residual < _REL_TOL:
                break
            # Oscillation guard: if the residual has not improved over the
            # last 10 iterations, damp the remaining updates.
            if damping == 1.0 and iterations >= 10 and \
                    residual >= residual_history[iterations - 10]:
                damping = _DAMPING
        else:
            raise NonConvergence(
                f"steady-state displacement did not converge within "
                f"{_MAX_ITERATIONS} iterations (final residual {residual:.3e})",
                residual_history,
            )
        dm_eff = params.Delta_m + params.g_mb * q_avg
        dc_eff = params.Delta_c - params.g_bc * q_avg
        m_avg, c_avg = _amplitudes(params, omega_rabi, e_amp, dm_eff, dc_eff)
        m_avg, c_avg = _apply_targets(params, m_avg, c_avg, meta)
        meta["delta_m_bare"] = params.Delta_m
        meta["delta_c_bare"] = params.Delta_c
        meta["residual_history_tail"] = residual_history[-10:]

    return SteadyState(
        m_avg=m_avg,
        c_avg=c_avg,
        q_avg=q_avg,
        delta_m_eff=dm_eff,
        delta_c_eff=dc_eff,
        G_mb=params.g_mb * m_avg,
        G_bc=params.g_bc * c_avg,
        iterations=iterations,
        residual=residual,
        metadata=meta,
    )


def effective_couplings(ss: SteadyState, params: SystemParams) -> tuple[complex, complex]:
    """Effective coupling rates (G_mb, G_bc) = (g_mb <m>, g_bc <c>) in rad/s.

    Calibration targets, if configured, were already applied to the
    amplitudes by :func:`solve_steady_state`; the recorded rescale factors
    live in ``ss.metadata``.
    """
    return params.g_mb * ss.m_avg, params.g_bc * ss.c_avg
