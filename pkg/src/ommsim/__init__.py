"""Simulator for squeezed-light generation in an opto-magnomechanical system.

A microwave cavity mode and a magnon mode couple by magnetic dipole
interaction; the magnon mode couples dispersively to a mechanical
vibration, which in turn couples by radiation pressure to an optical
cavity.  The package computes the semiclassical steady state, the
stability of linearized fluctuations, and the squeezing spectrum of the
optical output field, along with the parameter sweeps that map where
squeezing appears.
"""

__version__ = "0.1.0"

from .dynamics import (DriftMatrix, NoiseModel, NumericalError, StabilityReport,
                       assemble_correlations, assemble_drift, assemble_injection,
                       build_drift_matrix, build_noise_model, stability_analysis)
from .model import (DriveSpec, SystemParams, ThermalOccupations, ValidationError,
                    cavity_drive_amplitude, drive_field_amplitude, paper_defaults,
                    rabi_frequency, resolve_drives, thermal_occupation,
                    thermal_occupations)
from .spectrum import (SingularSystem, SpectrumResult, TransferMatrix,
                       UnstableSystem, lyapunov_covariance,
                       noise_spectral_density, output_spectrum_values,
                       parseval_intracavity_variance, run_validation,
                       spectrum_curve, to_decibels, transfer_matrix)
from .steady_state import (NonConvergence, SingularDenominator, SteadyState,
                           effective_couplings, solve_steady_state)
from .sweep_cli import (ConfigError, SweepAxis, SweepResult, SweepSpec, emit,
                        parse_config, run_sweep)
from .units_constants import (TWO_PI, PhysicalConstants, from_hz,
                              from_omega_b_units, to_hz, to_omega_b_units)

__all__ = [
    "__version__",
    "TWO_PI",
    "PhysicalConstants",
    "from_hz",
    "to_hz",
    "from_omega_b_units",
    "to_omega_b_units",
    "DriveSpec",
    "SystemParams",
    "ThermalOccupations",
    "ValidationError",
    "paper_defaults",
    "thermal_occupation",
    "thermal_occupations",
    "drive_field_amplitude",
    "rabi_frequency",
    "cavity_drive_amplitude",
    "resolve_drives",
    "SteadyState",
    "NonConvergence",
    "SingularDenominator",
    "solve_steady_state",
    "effective_couplings",
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
    "TransferMatrix",
    "SpectrumResult",
    "SingularSystem",
    "UnstableSystem",
    "transfer_matrix",
    "noise_spectral_density",
    "output_spectrum_values",
    "spectrum_curve",
    "to_decibels",
    "lyapunov_covariance",
    "parseval_intracavity_variance",
    "run_validation",
    "ConfigError",
    "SweepAxis",
    "SweepSpec",
    "SweepResult",
    "parse_config",
    "run_sweep",
    "emit",
    "main",
]


def main(argv=None):
    """Entry point for the ``ommsim`` console script."""
    from .sweep_cli import main as cli_main
    return cli_main(argv)
