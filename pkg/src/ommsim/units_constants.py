"""Physical constants, unit conventions, and conversions shared by all modules.

Internal canonical unit for every rate (omega, kappa, gamma, g, G, Omega,
Delta) is rad/s.  All linear algebra downstream is performed in
phonon-normalized units (rates divided by omega_b) to keep matrix entries
O(1e-6..1) for conditioning; the output noise spectral density is
dimensionless and invariant under that normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

TWO_PI = 2.0 * math.pi

# CODATA 2018 exact/recommended values.
HBAR = 1.054571817e-34       # J s
K_B = 1.380649e-23           # J / K (exact)
C_LIGHT = 2.99792458e8       # m / s (exact)
MU_0 = 4.0e-7 * math.pi      # T m / A (classical vacuum permeability)

# Literature defaults for quantities the system model needs but that are
# not universal constants.  Both are configurable and always recorded in
# output metadata.
GAMMA_GYRO = TWO_PI * 28.0e9  # rad s^-1 T^-1, electron gyromagnetic ratio
RHO_SPIN = 4.22e27            # spins / m^3, YIG spin density


@dataclass(frozen=True)
class PhysicalConstants:
    """Bundle of physical constants used by the model.

    All values strictly positive; overrides of the defaults are logged
    into output metadata by the configuration layer.
    """

    hbar: float = HBAR
    k_B: float = K_B
    mu_0: float = MU_0
    c_light: float = C_LIGHT
    gamma_gyro: float = GAMMA_GYRO
    rho_spin: float = RHO_SPIN

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not (value > 0.0) or not math.isfinite(value):
                raise ValueError(f"constant {f.name} must be strictly positive, got {value!r}")

    def asdict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def from_hz(frequency_hz: float) -> float:
    """Convert an ordinary frequency in Hz to angular frequency in rad/s."""
    return TWO_PI * frequency_hz


def to_hz(omega: float) -> float:
    """Convert an angular frequency in rad/s to ordinary frequency in Hz."""
    return omega / TWO_PI


def to_omega_b_units(x: float, omega_b: float) -> float:
    """Express an angular frequency as a dimensionless multiple of omega_b.

    Parameters
    ----------
    x : float
        Angular frequency (rad/s).
    omega_b : float
        Phonon angular frequency (rad/s); must be positive.

    Returns
    -------
    float
        x / omega_b.
    """
    if omega_b <= 0.0:
        raise ValueError(f"omega_b must be positive, got {omega_b!r}")
    return x / omega_b


def from_omega_b_units(x_norm: float, omega_b: float) -> float:
    """Inverse of :func:`to_omega_b_units`."""
    if omega_b <= 0.0:
        raise ValueError(f"omega_b must be positive, got {omega_b!r}")
    return x_norm * omega_b
