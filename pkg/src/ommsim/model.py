"""System parameters, drive amplitudes, and thermal occupations.

The four modes are: microwave cavity (a), magnon (m), optical cavity (c),
and phonon (q, p).  Detunings are stored directly (the rotating frame uses
only Delta's); absolute mode frequencies are retained solely for thermal
occupation numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .units_constants import TWO_PI, PhysicalConstants, from_hz

__all__ = [
    "DriveSpec",
    "SystemParams",
    "ThermalOccupations",
    "thermal_occupation",
    "drive_field_amplitude",
    "rabi_frequency",
    "cavity_drive_amplitude",
    "resolve_drives",
    "paper_defaults",
    "ValidationError",
]

# Mechanical quality factor floor for the Markovian Brownian-noise
# approximation to hold.
_MIN_QUALITY_FACTOR = 100.0

# exp(x) with x > ~709 overflows a double; occupation is then < 1e-300 ~ 0.
_EXP_OVERFLOW = 700.0


class ValidationError(ValueError):
    """A parameter set violates a physical or structural invariant."""


@dataclass(frozen=True)
class DriveSpec:
    """Drive configuration for the magnon and optical-cavity pumps.

    Exactly one route per drive must be specified:

    * magnon: physical route (``p0_w`` with ``length_m``, ``width_m``,
      ``volume_m3``) or direct route (``omega_rabi``, rad/s);
    * cavity: physical route (``pl_w`` with ``lambda_l_m``) or direct
      route (``e_amp``, rad/s).

    Optional calibration targets pin the magnitudes of the effective
    couplings; any rescale applied is recorded in output metadata.
    """

    # magnon drive, physical route
    p0_w: float | None = None
    length_m: float | None = None
    width_m: float | None = None
    volume_m3: float | None = None
    # magnon drive, direct route
    omega_rabi: float | None = None
    # cavity drive, physical route
    pl_w: float | None = None
    lambda_l_m: float | None = None
    # cavity drive, direct route
    e_amp: float | None = None
    # calibration overrides (rad/s magnitudes)
    g_mb_target: float | None = None
    g_bc_target: float | None = None

    def __post_init__(self) -> None:
        physical_m = self.p0_w is not None
        direct_m = self.omega_rabi is not None
        if physical_m == direct_m:
            raise ValidationError(
                "magnon drive needs exactly one route: p0_w (physical) or omega_rabi (direct)"
            )
        if physical_m:
            for name in ("length_m", "width_m", "volume_m3"):
                value = getattr(self, name)
                if value is None or value <= 0.0:
                    raise ValidationError(f"physical magnon drive requires {name} > 0")
            if self.p0_w < 0.0:
                raise ValidationError("p0_w must be non-negative")
        physical_c = self.pl_w is not None
        direct_c = self.e_amp is not None
        if physical_c == direct_c:
            raise ValidationError(
                "cavity drive needs exactly one route: pl_w (physical) or e_amp (direct)"
            )
        if physical_c:
            if self.pl_w < 0.0:
                raise ValidationError("pl_w must be non-negative")
            if self.lambda_l_m is None or self.lambda_l_m <= 0.0:
                raise ValidationError("physical cavity drive requires lambda_l_m > 0")
        for name in ("g_mb_target", "g_bc_target"):
            value = getattr(self, name)
            if value is not None and value < 0.0:
                raise ValidationError(f"{name} must be non-negative")

    @property
    def magnon_route(self) -> str:
        return "physical" if self.p0_w is not None else "direct"

    @property
    def cavity_route(self) -> str:
        return "physical" if self.pl_w is not None else "direct"


@dataclass(frozen=True)
class SystemParams:
    """All bare frequencies, decays, couplings, drives, temperature, and
    homodyne phase.  Rates are angular frequencies in rad/s.

    ``kappa_c = kappa_1 + kappa_2`` holds by construction (kappa_c is never
    stored independently).  ``detuning_convention`` selects how the stated
    detunings enter the steady state: "effective" treats them as the
    operating (shift-inclusive) detunings; "bare" runs the self-consistent
    displacement fixed point.
    """

    omega_a: float
    omega_m: float
    omega_b: float
    Delta_a: float
    Delta_m: float
    Delta_c: float
    kappa_a: float
    kappa_m: float
    kappa_1: float
    kappa_2: float
    gamma_b: float
    g_ma: float
    g_mb: float
    g_bc: float
    T: float
    phi: float
    drive: DriveSpec
    omega_c: float | None = None
    detuning_convention: str = "effective"
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)

    def __post_init__(self) -> None:
        if self.omega_b <= 0.0:
            raise ValidationError("omega_b must be positive")
        for name in ("omega_a", "omega_m"):
            if getattr(self, name) <= 0.0:
                raise ValidationError(f"{name} must be positive")
        if self.omega_c is not None and self.omega_c <= 0.0:
            raise ValidationError("omega_c must be positive when given")
        for name in ("kappa_a", "kappa_m", "kappa_1", "kappa_2", "gamma_b",
                     "g_ma", "g_mb", "g_bc"):
            if getattr(self, name) < 0.0:
                raise ValidationError(f"{name} must be non-negative")
        if self.T < 0.0:
            raise ValidationError("temperature must be non-negative")
        if self.gamma_b > 0.0 and self.omega_b / self.gamma_b <= _MIN_QUALITY_FACTOR:
            raise ValidationError(
                f"mechanical quality factor Q = omega_b/gamma_b = "
                f"{self.omega_b / self.gamma_b:.3g} must exceed {_MIN_QUALITY_FACTOR}"
            )
        if self.detuning_convention not in ("effective", "bare"):
            raise ValidationError(
                f"detuning_convention must be 'effective' or 'bare', got "
                f"{self.detuning_convention!r}"
            )

    @property
    def kappa_c(self) -> float:
        return self.kappa_1 + self.kappa_2

    def with_overrides(self, **changes) -> "SystemParams":
        """Return a copy with the given fields replaced (re-validated)."""
        return replace(self, **changes)


@dataclass(frozen=True)
class ThermalOccupations:
    """Mean bath occupation numbers of the four modes at temperature T."""

    N_a: float
    N_m: float
    N_c: float
    N_b: float


def thermal_occupation(omega: float, T: float, constants: PhysicalConstants | None = None) -> float:
    """Bose-Einstein mean occupation N(omega, T) = 1/(exp(hbar*omega/k_B T) - 1).

    Returns exactly 0 at T = 0 (the overflow-prone exponential is never
    evaluated there).

    Parameters
    ----------
    omega : float
        Mode angular frequency (rad/s); must be positive.
    T : float
        Temperature in kelvin; must be non-negative.
    """
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega!r}")
    if T < 0.0:
        raise ValueError(f"temperature must be non-negative, got {T!r}")
    if T == 0.0:
        return 0.0
    c = constants or PhysicalConstants()
    x = c.hbar * omega / (c.k_B * T)
    if x > _EXP_OVERFLOW:
        return 0.0
    return 1.0 / math.expm1(x)


def thermal_occupations(params: SystemParams) -> ThermalOccupations:
    """Occupations of the a, m, c, and b baths for a parameter set.

    The optical occupation uses the absolute cavity frequency when known
    and is otherwise taken as 0 (it underflows to 0 at any laboratory
    temperature for optical frequencies anyway).
    """
    c = params.constants
    N_c = 0.0
    if params.omega_c is not None:
        N_c = thermal_occupation(params.omega_c, params.T, c)
    return ThermalOccupations(
        N_a=thermal_occupation(params.omega_a, params.T, c),
        N_m=thermal_occupation(params.omega_m, params.T, c),
        N_c=N_c,
        N_b=thermal_occupation(params.omega_b, params.T, c),
    )


def drive_field_amplitude(p0_w: float, length_m: float, width_m: float,
                          constants: PhysicalConstants | None = None) -> float:
    """Driving magnetic field amplitude H_d = sqrt(2*mu_0*P_0/(l*w*c)).

    The result carries the units of the formula (tesla under the B-field
    reading adopted here; the gyromagnetic ratio is rad/s per tesla so the
    product gamma*H_d is a rate).
    """
    if length_m <= 0.0 or width_m <= 0.0:
        raise ValueError("length and width must be positive")
    if p0_w < 0.0:
        raise ValueError("drive power must be non-negative")
    c = constants or PhysicalConstants()
    return math.sqrt(2.0 * c.mu_0 * p0_w / (length_m * width_m * c.c_light))


def rabi_frequency(h_d: float, n_spins: float,
                   gamma_gyro: float | None = None) -> float:
    """Rabi frequency Omega = (sqrt(5)/4) * gamma * sqrt(N_s) * H_d  (rad/s)."""
    if h_d < 0.0 or n_spins < 0.0:
        raise ValueError("field amplitude and spin number must be non-negative")
    if gamma_gyro is None:
        gamma_gyro = PhysicalConstants().gamma_gyro
    return (math.sqrt(5.0) / 4.0) * gamma_gyro * math.sqrt(n_spins) * h_d


def cavity_drive_amplitude(pl_w: float, lambda_l_m: float, kappa_c: float,
                           constants: PhysicalConstants | None = None) -> float:
    """Cavity drive amplitude E = sqrt(2*kappa_c*P_L/(hbar*omega_L))  (rad/s)."""
    if pl_w < 0.0:
        raise ValueError("laser power must be non-negative")
    if lambda_l_m <= 0.0 or kappa_c <= 0.0:
        raise ValueError("wavelength and kappa_c must be positive")
    c = constants or PhysicalConstants()
    omega_l = TWO_PI * c.c_light / lambda_l_m
    return math.sqrt(2.0 * kappa_c * pl_w / (c.hbar * omega_l))


def resolve_drives(params: SystemParams) -> tuple[float, float, dict]:
    """Resolve the drive specification to (Omega, E) in rad/s.

    Returns the Rabi frequency of the magnon drive, the cavity drive
    amplitude, and a metadata dictionary recording the route and every
    non-universal constant that entered the derivation.
    """
    d = params.drive
    c = params.constants
    meta: dict = {"magnon_route": d.magnon_route, "cavity_route": d.cavity_route}
    if d.magnon_route == "physical":
        h_d = drive_field_amplitude(d.p0_w, d.length_m, d.width_m, c)
        n_spins = c.rho_spin * d.volume_m3
        omega_rabi = rabi_frequency(h_d, n_spins, c.gamma_gyro)
        meta.update(
            h_d_tesla=h_d,
            n_spins=n_spins,
            rho_spin_per_m3=c.rho_spin,
            gamma_gyro_rad_s_per_t=c.gamma_gyro,
        )
    else:
        omega_rabi = d.omega_rabi
    if d.cavity_route == "physical":
        e_amp = cavity_drive_amplitude(d.pl_w, d.lambda_l_m, params.kappa_c, c)
        meta["omega_l_rad_s"] = TWO_PI * c.c_light / d.lambda_l_m
    else:
        e_amp = d.e_amp
    meta["omega_rabi_rad_s"] = omega_rabi
    meta["e_amp_rad_s"] = e_amp
    return omega_rabi, e_amp, meta


def paper_defaults(constants: PhysicalConstants | None = None) -> SystemParams:
    """The baseline parameter set used throughout the reference figures.

    omega_a = omega_m = 2*pi*10 GHz, omega_b = 2*pi*40 MHz, lambda_L = 1550 nm,
    P_L = 0.64 mW, kappa_a = 2*pi*5 MHz, kappa_m = 2*pi*2 MHz,
    kappa_2 = 0.1*omega_b, kappa_1 = 0.9*omega_b (kappa_c = omega_b),
    gamma_b = 2*pi*100 Hz, g_mb = 2*pi*20 Hz, g_bc = 2*pi*4 kHz,
    g_ma = 2*pi*15 MHz, T = 20 mK, phi = 0.3*pi, Delta_m = Delta_a = 0.1*omega_b,
    Delta_c = omega_b, P_0 = 5 mW over a 5 um x 3 um bridge cross-section
    (volume 5 x 3 x 2 um^3).
    """
    c = constants or PhysicalConstants()
    omega_b = from_hz(40e6)
    lambda_l = 1550e-9
    delta_c = omega_b
    omega_l = TWO_PI * c.c_light / lambda_l
    drive = DriveSpec(
        p0_w=5e-3,
        length_m=5e-6,
        width_m=3e-6,
        volume_m3=5e-6 * 3e-6 * 2e-6,
        pl_w=0.64e-3,
        lambda_l_m=lambda_l,
    )
    return SystemParams(
        omega_a=from_hz(10e9),
        omega_m=from_hz(10e9),
        omega_b=omega_b,
        omega_c=omega_l + delta_c,
        Delta_a=0.1 * omega_b,
        Delta_m=0.1 * omega_b,
        Delta_c=delta_c,
        kappa_a=from_hz(5e6),
        kappa_m=from_hz(2e6),
        kappa_1=0.9 * omega_b,
        kappa_2=0.1 * omega_b,
        gamma_b=from_hz(100.0),
        g_ma=from_hz(15e6),
        g_mb=from_hz(20.0),
        g_bc=from_hz(4e3),
        T=0.02,
        phi=0.3 * math.pi,
        drive=drive,
        constants=c,
    )
