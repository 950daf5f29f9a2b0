"""Configuration parsing, parameter sweeps, figure-data emission, and CLI.

Sweeps reproduce the reference heatmaps and trend curves as long-format
CSV (one row per grid cell) or JSON.  Grid points are independent pure
evaluations; a deterministic work pool guarantees byte-identical output
for any worker count.  Unstable grid points are data, not errors: they
are emitted with ``stable=false`` and an empty spectral-density field.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import __version__
from .dynamics import NumericalError, build_drift_matrix, build_noise_model, stability_analysis
from .model import DriveSpec, SystemParams, ValidationError, paper_defaults, resolve_drives
from .spectrum import output_spectrum_values, run_validation, spectrum_curve
from .steady_state import NonConvergence, SingularDenominator, solve_steady_state
from .units_constants import TWO_PI, PhysicalConstants

__all__ = [
    "SweepAxis",
    "SweepSpec",
    "SweepResult",
    "ConfigError",
    "parse_config",
    "run_sweep",
    "emit",
    "main",
]

SWEEPABLE_PARAMS = ("delta_c", "delta_m_eq_a", "phi", "kappa_c", "temperature", "omega")

# Default evaluation frequency for sweeps without an omega axis (the
# optimum of the baseline configuration), in omega_b units.
_DEFAULT_OMEGA = 0.65

# Fixed chunk size for splitting 1-D sweeps into work items; independent
# of the worker count so output bytes never depend on parallelism.
_CHUNK = 256


class ConfigError(ValueError):
    """Configuration file is malformed, has unknown keys, or bad values."""


@dataclass(frozen=True)
class SweepAxis:
    """One sweep axis: parameter name, inclusive range, and point count.

    Units follow the configuration conventions: detunings, kappa_c, and
    omega in omega_b units; phi in units of pi; temperature in kelvin.
    """

    param: str
    min: float
    max: float
    points: int

    def __post_init__(self) -> None:
        if self.param not in SWEEPABLE_PARAMS:
            raise ConfigError(
                f"unknown sweep parameter {self.param!r}; "
                f"expected one of {', '.join(SWEEPABLE_PARAMS)}"
            )
        if self.points < 1:
            raise ConfigError(f"axis {self.param!r}: points must be >= 1")
        if self.points >= 2 and not (self.min < self.max):
            raise ConfigError(f"axis {self.param!r}: min must be < max")

    def values(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.min])
        return np.linspace(self.min, self.max, self.points)


@dataclass(frozen=True)
class SweepSpec:
    """A 1-D or 2-D sweep: axes, fixed overrides, and output destination."""

    axis1: SweepAxis
    axis2: SweepAxis | None = None
    fixed: dict | None = None
    output_path: str | None = None
    output_format: str = "csv"

    def __post_init__(self) -> None:
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"output format must be csv or json, got {self.output_format!r}")
        if self.axis2 is not None and self.axis1.param == self.axis2.param:
            raise ConfigError("axis1 and axis2 must sweep different parameters")
        for key in (self.fixed or {}):
            if key not in SWEEPABLE_PARAMS:
                raise ConfigError(f"unknown fixed override {key!r}")


@dataclass(frozen=True)
class SweepResult:
    """Grid of spectral densities with stability flags and metadata.

    ``S`` is an (n1, n2) array with NaN marking blanked cells (unstable or
    errored); ``errors`` maps flat row-major indices to messages.
    """

    axis1_values: np.ndarray
    axis2_values: np.ndarray | None
    S: np.ndarray
    stable: np.ndarray
    errors: dict[int, str]
    metadata: dict


def _apply_param(params: SystemParams, name: str, value: float) -> SystemParams:
    """Apply one sweepable parameter override (value in config units)."""
    wb = params.omega_b
    if name == "delta_c":
        changes: dict = {"Delta_c": value * wb}
        # Keep the absolute optical frequency consistent when it is known
        # through the drive wavelength (it only feeds the ~0 occupation).
        if params.drive.lambda_l_m is not None:
            omega_l = TWO_PI * params.constants.c_light / params.drive.lambda_l_m
            changes["omega_c"] = omega_l + value * wb
        return params.with_overrides(**changes)
    if name == "delta_m_eq_a":
        return params.with_overrides(Delta_m=value * wb, Delta_a=value * wb)
    if name == "phi":
        return params.with_overrides(phi=value * math.pi)
    if name == "kappa_c":
        kappa_1 = value * wb - params.kappa_2
        if kappa_1 < 0.0:
            raise ValidationError(
                f"kappa_c = {value:g} omega_b is below the fixed kappa_2 "
                f"= {params.kappa_2 / wb:g} omega_b"
            )
        return params.with_overrides(kappa_1=kappa_1)
    if name == "temperature":
        return params.with_overrides(T=value)
    raise ConfigError(f"parameter {name!r} cannot be applied to the system model")


def _evaluate_slice(base: SystemParams, fixed: dict, outer: tuple[str, float] | None,
                    omega_values: np.ndarray) -> tuple[np.ndarray, bool, str | None]:
    """Evaluate S over an omega grid at one set of model parameters.

    Returns (values, stable, error).  Values are NaN-filled when the point
    is unstable or a numerical error occurs.
    """
    n = omega_values.size
    try:
        params = base
        for name, value in fixed.items():
            if name != "omega":
                params = _apply_param(params, name, value)
        if outer is not None:
            params = _apply_param(params, outer[0], outer[1])
        ss = solve_steady_state(params)
        drift = build_drift_matrix(params, ss)
        if not stability_analysis(drift).stable:
            return np.full(n, np.nan), False, None
        noise = build_noise_model(params)
        # The drift matrix is omega_b-normalized, so evaluation frequencies
        # (given in rad/s) are normalized to match.
        values = output_spectrum_values(
            drift.entries, noise.injection, noise.correlations,
            omega_values / params.omega_b, params.phi,
            params.kappa_1 / params.omega_b)
        return values, True, None
    except (ValidationError, NonConvergence, SingularDenominator, NumericalError) as exc:
        return np.full(n, np.nan), False, f"{type(exc).__name__}: {exc}"


def _evaluate_points(base: SystemParams, fixed: dict, param: str,
                     param_values: np.ndarray,
                     omega: float) -> tuple[np.ndarray, np.ndarray, list[str | None]]:
    """Evaluate S at a fixed omega for a block of non-omega parameter values."""
    n = param_values.size
    S = np.full(n, np.nan)
    stable = np.zeros(n, dtype=bool)
    errors: list[str | None] = [None] * n
    for i, value in enumerate(param_values):
        values, ok, err = _evaluate_slice(base, fixed, (param, float(value)),
                                          np.array([omega]))
        S[i] = values[0]
        stable[i] = ok
        errors[i] = err
    return S, stable, errors


def _run_task(task: tuple) -> tuple:
    """Top-level task dispatcher (picklable for the process pool)."""
    kind = task[0]
    if kind == "slice":
        _, base, fixed, outer, omega_values = task
        return _evaluate_slice(base, fixed, outer, omega_values)
    _, base, fixed, param, param_values, omega = task
    return _evaluate_points(base, fixed, param, param_values, omega)


def _base_metadata(params: SystemParams, spec: SweepSpec | None) -> dict:
    """Provenance block shared by all emitters (no volatile fields)."""
    wb = params.omega_b
    meta: dict = {
        "artifact_version": __version__,
        "omega_b_rad_s": wb,
        "parameters": {
            "omega_a_over_omega_b": params.omega_a / wb,
            "omega_m_over_omega_b": params.omega_m / wb,
            "omega_c_over_omega_b": (params.omega_c / wb
                                     if params.omega_c is not None else None),
            "delta_a": params.Delta_a / wb,
            "delta_m": params.Delta_m / wb,
            "delta_c": params.Delta_c / wb,
            "kappa_a": params.kappa_a / wb,
            "kappa_m": params.kappa_m / wb,
            "kappa_1": params.kappa_1 / wb,
            "kappa_2": params.kappa_2 / wb,
            "gamma_b": params.gamma_b / wb,
            "g_ma": params.g_ma / wb,
            "g_mb": params.g_mb / wb,
            "g_bc": params.g_bc / wb,
            "temperature_k": params.T,
            "phi_over_pi": params.phi / math.pi,
            "detuning_convention": params.detuning_convention,
        },
        "constants": params.constants.asdict(),
    }
    try:
        _, _, drive_meta = resolve_drives(params)
        ss = solve_steady_state(params)
        drive_meta.update({k: v for k, v in ss.metadata.items()
                           if "calibration" in k or "bare" in k})
        meta["drive"] = drive_meta
    except (ValidationError, NonConvergence, SingularDenominator) as exc:
        meta["drive"] = {"error": f"{type(exc).__name__}: {exc}"}
    if spec is not None:
        grid: dict = {"axis1": vars(spec.axis1).copy()}
        if spec.axis2 is not None:
            grid["axis2"] = vars(spec.axis2).copy()
        if spec.fixed:
            grid["fixed"] = dict(spec.fixed)
        meta["grid"] = grid
    return meta


def run_sweep(spec: SweepSpec, base: SystemParams, workers: int = 1) -> SweepResult:
    """Run a 1-D or 2-D sweep over independent grid points.

    The grid is decomposed into work items along the non-omega axis (or
    fixed-size chunks for 1-D sweeps); items are evaluated in any order
    and gathered by index, so results do not depend on ``workers``.
    """
    fixed = dict(spec.fixed or {})
    omega_fixed = float(fixed.get("omega", _DEFAULT_OMEGA)) * base.omega_b
    axis1, axis2 = spec.axis1, spec.axis2
    values1 = axis1.values()
    values2 = axis2.values() if axis2 is not None else None

    tasks: list[tuple] = []
    if axis2 is None:
        if axis1.param == "omega":
            tasks.append(("slice", base, fixed, None, values1 * base.omega_b))
        else:
            for start in range(0, values1.size, _CHUNK):
                block = values1[start:start + _CHUNK]
                tasks.append(("points", base, fixed, axis1.param, block, omega_fixed))
    elif axis1.param == "omega":
        omega_grid = values1 * base.omega_b
        for value2 in values2:
            tasks.append(("slice", base, fixed, (axis2.param, float(value2)), omega_grid))
    elif axis2.param == "omega":
        omega_grid = values2 * base.omega_b
        for value1 in values1:
            tasks.append(("slice", base, fixed, (axis1.param, float(value1)), omega_grid))
    else:
        for value1 in values1:
            inner_fixed = dict(fixed)
            inner_fixed[axis1.param] = float(value1)
            tasks.append(("points", base, inner_fixed, axis2.param, values2, omega_fixed))

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(_run_task, tasks, chunksize=1))
    else:
        outputs = [_run_task(task) for task in tasks]

    n1 = values1.size
    n2 = values2.size if values2 is not None else 1
    S = np.full((n1, n2), np.nan)
    stable = np.zeros((n1, n2), dtype=bool)
    errors: dict[int, str] = {}

    def note_error(i1: int, i2: int, message: str | None) -> None:
        if message is not None:
            errors[i1 * n2 + i2] = message

    if axis2 is None:
        if axis1.param == "omega":
            values, ok, err = outputs[0]
            S[:, 0] = values
            stable[:, 0] = ok
            for i1 in range(n1):
                note_error(i1, 0, err)
        else:
            offset = 0
            for (block_S, block_stable, block_errors), task in zip(outputs, tasks):
                size = task[4].size
                S[offset:offset + size, 0] = block_S
                stable[offset:offset + size, 0] = block_stable
                for j, message in enumerate(block_errors):
                    note_error(offset + j, 0, message)
                offset += size
    elif axis1.param == "omega":
        for i2, (values, ok, err) in enumerate(outputs):
            S[:, i2] = values
            stable[:, i2] = ok
            for i1 in range(n1):
                note_error(i1, i2, err)
    elif axis2.param == "omega":
        for i1, (values, ok, err) in enumerate(outputs):
            S[i1, :] = values
            stable[i1, :] = ok
            for i2 in range(n2):
                note_error(i1, i2, err)
    else:
        for i1, (block_S, block_stable, block_errors) in enumerate(outputs):
            S[i1, :] = block_S
            stable[i1, :] = block_stable
            for i2, message in enumerate(block_errors):
                note_error(i1, i2, message)

    # Blank the spectral density wherever the point is flagged unusable.
    S[~stable] = np.nan

    metadata = _base_metadata(base, spec)
    metadata["workers_invariant"] = True
    return SweepResult(
        axis1_values=values1,
        axis2_values=values2,
        S=S,
        stable=stable,
        errors=errors,
        metadata=metadata,
    )


# ---------------------------------------------------------------------------
# Emitters
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    """Fixed 17-significant-digit float formatting for byte-stable output."""
    return format(float(x), ".17g")


def emit(result: SweepResult, fmt: str | None = None, stream: io.TextIOBase | None = None) -> str:
    """Serialize a sweep result as long-format CSV or JSON.

    Returns the serialized text (and writes it to ``stream`` if given).
    Output is byte-stable for identical inputs: fixed float formatting, no
    volatile metadata.
    """
    fmt = fmt or "csv"
    if fmt == "csv":
        text = _emit_csv(result)
    elif fmt == "json":
        text = _emit_json(result)
    else:
        raise ConfigError(f"unknown output format {fmt!r}")
    if stream is not None:
        stream.write(text)
    return text


def _row_fields(s: float, stable: bool) -> tuple[str, str, str]:
    if stable and np.isfinite(s):
        return _fmt(s), _fmt(10.0 * math.log10(s / 0.5)) if s > 0 else "-inf", "true"
    return "", "", "false"


def _emit_csv(result: SweepResult) -> str:
    out = io.StringIO()
    two_d = result.axis2_values is not None
    out.write("axis1,axis2,S,S_dB,stable\r\n" if two_d else "axis1,S,S_dB,stable\r\n")
    n1, n2 = result.S.shape
    for i1 in range(n1):
        a1 = _fmt(result.axis1_values[i1])
        for i2 in range(n2):
            s_field, db_field, stable_field = _row_fields(result.S[i1, i2],
                                                          result.stable[i1, i2])
            if two_d:
                a2 = _fmt(result.axis2_values[i2])
                out.write(f"{a1},{a2},{s_field},{db_field},{stable_field}\r\n")
            else:
                out.write(f"{a1},{s_field},{db_field},{stable_field}\r\n")
    return out.getvalue()


def _emit_json(result: SweepResult) -> str:
    def cell(i1: int, i2: int):
        s = result.S[i1, i2]
        if result.stable[i1, i2] and np.isfinite(s):
            return float(s)
        return None

    n1, n2 = result.S.shape
    payload = {
        "metadata": result.metadata,
        "axis1": [float(v) for v in result.axis1_values],
        "axis2": ([float(v) for v in result.axis2_values]
                  if result.axis2_values is not None else None),
        "S": [[cell(i1, i2) for i2 in range(n2)] for i1 in range(n1)],
        "stable": [[bool(result.stable[i1, i2]) for i2 in range(n2)]
                   for i1 in range(n1)],
        "errors": {str(k): v for k, v in sorted(result.errors.items())},
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Configuration parsing
# ---------------------------------------------------------------------------

_PHYSICS_KEYS = {
    "omega_a_hz", "omega_m_hz", "omega_c_hz", "omega_b_hz",
    "delta_a", "delta_m", "delta_c",
    "kappa_a_hz", "kappa_m_hz", "kappa_1", "kappa_2",
    "gamma_b_hz", "g_ma_hz", "g_mb_hz", "g_bc_hz",
    "temperature_k", "phi_pi", "detuning_convention",
}
_DRIVE_KEYS = {
    "p0_w", "length_m", "width_m", "volume_m3", "omega_rabi_rad_s",
    "pl_w", "lambda_l_m", "e_amp_rad_s", "g_mb_target_hz", "g_bc_target_hz",
}
_CONSTANTS_KEYS = {"hbar", "k_b", "mu_0", "c_light",
                   "gamma_gyro_hz_per_t", "rho_spin_per_m3"}
_AXIS_KEYS = {"param", "min", "max", "points"}
_OUTPUT_KEYS = {"path", "format"}


def _reject_unknown(table: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(table) - allowed)
    if unknown:
        raise ConfigError(f"unknown key {unknown[0]!r} in [{where}] "
                          f"(allowed: {', '.join(sorted(allowed))})")


def _require_number(table: dict, key: str, where: str) -> float:
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"key {key!r} in [{where}] must be a number, got {value!r}")
    return float(value)


def parse_config(text: str) -> tuple[SystemParams, SweepSpec | None]:
    """Parse a TOML configuration into parameters and an optional sweep.

    Every omitted physics key falls back to the baseline defaults; any
    unknown key anywhere is a hard error naming the key.
    """
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"configuration is not valid TOML: {exc}") from exc
    _reject_unknown(data, {"physics", "constants", "sweep", "output"}, "top level")

    constants_table = data.get("constants", {})
    _reject_unknown(constants_table, _CONSTANTS_KEYS, "constants")
    defaults = PhysicalConstants()
    constants = PhysicalConstants(
        hbar=_require_number(constants_table, "hbar", "constants")
        if "hbar" in constants_table else defaults.hbar,
        k_B=_require_number(constants_table, "k_b", "constants")
        if "k_b" in constants_table else defaults.k_B,
        mu_0=_require_number(constants_table, "mu_0", "constants")
        if "mu_0" in constants_table else defaults.mu_0,
        c_light=_require_number(constants_table, "c_light", "constants")
        if "c_light" in constants_table else defaults.c_light,
        gamma_gyro=TWO_PI * _require_number(constants_table, "gamma_gyro_hz_per_t", "constants")
        if "gamma_gyro_hz_per_t" in constants_table else defaults.gamma_gyro,
        rho_spin=_require_number(constants_table, "rho_spin_per_m3", "constants")
        if "rho_spin_per_m3" in constants_table else defaults.rho_spin,
    )

    base = paper_defaults(constants)
    physics = dict(data.get("physics", {}))
    drive_table = physics.pop("drive", {})
    _reject_unknown(physics, _PHYSICS_KEYS, "physics")
    _reject_unknown(drive_table, _DRIVE_KEYS, "physics.drive")

    omega_b = (TWO_PI * _require_number(physics, "omega_b_hz", "physics")
               if "omega_b_hz" in physics else base.omega_b)

    def rate_hz(key: str, fallback: float) -> float:
        if key in physics:
            return TWO_PI * _require_number(physics, key, "physics")
        return fallback

    def rate_wb(key: str, fallback: float) -> float:
        if key in physics:
            return _require_number(physics, key, "physics") * omega_b
        return fallback

    convention = physics.get("detuning_convention", base.detuning_convention)
    if not isinstance(convention, str):
        raise ConfigError("detuning_convention must be a string")

    drive = base.drive
    if drive_table:
        targets = {}
        if "g_mb_target_hz" in drive_table:
            targets["g_mb_target"] = TWO_PI * _require_number(
                drive_table, "g_mb_target_hz", "physics.drive")
        if "g_bc_target_hz" in drive_table:
            targets["g_bc_target"] = TWO_PI * _require_number(
                drive_table, "g_bc_target_hz", "physics.drive")
        route_keys = set(drive_table) - {"g_mb_target_hz", "g_bc_target_hz"}
        if route_keys:
            kwargs = {}
            for key in ("p0_w", "length_m", "width_m", "volume_m3", "pl_w",
                        "lambda_l_m"):
                if key in drive_table:
                    kwargs[key] = _require_number(drive_table, key, "physics.drive")
            if "omega_rabi_rad_s" in drive_table:
                kwargs["omega_rabi"] = _require_number(
                    drive_table, "omega_rabi_rad_s", "physics.drive")
            if "e_amp_rad_s" in drive_table:
                kwargs["e_amp"] = _require_number(
                    drive_table, "e_amp_rad_s", "physics.drive")
            try:
                drive = DriveSpec(**kwargs, **targets)
            except ValidationError as exc:
                raise ConfigError(f"invalid [physics.drive]: {exc}") from exc
        else:
            from dataclasses import replace as dc_replace
            drive = dc_replace(drive, **targets)

    try:
        params = SystemParams(
            omega_a=rate_hz("omega_a_hz", base.omega_a),
            omega_m=rate_hz("omega_m_hz", base.omega_m),
            omega_b=omega_b,
            omega_c=(TWO_PI * _require_number(physics, "omega_c_hz", "physics")
                     if "omega_c_hz" in physics else base.omega_c),
            Delta_a=rate_wb("delta_a", 0.1 * omega_b),
            Delta_m=rate_wb("delta_m", 0.1 * omega_b),
            Delta_c=rate_wb("delta_c", 1.0 * omega_b),
            kappa_a=rate_hz("kappa_a_hz", base.kappa_a),
            kappa_m=rate_hz("kappa_m_hz", base.kappa_m),
            kappa_1=rate_wb("kappa_1", 0.9 * omega_b),
            kappa_2=rate_wb("kappa_2", 0.1 * omega_b),
            gamma_b=rate_hz("gamma_b_hz", base.gamma_b),
            g_ma=rate_hz("g_ma_hz", base.g_ma),
            g_mb=rate_hz("g_mb_hz", base.g_mb),
            g_bc=rate_hz("g_bc_hz", base.g_bc),
            T=(_require_number(physics, "temperature_k", "physics")
               if "temperature_k" in physics else base.T),
            phi=(_require_number(physics, "phi_pi", "physics") * math.pi
                 if "phi_pi" in physics else base.phi),
            drive=drive,
            detuning_convention=convention,
            constants=constants,
        )
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc

    spec = None
    if "sweep" in data:
        sweep_table = dict(data["sweep"])
        fixed = sweep_table.pop("fixed", {})
        _reject_unknown(sweep_table, {"axis1", "axis2"}, "sweep")
        if "axis1" not in sweep_table:
            raise ConfigError("[sweep] requires an [sweep.axis1] table")
        for key in fixed:
            if key not in SWEEPABLE_PARAMS:
                raise ConfigError(f"unknown key {key!r} in [sweep.fixed] "
                                  f"(allowed: {', '.join(SWEEPABLE_PARAMS)})")

        def parse_axis(name: str) -> SweepAxis:
            table = sweep_table[name]
            _reject_unknown(table, _AXIS_KEYS, f"sweep.{name}")
            for required in ("param", "min", "points"):
                if required not in table:
                    raise ConfigError(f"[sweep.{name}] requires {required!r}")
            points = table["points"]
            if isinstance(points, bool) or not isinstance(points, int):
                raise ConfigError(f"[sweep.{name}] points must be an integer")
            vmin = _require_number(table, "min", f"sweep.{name}")
            vmax = (_require_number(table, "max", f"sweep.{name}")
                    if "max" in table else vmin)
            return SweepAxis(param=str(table["param"]), min=vmin, max=vmax,
                             points=points)

        output_table = data.get("output", {})
        _reject_unknown(output_table, _OUTPUT_KEYS, "output")
        spec = SweepSpec(
            axis1=parse_axis("axis1"),
            axis2=parse_axis("axis2") if "axis2" in sweep_table else None,
            fixed={k: float(v) for k, v in fixed.items()},
            output_path=output_table.get("path"),
            output_format=output_table.get("format", "csv"),
        )
    elif "output" in data:
        _reject_unknown(data["output"], _OUTPUT_KEYS, "output")

    return params, spec


# ---------------------------------------------------------------------------
# Command-line interface
# ---------------------------------------------------------------------------

def _load_config(path: str | None) -> tuple[SystemParams, SweepSpec | None]:
    if path is None:
        return paper_defaults(), None
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config(text)


def _write_output(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _complex_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def _cmd_steady(args) -> int:
    params, _ = _load_config(args.config)
    ss = solve_steady_state(params)
    payload = ss.asdict()
    payload["metadata"].update(_base_metadata(params, None))
    _write_output(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_stability(args) -> int:
    params, _ = _load_config(args.config)
    ss = solve_steady_state(params)
    report = stability_analysis(build_drift_matrix(params, ss))
    payload = {
        "stable": report.stable,
        "margin_over_omega_b": report.margin,
        "eigenvalues_over_omega_b": [_complex_json(z) for z in report.eigenvalues],
        "metadata": _base_metadata(params, None),
    }
    _write_output(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_spectrum(args) -> int:
    params, _ = _load_config(args.config)
    if args.phi_pi is not None:
        params = params.with_overrides(phi=args.phi_pi * math.pi)
    ss = solve_steady_state(params)
    grid = np.linspace(args.omega_min, args.omega_max, args.points) * params.omega_b
    result = spectrum_curve(params, ss, grid)
    if args.format == "json":
        payload = {
            "metadata": _base_metadata(params, None),
            "omega_over_omega_b": [float(w) for w in result.omegas_over_omega_b],
            "S": [float(s) for s in result.values],
            "S_dB": [float(d) for d in result.values_db],
            "s_min": result.s_min,
            "omega_at_min_over_omega_b": result.omega_at_min / params.omega_b,
            "band_over_omega_b": ([result.band[0] / params.omega_b,
                                   result.band[1] / params.omega_b]
                                  if result.band else None),
            "bandwidth_over_omega_b": result.bandwidth / params.omega_b,
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        out = io.StringIO()
        out.write("omega_over_omega_b,S,S_dB\r\n")
        for w, s in zip(result.omegas_over_omega_b, result.values):
            db = 10.0 * math.log10(s / 0.5) if s > 0 else float("-inf")
            out.write(f"{_fmt(w)},{_fmt(s)},{_fmt(db)}\r\n")
        text = out.getvalue()
    _write_output(text, args.out)
    return 0


def _cmd_sweep(args) -> int:
    params, spec = _load_config(args.config)
    if spec is None:
        raise ConfigError("sweep requires a [sweep] table in the configuration")
    result = run_sweep(spec, params, workers=args.workers)
    fmt = args.format or spec.output_format
    text = emit(result, fmt)
    _write_output(text, args.out or spec.output_path)
    return 0


def _cmd_validate(args) -> int:
    params, _ = _load_config(args.config)
    report = run_validation(params, seed=args.seed)
    _write_output(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return 0 if report["all_pass"] else 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="F", default=None,
                        help="TOML configuration file (defaults baked in)")
    common.add_argument("--workers", type=int, default=1, metavar="N",
                        help="worker processes for sweeps (no effect on results)")
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output format override")
    common.add_argument("--out", metavar="PATH", default=None,
                        help="output file (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="ommsim",
        description="Steady state, stability, and output-field squeezing "
                    "spectra of the four-mode opto-magnomechanical model.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("steady", parents=[common],
                   help="solve the steady state; JSON").set_defaults(func=_cmd_steady)
    sub.add_parser("stability", parents=[common],
                   help="drift-matrix eigenvalues and margin; JSON"
                   ).set_defaults(func=_cmd_stability)
    spectrum_parser = sub.add_parser("spectrum", parents=[common],
                                     help="output noise spectral density curve")
    spectrum_parser.add_argument("--omega-min", type=float, default=0.01,
                                 help="grid start in omega_b units")
    spectrum_parser.add_argument("--omega-max", type=float, default=1.5,
                                 help="grid end in omega_b units")
    spectrum_parser.add_argument("--points", type=int, default=2000)
    spectrum_parser.add_argument("--phi-pi", type=float, default=None,
                                 help="homodyne phase in units of pi")
    spectrum_parser.set_defaults(func=_cmd_spectrum)
    sub.add_parser("sweep", parents=[common],
                   help="run the configured 1-D/2-D sweep").set_defaults(func=_cmd_sweep)
    validate_parser = sub.add_parser("validate", parents=[common],
                                     help="run the invariant/oracle validation suite")
    validate_parser.add_argument("--seed", type=int, default=0)
    validate_parser.set_defaults(func=_cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValidationError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except (NumericalError, NonConvergence, SingularDenominator) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
