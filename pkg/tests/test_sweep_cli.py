"""Configuration parsing, sweep engine, emitters, and the CLI surface."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ommsim.model import paper_defaults
from ommsim.spectrum import noise_spectral_density
from ommsim.steady_state import solve_steady_state
from ommsim.sweep_cli import (ConfigError, SweepAxis, SweepSpec, emit, main,
                              parse_config, run_sweep)
from ommsim.units_constants import TWO_PI


# ---------------------------------------------------------------------------
# Configuration parsing
# ---------------------------------------------------------------------------

def test_empty_config_gives_defaults():
    params, spec = parse_config("")
    defaults = paper_defaults()
    assert params.omega_b == defaults.omega_b
    assert params.Delta_c == defaults.Delta_c
    assert params.phi == defaults.phi
    assert spec is None


def test_full_physics_config_round_trip():
    text = """
[physics]
omega_a_hz = 10e9
omega_m_hz = 10e9
omega_b_hz = 40e6
delta_a = 0.1
delta_m = 0.1
delta_c = 1.2
kappa_a_hz = 5e6
kappa_m_hz = 2e6
kappa_1 = 0.8
kappa_2 = 0.2
gamma_b_hz = 100.0
g_ma_hz = 15e6
g_mb_hz = 20.0
g_bc_hz = 4e3
temperature_k = 0.15
phi_pi = 0.25
detuning_convention = "effective"

[physics.drive]
p0_w = 5e-3
length_m = 5e-6
width_m = 3e-6
volume_m3 = 3e-17
pl_w = 0.64e-3
lambda_l_m = 1550e-9
"""
    params, spec = parse_config(text)
    wb = TWO_PI * 40e6
    assert params.omega_b == pytest.approx(wb, rel=1e-12)
    assert params.Delta_c == pytest.approx(1.2 * wb, rel=1e-12)
    assert params.kappa_1 == pytest.approx(0.8 * wb, rel=1e-12)
    assert params.kappa_2 == pytest.approx(0.2 * wb, rel=1e-12)
    assert params.T == 0.15
    assert params.phi == pytest.approx(0.25 * math.pi, rel=1e-12)
    assert params.g_bc == pytest.approx(TWO_PI * 4e3, rel=1e-12)
    assert params.drive.magnon_route == "physical"
    assert spec is None


def test_direct_drive_config():
    text = """
[physics.drive]
omega_rabi_rad_s = 5.85e13
e_amp_rad_s = 1.58e12
"""
    params, _ = parse_config(text)
    assert params.drive.magnon_route == "direct"
    assert params.drive.omega_rabi == 5.85e13


def test_calibration_targets_config():
    text = """
[physics.drive]
omega_rabi_rad_s = 5.85e13
e_amp_rad_s = 1.58e12
g_mb_target_hz = 4e6
"""
    params, _ = parse_config(text)
    assert params.drive.g_mb_target == pytest.approx(TWO_PI * 4e6, rel=1e-12)


def test_unknown_top_level_key_rejected():
    with pytest.raises(ConfigError, match="physic"):
        parse_config("[physic]\ndelta_c = 1.0\n")


def test_unknown_physics_key_rejected():
    with pytest.raises(ConfigError, match="delta_q"):
        parse_config("[physics]\ndelta_q = 1.0\n")


def test_unknown_drive_key_rejected():
    with pytest.raises(ConfigError, match="power"):
        parse_config("[physics.drive]\npower = 1.0\n")


def test_unknown_sweep_fixed_key_rejected():
    text = """
[sweep.axis1]
param = "omega"
min = 0.0
max = 1.0
points = 5

[sweep.fixed]
bogus = 1.0
"""
    with pytest.raises(ConfigError, match="bogus"):
        parse_config(text)


def test_wrong_type_rejected():
    with pytest.raises(ConfigError, match="delta_c"):
        parse_config('[physics]\ndelta_c = "one"\n')


def test_invalid_toml_rejected():
    with pytest.raises(ConfigError, match="TOML"):
        parse_config("[physics\n")


def test_constants_block():
    text = """
[constants]
gamma_gyro_hz_per_t = 28e9
rho_spin_per_m3 = 4.22e27
"""
    params, _ = parse_config(text)
    assert params.constants.gamma_gyro == pytest.approx(TWO_PI * 28e9, rel=1e-12)
    assert params.constants.rho_spin == 4.22e27


def test_sweep_table_parsed():
    text = """
[sweep.axis1]
param = "omega"
min = 0.0
max = 1.5
points = 10

[sweep.axis2]
param = "delta_c"
min = 0.5
max = 1.5
points = 4

[sweep.fixed]
temperature = 0.3

[output]
format = "json"
"""
    _, spec = parse_config(text)
    assert spec.axis1.param == "omega" and spec.axis1.points == 10
    assert spec.axis2.param == "delta_c"
    assert spec.fixed == {"temperature": 0.3}
    assert spec.output_format == "json"


@given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
def test_phi_pi_round_trip_property(x):
    params, _ = parse_config(f"[physics]\nphi_pi = {x!r}\n")
    assert params.phi == pytest.approx(x * math.pi, rel=1e-15, abs=1e-15)


# ---------------------------------------------------------------------------
# Axis and spec validation
# ---------------------------------------------------------------------------

def test_axis_rejects_unknown_param():
    with pytest.raises(ConfigError):
        SweepAxis(param="gamma_b", min=0.0, max=1.0, points=5)


def test_axis_rejects_bad_points():
    with pytest.raises(ConfigError):
        SweepAxis(param="omega", min=0.0, max=1.0, points=0)
    with pytest.raises(ConfigError):
        SweepAxis(param="omega", min=1.0, max=0.0, points=5)


def test_axis_single_point_allowed():
    axis = SweepAxis(param="delta_c", min=1.0, max=1.0, points=1)
    assert axis.values().tolist() == [1.0]


def test_spec_rejects_duplicate_axes():
    a = SweepAxis(param="omega", min=0.0, max=1.0, points=3)
    with pytest.raises(ConfigError):
        SweepSpec(axis1=a, axis2=a)


# ---------------------------------------------------------------------------
# Sweep engine
# ---------------------------------------------------------------------------

def test_sweep_cell_matches_single_point_evaluation():
    base = paper_defaults()
    wb = base.omega_b
    spec = SweepSpec(axis1=SweepAxis("omega", 0.1, 1.4, 14),
                     axis2=SweepAxis("delta_c", 0.8, 1.6, 5))
    result = run_sweep(spec, base)
    i1, i2 = 7, 2
    dc = result.axis2_values[i2]
    omega_l = TWO_PI * base.constants.c_light / base.drive.lambda_l_m
    p = base.with_overrides(Delta_c=dc * wb, omega_c=omega_l + dc * wb)
    ss = solve_steady_state(p)
    s = noise_spectral_density(p, ss, result.axis1_values[i1] * wb)
    assert result.S[i1, i2] == pytest.approx(s, rel=0, abs=1e-12)


def test_sweep_unstable_cells_blanked():
    base = paper_defaults()
    spec = SweepSpec(axis1=SweepAxis("omega", 0.2, 1.0, 5),
                     axis2=SweepAxis("delta_c", 0.3, 0.5, 2))
    result = run_sweep(spec, base)
    assert not result.stable.any()
    assert np.isnan(result.S).all()


def test_sweep_worker_invariance_bytes():
    base = paper_defaults()
    spec = SweepSpec(axis1=SweepAxis("omega", 0.0, 1.5, 12),
                     axis2=SweepAxis("delta_c", 0.6, 1.6, 6))
    text1 = emit(run_sweep(spec, base, workers=1), "csv")
    text2 = emit(run_sweep(spec, base, workers=3), "csv")
    assert text1 == text2


def test_sweep_repeat_determinism():
    base = paper_defaults()
    spec = SweepSpec(axis1=SweepAxis("phi", 0.0, 1.0, 7), fixed={"omega": 0.65})
    assert emit(run_sweep(spec, base), "csv") == emit(run_sweep(spec, base), "csv")


def test_sweep_parameter_error_recorded_in_row():
    base = paper_defaults()
    spec = SweepSpec(axis1=SweepAxis("kappa_c", 0.05, 1.0, 3),
                     fixed={"omega": 0.65})
    result = run_sweep(spec, base)
    # kappa_c below the fixed kappa_2 is impossible; the row is blanked
    # with the error recorded, and the remaining rows still computed.
    assert not result.stable[0, 0]
    assert 0 in result.errors and "kappa_c" in result.errors[0]
    assert result.stable[2, 0]


def test_sweep_delta_m_eq_a_locks_both():
    base = paper_defaults()
    wb = base.omega_b
    spec = SweepSpec(axis1=SweepAxis("delta_m_eq_a", 0.0, 0.2, 3),
                     fixed={"omega": 0.65})
    result = run_sweep(spec, base)
    p = base.with_overrides(Delta_m=0.1 * wb, Delta_a=0.1 * wb)
    ss = solve_steady_state(p)
    s = noise_spectral_density(p, ss, 0.65 * wb)
    assert result.S[1, 0] == pytest.approx(s, rel=0, abs=1e-12)


def test_sweep_omega_axis_second():
    base = paper_defaults()
    spec = SweepSpec(axis1=SweepAxis("delta_c", 0.9, 1.1, 3),
                     axis2=SweepAxis("omega", 0.5, 0.8, 4))
    result = run_sweep(spec, base)
    assert result.S.shape == (3, 4)
    assert result.stable.all()


def test_sweep_metadata_provenance():
    base = paper_defaults()
    spec = SweepSpec(axis1=SweepAxis("omega", 0.5, 0.8, 4))
    result = run_sweep(spec, base)
    meta = result.metadata
    assert meta["parameters"]["delta_c"] == pytest.approx(1.0, rel=1e-12)
    assert meta["drive"]["magnon_route"] == "physical"
    assert meta["grid"]["axis1"]["param"] == "omega"
    assert "constants" in meta


# ---------------------------------------------------------------------------
# Emitters
# ---------------------------------------------------------------------------

def test_csv_format_2d():
    base = paper_defaults()
    spec = SweepSpec(axis1=SweepAxis("omega", 0.6, 0.7, 2),
                     axis2=SweepAxis("delta_c", 1.0, 1.2, 2))
    text = emit(run_sweep(spec, base), "csv")
    lines = text.split("\r\n")
    assert lines[0] == "axis1,axis2,S,S_dB,stable"
    assert len(lines) == 6  # header + 4 rows + trailing newline
    first = lines[1].split(",")
    assert first[0] == "0.59999999999999998"  # 17 significant digits
    assert first[4] == "true"
    assert float(first[2]) < 0.5


def test_csv_format_1d():
    base = paper_defaults()
    spec = SweepSpec(axis1=SweepAxis("temperature", 0.02, 1.0, 3),
                     fixed={"omega": 0.65})
    text = emit(run_sweep(spec, base), "csv")
    lines = text.split("\r\n")
    assert lines[0] == "axis1,S,S_dB,stable"
    assert len(lines) == 5


def test_csv_unstable_rows_have_empty_s():
    base = paper_defaults()
    spec = SweepSpec(axis1=SweepAxis("delta_c", 0.4, 1.0, 2),
                     fixed={"omega": 0.65})
    text = emit(run_sweep(spec, base), "csv")
    rows = [line.split(",") for line in text.split("\r\n")[1:] if line]
    assert rows[0][1] == "" and rows[0][2] == "" and rows[0][3] == "false"
    assert rows[1][3] == "true" and rows[1][1] != ""


def test_json_format():
    base = paper_defaults()
    spec = SweepSpec(axis1=SweepAxis("delta_c", 0.4, 1.0, 2),
                     fixed={"omega": 0.65})
    payload = json.loads(emit(run_sweep(spec, base), "json"))
    assert payload["S"][0][0] is None
    assert payload["S"][1][0] == pytest.approx(0.166, abs=5e-3)
    assert payload["stable"] == [[False], [True]]
    assert payload["metadata"]["parameters"]["phi_over_pi"] == pytest.approx(0.3)


def test_emit_rejects_unknown_format():
    base = paper_defaults()
    spec = SweepSpec(axis1=SweepAxis("delta_c", 1.0, 1.0, 1))
    result = run_sweep(spec, base)
    with pytest.raises(ConfigError):
        emit(result, "yaml")


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def test_cli_steady_json(tmp_path):
    out = tmp_path / "steady.json"
    assert main(["steady", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["q_avg"] == pytest.approx(-18283.2, abs=0.5)
    assert payload["metadata"]["drive"]["magnon_route"] == "physical"


def test_cli_stability_json(tmp_path):
    out = tmp_path / "stab.json"
    assert main(["stability", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["stable"] is True
    assert payload["margin_over_omega_b"] == pytest.approx(-0.039022, abs=1e-5)
    assert len(payload["eigenvalues_over_omega_b"]) == 8


def test_cli_spectrum_csv(tmp_path):
    out = tmp_path / "spec.csv"
    assert main(["spectrum", "--points", "5", "--omega-min", "0.5",
                 "--omega-max", "0.7", "--out", str(out)]) == 0
    lines = out.read_bytes().decode().split("\r\n")
    assert lines[0] == "omega_over_omega_b,S,S_dB"
    assert len(lines) == 7
    w, s, db = lines[3].split(",")
    assert float(w) == pytest.approx(0.6, rel=1e-12)
    assert float(s) < 0.5 and float(db) < 0.0


def test_cli_spectrum_phi_override(tmp_path):
    out = tmp_path / "spec.json"
    assert main(["spectrum", "--points", "30", "--phi-pi", "1.0",
                 "--omega-min", "0.25", "--format", "json",
                 "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["band_over_omega_b"] is None
    assert payload["s_min"] > 0.5


def test_cli_sweep(tmp_path):
    config = tmp_path / "sweep.toml"
    config.write_text("""
[sweep.axis1]
param = "omega"
min = 0.5
max = 0.8
points = 4

[sweep.fixed]
delta_c = 1.0
""")
    out = tmp_path / "sweep.csv"
    assert main(["sweep", "--config", str(config), "--out", str(out)]) == 0
    lines = out.read_bytes().decode().split("\r\n")
    assert lines[0] == "axis1,S,S_dB,stable"
    assert len(lines) == 6


def test_cli_exit_codes(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[physics]\nnot_a_key = 1\n")
    assert main(["steady", "--config", str(bad)]) == 1
    assert main(["steady", "--config", str(tmp_path / "missing.toml")]) == 1
    assert main(["sweep"]) == 1  # no [sweep] table in defaults
    unstable = tmp_path / "unstable.toml"
    unstable.write_text("[physics]\ndelta_c = 0.4\n")
    assert main(["spectrum", "--config", str(unstable), "--points", "4"]) == 2


def test_cli_validate(tmp_path):
    out = tmp_path / "validate.json"
    assert main(["validate", "--seed", "1", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["all_pass"] is True
    assert payload["seed"] == 1
