import math
import os
import subprocess

import numpy as np
import pytest

import hgpdc

SMALL = """
preset: theta45-sinc-broadband
grid: {signal: 16, idler: 16, span_factor: 6}
integration: {steps: 256}
"""


def small_config():
    return hgpdc.parse_config(SMALL)


def test_presets_and_config():
    names = {p["name"] for p in hgpdc.presets()}
    assert {"theta0-sinc-broadband", "theta45-gauss-narrowband", "theta50-sinc-broadband"} <= names
    cfg = hgpdc.preset_config("theta45-sinc-broadband")
    assert cfg.theta_deg() == pytest.approx(44.89, abs=0.05)
    assert cfg.grid[:2] == [128, 128]
    assert '"preset":"theta45-sinc-broadband"' in cfg.to_json()


def test_config_errors():
    with pytest.raises(hgpdc.ConfigError, match="polingg"):
        hgpdc.parse_config("preset: theta0-sinc-broadband\nwaveguide: {polingg: 1}\n")
    with pytest.raises(hgpdc.Error):
        hgpdc.preset_config("nope")


def test_run_small_grid():
    res = hgpdc.run(small_config(), 100.0)
    assert res["moment"].shape == (16, 16)
    assert res["moment"].dtype == np.complex128
    assert 0.0 < res["purity"] <= 1.0
    assert res["gain_db"] == pytest.approx(hgpdc.gain_to_db(res["gain"]))
    assert sum(res["p"]) <= 1.0 + 1e-12
    assert res["residuals"]["aa"] < 1e-6
    assert np.all(np.diff(res["r_all"]) <= 0)


def test_zero_power_has_undefined_purity():
    res = hgpdc.run(small_config(), 0.0)
    assert res["gain"] == 0.0
    assert math.isnan(res["purity"])


def test_sweep_and_oracle():
    cfg = small_config()
    cfg.sweep_powers = [1.0, 10.0]
    rows, failures = hgpdc.sweep(cfg)
    assert failures == []
    assert [r["power_w"] for r in rows] == [1.0, 10.0]
    assert rows[1]["gain"] > rows[0]["gain"]
    jsa, ws, wi = hgpdc.analytic_jsa(cfg, 1e-6)
    assert jsa.shape == (16, 16) and ws.shape == (16,) and wi.shape == (16,)


def test_metrics_from_r():
    m = hgpdc.metrics_from_r(np.array([1.0, 0.5]))
    assert m["purity"] == pytest.approx(0.7254, abs=1e-4)
    assert m["mode_weights"][0] == pytest.approx(0.8357, abs=1e-4)
    with pytest.raises(hgpdc.NumericalError):
        hgpdc.metrics_from_r(np.zeros(3))


cli = os.environ.get("HGPDC_CLI")
needs_cli = pytest.mark.skipif(not cli, reason="HGPDC_CLI not set")


@needs_cli
def test_cli_outputs_are_readable(tmp_path):
    cfg = tmp_path / "c.yaml"
    cfg.write_text(SMALL + "sweep: {powers: [1.0, 50.0]}\n")
    out = tmp_path / "sim"
    subprocess.run([cli, "simulate", str(cfg), "--power", "50", "--out", str(out)], check=True,
                   capture_output=True)
    run = hgpdc.read_sweep(out / "run.csv")
    assert run["power_w"].tolist() == [50.0]
    tag = "P5.000000e+01W"
    moment, ws, wi = hgpdc.read_matrix(out / f"moment_{tag}.cmat")
    assert moment.shape == (16, 16) and ws.shape == (16,) and wi.shape == (16,)
    direct = hgpdc.run(hgpdc.load_config(str(cfg)), 50.0)
    np.testing.assert_array_equal(moment, direct["moment"])
    modes = hgpdc.read_modes(out / f"modes_{tag}.csv")
    assert set(modes) == {"signal", "idler"}
    assert len(modes["signal"][1][0]) == 16

    sweep_out = tmp_path / "sweep"
    subprocess.run([cli, "sweep", str(cfg), "--out", str(sweep_out)], check=True, capture_output=True)
    rows = hgpdc.read_sweep(sweep_out / "sweep.csv")
    assert rows["power_w"].tolist() == [1.0, 50.0]
    assert not (sweep_out / "sweep.partial.csv").exists()


@needs_cli
def test_cli_exit_codes(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("preset: theta0-sinc-broadband\nwaveguide: {polingg: 1}\n")
    r = subprocess.run([cli, "simulate", str(bad), "--power", "1", "--out", str(tmp_path)],
                       capture_output=True, text=True)
    assert r.returncode == 2
    assert "polingg" in r.stderr
    r = subprocess.run([cli, "presets", "list"], capture_output=True, text=True)
    assert r.returncode == 0 and "theta-11-sinc-broadband" in r.stdout
