import math

import numpy as np
import pytest

import vbgk

STABLE = "tau = 0.02\nlambda = 4\nnu = 0.1\nn = 16\nt_end = 0.05\n"


def test_params_and_pressure():
    p = vbgk.ModelParams(0.1, 1.0, 2.0, 0.01)
    assert p.a == pytest.approx(0.01 / 8.0, rel=1e-15)
    assert vbgk.pressure(2.0, p) == pytest.approx(1.5)
    with pytest.raises(vbgk.ConstraintViolation):
        vbgk.ModelParams(0.1, 1.0, 1.0, 1.0)
    with pytest.raises(vbgk.NonPositiveInput):
        vbgk.ModelParams(0.1, -1.0, 2.0, 0.01)


def test_maxwellians_reproduce_state_and_flux():
    p = vbgk.ModelParams(0.2, 0.5, 3.0, 0.3, 1.2)
    w = (1.1, 0.05, -0.02)
    M = np.array(vbgk.maxwellians(w, p))
    dirs = np.array([(1, 0), (0, 1), (-1, 0), (0, -1), (0, 0)], dtype=float)
    np.testing.assert_allclose(M.sum(axis=0), w, atol=1e-14)
    np.testing.assert_allclose(p.lam * dirs[:, 0] @ M, vbgk.flux(1, w, p), atol=1e-13)
    np.testing.assert_allclose(p.lam * dirs[:, 1] @ M, vbgk.flux(2, w, p), atol=1e-13)


def test_subcharacteristic_report():
    stable = vbgk.ModelParams(0.1, 0.02, 4.0, 0.1)
    r = vbgk.check_subcharacteristic(stable, 0.95, 1.05, 1.0)
    assert r["pass"] and r["min_real_part"] > 0
    tg = vbgk.ModelParams(0.1, 1.0, 2.0, 0.01)
    assert not vbgk.check_subcharacteristic(tg, 0.95, 1.05, 2.0)["pass"]


def test_taylor_green_and_norms():
    u1, u2, p = vbgk.taylor_green(0.0, 0.01, 32)
    assert u1.shape == (32, 32)
    x = np.arange(32) * 2 * math.pi / 32
    X, Y = np.meshgrid(x, x, indexing="ij")
    np.testing.assert_allclose(u1, -np.cos(X) * np.sin(Y), atol=1e-15)
    np.testing.assert_allclose(p, -0.25 * (np.cos(2 * X) + np.cos(2 * Y)), atol=1e-15)
    # Single wavenumber |k|^2 = 2 with mean square 1/4.
    assert vbgk.sobolev_norm(u1, 1.0) == pytest.approx(math.sqrt(0.25 * 3.0), rel=1e-13)


def test_ns_advance_matches_taylor_green():
    u1, u2, _ = vbgk.taylor_green(0.0, 0.05, 32)
    v1, v2 = vbgk.ns_advance(u1, u2, 0.05, 1e-2, 20)
    e1, e2, _ = vbgk.taylor_green(0.2, 0.05, 32)
    assert np.max(np.abs(v1 - e1)) < 1e-9
    assert np.max(np.abs(v2 - e2)) < 1e-9


def test_fit_rate_exact_power_law():
    eps = [0.2, 0.1, 0.05]
    fit = vbgk.fit_rate(eps, [3 * e**1.5 for e in eps])
    assert fit["slope"] == pytest.approx(1.5, abs=1e-12)
    assert fit["residual"] < 1e-12


def test_simulate_stable_config(tmp_path):
    out = vbgk.simulate(STABLE, 0.2, str(tmp_path))
    assert out["completed"]
    rec = out["records"]
    assert rec["t"][0] == 0.0 and rec["t"][-1] == pytest.approx(0.05)
    assert rec["e0"][0] < 1e-12
    assert (tmp_path / "records.csv").exists()


def test_parse_error_raised():
    with pytest.raises(vbgk.ParseError):
        vbgk.simulate("tau = 1\nbogus\n")


def test_synthetic_sweep_and_cli(tmp_path):
    r = vbgk.sweep(STABLE, [0.2, 0.1, 0.05, 0.025], synthetic=True)
    assert r["completed"]
    assert r["rates"]["e0"]["slope"] == pytest.approx(0.5, abs=1e-12)
    cfg = tmp_path / "c.cfg"
    cfg.write_text(STABLE)
    code, out, _ = vbgk.cmd_validate(str(cfg))
    assert code == 0 and "ok" in out
    code, _, err = vbgk.cmd_validate(str(tmp_path / "missing.cfg"))
    assert code == 1 and err
