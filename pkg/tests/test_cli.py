import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from doublejc.cli import (EVOLVE_COLUMNS, EXIT_FAIL, EXIT_OK, EXIT_USAGE, SUDDEN_DEATH_COLUMNS,
                          parse_value, run)


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def read_csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# doublejc.")
    rows = list(csv.reader(lines[1:]))
    return rows[0], np.array([[float(x) if x else np.nan for x in r] for r in rows[1:]])


def write_config(tmp_path, cfg):
    path = tmp_path / "run.json"
    path.write_text(json.dumps(cfg))
    return str(path)


def test_parse_value():
    assert parse_value("pi/6") == pytest.approx(math.pi / 6)
    assert parse_value("atan(0.5)") == pytest.approx(math.atan(0.5))
    assert parse_value("2*sqrt(2)") == pytest.approx(2 * math.sqrt(2))
    assert parse_value("3") == 3
    assert parse_value('"phi"') == "phi"
    assert parse_value("phi") == "phi"
    assert parse_value("__import__('os')") == "__import__('os')"


def test_evolve_default_psi():
    code, text = call("evolve")
    assert code == EXIT_OK
    header, data = read_csv(text)
    assert tuple(header) == EVOLVE_COLUMNS
    assert text.splitlines()[0] == "# doublejc.evolve/1"
    assert data.shape == (201, len(EVOLVE_COLUMNS))
    t = data[:, header.index("t")]
    assert t[0] == 0.0 and t[-1] == pytest.approx(math.pi)
    # Psi(pi/4) with g = 1: atomic concurrence follows cos^2(g t)
    assert np.abs(data[:, header.index("C_AB")] - np.cos(t) ** 2).max() < 1e-10
    assert np.abs(data[:, header.index("4E_AaBb")] - 1.0).max() < 1e-12


def test_evolve_two_samples_and_outputs():
    code, text = call("evolve", "--set", "n_samples=2", "--set", 'outputs=["C_AB"]')
    assert code == EXIT_OK
    header, data = read_csv(text)
    assert header == ["t", "omega_a_t", "C_AB"]
    assert data.shape == (2, 3)


def test_evolve_config_file_and_json(tmp_path):
    cfg = {"initial_state": {"kind": "phi", "alpha": "pi/6"}, "n_samples": 5, "t_max": 1.0}
    code, text = call("evolve", "--config", write_config(tmp_path, cfg), "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(text)
    assert doc["schema"] == "doublejc.evolve/1"
    assert len(doc["rows"]) == 5
    e = doc["columns"].index("E_Aa-Bb")
    assert all(abs(r[e] - 0.1875) < 1e-12 for r in doc["rows"])


def test_evolve_deterministic_and_workers(tmp_path):
    args = ("evolve", "--set", "initial_state={\"kind\": \"random\"}", "--seed", "7",
            "--set", "n_samples=40")
    _, a = call(*args)
    _, b = call(*args)
    _, c = call(*args, "--workers", "4")
    assert a == b == c
    _, d = call("evolve", "--set", "initial_state={\"kind\": \"random\"}", "--seed", "8",
                "--set", "n_samples=40")
    assert d != a


def test_evolve_out_file(tmp_path):
    out = tmp_path / "traj.csv"
    code, text = call("evolve", "--set", "n_samples=3", "--out", str(out))
    assert code == EXIT_OK and text == ""
    assert out.read_text().startswith("# doublejc.evolve/1")


def test_generic_renormalised_with_warning(caplog):
    coeffs = [[0.0, 0.0]] * 9
    coeffs[0] = [1.0 + 2e-7, 0.0]
    cfg = json.dumps({"kind": "generic", "coefficients": coeffs})
    code, text = call("evolve", "--set", f"initial_state={cfg}", "--set", "n_samples=2")
    assert code == EXIT_OK
    assert "renormalising" in caplog.text


def test_generic_rejected_when_far_from_normalised():
    coeffs = [[0.5, 0.0]] * 9
    cfg = json.dumps({"kind": "generic", "coefficients": coeffs})
    assert call("evolve", "--set", f"initial_state={cfg}")[0] == EXIT_USAGE


@pytest.mark.parametrize("override", ["n_samples=1", "t_max=-1", "params.sub_a.g=-1",
                                      "initial_state.kind=\"bogus\"", "initial_state.alpha=3",
                                      'outputs=["nope"]', "seed=-1"])
def test_bad_config_exit_two(override):
    assert call("evolve", "--set", override)[0] == EXIT_USAGE


def test_missing_config_file(tmp_path):
    assert call("evolve", "--config", str(tmp_path / "missing.json"))[0] == EXIT_USAGE


def test_invariant_check_pass_and_values():
    code, text = call("invariant-check", "--set", "initial_state.kind=\"phi\"")
    assert code == EXIT_OK
    doc = json.loads(text)
    assert doc["pass"] is True
    by_q = {r["quantity"]: r for r in doc["reports"]}
    assert set(by_q) == {"invariant_E", "geninv", "eberly_psi", "eberly_phi"}
    assert by_q["invariant_E"]["initial_value"] == pytest.approx(0.25, abs=1e-12)
    assert by_q["invariant_E"]["max_abs_drift"] < 1e-10


def test_invariant_check_corrupted_fails():
    code, text = call("invariant-check", "--corrupt-propagator")
    assert code == EXIT_FAIL
    assert json.loads(text)["pass"] is False


def test_invariant_check_csv():
    code, text = call("invariant-check", "--format", "csv")
    assert code == EXIT_OK
    rows = dict(csv.reader(text.splitlines()))
    assert rows["pass"] == "True"


def test_oracle_check():
    code, text = call("oracle-check", "--seed", "42", "--n-cases", "200")
    assert code == EXIT_OK
    doc = json.loads(text)
    assert doc["n_cases"] == 200
    assert doc["max_amplitude_deviation"] < 1e-10
    code, text = call("oracle-check", "--n-cases", "20", "--time", "0")
    assert json.loads(text)["max_amplitude_deviation"] == 0.0
    assert call("oracle-check", "--n-cases", "0")[0] == EXIT_USAGE


def test_sudden_death_table():
    code, text = call("sudden-death", "--n-alpha", "7")
    assert code == EXIT_OK
    header, data = read_csv(text)
    assert tuple(header) == SUDDEN_DEATH_COLUMNS
    alpha, tan_a, tau, tau_d, scan = data.T
    below = alpha < math.pi / 4
    assert np.all(np.isfinite(tau[below])) and np.all(np.isnan(tau[~below]))
    assert np.all(np.isnan(scan[~below]))
    assert np.abs(scan[below] - tau[below]).max() < 1e-6
    ok = below & (tau > 0)
    assert np.allclose(np.exp(-tau_d[ok]), np.cos(tau[ok]) ** 2, atol=1e-12)


def test_sudden_death_transition_at_quarter_pi():
    code, text = call("sudden-death", "--alpha-min", "pi/4-1e-3", "--alpha-max", "pi/4",
                      "--n-alpha", "2")
    _, data = read_csv(text)
    assert np.isfinite(data[0, 2]) and np.isnan(data[1, 2])


def test_sudden_death_bad_range():
    assert call("sudden-death", "--alpha-min", "1", "--alpha-max", "0.5")[0] == EXIT_USAGE
    assert call("sudden-death", "--alpha-max", "abc")[0] == EXIT_USAGE


def test_console_script_module():
    proc = subprocess.run([sys.executable, "-m", "doublejc.cli", "evolve", "--set",
                           "n_samples=2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("# doublejc.evolve/1")
