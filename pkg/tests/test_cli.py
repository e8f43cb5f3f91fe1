"""End-to-end tests of the command-line interface: exit codes, JSON/CSV
emission, the config file format and the threads environment variable."""

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from polytorus.cli import main
from polytorus.config import Config, load_config

CLI = [sys.executable, "-m", "polytorus.cli"]


def run_cli(*args, env_extra=None):
    import os

    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, env=env, timeout=300
    )


class TestExitCodes:
    def test_certified(self):
        proc = run_cli("certify", "--p", "3.5", "--q", "inf", "--dmax", "6")
        assert proc.returncode == 0, proc.stderr
        payload = json.loads(proc.stdout)
        assert payload["status"] == "certified"
        assert payload["margin"] > 0

    def test_condition_unsatisfied(self):
        proc = run_cli("certify", "--p", "2", "--q", "2", "--dmax", "4")
        assert proc.returncode == 2
        assert json.loads(proc.stdout)["status"] == "condition-not-satisfied"

    def test_below_threshold(self):
        proc = run_cli("certify", "--p", "3.3", "--q", "inf", "--dmax", "4")
        assert proc.returncode in (2, 3)

    def test_threads_env_variable_respected(self):
        proc = run_cli(
            "certify", "--p", "3.5", "--q", "inf", "--dmax", "4",
            env_extra={"POLYTORUS_THREADS": "1"},
        )
        assert proc.returncode == 0


class TestTableAndCurve:
    def test_table_defaults_to_csv(self):
        proc = run_cli("table", "--q-list", "2,4,inf")
        assert proc.returncode == 0
        rows = list(csv.DictReader(io.StringIO(proc.stdout)))
        assert [row["q"] for row in rows] == ["2.0", "4.0", "inf"]
        assert float(rows[2]["theorem3_p"]) == pytest.approx(3.31138, abs=1e-4)
        assert rows[2]["marzo_seip_reference"] == "3.67632"
        assert rows[0]["marzo_seip_reference"] == ""

    def test_table_json(self):
        proc = run_cli("table", "--q-list", "4", "--json")
        rows = json.loads(proc.stdout)
        assert rows[0]["legacy_p"] == pytest.approx(3.0)

    def test_curve_emits_requested_steps(self):
        proc = run_cli("curve", "--qmin", "2", "--qmax", "6", "--steps", "5")
        rows = list(csv.DictReader(io.StringIO(proc.stdout)))
        assert len(rows) == 5
        ps = [float(r["critical_p"]) for r in rows]
        assert all(b >= a - 1e-9 for a, b in zip(ps, ps[1:]))


class TestConstantsCommand:
    def test_default_reports_critical_exponent(self):
        proc = run_cli("constants")
        payload = json.loads(proc.stdout)
        assert payload["p_star"] == pytest.approx(3.31138, abs=1e-5)
        assert payload["margins"]["legacy_margin_q_inf"] > 0

    def test_explicit_exponent(self):
        proc = run_cli("constants", "--p", "1")
        payload = json.loads(proc.stdout)
        assert payload["a_p"] == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-10)
        assert payload["b_p"] == 1.0


class TestNormCommand:
    def test_auto_method(self):
        proc = run_cli("norm", "--coeffs", "1,1", "--p", "1")
        payload = json.loads(proc.stdout)
        assert payload["value"] == pytest.approx(4.0 / math.pi, abs=1e-8)

    def test_complex_coefficients(self):
        proc = run_cli("norm", "--coeffs", "1+1j,2", "--p", "2")
        payload = json.loads(proc.stdout)
        assert payload["value"] == pytest.approx(math.sqrt(6.0), rel=1e-12)
        assert payload["method"] == "multinomial"

    def test_montecarlo_seeded(self):
        out = [
            json.loads(
                run_cli(
                    "norm", "--coeffs", "1,1,1,1,1", "--p", "2.5",
                    "--method", "montecarlo", "--samples", "20000", "--seed", "9",
                ).stdout
            )["value"]
            for _ in range(2)
        ]
        assert out[0] == out[1]

    def test_csv_emission(self):
        proc = run_cli("norm", "--coeffs", "1,1", "--p", "2", "--csv")
        rows = {r[0]: r[1] for r in csv.reader(io.StringIO(proc.stdout))}
        assert float(rows["value"]) == pytest.approx(math.sqrt(2.0), rel=1e-12)


class TestDualCommand:
    def test_symmetric_h1(self):
        proc = run_cli("dual", "--coeffs", "1,1", "--p", "1", "--restarts", "2")
        payload = json.loads(proc.stdout)
        target = math.pi * math.sqrt(2.0) / 4.0 * math.sqrt(2.0)  # ||phi||_2 = sqrt(2)
        assert payload["value"] == pytest.approx(target, rel=2e-3)
        assert payload["lower_certificate"] <= payload["value"] + 1e-12


class TestLiftCommand:
    def test_d1_identity(self):
        proc = run_cli("lift", "--d", "1", "--q", "2", "--grid-N", "16")
        payload = json.loads(proc.stdout)
        assert payload["projection_ok"] is True
        assert payload["norm_lhs"] == pytest.approx(1.0, rel=1e-10)

    def test_emit_coeffs(self):
        proc = run_cli(
            "lift", "--d", "2", "--q", "1.3333333333333333", "--emit-coeffs"
        )
        payload = json.loads(proc.stdout)
        table = {tuple(t["alpha"]): t["re"] for t in payload["coefficient_table"]}
        assert table[(2, -1)] == pytest.approx(1.0 / 3.0, abs=1e-6)


class TestAmplifyCommand:
    def test_series_file_round_trip(self, tmp_path):
        series = {
            "dim": 1,
            "terms": [
                {"alpha": [-1], "re": 1.0, "im": 0.0},
                {"alpha": [1], "re": 1.0, "im": 0.0},
            ],
        }
        path = tmp_path / "series.json"
        path.write_text(json.dumps(series))
        proc = run_cli("amplify", "--series-file", str(path), "--p", "2", "--q", "2")
        payload = json.loads(proc.stdout)
        assert payload["ratio"] == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-9)
        assert payload["ratio_doubled"] == pytest.approx(0.5, abs=1e-9)
        assert abs(payload["squaring_defect"]) < 1e-9


class TestConfigFile:
    def test_load_and_override(self, tmp_path):
        path = tmp_path / "polytorus.conf"
        path.write_text("grid_rtol = 1e-6\nlift_max_deg = 4  # lighter verification\n")
        config = load_config(str(path))
        assert config.grid_rtol == 1e-6
        assert config.lift_max_deg == 4
        assert config.grid_start_n == Config().grid_start_n

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text("no_such_knob = 3\n")
        with pytest.raises(ValueError, match="unknown config key"):
            load_config(str(path))

    def test_malformed_line_rejected(self, tmp_path):
        path = tmp_path / "bad.conf"
        path.write_text("grid_rtol\n")
        with pytest.raises(ValueError, match="key=value"):
            load_config(str(path))

    def test_cli_accepts_config(self, tmp_path):
        path = tmp_path / "polytorus.conf"
        path.write_text("grid_rtol = 1e-6\n")
        proc = run_cli("norm", "--coeffs", "1,1", "--p", "2", "--config", str(path))
        assert proc.returncode == 0


class TestInProcessEntryPoint:
    def test_main_returns_exit_code(self, capsys):
        code = main(["certify", "--p", "2", "--q", "2", "--dmax", "3"])
        assert code == 2
        payload = json.loads(capsys.readouterr().out)
        assert payload["status"] == "condition-not-satisfied"

    def test_infinity_serialized_in_json(self, capsys):
        code = main(["table", "--q-list", "inf", "--json"])
        assert code == 0
        rows = json.loads(capsys.readouterr().out)
        assert rows[0]["q"] == "inf"
