import json

import numpy as np
import pytest

from echochain.cli import ConfigError, load_config, main

BASE = """
nu = 0.5
c = 0.001
eta = 40.0
L = 6
t_end = 50.0
rtol = 1e-6
"""


def write_config(tmp_path, text, name="run.toml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestLoadConfig:
    def test_defaults(self, tmp_path):
        run = load_config(write_config(tmp_path, BASE))
        assert run.params.nu == 0.5 and run.params.c == 0.001
        assert run.params.g == 2.0 * 0.001 * 0.5
        assert run.t_start == 0.0 and run.rtol == 1e-6
        assert run.init.kind == "delta_theta" and run.init.mode == 1
        assert run.weight.kind == "uniform"
        assert run.f_source == "ode"

    @pytest.mark.parametrize("text", [
        BASE + "frobnicate = 1\n",
        BASE + "[init]\nkine = 'delta_theta'\n",
        BASE.replace("eta = 40.0\n", ""),
        BASE.replace("L = 6", "L = 6.5"),
        BASE.replace("L = 6", "L = true"),
        BASE.replace("nu = 0.5", "nu = 'thick'"),
        BASE + "nu = \n",            # TOML syntax error
        BASE + "[sweep]\neta_values = [1.0]\nk0_values = [2]\n"
               "[blowup]\nsigma = 1.0\n",   # only caught at dispatch, still loads
    ])
    def test_rejections(self, tmp_path, text):
        path = write_config(tmp_path, text)
        if "eta_values" in text:   # both grids: load passes, sweep refuses
            assert main(["sweep", "--config", path, "--out", str(tmp_path)]) == 2
        else:
            with pytest.raises(ConfigError):
                load_config(path)

    def test_missing_file_exits_config_code(self, tmp_path):
        assert main(["simulate", "--config", str(tmp_path / "absent.toml"),
                     "--out", str(tmp_path)]) == 2


class TestSimulate:
    def test_artifacts_and_determinism(self, tmp_path):
        cfg = write_config(tmp_path, BASE + "sample_times = [3.0, 12.5, 44.0]\n")
        out = tmp_path / "out"
        assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
        csv_text = (out / "trajectory.csv").read_text()
        assert csv_text.splitlines()[0] == "t,l,theta_re,theta_im,G_re,G_im"
        meta = json.loads((out / "run_meta.json").read_text())
        assert meta["schema"] == "run-meta/1"
        assert meta["final_theta_norm"] > 0
        assert meta["stepper"]["accepted"] > 0

        # JSON is emitted with sorted keys and no volatile fields, so a rerun
        # must reproduce both artifacts byte for byte
        assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
        assert (out / "trajectory.csv").read_text() == csv_text
        assert json.loads((out / "run_meta.json").read_text()) == meta

    def test_zero_file_init_yields_zero_trajectory(self, tmp_path):
        init_path = tmp_path / "zero.npz"
        np.savez(init_path, theta=np.zeros(6, dtype=complex),
                 G=np.zeros(6, dtype=complex))
        cfg = write_config(tmp_path, BASE + (
            "[init]\nkind = 'file'\npath = '%s'\n" % init_path))
        out = tmp_path / "out"
        assert main(["simulate", "--config", cfg, "--out", str(out)]) == 0
        body = [line.split(",") for line
                in (out / "trajectory.csv").read_text().splitlines()[1:]]
        values = np.array([[float(x) for x in row[2:]] for row in body])
        assert np.all(values == 0.0)

    def test_tail_heavy_init_exits_numeric_code(self, tmp_path):
        init_path = tmp_path / "tail.npz"
        theta = np.zeros(6, dtype=complex)
        theta[-1] = 1.0
        np.savez(init_path, theta=theta, G=np.zeros(6, dtype=complex))
        cfg = write_config(tmp_path, BASE + (
            "[init]\nkind = 'file'\npath = '%s'\n" % init_path))
        assert main(["simulate", "--config", cfg, "--out", str(tmp_path)]) == 3


class TestWave:
    def test_decay_bound_report(self, tmp_path):
        cfg = write_config(tmp_path, BASE + (
            "[wave]\nalpha = 0.0\nf0 = 0.0\ng0 = 1.0\nt_count = 101\n"
            "inviscid_alphas = [0.25]\n"))
        out = tmp_path / "out"
        assert main(["wave", "--config", cfg, "--out", str(out)]) == 0
        lines = (out / "wave_trajectory.csv").read_text().splitlines()
        assert lines[0] == "t,f,g" and len(lines) == 102
        rep = json.loads((out / "wave_report.json").read_text())
        assert rep["schema"] == "wave-report/1"
        assert rep["decay_bound_ok"] and rep["decay_bound_ratio"] <= 1.0 + 1e-6
        fit = rep["inviscid_fits"][0]
        assert fit["predicted"] == 0.5
        assert abs(fit["measured"] - fit["predicted"]) < 0.05


class TestEchoReport:
    def test_small_run_artifacts(self, tmp_path):
        cfg = write_config(tmp_path, BASE + "[echo]\nk3 = 1\n")
        out = tmp_path / "out"
        assert main(["echo-report", "--config", cfg, "--out", str(out)]) == 0
        lines = (out / "chain_intervals.csv").read_text().splitlines()
        assert lines[0].startswith("k,t_k,gain_minus")
        rep = json.loads((out / "chain_report.json").read_text())
        assert rep["schema"] == "chain-report/1"
        # c*eta*pi < 1 here: no resonant interval qualifies
        assert rep["records"] == [] and rep["thresholds"]["all_stable"]
        assert "persistence" in rep


class TestSweep:
    def test_five_point_sweep(self, tmp_path):
        cfg = write_config(tmp_path, BASE + (
            "[sweep]\neta_values = [40.0, 80.0, 160.0, 320.0, 640.0]\n"
            "rtol = 1e-5\n"))
        out = tmp_path / "out"
        assert main(["sweep", "--config", cfg, "--out", str(out)]) == 0
        lines = (out / "sweep_points.csv").read_text().splitlines()
        assert lines[0] == "eta,c_eta,inflation,status"
        assert len(lines) == 6 and all(l.endswith(",ok") for l in lines[1:])
        rep = json.loads((out / "fit_report.json").read_text())
        assert rep["schema"] == "fit-report/1"
        assert len(rep["points"]) == 5 and len(rep["fits"]) == 3

    def test_too_few_points_is_config_error(self, tmp_path):
        cfg = write_config(tmp_path, BASE + "[sweep]\neta_values = [40.0, 80.0]\n"
                                            "rtol = 1e-5\n")
        assert main(["sweep", "--config", cfg, "--out", str(tmp_path)]) == 2

    def test_grid_required(self, tmp_path):
        cfg = write_config(tmp_path, BASE + "[sweep]\nrtol = 1e-5\n")
        assert main(["sweep", "--config", cfg, "--out", str(tmp_path)]) == 2


class TestBlowup:
    C0 = BASE.replace("c = 0.001", "c = 0.0") + (
        "[blowup]\nsigma = 1.0\neta_values = [50.0, 100.0, 200.0]\n"
        "grid_points = 41\n")

    def test_artifacts_and_worker_independence(self, tmp_path):
        cfg = write_config(tmp_path, self.C0)
        out1, out2 = tmp_path / "serial", tmp_path / "pool"
        assert main(["blowup", "--config", cfg, "--out", str(out1)]) == 0
        assert main(["blowup", "--config", cfg, "--out", str(out2),
                     "--jobs", "2"]) == 0
        for name in ("psi_profile.csv", "sobolev_series.csv", "blowup_report.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
        lines = (out1 / "psi_profile.csv").read_text().splitlines()
        assert lines[0] == "eta,k2,psi,rho_hat,amplitude" and len(lines) == 4
        rep = json.loads((out1 / "blowup_report.json").read_text())
        # uncoupled runs freeze theta: psi = 1 and all growth ratios are 1
        assert all(v == 1.0 for v in rep["psi"].values())
        assert all(v == 1.0 for v in rep["growth_ratios"].values())
        series = (out1 / "sobolev_series.csv").read_text().splitlines()
        assert series[0] == "t,N_s=0,N_s=1,N_s=2" and len(series) == 42

    def test_all_gated_is_numeric_failure(self, tmp_path):
        cfg = write_config(tmp_path, BASE + (
            "[blowup]\nsigma = 1.0\neta_values = [50.0, 100.0]\n"))
        assert main(["blowup", "--config", cfg, "--out", str(tmp_path)]) == 3

    def test_requires_sigma_and_sorted_grid(self, tmp_path):
        cfg = write_config(tmp_path, BASE + "[blowup]\neta_values = [50.0]\n")
        assert main(["blowup", "--config", cfg, "--out", str(tmp_path)]) == 2
        cfg = write_config(tmp_path, BASE + (
            "[blowup]\nsigma = 1.0\neta_values = [100.0, 50.0]\n"), name="b.toml")
        assert main(["blowup", "--config", cfg, "--out", str(tmp_path)]) == 2


class TestCheckCoeffs:
    def test_trimmed_range_passes(self, tmp_path):
        text = BASE.replace("eta = 40.0", "eta = 40000.0") + (
            "[coeffs]\nk = 5\nl_lo = 4\nl_hi = 6\n")
        cfg = write_config(tmp_path, text)
        out = tmp_path / "out"
        assert main(["check-coeffs", "--config", cfg, "--out", str(out)]) == 0
        rep = json.loads((out / "coeffs_report.json").read_text())
        assert rep["schema"] == "coeffs-report/1"
        assert rep["n_fail"] == 0 and rep["n_rows"] > 20

    def test_small_k_violations_exit_check_code(self, tmp_path):
        # at k = 2 the asymptotic constants in the printed nonresonant and
        # forcing bounds are genuinely too small; the table must say so
        text = BASE.replace("eta = 40.0", "eta = 2000.0") + "[coeffs]\nk = 2\n"
        cfg = write_config(tmp_path, text)
        out = tmp_path / "out"
        assert main(["check-coeffs", "--config", cfg, "--out", str(out)]) == 4
        table = (out / "coefficient_table.csv").read_text().splitlines()
        assert table[0] == "family,l,branch,k,value,bound,slack,status"
        statuses = {line.rsplit(",", 1)[-1] for line in table[1:]}
        assert statuses == {"pass", "fail"}
        rep = json.loads((out / "coeffs_report.json").read_text())
        assert rep["n_fail"] == len(rep["failed_rows"]) > 0
