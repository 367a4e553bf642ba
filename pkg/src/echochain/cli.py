"""Batch command-line entry point.

Subcommands: wave | simulate | echo-report | sweep | blowup | check-coeffs,
each taking --config <toml> --out <dir> [--jobs n] [--seed n].  Parsing is
strict: unknown keys anywhere in the config are rejected, and the physical
parameters nu, c, eta (plus L and t_end) have no defaults.  All artifacts are
CSV/JSON written atomically; re-running a command with identical inputs
produces byte-identical bodies, independent of --jobs.  --seed only feeds
randomized property-test sampling harnesses; dynamics never consume it.

Exit codes: 0 success, 2 config error, 3 numerical failure, 4 check failure
(check subcommands only).
"""

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .blowup import compose_initial_data, rho_hat, sobolev_trajectory
from .diagnostics import (bootstrap_check, chain_report, coefficient_integral,
                          fit_cube_root, g_kernel_bound, g_kernel_integral,
                          norm_X, persistence_check, thresholds)
from .modes import resonant_time
from .params import (DEFAULT_THRESHOLD_FACTORS, InitSpec, ParameterError,
                     PhysicalParams, SimConfig, WeightSpec)
from .reports import atomic_write_text, csv_body, fmt, write_json_report, write_trajectory_csv
from .stepper import integrate
from .wave import (IntegrationError, fit_inviscid_exponent, solve_wave_ode,
                   verify_f_bound)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_CHECK = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# config parsing

_TOP_KEYS = {"nu", "c", "eta", "L", "t_end", "t_start", "rtol", "atol",
             "f_source", "g_forcing_per_l", "sample_times",
             "init", "weight", "wave", "echo", "sweep", "blowup", "coeffs"}
_REQUIRED = ("nu", "c", "eta", "L", "t_end")
_TABLE_KEYS = {
    "init": {"kind", "mode", "amplitude_re", "amplitude_im", "path"},
    "weight": {"kind", "N"},
    "wave": {"alpha", "k_wave", "f0", "g0", "t_count", "inviscid_alphas"},
    "echo": {"k", "bootstrap_at", "k3", "factors"},
    "sweep": {"eta_values", "k0_values", "rtol", "factors"},
    "blowup": {"sigma", "eta_values", "s_values", "margin", "factors",
               "grid_points", "rtol"},
    "coeffs": {"k", "T", "l_lo", "l_hi"},
}


@dataclass(frozen=True)
class RunConfig:
    params: PhysicalParams
    eta: float
    L: int
    t_start: float
    t_end: float
    rtol: float
    atol: float
    f_source: str
    g_forcing_per_l: bool
    sample_times: tuple
    init: InitSpec
    weight: WeightSpec
    wave: dict
    echo: dict
    sweep: dict
    blowup: dict
    coeffs: dict


def _reject_unknown(table, allowed, where):
    unknown = sorted(set(table) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(unknown)}")


def _number(table, key, where, default=None):
    if key not in table:
        if default is None:
            raise ConfigError(f"missing required key {key!r} in {where}")
        return default
    v = table[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}.{key} must be a number, got {v!r}")
    return float(v)


def load_config(path):
    """Parse and validate a TOML run configuration (strict; no silent physics)."""
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML in {path}: {exc}")

    _reject_unknown(data, _TOP_KEYS, "config")
    missing = [k for k in _REQUIRED if k not in data]
    if missing:
        raise ConfigError(f"missing required key(s): {', '.join(missing)}")
    for name, allowed in _TABLE_KEYS.items():
        if name in data:
            if not isinstance(data[name], dict):
                raise ConfigError(f"[{name}] must be a table")
            _reject_unknown(data[name], allowed, f"[{name}]")

    params = PhysicalParams(nu=_number(data, "nu", "config"),
                            c=_number(data, "c", "config"))
    L = data["L"]
    if isinstance(L, bool) or not isinstance(L, int):
        raise ConfigError(f"L must be an integer, got {L!r}")

    init_tab = data.get("init", {})
    amplitude = complex(_number(init_tab, "amplitude_re", "[init]", 1.0),
                        _number(init_tab, "amplitude_im", "[init]", 0.0))
    init = InitSpec(kind=init_tab.get("kind", "delta_theta"),
                    mode=init_tab.get("mode", 1),
                    amplitude=amplitude,
                    path=init_tab.get("path", ""))
    weight_tab = data.get("weight", {})
    weight = WeightSpec(kind=weight_tab.get("kind", "uniform"),
                        N=weight_tab.get("N", 2))

    f_source = data.get("f_source", "ode")
    sample_times = tuple(float(t) for t in data.get("sample_times", ()))
    return RunConfig(
        params=params,
        eta=_number(data, "eta", "config"),
        L=L,
        t_start=_number(data, "t_start", "config", 0.0),
        t_end=_number(data, "t_end", "config"),
        rtol=_number(data, "rtol", "config", 1e-8),
        atol=_number(data, "atol", "config", 1e-12),
        f_source=f_source,
        g_forcing_per_l=bool(data.get("g_forcing_per_l", False)),
        sample_times=sample_times,
        init=init,
        weight=weight,
        wave=data.get("wave", {}),
        echo=data.get("echo", {}),
        sweep=data.get("sweep", {}),
        blowup=data.get("blowup", {}),
        coeffs=data.get("coeffs", {}),
    )


def _sim_config(run):
    return SimConfig(eta=run.eta, L=run.L, t_start=run.t_start, t_end=run.t_end,
                     init=run.init, rtol=run.rtol, atol=run.atol,
                     f_source=run.f_source, g_forcing_per_l=run.g_forcing_per_l,
                     sample_times=run.sample_times)


def _factors(table, key="factors"):
    if key not in table:
        return DEFAULT_THRESHOLD_FACTORS
    f = table[key]
    if not isinstance(f, (list, tuple)) or len(f) != 3:
        raise ConfigError(f"{key} must be a list of three numbers")
    return tuple(float(x) for x in f)


# ---------------------------------------------------------------------------
# wave


def cmd_wave(run, outdir, jobs, seed):
    w = run.wave
    alpha = _number(w, "alpha", "[wave]", 0.0)
    k_wave = int(w.get("k_wave", 1))
    f0 = _number(w, "f0", "[wave]", 0.0)
    g0 = _number(w, "g0", "[wave]", run.params.g)
    count = int(w.get("t_count", 201))
    if count < 2:
        raise ConfigError(f"[wave].t_count must be >= 2, got {count}")
    grid = np.linspace(run.t_start, run.t_end, count)
    traj = solve_wave_ode((run.params.nu, alpha), k_wave, f0, g0, grid)

    rows = [(fmt(s.t), fmt(s.f), fmt(s.g)) for s in traj]
    atomic_write_text(os.path.join(outdir, "wave_trajectory.csv"),
                      csv_body(("t", "f", "g"), rows))

    report = {"alpha": alpha, "k_wave": k_wave, "f0": f0, "g0": g0,
              "nu": run.params.nu, "t_span": [run.t_start, run.t_end]}
    if alpha == 0.0 and g0 != 0.0 and f0 == 0.0 and k_wave == 1:
        ratio = verify_f_bound(traj, run.params, f0, g0)
        report["decay_bound_ratio"] = ratio
        report["decay_bound_ok"] = bool(ratio <= 1.0 + 1e-6)
    fits = []
    for a in w.get("inviscid_alphas", []):
        measured, predicted = fit_inviscid_exponent(float(a))
        fits.append({"alpha": float(a), "measured": measured, "predicted": predicted})
    if fits:
        report["inviscid_fits"] = fits
    write_json_report(os.path.join(outdir, "wave_report.json"), "wave-report/1", report)
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(run, outdir, jobs, seed):
    config = _sim_config(run)
    traj = integrate(config, run.params)
    write_trajectory_csv(os.path.join(outdir, "trajectory.csv"), traj)
    last = traj.samples[-1]
    write_json_report(os.path.join(outdir, "run_meta.json"), "run-meta/1", {
        "eta": run.eta, "L": run.L, "t_span": [run.t_start, run.t_end],
        "nu": run.params.nu, "c": run.params.c, "f_source": run.f_source,
        "g_forcing_per_l": run.g_forcing_per_l,
        "n_samples": len(traj.samples),
        "final_theta_norm": norm_X(last.theta, run.weight),
        "final_G_norm": norm_X(last.G, run.weight),
        "stepper": traj.meta,
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# echo-report


def cmd_echo_report(run, outdir, jobs, seed):
    config = _sim_config(run)
    traj = integrate(config, run.params)
    factors = _factors(run.echo)
    report = chain_report(traj, run.params, run.weight, factors)

    rows = [(str(r.k), fmt(r.t_k), fmt(r.gain_minus), fmt(r.gain_plus),
             fmt(r.predicted), str(r.dominant_mode), fmt(r.integral_ratio),
             r.integral_status) for r in report.records]
    atomic_write_text(os.path.join(outdir, "chain_intervals.csv"),
                      csv_body(("k", "t_k", "gain_minus", "gain_plus", "predicted",
                                "dominant_mode", "integral_ratio", "integral_status"),
                               rows))

    doc = {
        "eta": run.eta, "nu": run.params.nu, "c": run.params.c,
        "total_inflation": report.total_inflation,
        "G_inflation": report.G_inflation,
        "t_final": report.t_final,
        "thresholds": {"k0": report.thresholds.k0, "k1": report.thresholds.k1,
                       "k2": report.thresholds.k2, "k3": report.thresholds.k3,
                       "factors": list(report.thresholds.factors),
                       "all_stable": report.thresholds.all_stable},
        "records": [r.__dict__ for r in report.records],
    }
    if "k" in run.echo and "bootstrap_at" in run.echo:
        doc["bootstrap"] = bootstrap_check(traj, int(run.echo["k"]),
                                           [float(t) for t in run.echo["bootstrap_at"]])
    k3 = int(run.echo.get("k3", report.thresholds.k3))
    if k3 >= 1:
        try:
            ratio = persistence_check(traj, k3)
            doc["persistence"] = {"k3": k3, "min_ratio": ratio,
                                  "bound": math.exp(-2.0),
                                  "ok": bool(ratio >= math.exp(-2.0))}
        except (ParameterError, KeyError) as exc:
            doc["persistence"] = {"k3": k3, "skipped": str(exc)}
    write_json_report(os.path.join(outdir, "chain_report.json"), "chain-report/1", doc)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep / blowup workers


def _eta_job(payload):
    """Run one eta's echo experiment; returns (eta, psi, times, norms, failure)."""
    (gated, nu, c, eta, rtol, atol, f_source, factors, weight_kind, weight_N,
     margin, g_per_l, keep_series) = payload
    from .blowup import echo_experiment, inflation_profile

    weight = WeightSpec(kind=weight_kind, N=weight_N)
    eta = float(eta)
    if gated:
        prof = inflation_profile(c, nu, [eta], factors=factors, weight=weight,
                                 rtol=rtol, atol=atol, f_source=f_source,
                                 margin=margin, g_forcing_per_l=g_per_l)
        if eta in prof.failures:
            return (eta, None, None, None, prof.failures[eta])
        psi, traj = prof.psi[eta], prof.trajectories[eta]
    else:
        try:
            psi, traj = echo_experiment(c, nu, eta, factors=factors,
                                        weight=weight, rtol=rtol, atol=atol,
                                        f_source=f_source, margin=margin,
                                        g_forcing_per_l=g_per_l)
        except IntegrationError as exc:
            return (eta, None, None, None, str(exc))
    if not keep_series:
        return (eta, psi, None, None, None)
    norms = [norm_X(s.theta, weight) for s in traj.samples]
    return (eta, psi, traj.times.tolist(), norms, None)


def _run_eta_jobs(payloads, jobs):
    if jobs <= 1 or len(payloads) <= 1:
        results = [_eta_job(p) for p in payloads]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(payloads))) as pool:
            results = list(pool.map(_eta_job, payloads))
    return sorted(results, key=lambda r: r[0])


# ---------------------------------------------------------------------------
# sweep


def cmd_sweep(run, outdir, jobs, seed):
    s = run.sweep
    c = run.params.c
    if "eta_values" in s and "k0_values" in s:
        raise ConfigError("[sweep] takes either eta_values or k0_values, not both")
    if "eta_values" in s:
        etas = [float(e) for e in s["eta_values"]]
    elif "k0_values" in s:
        # center each eta inside the k0 plateau: k0 = floor((c eta pi)^(1/3))
        etas = [(float(k0) + 0.5) ** 3 / (c * math.pi) for k0 in s["k0_values"]]
    else:
        raise ConfigError("[sweep] requires eta_values or k0_values")
    rtol = _number(s, "rtol", "[sweep]", run.rtol)
    factors = _factors(s)

    payloads = [(False, run.params.nu, c, eta, rtol, run.atol, run.f_source,
                 factors, run.weight.kind, run.weight.N,
                 0.0, run.g_forcing_per_l, False) for eta in etas]
    results = _run_eta_jobs(payloads, jobs)

    failures = {r[0]: r[4] for r in results if r[4] is not None}
    if len(failures) > 0.2 * len(results):
        raise IntegrationError(
            f"{len(failures)}/{len(results)} sweep jobs failed: {failures}")

    points = [(c * eta, psi) for eta, psi, _, _, err in results if err is None]
    rows = [(fmt(eta), fmt(c * eta),
             fmt(psi) if err is None else "nan",
             "ok" if err is None else "failed")
            for eta, psi, _, _, err in results]
    atomic_write_text(os.path.join(outdir, "sweep_points.csv"),
                      csv_body(("eta", "c_eta", "inflation", "status"), rows))

    report = fit_cube_root(points)
    write_json_report(os.path.join(outdir, "fit_report.json"), "fit-report/1", {
        "nu": run.params.nu, "c": c, "rtol": rtol,
        "points": [{"c_eta": x, "inflation": v} for x, v in points],
        "failures": {fmt(k): v for k, v in failures.items()},
        "fits": [f.__dict__ for f in report.fits],
        "winner_exponent": report.winner,
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# blowup


def cmd_blowup(run, outdir, jobs, seed):
    b = run.blowup
    if "sigma" not in b:
        raise ConfigError("[blowup] requires sigma")
    sigma = _number(b, "sigma", "[blowup]")
    if "eta_values" not in b:
        raise ConfigError("[blowup] requires eta_values")
    etas = [float(e) for e in b["eta_values"]]
    if sorted(etas) != etas or len(set(etas)) != len(etas):
        raise ConfigError("[blowup].eta_values must be strictly increasing")
    s_values = [float(x) for x in b.get("s_values", (sigma - 1, sigma, sigma + 1))]
    margin = _number(b, "margin", "[blowup]", 0.0)
    factors = _factors(b)
    grid_points = int(b.get("grid_points", 201))
    rtol = _number(b, "rtol", "[blowup]", run.rtol)

    payloads = [(True, run.params.nu, run.params.c, eta, rtol, run.atol,
                 run.f_source, factors, run.weight.kind, run.weight.N, margin,
                 run.g_forcing_per_l, True) for eta in etas]
    results = _run_eta_jobs(payloads, jobs)
    failures = {r[0]: r[4] for r in results if r[4] is not None}
    good = [r for r in results if r[4] is None]
    if not good:
        raise IntegrationError(f"all blow-up jobs failed: {failures}")

    ok_etas = [r[0] for r in good]
    psi = {r[0]: r[1] for r in good}
    series = {r[0]: (r[2], r[3]) for r in good}
    amps = compose_initial_data(sigma, ok_etas, [psi[e] for e in ok_etas])
    amplitudes = dict(zip(ok_etas, amps))

    rows = []
    for eta in ok_etas:
        thr = thresholds(run.params.c, eta, factors)
        rows.append((fmt(eta), str(thr.k2), fmt(psi[eta]),
                     fmt(rho_hat(eta, sigma)), fmt(amplitudes[eta])))
    atomic_write_text(os.path.join(outdir, "psi_profile.csv"),
                      csv_body(("eta", "k2", "psi", "rho_hat", "amplitude"), rows))

    t_max = max(series[e][0][-1] for e in ok_etas)
    grid = np.linspace(0.0, t_max, grid_points)
    columns, ratios = {}, {}
    for s_val in s_values:
        _, ns = sobolev_trajectory(s_val, series, amplitudes, grid=grid)
        columns[s_val] = ns
        ratios[s_val] = float(ns[-1] / ns[0]) if ns[0] > 0 else math.inf
    header = ("t",) + tuple(f"N_s={s_val:g}" for s_val in s_values)
    body_rows = [(fmt(t),) + tuple(fmt(columns[s_val][i]) for s_val in s_values)
                 for i, t in enumerate(grid)]
    atomic_write_text(os.path.join(outdir, "sobolev_series.csv"),
                      csv_body(header, body_rows))

    ordered = [ratios[s_val] for s_val in sorted(s_values)]
    write_json_report(os.path.join(outdir, "blowup_report.json"), "blowup-report/1", {
        "sigma": sigma, "margin": margin, "s_values": sorted(s_values),
        "eta_values": ok_etas,
        "psi": {fmt(e): psi[e] for e in ok_etas},
        "amplitudes": {fmt(e): amplitudes[e] for e in ok_etas},
        "growth_ratios": {f"{s_val:g}": ratios[s_val] for s_val in s_values},
        "ratios_strictly_increasing": bool(all(a < b for a, b in zip(ordered, ordered[1:]))),
        "contrast_high_over_low": (ordered[-1] / ordered[0]
                                   if ordered and ordered[0] > 0 else math.inf),
        "desk_conditions": {
            fmt(e): {"nu_k3_sq": run.params.nu * thresholds(run.params.c, e, factors).k3 ** 2}
            for e in ok_etas},
        "failures": {fmt(k): v for k, v in failures.items()},
    })
    return EXIT_OK


# ---------------------------------------------------------------------------
# check-coeffs


def cmd_check_coeffs(run, outdir, jobs, seed):
    cfg = run.coeffs
    if "k" not in cfg:
        raise ConfigError("[coeffs] requires k")
    k = int(cfg["k"])
    if k < 1:
        raise ConfigError(f"[coeffs].k must be >= 1, got {k}")
    eta, c = run.eta, run.params.c
    tk = resonant_time(eta, k)
    T = _number(cfg, "T", "[coeffs]", resonant_time(eta, k - 1))
    if not T > tk:
        raise ConfigError(f"[coeffs].T must exceed t_k = {tk:.6g}")
    l_lo = int(cfg.get("l_lo", max(1, k - 3)))
    l_hi = int(cfg.get("l_hi", k + 3))
    if not 1 <= l_lo <= l_hi:
        raise ConfigError(f"invalid mode range [{l_lo}, {l_hi}]")

    ratio = eta / k ** 2
    rows = []

    def add(family, l, branch, value, bound, tol=0.0):
        slack = bound - value
        status = "pass" if value <= bound + tol else "fail"
        rows.append((family, str(l), branch, str(k),
                     fmt(value), fmt(bound), fmt(slack), status))

    # Golden full-line values: amplitude-normalized Lorentzian^2 -> pi/2, Lorentzian -> pi.
    amp = c * eta / k ** 3
    for kind, ref in (("c", math.pi / 2.0), ("d", math.pi)):
        val = coefficient_integral(k + 1, "minus", -math.inf, math.inf, c, eta,
                                   tol=1e-10, kind=kind) / amp
        slack = abs(val - ref)
        rows.append((f"golden_lorentzian_{kind}", str(k + 1), "minus", str(k),
                     fmt(val), fmt(ref), fmt(slack),
                     "pass" if slack <= 1e-8 else "fail"))

    # Resonant theta coefficients over I_k vs their full-line values.
    for l, branch in ((k - 1, "plus"), (k + 1, "minus")):
        if l < 1:
            continue
        for kind, full in (("c", amp * math.pi / 2.0), ("d", amp * math.pi)):
            val = coefficient_integral(l, branch, tk, T, c, eta, tol=1e-12, kind=kind)
            add(f"resonant_{kind}", l, branch, val, full)

    # Non-resonant theta coefficients over I_k vs the 4c/k bounds.
    for l in range(l_lo, l_hi + 1):
        for branch in ("plus", "minus"):
            m = l + 1 if branch == "plus" else l - 1
            if m == 0 or m == k:
                continue
            val_c = coefficient_integral(l, branch, tk, T, c, eta, tol=1e-14, kind="c")
            add("nonresonant_c", l, branch, val_c, 4.0 * c / k * ratio ** -2)
            val_d = coefficient_integral(l, branch, tk, T, c, eta, tol=1e-14, kind="d")
            add("nonresonant_d", l, branch, val_d, 4.0 * c / k)

    # G-equation Duhamel kernels vs the printed bound table.
    for l in range(l_lo, l_hi + 1):
        kind = "theta_res" if l == k else "theta_nonres"
        val = g_kernel_integral(kind, l, k, T, run.params, eta)
        add(kind, l, "", val, g_kernel_bound(kind, l, k, c, eta))
        for branch in ("plus", "minus"):
            m = l + 1 if branch == "plus" else l - 1
            if m == 0:
                continue
            for fam in ("f_c", "f_d", "c_lor", "d_lor"):
                val = g_kernel_integral(fam, l, k, T, run.params, eta, branch=branch)
                add(fam, l, branch, val, g_kernel_bound(fam, l, k, c, eta, branch=branch))

    atomic_write_text(os.path.join(outdir, "coefficient_table.csv"),
                      csv_body(("family", "l", "branch", "k", "value", "bound",
                                "slack", "status"), rows))
    n_fail = sum(1 for r in rows if r[-1] == "fail")
    write_json_report(os.path.join(outdir, "coeffs_report.json"), "coeffs-report/1", {
        "k": k, "T": T, "eta": eta, "c": c, "nu": run.params.nu,
        "mode_range": [l_lo, l_hi],
        "n_rows": len(rows), "n_fail": n_fail,
        "failed_rows": [r[0] + ":l=" + r[1] + (":" + r[2] if r[2] else "")
                        for r in rows if r[-1] == "fail"],
    })
    return EXIT_CHECK if n_fail else EXIT_OK


# ---------------------------------------------------------------------------
# entry point

_DISPATCH = {
    "wave": cmd_wave,
    "simulate": cmd_simulate,
    "echo-report": cmd_echo_report,
    "sweep": cmd_sweep,
    "blowup": cmd_blowup,
    "check-coeffs": cmd_check_coeffs,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="echochain",
        description="Echo-chain mode system runner (CSV/JSON artifacts only).")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("wave", "integrate the wave amplitude ODE and check its decay bound"),
            ("simulate", "integrate the mode system and dump the trajectory"),
            ("echo-report", "per-interval echo gains, bootstrap and persistence checks"),
            ("sweep", "inflation vs c*eta across an eta grid, with scaling fits"),
            ("blowup", "compose multi-eta data and track Sobolev norms in eta"),
            ("check-coeffs", "tabulate coefficient integrals against printed bounds")):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", required=True, help="TOML run configuration")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--jobs", type=int, default=1,
                        help="worker processes for per-eta jobs")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized property-test sampling only")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        run = load_config(args.config)
        os.makedirs(args.out, exist_ok=True)
        return _DISPATCH[args.command](run, args.out, args.jobs, args.seed)
    except (ConfigError, ParameterError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrationError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
