"""Multi-frequency initial data assembly for the norm-inflation construction.

Each frequency eta runs its own echo chain (delta data at mode k2(eta), span
[0, 2 eta (1 + margin)]); the measured inflation factors psi(eta) then
normalize a density rho_hat(eta) = (1+eta)^(-sigma-1/2) / log(2+eta), chosen
as the mildest profile lying in H^sigma but in no H^s with s > sigma.  The
composed field's Sobolev-in-eta norms

    N_s(t) = sqrt( sum_eta (1+eta^2)^s a(eta)^2 ||theta[eta](t)||_X^2 )

then grow with s: echo growth concentrates at high eta.  Divergence is only
ever demonstrated as a finite-grid trend across s, never claimed as a limit.
"""

import math
from dataclasses import dataclass

import numpy as np

from .diagnostics import norm_X, thresholds
from .params import (DEFAULT_THRESHOLD_FACTORS, InitSpec, ParameterError,
                     SimConfig, WeightSpec)
from .stepper import integrate
from .wave import IntegrationError


@dataclass(frozen=True)
class BlowupSpec:
    """Composed-experiment record: target index, frequency grid, per-eta factors."""

    sigma: float
    eta_set: tuple
    psi: tuple
    rho_hat: tuple

    def __post_init__(self):
        etas = np.asarray(self.eta_set, dtype=float)
        if etas.size == 0:
            raise ParameterError("eta_set must be nonempty")
        if np.any(etas <= 0) or np.any(np.diff(etas) <= 0):
            raise ParameterError("eta_set must be positive and strictly increasing")
        if len(self.psi) != etas.size or len(self.rho_hat) != etas.size:
            raise ParameterError("psi and rho_hat must align with eta_set")
        if any(p < 1.0 for p in self.psi):
            raise ParameterError("inflation factors psi must be >= 1")
        if any(r <= 0.0 for r in self.rho_hat):
            raise ParameterError("rho_hat amplitudes must be positive")


def rho_hat(eta, sigma):
    """(1+eta)^(-sigma-1/2) / log(2+eta): in H^sigma, outside every H^s, s > sigma."""
    eta = np.asarray(eta, dtype=float)
    out = (1.0 + eta) ** (-sigma - 0.5) / np.log(2.0 + eta)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class InflationProfile:
    """Per-eta inflation factors with their trajectories and any failures."""

    psi: dict            # eta -> ||theta(t_end)||_X
    trajectories: dict   # eta -> Trajectory (successful runs only)
    failures: dict       # eta -> reason string
    margin: float        # t_end = 2 eta (1 + margin)


def echo_experiment(c, nu, eta, factors=DEFAULT_THRESHOLD_FACTORS,
                    weight=WeightSpec(), rtol=1e-6, atol=1e-12,
                    f_source="ode", margin=0.0, L=None, sample_count=41,
                    g_forcing_per_l=False):
    """Single-eta echo run: theta-delta at k2(eta), span [0, 2 eta (1+margin)].

    Returns (psi, trajectory) with psi = ||theta(t_end)||_X.  No regime gating;
    callers that need the resonant/viscosity preconditions check them first.
    """
    from .params import PhysicalParams

    eta = float(eta)
    params = PhysicalParams(nu=nu, c=c)
    thr = thresholds(c, eta, factors)
    t_end = 2.0 * eta * (1.0 + margin)
    mode = max(thr.k2, 1)
    # floor of mode + 3: below the resonant regime the budget term vanishes
    # and the second neighbor still picks up ~1e-8 of the norm, which is
    # exactly where the truncation guard fires
    L_eta = L if L is not None else max(
        int(math.ceil(4.0 * max(c * eta * math.pi, 0.0) ** (1.0 / 3.0))), mode + 3)
    config = SimConfig(
        eta=eta, L=L_eta, t_start=0.0, t_end=t_end,
        init=InitSpec(kind="delta_theta", mode=mode),
        rtol=rtol, atol=atol, f_source=f_source,
        g_forcing_per_l=g_forcing_per_l,
        sample_times=tuple(np.linspace(0.0, t_end, sample_count)[1:-1]))
    traj = integrate(config, params)
    return norm_X(traj.samples[-1].theta, weight), traj


def inflation_profile(c, nu, eta_set, factors=DEFAULT_THRESHOLD_FACTORS,
                      weight=WeightSpec(), rtol=1e-6, atol=1e-12,
                      f_source="ode", margin=0.0, L=None, sample_count=41,
                      g_forcing_per_l=False):
    """Run the single-mode echo experiment for every eta in eta_set.

    Initial data is a theta-delta at k2(eta); psi(eta) = ||theta(t_end)||_X at
    t_end = 2 eta (1 + margin).  Each eta must sit in the resonant regime
    (c*eta*pi >= 1) and satisfy the desk-scale viscosity condition
    nu*k3(eta)^2 >= 4; violations and integration failures are recorded per
    eta rather than aborting the sweep.
    """
    psi, trajs, failures = {}, {}, {}
    for eta in eta_set:
        eta = float(eta)
        thr = thresholds(c, eta, factors)
        # c = 0 is exempt from the regime gates: the couplings vanish, theta
        # is frozen, and psi = 1 exactly (degenerate but well defined).
        if c != 0.0:
            if thr.all_stable:
                failures[eta] = f"c*eta*pi = {c * eta * math.pi:.3g} < 1: below resonant regime"
                continue
            if nu * thr.k3 ** 2 < 4.0:
                failures[eta] = (f"nu*k3^2 = {nu * thr.k3 ** 2:.3g} < 4: "
                                 "echo lower bound not usable at desk scale")
                continue
        try:
            psi[eta], trajs[eta] = echo_experiment(
                c, nu, eta, factors=factors, weight=weight, rtol=rtol,
                atol=atol, f_source=f_source, margin=margin, L=L,
                sample_count=sample_count, g_forcing_per_l=g_forcing_per_l)
        except IntegrationError as exc:
            failures[eta] = str(exc)
    return InflationProfile(psi=psi, trajectories=trajs, failures=failures,
                            margin=margin)


def compose_initial_data(sigma, eta_set, psi):
    """Amplitudes a(eta) = rho_hat(eta, sigma) / psi(eta), aligned with eta_set."""
    etas = np.asarray(eta_set, dtype=float)
    p = np.array([psi[e] if isinstance(psi, dict) else psi[i]
                  for i, e in enumerate(etas)], dtype=float)
    if np.any(p <= 0):
        raise ParameterError("psi factors must be positive")
    return rho_hat(etas, sigma) / p


def _norm_series(traj_or_series, weight):
    if hasattr(traj_or_series, "samples"):
        traj = traj_or_series
        return traj.times, np.array([norm_X(st.theta, weight) for st in traj.samples])
    times, norms = traj_or_series
    return np.asarray(times, dtype=float), np.asarray(norms, dtype=float)


def sobolev_trajectory(s, trajectories, amplitudes, grid=None, weight=WeightSpec()):
    """Time series of N_s(t) over a common grid.

    trajectories maps eta -> Trajectory (or a precomputed (times, X-norms)
    pair); amplitudes maps eta -> a(eta).  Each per-eta norm series is
    linearly interpolated onto the grid and held at its final value past the
    trajectory's own end (justified by the post-2eta freeze).  Default grid:
    201 uniform points spanning [0, max t_end].  Returns (grid, N_s values).
    """
    if not trajectories:
        raise ParameterError("empty eta set")
    etas = sorted(trajectories)
    series = {e: _norm_series(trajectories[e], weight) for e in etas}
    if grid is None:
        t_max = max(series[e][0][-1] for e in etas)
        grid = np.linspace(0.0, t_max, 201)
    else:
        grid = np.asarray(grid, dtype=float)
    total = np.zeros_like(grid)
    for eta in etas:
        times, norms = series[eta]
        a = amplitudes[eta]
        resampled = np.interp(grid, times, norms)
        total += (1.0 + eta * eta) ** s * a * a * resampled ** 2
    return grid, np.sqrt(total)
