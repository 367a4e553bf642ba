"""Adaptive integrating-factor time stepping for the mode system.

The stiff part of the system is the diagonal decay of the good unknowns G_l;
its exact propagator exp(-dissipation_exponent(l, t0, t1, nu, eta)) multiplies
the G rows while the theta rows carry none.  The remaining coupling terms are
advanced with the embedded Bogacki-Shampine 3(2) pair (first-same-as-last
stage reused across accepted steps), so pure decay (c = 0) is reproduced to
rounding and the scheme never evaluates a growing exponential.

Steps are capped near the resonant cores t ~ eta/k (k = 1..L): within
distance 5 of a core the cap is 0.05 * (1 + |t - eta/k|), elsewhere
max(10, 0.5 * eta / L^2), and a step taken outside a core zone never jumps
into one -- it lands on the zone edge instead.  Requested sample times, the
resonant times t_k inside the span, and both endpoints are always hit
exactly and recorded as samples.
"""

import math
from dataclasses import dataclass

import numpy as np

from .modes import dissipation_exponent, get_workspace, resonant_time
from .params import ModeState, ParameterError, initial_state
from .wave import IntegrationError, WaveState, f_amplitude_factory

_SAFETY = 0.9
_GROW = 5.0
_SHRINK = 0.2
_ZONE_RADIUS = 5.0


class TruncationError(IntegrationError):
    """Raised when the largest retained mode carries non-negligible mass."""


@dataclass
class Trajectory:
    """Sampled solution of one (eta, L) mode-system run.

    samples and wave are aligned lists of ModeState / WaveState at strictly
    increasing times; every resonant time t_k falling inside the sampled span
    is guaranteed to be one of the sample times.
    """

    config: object
    params: object
    samples: list
    wave: list
    meta: dict

    def __post_init__(self):
        ts = np.array([s.t for s in self.samples], dtype=float)
        if ts.size == 0:
            raise ParameterError("trajectory must contain at least one sample")
        if np.any(np.diff(ts) <= 0.0):
            raise ParameterError("trajectory sample times must be strictly increasing")
        if len(self.wave) != len(self.samples):
            raise ParameterError("wave samples must align with mode samples")
        for k in range(self.config.L + 1):
            tk = resonant_time(self.config.eta, k)
            if ts[0] < tk < ts[-1] and np.min(np.abs(ts - tk)) > 1e-9 * max(1.0, tk):
                raise ParameterError(f"resonant time t_{k} = {tk:.6g} is not a sample")
        self._times = ts

    @property
    def times(self):
        return self._times

    def sample_index(self, t):
        i = int(np.argmin(np.abs(self._times - t)))
        if abs(self._times[i] - t) > 1e-9 * max(1.0, abs(t)):
            raise KeyError(f"no sample at t = {t!r}")
        return i

    def state_at(self, t):
        return self.samples[self.sample_index(t)]

    def theta_matrix(self):
        """(n_samples, L) complex array of theta rows."""
        return np.array([s.theta for s in self.samples])

    def G_matrix(self):
        return np.array([s.G for s in self.samples])


def _nearest_core(t, eta, L):
    """(distance to nearest core eta/k, k <= L; position of next core >= t or None)."""
    if t <= eta / L:
        return eta / L - t, eta / L
    if t >= eta:
        return t - eta, None
    k = math.floor(eta / t)  # eta/(k+1) < t <= eta/k with 1 <= k <= L-1
    hi = eta / k
    lo = eta / (k + 1)
    return min(hi - t, t - lo), hi


def _step_cap(t, eta, L):
    """(step cap at t, distance allowed before entering the next core zone or None)."""
    d, ahead = _nearest_core(t, eta, L)
    if d <= _ZONE_RADIUS + 1e-9 * (1.0 + abs(t)):
        return 0.05 * (1.0 + d), None
    far = max(10.0, 0.5 * eta / (L * L))
    limit = None if ahead is None else ahead - _ZONE_RADIUS - t
    return far, limit


class _Engine:
    """BS23 integrating-factor stepper bound to one workspace and f(t)."""

    def __init__(self, ws, f_of_t, rtol, atol):
        self.ws = ws
        self.f = f_of_t
        self.rtol = rtol
        self.atol = atol
        self.stats = {"accepted": 0, "rejected": 0, "rhs_evals": 0,
                      "min_step": math.inf, "max_step": 0.0}
        self._n1 = None  # FSAL cache: (t, dtheta, dG)
        self._last_err = math.nan

    def _rhs(self, t, theta, G):
        self.stats["rhs_evals"] += 1
        return self.ws.nonstiff(t, theta, G, self.f(t))

    def _decay(self, ta, tb):
        return np.exp(-dissipation_exponent(self.ws.l, ta, tb, self.ws.nu, self.ws.eta))

    def try_step(self, t0, theta0, G0, h, t1=None):
        """One embedded step; returns (accepted, theta1, G1, step factor)."""
        if t1 is None:
            t1 = t0 + h
        if self._n1 is None or self._n1[0] != t0:
            self._n1 = (t0, *self._rhs(t0, theta0, G0))
        _, k1t, k1g = self._n1
        ta = t0 + 0.5 * h
        tb = t0 + 0.75 * h
        theta_a = theta0 + (0.5 * h) * k1t
        G_a = self._decay(t0, ta) * (G0 + (0.5 * h) * k1g)
        k2t, k2g = self._rhs(ta, theta_a, G_a)
        phi_ab = self._decay(ta, tb)
        theta_b = theta0 + (0.75 * h) * k2t
        G_b = self._decay(t0, tb) * G0 + (0.75 * h) * phi_ab * k2g
        k3t, k3g = self._rhs(tb, theta_b, G_b)
        phi_01 = self._decay(t0, t1)
        phi_a1 = self._decay(ta, t1)
        phi_b1 = self._decay(tb, t1)
        theta1 = theta0 + h * ((2.0 / 9.0) * k1t + (1.0 / 3.0) * k2t + (4.0 / 9.0) * k3t)
        G1 = phi_01 * G0 + h * ((2.0 / 9.0) * phi_01 * k1g
                                + (1.0 / 3.0) * phi_a1 * k2g
                                + (4.0 / 9.0) * phi_b1 * k3g)
        k4t, k4g = self._rhs(t1, theta1, G1)
        err_t = (-5.0 / 72.0) * k1t + (1.0 / 12.0) * k2t + (1.0 / 9.0) * k3t - 0.125 * k4t
        err_g = ((-5.0 / 72.0) * phi_01 * k1g + (1.0 / 12.0) * phi_a1 * k2g
                 + (1.0 / 9.0) * phi_b1 * k3g - 0.125 * k4g)
        err = h * math.sqrt(np.vdot(err_t, err_t).real + np.vdot(err_g, err_g).real)
        self._last_err = err
        state_norm = math.sqrt(np.vdot(theta0, theta0).real + np.vdot(G0, G0).real)
        scale = max(self.rtol * state_norm, self.atol)
        if err <= scale:
            fac = _GROW if err == 0.0 else min(_GROW, max(_SHRINK, _SAFETY * (scale / err) ** (1.0 / 3.0)))
            self._n1 = (t1, k4t, k4g)
            self.stats["accepted"] += 1
            self.stats["min_step"] = min(self.stats["min_step"], h)
            self.stats["max_step"] = max(self.stats["max_step"], h)
            return True, theta1, G1, fac
        self.stats["rejected"] += 1
        return False, None, None, max(_SHRINK, _SAFETY * (scale / err) ** (1.0 / 3.0))

    def advance(self, t, theta, G, target, h):
        """Step from t to target exactly, honoring caps and zone edges."""
        eta, L = self.ws.eta, self.ws.L
        while t < target:
            remaining = target - t
            cap, limit = _step_cap(t, eta, L)
            h_try = min(h, cap, remaining)
            if limit is not None and h_try > limit:
                h_try = limit
            h_min = 1e-12 * max(1.0, abs(t))
            # A sliver forced by an exact landing target or a zone edge is
            # fine at any size; only controller-driven h counts as underflow.
            forced = h_try == remaining or (limit is not None and h_try == limit)
            if h_try < h_min and not forced:
                raise IntegrationError(
                    f"step size underflow at t = {t:.9g}: h = {h_try:.3g} < {h_min:.3g} "
                    f"(last error estimate {self._last_err:.3g})")
            t1 = target if h_try == remaining else None
            ok, theta1, G1, fac = self.try_step(t, theta, G, h_try, t1)
            if ok:
                t = target if t1 is not None else t + h_try
                theta, G = theta1, G1
            if ok and h_try < h:
                # Step was clipped by a cap/edge/landing, not by accuracy:
                # don't let the clip erode the controller's working h.
                h = max(h, h_try * fac) if fac >= 1.0 else h_try * fac
            else:
                h = h_try * fac
        return t, theta, G, h


def _mandatory_times(config):
    """Sorted sample targets: endpoints, requested times, resonant times in span."""
    pts = [config.t_start, config.t_end]
    pts.extend(config.sample_times)
    for k in range(config.L + 1):
        tk = resonant_time(config.eta, k)
        if config.t_start < tk < config.t_end:
            pts.append(tk)
    pts.sort()
    out = [pts[0]]
    for p in pts[1:]:
        if p - out[-1] > 1e-9 * max(1.0, abs(p)):
            out.append(p)
    out[-1] = config.t_end
    return out


def _check_truncation(t, theta, G):
    norm = math.sqrt(np.vdot(theta, theta).real + np.vdot(G, G).real)
    tail = max(abs(theta[-1]), abs(G[-1]))
    if tail > 1e-8 * norm:
        raise TruncationError(
            f"highest retained mode carries |theta_L|, |G_L| up to {tail:.3g} "
            f"(>1e-8 of state norm {norm:.3g}) at t = {t:.9g}; increase L")


def step_etd(state, t0, t1, f_source, params, eta, rtol=1e-8, atol=1e-12,
             g_forcing_per_l=False):
    """Advance a ModeState from t0 to t1, sub-stepping adaptively as needed.

    f_source is one of the configuration strings ("ode", "decay_bound",
    "zero") or a callable t -> f(t).
    """
    if not t1 > t0:
        raise ParameterError(f"need t1 > t0, got [{t0}, {t1}]")
    if abs(state.t - t0) > 1e-9 * max(1.0, abs(t0)):
        raise ParameterError(f"state is at t = {state.t}, step starts at t0 = {t0}")
    f_of_t = f_source if callable(f_source) else f_amplitude_factory(params, f_source, t1)
    ws = get_workspace(params, eta, state.L, g_forcing_per_l)
    engine = _Engine(ws, f_of_t, rtol, atol)
    cap, _ = _step_cap(t0, eta, state.L)
    _, theta, G, _ = engine.advance(t0, state.theta.copy(), state.G.copy(), t1,
                                    min(t1 - t0, cap))
    return ModeState(t1, theta, G)


def load_initial_state(path, L, t):
    """Load initial (theta, G) from an .npz archive with arrays 'theta' and 'G'."""
    with np.load(path) as data:
        if "theta" not in data or "G" not in data:
            raise ParameterError(f"initial-data file {path!r} must contain arrays 'theta' and 'G'")
        theta = np.asarray(data["theta"], dtype=complex)
        G = np.asarray(data["G"], dtype=complex)
    if theta.shape != (L,) or G.shape != (L,):
        raise ParameterError(
            f"initial-data arrays must have shape ({L},), got {theta.shape} and {G.shape}")
    return ModeState(t, theta, G)


def integrate(config, params, init=None):
    """Integrate the mode system over [t_start, t_end] and sample it.

    Returns a Trajectory whose samples are the requested sample_times plus
    every resonant time t_k inside the span and both endpoints.  Raises
    TruncationError if at any sample the highest retained mode carries more
    than 1e-8 of the state norm.
    """
    from .params import check_mode_budget

    check_mode_budget(config, params)
    L, eta = config.L, config.eta
    if init is None:
        if config.init.kind == "file":
            init = load_initial_state(config.init.path, L, config.t_start)
        else:
            init = initial_state(config.init, L, config.t_start)
    if init.L != L:
        raise ParameterError(f"initial state has {init.L} modes, config.L = {L}")
    if abs(init.t - config.t_start) > 1e-9 * max(1.0, abs(config.t_start)):
        raise ParameterError(f"initial state at t = {init.t}, span starts at {config.t_start}")

    f_of_t = f_amplitude_factory(params, config.f_source, config.t_end)
    ws = get_workspace(params, eta, L, config.g_forcing_per_l)
    engine = _Engine(ws, f_of_t, config.rtol, config.atol)
    targets = _mandatory_times(config)

    theta, G = init.theta.copy(), init.G.copy()
    samples, wave = [], []

    def record(t):
        _check_truncation(t, theta, G)
        samples.append(ModeState(t, theta.copy(), G.copy()))
        wave.append(WaveState(t=t, f=f_of_t(t), g=params.g))

    t = targets[0]
    record(t)
    cap, _ = _step_cap(t, eta, L)
    h = min(1.0, cap, targets[-1] - targets[0])
    for target in targets[1:]:
        t, theta, G, h = engine.advance(t, theta, G, target, h)
        record(t)

    meta = dict(engine.stats)
    if not math.isfinite(meta["min_step"]):
        meta["min_step"] = 0.0
    meta["f_source"] = config.f_source
    return Trajectory(config=config, params=params, samples=samples, wave=wave, meta=meta)
