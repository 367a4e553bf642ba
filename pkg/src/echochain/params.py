"""Shared parameter records, weight functions and simulation configuration.

Everything downstream (wave solver, mode system, diagnostics, CLI) consumes the
value records defined here.  All records are plain dataclasses that validate at
construction and are treated as immutable afterwards.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

F_SOURCES = ("ode", "decay_bound", "zero")
WEIGHT_KINDS = ("uniform", "sobolev", "analytic")
INIT_KINDS = ("delta_theta", "delta_G", "file")

# Threshold factor tuple (a1, a2, a3): k1 = a1*k0, k2 = a2*k0, k3 = a3*k0.
DEFAULT_THRESHOLD_FACTORS = (4.0, 0.1, 0.001)


class ParameterError(ValueError):
    """Raised when a parameter record violates its contract."""


@dataclass(frozen=True)
class PhysicalParams:
    """Physical constants of the wave-coupled system.

    The coupling constant ``c`` is primary; the wave temperature amplitude is
    always the derived quantity ``g = 2*c*nu`` and cannot be set independently.
    ``c = 0`` (frozen coupling) is representable for reference computations,
    but the strict gate :func:`validate_params` rejects it.
    """

    nu: float
    c: float
    alpha: float = 0.0
    g: float = field(init=False)
    theorem_range_exceeded: bool = field(init=False)

    def __post_init__(self):
        for name in ("nu", "c", "alpha"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ParameterError(f"{name} must be finite, got {v!r}")
        if self.nu <= 0:
            raise ParameterError(f"nu must be > 0, got {self.nu}")
        if self.c < 0:
            raise ParameterError(f"c must be >= 0, got {self.c}")
        object.__setattr__(self, "nu", float(self.nu))
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "g", 2.0 * self.c * self.nu)
        object.__setattr__(self, "theorem_range_exceeded", self.c > 0.001)


def validate_params(raw, c=None, alpha=0.0):
    """Strictly validate physical parameters and return a PhysicalParams.

    Accepts either ``validate_params(nu, c[, alpha])``, a mapping with keys
    ``nu``/``c``/optional ``alpha``, or an existing :class:`PhysicalParams`
    (idempotent: re-validating reproduces the record bit-exactly).

    Rejects non-finite values, ``nu <= 0``, ``c <= 0`` and ``c > 0.01``.  For
    ``0.001 < c <= 0.01`` the returned record carries the
    ``theorem_range_exceeded`` flag.
    """
    if isinstance(raw, PhysicalParams):
        nu, cc, al = raw.nu, raw.c, raw.alpha
    elif isinstance(raw, dict):
        extra = set(raw) - {"nu", "c", "alpha"}
        if extra:
            raise ParameterError(f"unknown parameter keys: {sorted(extra)}")
        try:
            nu, cc = raw["nu"], raw["c"]
        except KeyError as exc:
            raise ParameterError(f"missing parameter key: {exc}") from None
        al = raw.get("alpha", 0.0)
    else:
        nu, cc, al = raw, c, alpha
        if cc is None:
            raise ParameterError("c is required")
    if not (isinstance(cc, (int, float)) and math.isfinite(cc)) or cc <= 0:
        raise ParameterError(f"c must be a finite positive number, got {cc!r}")
    if cc > 0.01:
        raise ParameterError(
            f"c = {cc} exceeds the supported range (c <= 0.01)")
    return PhysicalParams(nu=nu, c=cc, alpha=al)


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class WeightSpec:
    """Weight lambda(l) defining the sequence space the norms live in.

    kind: "uniform" (lambda = 1), "sobolev" (1 + 2^-N |l|^N) or "analytic"
    (2^|l|).  The nearest-neighbor ratio lambda(l+-1)/lambda(l) must stay
    within the factor-2 budget used by the energy estimates; the analytic
    weight attains the factor 2 exactly and sobolev requires N <= 2.
    """

    kind: str = "uniform"
    N: int = 2

    def __post_init__(self):
        if self.kind not in WEIGHT_KINDS:
            raise ParameterError(f"unknown weight kind {self.kind!r}")
        if self.kind == "sobolev":
            if not isinstance(self.N, int) or self.N < 0:
                raise ParameterError(f"sobolev N must be an integer >= 0, got {self.N!r}")


def weight_eval(spec, l):
    """Evaluate lambda(l) for a single mode index l >= 1."""
    if l < 1:
        raise ParameterError(f"mode index must be >= 1, got {l}")
    if spec.kind == "uniform":
        return 1.0
    if spec.kind == "sobolev":
        return 1.0 + 2.0 ** (-spec.N) * abs(l) ** spec.N
    return 2.0 ** abs(l)


def weight_profile(spec, L):
    """Vector of lambda(l) for l = 1..L, with the ratio budget asserted.

    Raises ParameterError if sup_l lambda(l+-1)/lambda(l) exceeds 2 on the
    truncation range (this rules out sobolev weights with N >= 3, whose ratio
    at l = 2 is (2^N + 3^N) / 2^(N+1) > 2).
    """
    ls = np.arange(1, L + 1, dtype=float)
    if spec.kind == "uniform":
        lam = np.ones(L)
    elif spec.kind == "sobolev":
        lam = 1.0 + 2.0 ** (-spec.N) * ls ** spec.N
    else:
        lam = 2.0 ** ls
    if L >= 2:
        ratio = np.maximum(lam[1:] / lam[:-1], lam[:-1] / lam[1:]).max()
        if ratio > 2.0 * (1.0 + 1e-12):
            raise ParameterError(
                f"weight ratio {ratio:.6g} exceeds the factor-2 budget for {spec}")
    return lam


# ---------------------------------------------------------------------------
# simulation configuration


@dataclass(frozen=True)
class InitSpec:
    """Initial data: a delta on one mode (in theta or G) or an external file."""

    kind: str = "delta_theta"
    mode: int = 1
    amplitude: complex = 1.0 + 0.0j
    path: str = ""

    def __post_init__(self):
        if self.kind not in INIT_KINDS:
            raise ParameterError(f"unknown init kind {self.kind!r}")
        if self.kind != "file":
            if not isinstance(self.mode, int) or self.mode < 1:
                raise ParameterError(f"init mode must be an integer >= 1, got {self.mode!r}")
            if self.amplitude == 0:
                raise ParameterError("init amplitude must be nonzero")
        elif not self.path:
            raise ParameterError("file init requires a path")


@dataclass(frozen=True)
class SimConfig:
    eta: float
    L: int
    t_start: float
    t_end: float
    init: InitSpec = InitSpec()
    rtol: float = 1e-8
    atol: float = 1e-12
    f_source: str = "ode"
    g_forcing_per_l: bool = False
    sample_times: tuple = ()

    def __post_init__(self):
        if not (math.isfinite(self.eta) and self.eta > 0):
            raise ParameterError(f"eta must be finite and > 0, got {self.eta}")
        if not isinstance(self.L, int) or self.L < 2:
            raise ParameterError(f"L must be an integer >= 2, got {self.L!r}")
        if not (self.t_start < self.t_end):
            raise ParameterError(
                f"t_start must be < t_end, got [{self.t_start}, {self.t_end}]")
        if not (self.rtol > 0 and self.atol > 0):
            raise ParameterError("rtol and atol must be > 0")
        if self.f_source not in F_SOURCES:
            raise ParameterError(f"unknown f_source {self.f_source!r}")
        object.__setattr__(self, "eta", float(self.eta))
        object.__setattr__(self, "t_start", float(self.t_start))
        object.__setattr__(self, "t_end", float(self.t_end))
        object.__setattr__(self, "sample_times", tuple(float(t) for t in self.sample_times))
        for t in self.sample_times:
            if not (self.t_start <= t <= self.t_end):
                raise ParameterError(
                    f"sample time {t} outside [{self.t_start}, {self.t_end}]")


def check_mode_budget(config, params):
    """Validate that the truncation L can hold the resonance chain.

    Requires L >= init mode + 2 and, when the run touches the resonant band
    (t intersecting (t_k0, 2 eta) with k0 >= 1), L >= ceil(4 (c eta pi)^(1/3)).
    Called wherever a config and params first meet (CLI load, integrate).
    """
    if config.init.kind != "file" and config.L < config.init.mode + 2:
        raise ParameterError(
            f"L = {config.L} too small for init mode {config.init.mode} (need mode + 2)")
    chi = params.c * config.eta * math.pi
    k0 = math.floor(chi ** (1.0 / 3.0)) if chi >= 1.0 else 0
    if k0 >= 1:
        # Resonant band: from t_k0 (just below eta/k0) up to t_0 = 2 eta.
        band_lo = 0.5 * (config.eta / (k0 + 1) + config.eta / k0)
        band_hi = 2.0 * config.eta
        if config.t_start < band_hi and config.t_end > band_lo:
            need = math.ceil(4.0 * chi ** (1.0 / 3.0))
            if config.L < need:
                raise ParameterError(
                    f"L = {config.L} below the resonant-band requirement {need} "
                    f"(c*eta*pi = {chi:.6g})")
    return config


# ---------------------------------------------------------------------------
# state


@dataclass
class ModeState:
    """Mode amplitudes theta_l, G_l for l = 1..L at a single time.

    Mode index 0 does not exist (the x-average is projected out), so entry i
    of each array is mode l = i + 1.
    """

    t: float
    theta: np.ndarray
    G: np.ndarray

    def __post_init__(self):
        th = np.asarray(self.theta, dtype=complex)
        G = np.asarray(self.G, dtype=complex)
        if th.ndim != 1 or G.shape != th.shape:
            raise ParameterError("theta and G must be 1-d arrays of equal length")
        if th.shape[0] < 1:
            raise ParameterError("state needs at least one mode")
        if not (np.all(np.isfinite(th)) and np.all(np.isfinite(G))):
            raise ParameterError(f"non-finite state at t = {self.t}")
        self.theta = th
        self.G = G
        self.t = float(self.t)

    @property
    def L(self):
        return self.theta.shape[0]

    def copy(self):
        return ModeState(self.t, self.theta.copy(), self.G.copy())


def initial_state(init, L, t):
    """Build the ModeState described by an InitSpec (file loading is CLI-level)."""
    if init.kind == "file":
        raise ParameterError("file-based initial data must be loaded by the caller")
    if init.mode > L:
        raise ParameterError(f"init mode {init.mode} exceeds L = {L}")
    theta = np.zeros(L, dtype=complex)
    G = np.zeros(L, dtype=complex)
    if init.kind == "delta_theta":
        theta[init.mode - 1] = init.amplitude
    else:
        G[init.mode - 1] = init.amplitude
    return ModeState(t, theta, G)


# ---------------------------------------------------------------------------
# regime thresholds (type only; construction lives in diagnostics.thresholds)


@dataclass(frozen=True)
class RegimeThresholds:
    """Chain thresholds k0 >= k1-cutoff >= k2 >= k3 plus the resonant-time table.

    t_table[k] is the left endpoint t_k of the resonant interval I_k, for
    k = 0..len(t_table)-1, with t_0 = 2*eta.  all_stable marks c*eta*pi < 1,
    where no interval can inflate and k0 degenerates to 0.
    """

    k0: int
    k1: int
    k2: int
    k3: int
    factors: tuple
    t_table: tuple
    all_stable: bool

    def __post_init__(self):
        if not self.all_stable:
            if not (self.k0 >= self.k2 >= self.k3 >= 1):
                raise ParameterError(
                    f"thresholds out of order: k0={self.k0} k2={self.k2} k3={self.k3}")
        diffs = np.diff(self.t_table)
        if np.any(diffs >= 0):
            raise ParameterError("t_k table must be strictly decreasing in k")


def params_with(params, **changes):
    """Convenience: rebuild a PhysicalParams with some fields replaced."""
    return replace(params, **changes)
