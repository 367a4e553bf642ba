"""The nearest-neighbor mode system in the sheared frame.

For a fixed y-frequency eta > 0 the temperature modes theta_l and good-unknown
modes G_l (l = 1..L, mode 0 projected out) couple only to l +- 1 through the
Lorentzian coefficients

    c_l^+- = c * eta/m^3 * (1 + (eta/m - t)^2)^-2,   m = l +- 1,
    d_l^+- = c * eta/m^3 * (1 + (eta/m - t)^2)^-1,

and G_l additionally carries the stiff decay -nu (l^2 + (eta - l t)^2) G_l,
whose time integral has the closed form implemented by
:func:`dissipation_exponent`.  The coupling sum

    S_l = c_l^+ theta_{l+1} + c_l^- theta_{l-1} + d_l^+ G_{l+1} + d_l^- G_{l-1}

is simultaneously d(theta_l)/dt and a factor of three terms of dG_l/dt, so the
vectorized right-hand side computes it once.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .params import ParameterError


def resonant_time(eta, k):
    """Left endpoint t_k of the resonant interval I_k = (t_k, t_{k-1}).

    t_0 = 2*eta; for k >= 1, t_k = (eta/(k+1) + eta/k)/2, the midpoint between
    consecutive resonances.
    """
    if eta <= 0:
        raise ParameterError(f"eta must be > 0, got {eta}")
    if k < 0 or int(k) != k:
        raise ParameterError(f"k must be a nonnegative integer, got {k!r}")
    if k == 0:
        return 2.0 * eta
    return 0.5 * (eta / (k + 1) + eta / k)


@dataclass(frozen=True)
class CoefficientQuery:
    l: int
    branch: str  # "plus" | "minus"
    t: float
    c: float
    eta: float

    def __post_init__(self):
        if self.l < 1:
            raise ParameterError(f"mode index must be >= 1, got {self.l}")
        if self.branch not in ("plus", "minus"):
            raise ParameterError(f"branch must be 'plus' or 'minus', got {self.branch!r}")

    @property
    def m(self):
        return self.l + 1 if self.branch == "plus" else self.l - 1


def coeff_c(q):
    """Lorentzian-squared coupling coefficient c_l^+-; 0 when the neighbor is mode 0."""
    m = q.m
    if m == 0:
        return 0.0
    x = q.eta / m - q.t
    return q.c * q.eta / m ** 3 / (1.0 + x * x) ** 2


def coeff_d(q):
    """Lorentzian coupling coefficient d_l^+-; 0 when the neighbor is mode 0."""
    m = q.m
    if m == 0:
        return 0.0
    x = q.eta / m - q.t
    return q.c * q.eta / m ** 3 / (1.0 + x * x)


def dissipation_exponent(l, t0, t1, nu, eta):
    """nu * int_{t0}^{t1} l^2 + (eta - l tau)^2 dtau, in closed form.

    Accepts scalar or array l.  Nonnegative for t1 >= t0.
    """
    l = np.asarray(l, dtype=float)
    dt = t1 - t0
    cube = ((eta - l * t0) ** 3 - (eta - l * t1) ** 3) / (3.0 * l)
    out = nu * (l * l * dt + cube)
    return out if out.ndim else float(out)


class RhsWorkspace:
    """Precomputed index arrays for fast RHS evaluation at fixed (c, eta, L, nu)."""

    def __init__(self, c, eta, L, nu, g_forcing_per_l=False):
        self.c = float(c)
        self.eta = float(eta)
        self.L = int(L)
        self.nu = float(nu)
        self.g_forcing_per_l = bool(g_forcing_per_l)
        l = np.arange(1, L + 1, dtype=float)
        self.l = l
        self.l_sq = l * l
        self.eta_over_l = eta / l
        m_plus = l + 1.0
        self.ctr_plus = eta / m_plus            # center of c_l^+ / d_l^+
        self.amp_plus = c * eta / m_plus ** 3
        m_minus = l - 1.0
        self.ctr_minus = np.empty(L)
        self.amp_minus = np.zeros(L)
        self.ctr_minus[0] = 0.0                 # unused, amplitude is 0
        if L > 1:
            self.ctr_minus[1:] = eta / m_minus[1:]
            self.amp_minus[1:] = c * eta / m_minus[1:] ** 3
        self.il = 1j * l

    def coupling_arrays(self, t):
        """(cp, cm, dp, dm) coefficient vectors at time t (cm[0] = dm[0] = 0)."""
        xp = self.ctr_plus - t
        denp = 1.0 + xp * xp
        dp = self.amp_plus / denp
        cp = dp / denp
        xm = self.ctr_minus - t
        denm = 1.0 + xm * xm
        dm = self.amp_minus / denm
        cm = dm / denm
        return cp, cm, dp, dm

    def coupling_sum(self, t, theta, G):
        """S_l = c_l^+ th_{l+1} + c_l^- th_{l-1} + d_l^+ G_{l+1} + d_l^- G_{l-1}."""
        cp, cm, dp, dm = self.coupling_arrays(t)
        S = np.zeros(self.L, dtype=complex)
        S[:-1] = cp[:-1] * theta[1:] + dp[:-1] * G[1:]
        S[1:] += cm[1:] * theta[:-1] + dm[1:] * G[:-1]
        return S

    def nonstiff(self, t, theta, G, f_t):
        """RHS with the stiff diagonal removed: (dtheta, dG_without_decay)."""
        S = self.coupling_sum(t, theta, G)
        xl = self.eta_over_l - t
        denl = 1.0 + xl * xl
        forcing = 2.0 * xl / (denl * denl)
        if self.g_forcing_per_l:
            forcing = forcing / self.l
        ratio = f_t / (2.0 * self.c) if self.c != 0.0 else 0.0
        dG = (ratio * self.il) * S + S / denl + forcing * theta
        return S, dG

    def full(self, t, theta, G, f_t):
        """Complete RHS including the stiff decay of G."""
        dtheta, dG = self.nonstiff(t, theta, G, f_t)
        lap = self.l_sq + (self.eta - self.l * t) ** 2
        return dtheta, dG - self.nu * lap * G


@lru_cache(maxsize=64)
def _workspace(c, eta, L, nu, g_forcing_per_l):
    return RhsWorkspace(c, eta, L, nu, g_forcing_per_l)


def get_workspace(params, eta, L, g_forcing_per_l=False):
    return _workspace(params.c, float(eta), int(L), params.nu, bool(g_forcing_per_l))


def rhs_full(t, state, f_t, params, eta, g_forcing_per_l=False):
    """(dtheta, dG) of the full mode system at time t.

    f_t is the raw wave amplitude f(t); its prefactor f*nu/g is computed as
    f_t/(2c) (exact, since g = 2*c*nu) and as 0 for c = 0, where the coupling
    sum it multiplies vanishes identically anyway.
    """
    ws = get_workspace(params, eta, state.theta.shape[0], g_forcing_per_l)
    return ws.full(t, state.theta, state.G, f_t)


def rhs_model(t, theta, c, eta):
    """dtheta of the model problem (G formally set to 0): dth_l = c_l^+ th_{l+1} + c_l^- th_{l-1}."""
    theta = np.asarray(theta)
    L = theta.shape[0]
    l = np.arange(1, L + 1, dtype=float)
    out = np.zeros(L, dtype=theta.dtype)
    xp = eta / (l[:-1] + 1.0) - t
    cp = c * eta / (l[:-1] + 1.0) ** 3 / (1.0 + xp * xp) ** 2
    out[:-1] = cp * theta[1:]
    if L > 1:
        xm = eta / l[:-1] - t
        cm = c * eta / l[:-1] ** 3 / (1.0 + xm * xm) ** 2
        out[1:] = out[1:] + cm * theta[:-1]
    return out


# ---------------------------------------------------------------------------
# good unknown and stream function


def good_unknown_forward(omega_l, theta_l, l, t, nu, eta):
    """G_l = i nu l omega_l + l^2/(l^2 + (eta - l t)^2) * theta_l."""
    if l < 1:
        raise ParameterError(f"mode index must be >= 1, got {l}")
    lap = l * l + (eta - l * t) ** 2
    return 1j * nu * l * omega_l + (l * l / lap) * theta_l


def good_unknown_inverse(G_l, theta_l, l, t, nu, eta):
    """omega_l from (G_l, theta_l); requires nu > 0."""
    if l < 1:
        raise ParameterError(f"mode index must be >= 1, got {l}")
    if nu == 0:
        raise ParameterError("good_unknown_inverse requires nu > 0")
    lap = l * l + (eta - l * t) ** 2
    return (G_l - (l * l / lap) * theta_l) / (1j * nu * l)


def stream_function(G_l, theta_l, l, t, nu, eta):
    """phi_l = nu^-1 [ -G_l / (i l (l^2+(eta-lt)^2)) + i l theta_l / (l^2+(eta-lt)^2)^2 ]."""
    if l < 1:
        raise ParameterError(f"mode index must be >= 1, got {l}")
    if nu == 0:
        raise ParameterError("stream_function requires nu > 0")
    lap = l * l + (eta - l * t) ** 2
    return (-G_l / (1j * l * lap) + 1j * l * theta_l / lap ** 2) / nu
