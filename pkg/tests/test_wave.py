import math

import numpy as np
import pytest

import _frozen
from echochain import (ParameterError, PhysicalParams, duhamel_f,
                       fit_inviscid_exponent, fit_power_law, homogeneous_f,
                       inviscid_exponent, solve_wave_ode, verify_f_bound,
                       wave_ode_rhs)
from echochain.wave import f_amplitude_factory, local_maxima


def test_rhs_values():
    # lap = k^2 (1 + t^2); df = -nu lap f - k g, dg = alpha/lap f
    df, dg = wave_ode_rhs(2.0, 3.0, 5.0, (0.5, 0.25), k_wave=2)
    lap = 4.0 * (1.0 + 4.0)
    assert df == -0.5 * lap * 3.0 - 2.0 * 5.0
    assert dg == 0.25 / lap * 3.0


def test_rhs_accepts_params_record():
    p = PhysicalParams(nu=1.0, c=0.001)
    df, dg = wave_ode_rhs(0.0, 1.0, 0.0, p)
    assert df == -1.0 and dg == 0.0


def test_homogeneous_closed_form():
    assert homogeneous_f(1.0, 2.0, 0.0) == 2.0
    np.testing.assert_allclose(homogeneous_f(0.5, 1.0, 2.0),
                               math.exp(-0.5 * (2.0 + 8.0 / 3.0)), rtol=1e-15)


def test_solve_matches_homogeneous_when_unforced():
    grid = np.linspace(0.0, 3.0, 31)
    traj = solve_wave_ode((1.0, 0.0), 1, 1.0, 0.0, grid)
    want = [homogeneous_f(1.0, 1.0, t) for t in grid]
    np.testing.assert_allclose([w.f for w in traj], want, rtol=1e-8, atol=1e-14)
    assert all(w.g == 0.0 for w in traj)


def test_solve_requires_increasing_grid():
    with pytest.raises(ParameterError):
        solve_wave_ode((1.0, 0.0), 1, 0.0, 1.0, [0.0, 0.5, 0.5])


def test_duhamel_against_high_precision_quadrature():
    for (nu, f0, g0, t), want in _frozen.DUHAMEL.items():
        got = duhamel_f(nu, f0, g0, t)
        np.testing.assert_allclose(got, want, rtol=1e-9)


def test_duhamel_degenerate_cases():
    assert duhamel_f(1.0, 0.7, 0.0, 2.0) == homogeneous_f(1.0, 0.7, 2.0)
    assert duhamel_f(1.0, 0.7, 0.5, 0.0) == 0.7
    with pytest.raises(ParameterError):
        duhamel_f(0.0, 0.0, 1.0, 1.0)


def test_solve_matches_duhamel():
    p = PhysicalParams(nu=0.5, c=0.001)
    grid = np.linspace(0.0, 4.0, 9)
    traj = solve_wave_ode(p, 1, 0.0, p.g, grid)
    for w in traj[1:]:
        np.testing.assert_allclose(w.f, duhamel_f(p.nu, 0.0, p.g, w.t),
                                   rtol=1e-7, atol=1e-15)


def test_viscous_bound_holds():
    p = PhysicalParams(nu=1.0, c=0.001)
    grid = np.linspace(0.0, 50.0, 501)
    traj = solve_wave_ode(p, 1, 0.0, p.g, grid)
    assert verify_f_bound(traj, p, 0.0, p.g) <= 1.0 + 1e-6


def test_verify_f_bound_preconditions():
    p = PhysicalParams(nu=1.0, c=0.001)
    traj = solve_wave_ode(p, 1, 0.0, p.g, np.linspace(0.0, 1.0, 5))
    with pytest.raises(ParameterError):
        verify_f_bound(traj, PhysicalParams(nu=1.0, c=0.001, alpha=0.5), 0.0, p.g)
    with pytest.raises(ParameterError):
        verify_f_bound(traj, p, 0.0, 0.0)


def test_inviscid_exponent_values():
    assert inviscid_exponent(0.0) == 0.5
    np.testing.assert_allclose(inviscid_exponent(3.0 / 16.0), 0.25, rtol=1e-15)
    assert inviscid_exponent(0.25) == 0.0
    assert inviscid_exponent(1.0) == 0.0


def test_fit_power_law_recovers_synthetic_exponent():
    ts = np.geomspace(1.0, 1e4, 64)
    slope = fit_power_law(list(zip(ts, 3.0 * ts ** 0.75)))
    np.testing.assert_allclose(slope, 0.75, rtol=1e-9)


def test_fit_power_law_needs_enough_samples():
    ts = np.geomspace(1.0, 10.0, 4)
    with pytest.raises(ParameterError):
        fit_power_law(list(zip(ts, ts)))


def test_local_maxima_picks_interior_peaks():
    ts = np.linspace(0.0, 4.0 * math.pi, 2001)
    vs = np.abs(np.sin(ts))
    peak_ts, peak_vs = local_maxima(ts, vs)
    assert len(peak_ts) == 4
    np.testing.assert_allclose(peak_ts, np.array([0.5, 1.5, 2.5, 3.5]) * np.pi,
                               rtol=1e-3)
    np.testing.assert_allclose(peak_vs, 1.0, rtol=1e-5)


def test_inviscid_fit_at_quarter_threshold():
    measured, predicted = fit_inviscid_exponent(0.25)
    assert predicted == 0.5
    assert abs(measured - predicted) < 0.05


@pytest.mark.parametrize("source", ["decay_bound", "zero"])
def test_f_amplitude_closed_sources(source):
    p = PhysicalParams(nu=0.5, c=0.001)
    f = f_amplitude_factory(p, source, 10.0)
    want = (lambda t: 4 * p.c / (1 + t * t)) if source == "decay_bound" else (lambda t: 0.0)
    for t in (0.0, 0.3, 2.0, 10.0):
        assert f(t) == want(t)


def test_f_amplitude_ode_matches_duhamel():
    p = PhysicalParams(nu=0.5, c=0.001)
    f = f_amplitude_factory(p, "ode", 20.0)
    for t in (0.05, 0.7, 3.0, 19.0):
        np.testing.assert_allclose(f(t), duhamel_f(p.nu, 0.0, p.g, t),
                                   rtol=2e-5, atol=1e-16)


def test_f_amplitude_ode_stays_under_decay_bound():
    p = PhysicalParams(nu=1.0, c=0.001)
    f = f_amplitude_factory(p, "ode", 50.0)
    ts = np.linspace(0.0, 50.0, 301)
    ratios = [abs(f(t)) * (1 + t * t) / (4 * p.c) for t in ts]
    assert max(ratios) <= 1.0 + 1e-6
